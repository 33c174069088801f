#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rydcp/atomic_structure.hpp"
#include "rydcp/quantum_state.hpp"
#include "rydcp/radial.hpp"

namespace rydcp {

using complex = std::complex<double>;

enum class Multipole { dipole, quadrupole };

const char* multipole_name(Multipole order);

/// One |initial> -> |final> transition with its multipole moment.
struct TransitionChannel {
  QuantumState initial;
  QuantumState final_state;
  /// (E_final - E_initial) / hbar, rad/s. Negative for downward transitions.
  double omega = 0.0;
  Multipole order = Multipole::dipole;
  /// <final| e r |initial>, C m (dipole channels).
  std::array<complex, 3> dipole{};
  /// <final| e r (x) r / 2 |initial>, C m^2, row-major (quadrupole channels).
  std::array<complex, 9> quadrupole{};
  /// Statistical weight, 1/(2j+1) when the initial m is averaged.
  double weight = 1.0;

  /// Checks the selection rules of the multipole order.
  void validate() const;
  /// weight * Re[conj(M) (x) M] flattened: 9 entries for dipole, 81 for quadrupole.
  std::vector<double> coupling() const;
};

/// All channels sharing a final (n', l', j') level, with the weighted
/// coupling tensor summed over m and m'.
struct ChannelGroup {
  QuantumState final_level;  ///< m2 is set to j2
  double omega = 0.0;
  Multipole order = Multipole::dipole;
  std::vector<double> coupling;

  std::string label() const { return final_level.label(); }
};

struct ChannelOptions {
  /// Final levels span n' in [n - window, n + window].
  int window = 8;
  /// When set, every lower final level (down to the lowest n' allowed by l')
  /// is included as well, so optical decay channels enter the rates.
  bool include_all_lower = false;
  /// Average over the initial m manifold (each m with weight 1/(2j+1)).
  bool average_initial_m = true;
  bool include_dipole = true;
  bool include_quadrupole = true;
  GridSpec grid{};
};

/// Enumerates dipole finals (l' = l +- 1) and quadrupole finals
/// (l' in {l - 2, l, l + 2}, never s -> s) with every allowed j' and m',
/// computing moments from Numerov radial integrals and the angular algebra.
/// Degenerate finals (omega = 0) are skipped. Throws InvalidArgument when no
/// channel remains.
std::vector<TransitionChannel> build_channels(const QuantumState& initial,
                                              const QuantumDefectTable& table,
                                              const ChannelOptions& opts = {});

/// Groups by final level in canonical order: dipole before quadrupole, then
/// ascending (n', l', j').
std::vector<ChannelGroup> group_channels(const std::vector<TransitionChannel>& channels);

}  // namespace rydcp
