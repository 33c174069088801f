#pragma once

#include <array>
#include <string>
#include <vector>

#include "rydcp/channels.hpp"
#include "rydcp/green.hpp"
#include "rydcp/medium.hpp"

namespace rydcp {

/// Thermal radiation field at temperature T >= 0 (kelvin).
class ThermalEnvironment {
 public:
  explicit ThermalEnvironment(double temperature = 0.0);

  double temperature() const noexcept { return temperature_; }
  bool is_zero_temperature() const noexcept { return temperature_ == 0.0; }
  /// xi_j = 2 pi k_B T j / hbar.
  double matsubara(int j) const;
  /// Photon number 1/(exp(hbar w / k_B T) - 1) for w > 0 and
  /// -(1 + n(|w|)) for w < 0. Throws InvalidArgument at w = 0.
  double occupation(double omega) const;

 private:
  double temperature_;
};

/// alpha(i xi) of the dipole channels as a real symmetric 3x3 tensor
/// (C^2 m^2 / J), row-major. Throws SingularChannel on omega = 0.
std::array<double, 9> dipole_polarizability(const std::vector<TransitionChannel>& channels,
                                            double xi);

/// Rank-4 quadrupole polarizability, flattened as 27 i + 9 j + 3 k + l for
/// the pairing Q_ij Q_kl.
std::array<double, 81> quadrupole_polarizability(const std::vector<TransitionChannel>& channels,
                                                 double xi);

/// sum_ij T_ij G_ij (dipole) or sum_ijkl T_ijkl D_ijkl (quadrupole), real part.
double contract(const std::vector<double>& coupling, const GreenEval& g);
double contract(const std::vector<double>& coupling, const GreenDerivTensor& d);

struct CPOptions {
  /// Stop the Matsubara sum once the geometric tail estimate falls below
  /// this fraction of the accumulated sum.
  double matsubara_tail = 1e-6;
  int max_matsubara_terms = 200000;
  /// Relative tolerance of the zero-temperature frequency integral.
  double frequency_tol = 1e-6;
  GreenOptions green{};
};

struct MatsubaraTerm {
  int j = 0;
  double xi = 0.0;
  double dipole = 0.0;      ///< J, half weight already applied for j = 0
  double quadrupole = 0.0;  ///< J
};

struct ChannelShift {
  std::string label;
  QuantumState final_level;
  Multipole order = Multipole::dipole;
  double omega = 0.0;
  double nonresonant = 0.0;  ///< J
  double resonant = 0.0;     ///< J
  double total() const { return nonresonant + resonant; }
};

/// Level shift near the surface; every energy is in joules, `hz` converts.
struct CPResult {
  double z = 0.0;
  double temperature = 0.0;
  double dipole_nonresonant = 0.0;
  double dipole_resonant = 0.0;
  double quadrupole_nonresonant = 0.0;
  double quadrupole_resonant = 0.0;
  std::vector<ChannelShift> channels;
  /// Matsubara terms in ascending j (empty at T = 0).
  std::vector<MatsubaraTerm> ledger;
  /// Tail estimate left when the sum stopped (or quadrature error at T = 0), J.
  double truncation_estimate = 0.0;

  double dipole() const { return dipole_nonresonant + dipole_resonant; }
  double quadrupole() const { return quadrupole_nonresonant + quadrupole_resonant; }
  double total() const { return dipole() + quadrupole(); }
  static double hz(double joules);
};

/// Dipole plus quadrupole Casimir-Polder shift at distance z.
///
/// T > 0: Matsubara sum with the j = 0 term from the static-weighted Green
/// tensor at half weight. T = 0: the continuous imaginary-frequency integral.
/// Resonant terms use Re G at |omega| with the signed occupation rule.
CPResult cp_potential(double z, const ThermalEnvironment& env, const Surface& surface,
                      const std::vector<TransitionChannel>& channels, const CPOptions& opts = {});

struct ChannelRate {
  std::string label;
  Multipole order = Multipole::dipole;
  double omega = 0.0;
  bool upward = false;
  double rate = 0.0;            ///< 1/s, with the surface
  double freespace_rate = 0.0;  ///< 1/s, same channel in free space
};

struct DecayResult {
  double z = 0.0;
  double temperature = 0.0;
  std::vector<ChannelRate> channels;
  double dipole = 0.0;
  double quadrupole = 0.0;
  double freespace = 0.0;
  double total() const { return dipole + quadrupole; }
};

/// Transition rates out of the initial state,
/// Gamma = (2 mu0 w^2 / hbar) T . Im G_total(|w|) times (n + 1) downward or
/// n upward, with G_total the free-space plus scattering tensor.
DecayResult decay_rates(double z, const ThermalEnvironment& env, const Surface& surface,
                        const std::vector<TransitionChannel>& channels,
                        const GreenOptions& opts = {});

struct ChannelShare {
  std::string label;
  QuantumState final_level;
  Multipole order = Multipole::dipole;
  double omega = 0.0;
  double shift = 0.0;  ///< J
  double share = 0.0;  ///< fraction of the multipole's total shift
};

/// Per final level share of the dipole and of the quadrupole shift. Shares
/// of each multipole sum to one. Throws InvalidArgument when a multipole's
/// total shift is zero.
std::vector<ChannelShare> contribution_breakdown(const CPResult& result);

/// Combines the fine-structure partners of each (n', l') manifold. The
/// merged entry is labelled like "43p" and keeps the smallest |omega| of its
/// members.
std::vector<ChannelShare> merge_fine_structure(const std::vector<ChannelShare>& shares);

struct ScalingFit {
  double exponent = 0.0;
  double uncertainty = 0.0;  ///< standard error of the slope
  double prefactor = 0.0;    ///< exp(intercept)
  std::size_t samples = 0;
};

/// Least-squares slope of log|y| against log x. Needs at least four samples
/// with x > 0 and y != 0.
ScalingFit scaling_fit(const std::vector<double>& x, const std::vector<double>& y);

struct TemperatureRow {
  double temperature = 0.0;
  CPResult shift;
  DecayResult decay;
};

std::vector<TemperatureRow> temperature_sweep(double z, const std::vector<double>& temperatures,
                                              const Surface& surface,
                                              const std::vector<TransitionChannel>& channels,
                                              const CPOptions& opts = {});

}  // namespace rydcp
