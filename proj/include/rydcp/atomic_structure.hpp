#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>

#include "rydcp/constants.hpp"
#include "rydcp/quantum_state.hpp"

namespace rydcp {

/// Two-term Rydberg-Ritz coefficients of one (l, j) series.
struct DefectSeries {
  double delta0 = 0.0;
  double delta2 = 0.0;
};

/// Quantum defects per (l, 2j) series for one species. Series with l above
/// the highest tabulated l have zero defect.
class QuantumDefectTable {
 public:
  QuantumDefectTable() = default;
  /// `rydberg_energy` in joules; pass a reduced-mass value for real atoms.
  QuantumDefectTable(std::string species, double rydberg_energy);

  /// Zero-defect table with the infinite-mass Rydberg energy.
  static QuantumDefectTable hydrogenic();

  /// Parses the `species,l,j2,delta0,delta2` CSV format. `#` starts a comment.
  static QuantumDefectTable parse(std::istream& in, const std::string& source_name = "<stream>");
  static QuantumDefectTable load(const std::filesystem::path& path);

  void set_series(int l, int j2, DefectSeries series);

  /// delta(n, l, j) = delta0 + delta2 / (n - delta0)^2, or 0 beyond l_max.
  double defect(int n, int l, int j2) const;

  const std::string& species() const noexcept { return species_; }
  double rydberg_energy() const noexcept { return rydberg_energy_; }
  int l_max() const noexcept { return l_max_; }
  const std::map<std::pair<int, int>, DefectSeries>& series() const noexcept { return series_; }

 private:
  void check_complete() const;

  std::string species_ = "H";
  double rydberg_energy_ = constants::rydberg_energy;
  int l_max_ = -1;
  std::map<std::pair<int, int>, DefectSeries> series_;
};

/// Rydberg energy for a named species, reduced-mass corrected where the mass
/// is known. "H" is treated as the infinite-mass hydrogenic model.
double species_rydberg_energy(const std::string& species);

/// Lowest principal quantum number of a valence orbital with angular
/// momentum l (l + 1 for hydrogen and unknown species).
int lowest_principal(const std::string& species, int l);

/// n* = n - delta(n, l, j). Throws InvalidState when n* <= 0.
double effective_quantum_number(const QuantumState& state, const QuantumDefectTable& table);

/// E = -Ry / n*^2, joules.
double state_energy(const QuantumState& state, const QuantumDefectTable& table);

/// Signed angular frequency (E_b - E_a) / hbar in rad/s.
double transition_frequency(const QuantumState& a, const QuantumState& b,
                            const QuantumDefectTable& table);

}  // namespace rydcp
