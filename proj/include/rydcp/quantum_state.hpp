#pragma once

#include <compare>
#include <string>

namespace rydcp {

/// Fine-structure state |n, l, j, m>. Half-integers are stored doubled
/// (j2 = 2j, m2 = 2m) so they stay exact.
struct QuantumState {
  int n = 1;
  int l = 0;
  int j2 = 1;
  int m2 = 1;

  double j() const { return 0.5 * j2; }
  double m() const { return 0.5 * m2; }

  /// Throws InvalidState unless l < n, j = l +- 1/2 (j >= 1/2) and |m| <= j.
  void validate() const;
  bool is_valid() const noexcept;

  /// Same (n, l, j) level, any m.
  bool same_level(const QuantumState& other) const noexcept {
    return n == other.n && l == other.l && j2 == other.j2;
  }

  /// Spectroscopic label such as "43s1/2" or "42p3/2(m=-1/2)".
  std::string label(bool with_m = false) const;

  auto operator<=>(const QuantumState&) const = default;
};

/// Builds a state from n, l, j (as a real number) and m, checking invariants.
QuantumState make_state(int n, int l, double j, double m);

char orbital_letter(int l);

}  // namespace rydcp
