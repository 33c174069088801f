#include "rydcp/quantum_state.hpp"

#include <cmath>
#include <cstdlib>

#include "rydcp/errors.hpp"

namespace rydcp {

bool QuantumState::is_valid() const noexcept {
  if (n < 1 || l < 0 || l >= n) return false;
  if (j2 != 2 * l + 1 && j2 != 2 * l - 1) return false;
  if (j2 < 1) return false;
  if (std::abs(m2) > j2 || (m2 - j2) % 2 != 0) return false;
  return true;
}

void QuantumState::validate() const {
  if (!is_valid()) {
    throw InvalidState("invalid quantum state n=" + std::to_string(n) + " l=" +
                       std::to_string(l) + " 2j=" + std::to_string(j2) +
                       " 2m=" + std::to_string(m2));
  }
}

char orbital_letter(int l) {
  static constexpr char letters[] = "spdfghiklmnoqrtuv";
  if (l >= 0 && l < static_cast<int>(sizeof(letters) - 1)) return letters[l];
  return '?';
}

std::string QuantumState::label(bool with_m) const {
  std::string s = std::to_string(n) + orbital_letter(l) + std::to_string(j2) + "/2";
  if (with_m) {
    s += "(m=" + std::to_string(m2) + "/2)";
  }
  return s;
}

QuantumState make_state(int n, int l, double j, double m) {
  const double j2 = 2.0 * j;
  const double m2 = 2.0 * m;
  if (std::abs(j2 - std::round(j2)) > 1e-9 || std::abs(m2 - std::round(m2)) > 1e-9) {
    throw InvalidState("j and m must be integers or half-integers");
  }
  QuantumState s{n, l, static_cast<int>(std::lround(j2)), static_cast<int>(std::lround(m2))};
  s.validate();
  return s;
}

}  // namespace rydcp
