#include "rydcp/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "rydcp/constants.hpp"

namespace rydcp {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<long double, kMaxFactorial + 1>& factorial_table() {
  static const auto table = [] {
    std::array<long double, kMaxFactorial + 1> t{};
    t[0] = 1.0L;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  return table;
}

long double fact(int n) { return factorial_table()[n]; }

bool is_even(int x) { return x % 2 == 0; }

}  // namespace

bool wigner3j_allowed(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0) return false;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return false;
  if (!is_even(j1 + m1) || !is_even(j2 + m2) || !is_even(j3 + m3)) return false;
  if (m1 + m2 + m3 != 0) return false;
  if (j3 > j1 + j2 || j3 < std::abs(j1 - j2)) return false;
  if (!is_even(j1 + j2 + j3)) return false;
  return true;
}

double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (!wigner3j_allowed(j1, j2, j3, m1, m2, m3)) return 0.0;
  // Work in integers: a = j1 + j2 - j3 etc. are all even after doubling.
  if (m1 == 0 && m2 == 0 && m3 == 0 && !is_even((j1 + j2 + j3) / 2)) return 0.0;

  const int J = (j1 + j2 + j3) / 2;
  if (J + 1 > kMaxFactorial) return std::nan("");

  const int a1 = (j1 + j2 - j3) / 2;
  const int a2 = (j1 - j2 + j3) / 2;
  const int a3 = (-j1 + j2 + j3) / 2;
  const long double triangle = fact(a1) * fact(a2) * fact(a3) / fact(J + 1);
  const long double norm =
      fact((j1 + m1) / 2) * fact((j1 - m1) / 2) * fact((j2 + m2) / 2) * fact((j2 - m2) / 2) *
      fact((j3 + m3) / 2) * fact((j3 - m3) / 2);

  // Racah sum over k with all factorial arguments nonnegative.
  const int b1 = (j3 - j2 + m1) / 2;
  const int b2 = (j3 - j1 - m2) / 2;
  const int c1 = a1;
  const int c2 = (j1 - m1) / 2;
  const int c3 = (j2 + m2) / 2;
  const int k_min = std::max({0, -b1, -b2});
  const int k_max = std::min({c1, c2, c3});
  long double sum = 0.0L;
  for (int k = k_min; k <= k_max; ++k) {
    const long double term =
        1.0L / (fact(k) * fact(b1 + k) * fact(b2 + k) * fact(c1 - k) * fact(c2 - k) * fact(c3 - k));
    sum += is_even(k) ? term : -term;
  }
  // Overall phase (-1)^(j1 - j2 - m3).
  const int phase = (j1 - j2 - m3) / 2;
  const long double value = std::sqrt(triangle * norm) * sum;
  return static_cast<double>(is_even(phase) ? value : -value);
}

double clebsch_gordan(int j1, int m1, int j2, int m2, int j, int m) {
  if (m1 + m2 != m) return 0.0;
  const double w = wigner3j(j1, j2, j, m1, m2, -m);
  if (w == 0.0) return 0.0;
  const int phase = (j1 - j2 + m) / 2;
  const double value = std::sqrt(j + 1.0) * w;
  return is_even(phase) ? value : -value;
}

double gaunt(int l1, int m1, int l2, int m2, int l3, int m3) {
  const double parity = wigner3j(2 * l1, 2 * l2, 2 * l3, 0, 0, 0);
  if (parity == 0.0) return 0.0;
  const double proj = wigner3j(2 * l1, 2 * l2, 2 * l3, 2 * m1, 2 * m2, 2 * m3);
  if (proj == 0.0) return 0.0;
  const double pref =
      std::sqrt((2 * l1 + 1.0) * (2 * l2 + 1.0) * (2 * l3 + 1.0) / (4.0 * constants::pi));
  return pref * parity * proj;
}

}  // namespace rydcp
