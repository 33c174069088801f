#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "angular_oracle.hpp"
#include "rydcp/angular.hpp"
#include "rydcp/wigner.hpp"

using namespace rydcp;

using namespace testing;

TEST_CASE("3j selection rules and special values") {
  CHECK(wigner3j(2, 2, 2, 0, 0, 2) == 0.0);
  CHECK(wigner3j(2, 2, 2, 0, 0, 0) == 0.0);
  CHECK(wigner3j(2, 2, 0, 0, 0, 0) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  // (1/2 1/2 1; 1/2 -1/2 0) = 1/sqrt(6)
  CHECK(wigner3j(1, 1, 2, 1, -1, 0) == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-14));
  // (2 2 2; 0 0 0) with j = 2: sqrt(2/35)
  CHECK(wigner3j(4, 4, 4, 0, 0, 0) == doctest::Approx(-std::sqrt(2.0 / 35.0)).epsilon(1e-14));
}

TEST_CASE("3j permutation symmetry") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dj(0, 12);
  int checked = 0;
  for (int trial = 0; trial < 400000 && checked < 2000; ++trial) {
    const int a = dj(rng), b = dj(rng), c = dj(rng);
    std::uniform_int_distribution<int> ma(-a, a), mb(-b, b);
    const int x = ma(rng), y = mb(rng), w = -x - y;
    if (!wigner3j_allowed(a, b, c, x, y, w)) continue;
    ++checked;
    const double v = wigner3j(a, b, c, x, y, w);
    const double odd = ((a + b + c) / 2) % 2 == 0 ? 1.0 : -1.0;
    CHECK(wigner3j(b, c, a, y, w, x) == doctest::Approx(v).epsilon(1e-12));
    CHECK(wigner3j(c, a, b, w, x, y) == doctest::Approx(v).epsilon(1e-12));
    CHECK(wigner3j(b, a, c, y, x, w) == doctest::Approx(odd * v).epsilon(1e-12));
    CHECK(wigner3j(a, b, c, -x, -y, -w) == doctest::Approx(odd * v).epsilon(1e-12));
  }
  CHECK(checked == 2000);
}

TEST_CASE("3j orthogonality over 10^4 random identities") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dj(0, 12);
  int identities = 0;
  double worst = 0.0;
  while (identities < 10000) {
    const int j1 = dj(rng), j2 = dj(rng);
    if ((j1 + j2) % 2 != 0) continue;
    const int lo = std::abs(j1 - j2), hi = j1 + j2;
    std::uniform_int_distribution<int> pick(0, (hi - lo) / 2);
    const int j3 = lo + 2 * pick(rng), j3p = lo + 2 * pick(rng);
    std::uniform_int_distribution<int> m3d(0, j3), m3pd(0, j3p);
    const int m3 = -j3 + 2 * m3d(rng);
    const int m3p = rng() % 3 == 0 ? m3 : -j3p + 2 * m3pd(rng);
    double sum = 0.0;
    for (int m1 = -j1; m1 <= j1; m1 += 2)
      for (int m2 = -j2; m2 <= j2; m2 += 2)
        sum += (j3 + 1) * wigner3j(j1, j2, j3, m1, m2, m3) * wigner3j(j1, j2, j3p, m1, m2, m3p);
    const double expected = (j3 == j3p && m3 == m3p) ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(sum - expected));
    ++identities;
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("Clebsch-Gordan coefficients") {
  // spectator coupling with j2 = 0
  CHECK(clebsch_gordan(1, 1, 0, 0, 1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clebsch_gordan(2, 0, 1, 1, 3, 3) == 0.0);
  // <1 0; 1/2 1/2 | 1/2 1/2> = -sqrt(1/3) in this ordering
  CHECK(clebsch_gordan(2, 0, 1, 1, 1, 1) == doctest::Approx(-std::sqrt(1.0 / 3.0)).epsilon(1e-14));
  for (int l = 0; l <= 3; ++l)
    for (int j2 : {2 * l - 1, 2 * l + 1}) {
      if (j2 < 1) continue;
      for (int m2 = -j2; m2 <= j2; m2 += 2)
        for (int ms2 : {-1, 1})
          CHECK(clebsch_gordan(2 * l, m2 - ms2, 1, ms2, j2, m2) ==
                doctest::Approx(cg_spin_half(l, j2, m2, ms2)).epsilon(1e-13));
    }
}

TEST_CASE("Gaunt integrals against sphere quadrature") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const int l1 = rng() % 4, l2 = rng() % 3, l3 = rng() % 5;
    const int m1 = static_cast<int>(rng() % (2 * l1 + 1)) - l1;
    const int m2 = static_cast<int>(rng() % (2 * l2 + 1)) - l2;
    const int m3 = -m1 - m2;
    if (std::abs(m3) > l3) continue;
    auto f = [&](double x) {
      const double t = std::acos(x);
      // the phi integral of exp(i (m1 + m2 + m3) phi) is 2 pi here
      return 2.0 * M_PI * (ylm(l1, m1, t, 0) * ylm(l2, m2, t, 0) * ylm(l3, m3, t, 0)).real();
    };
    const double ref = boost::math::quadrature::gauss<double, 30>::integrate(f, -1.0, 1.0);
    CHECK(gaunt(l1, m1, l2, m2, l3, m3) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("dipole angular elements") {
  SUBCASE("spinless z element") {
    const cplx v = orbital_element(unit_vector_expansion()[2], 0, 0, 1, 0);
    CHECK(v.real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(orbital_element(unit_vector_expansion()[0], 0, 0, 1, 0) == 0.0);
  }
  SUBCASE("parity zero") {
    for (const auto& s : states_up_to(2))
      for (const auto& f : states_up_to(2))
        if (s.l == f.l) {
          const auto v = dipole_angular(f, s);
          for (auto c : v) CHECK(c == 0.0);
        }
  }
  SUBCASE("Unsold sum for s1/2 -> p") {
    for (int m2 : {-1, 1}) {
      double sum = 0.0;
      for (const auto& f : states_up_to(1))
        if (f.l == 1)
          for (auto c : dipole_angular(f, {0, 1, m2})) sum += std::norm(c);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  SUBCASE("Hermiticity") {
    const auto all = states_up_to(3);
    for (const auto& a : all)
      for (const auto& b : all) {
        const auto ab = dipole_angular(a, b), ba = dipole_angular(b, a);
        for (int c = 0; c < 3; ++c) CHECK(std::abs(ab[c] - std::conj(ba[c])) < 1e-14);
      }
  }
  SUBCASE("all l <= 3 elements match sphere quadrature") {
    const auto all = states_up_to(3);
    double worst = 0.0;
    for (const auto& f : all)
      for (const auto& i : all) {
        if (std::abs(f.l - i.l) != 1) continue;
        const auto v = dipole_angular(f, i);
        for (int c = 0; c < 3; ++c) {
          const cplx ref = sphere_element(f, i, [c](double t, double p) { return unit(c, t, p); });
          worst = std::max(worst, std::abs(v[c] - ref));
        }
      }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("quadrupole angular elements") {
  SUBCASE("trace on the diagonal") {
    for (const auto& s : states_up_to(3)) {
      const auto q = quadrupole_angular(s, s);
      CHECK(std::abs(q[0] + q[4] + q[8] - 1.0) < 1e-13);
    }
  }
  SUBCASE("s -> p is zero") {
    for (int jp2 : {1, 3})
      for (int m2 = -jp2; m2 <= jp2; m2 += 2)
        for (auto c : quadrupole_angular({1, jp2, m2}, {0, 1, 1})) CHECK(c == 0.0);
  }
  SUBCASE("s1/2 -> d5/2 selection in m") {
    for (int mp2 = -5; mp2 <= 5; mp2 += 2) {
      const auto q = quadrupole_angular({2, 5, mp2}, {0, 1, 1});
      bool any = false;
      for (auto c : q) any = any || c != 0.0;
      CHECK(any == (std::abs(mp2 - 1) <= 4));
    }
  }
  SUBCASE("all l <= 3 elements match sphere quadrature") {
    const auto all = states_up_to(3);
    double worst = 0.0;
    for (const auto& f : all)
      for (const auto& i : all) {
        if ((f.l + i.l) % 2 != 0 || std::abs(f.l - i.l) > 2) continue;
        const auto q = quadrupole_angular(f, i);
        for (int a = 0; a < 3; ++a)
          for (int b = a; b < 3; ++b) {
            const cplx ref = sphere_element(
                f, i, [a, b](double t, double p) { return unit(a, t, p) * unit(b, t, p); });
            worst = std::max(worst, std::abs(q[3 * a + b] - ref));
          }
      }
    CHECK(worst < 1e-8);
  }
}
