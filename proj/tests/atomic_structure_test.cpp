#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rydcp/atomic_structure.hpp"
#include "rydcp/errors.hpp"
#include "rydcp/radial.hpp"
#include "support.hpp"

using namespace rydcp;

TEST_CASE("quantum state invariants") {
  CHECK_NOTHROW(QuantumState{43, 0, 1, -1}.validate());
  CHECK_THROWS_AS(QuantumState({3, 3, 7, 1}).validate(), InvalidState);  // l >= n
  CHECK_THROWS_AS(QuantumState({5, 1, 5, 1}).validate(), InvalidState);  // j = l + 3/2
  CHECK_THROWS_AS(QuantumState({5, 0, -1, 1}).validate(), InvalidState);
  CHECK_THROWS_AS(QuantumState({5, 1, 3, 5}).validate(), InvalidState);  // |m| > j
  CHECK_THROWS_AS(QuantumState({5, 1, 3, 2}).validate(), InvalidState);  // m not half-integer
  CHECK(QuantumState{43, 0, 1, 1}.label() == "43s1/2");
  CHECK(QuantumState{42, 1, 3, -1}.label(true) == "42p3/2(m=-1/2)");
}

TEST_CASE("effective quantum number") {
  const auto& rb = testing::rb_table();
  // l beyond the table falls back to zero defect
  CHECK(effective_quantum_number({10, 5, 9, 9}, rb) == doctest::Approx(10.0).epsilon(1e-15));
  const double d0 = 3.1311804, d2 = 0.1784;
  const double expected = 43.0 - (d0 + d2 / ((43.0 - d0) * (43.0 - d0)));
  CHECK(effective_quantum_number({43, 0, 1, 1}, rb) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(39.8688).epsilon(1e-5));
  QuantumDefectTable t("X", constants::rydberg_energy);
  t.set_series(0, 1, {3.13, 0.0});
  CHECK_THROWS_AS(effective_quantum_number({2, 0, 1, 1}, t), InvalidState);
}

TEST_CASE("state energies and transition frequencies") {
  const auto h = QuantumDefectTable::hydrogenic();
  const double ry = constants::rydberg_energy;
  CHECK(state_energy({1, 0, 1, 1}, h) == doctest::Approx(-ry).epsilon(1e-15));
  CHECK(state_energy({2, 1, 3, 1}, h) == doctest::Approx(-ry / 4).epsilon(1e-15));

  const auto& rb = testing::rb_table();
  const QuantumState s{43, 0, 1, 1}, p{43, 1, 1, 1};
  const double ns = effective_quantum_number(s, rb);
  CHECK(state_energy(s, rb) == doctest::Approx(-rb.rydberg_energy() / (ns * ns)).epsilon(1e-14));
  CHECK(transition_frequency(s, s, rb) == 0.0);
  const double w = transition_frequency(s, p, rb);
  CHECK(transition_frequency(p, s, rb) == -w);
  CHECK(w > 1e10);
  CHECK(w < 1e12);
}

TEST_CASE("defect table parsing") {
  std::istringstream ok("# comment\nspecies,l,j2,delta0,delta2\nRb87,0,1,3.13,0.17\n");
  const auto t = QuantumDefectTable::parse(ok);
  CHECK(t.species() == "Rb87");
  CHECK(t.defect(40, 0, 1) == doctest::Approx(3.13 + 0.17 / ((40 - 3.13) * (40 - 3.13))));
  std::istringstream bad("species,l,j2,delta0,delta2\nRb87,0,1,abc,0\n");
  CHECK_THROWS_AS(QuantumDefectTable::parse(bad), ConfigError);
  std::istringstream missing("species,l,j2,delta0,delta2\nRb87,1,1,2.65,0.29\n");
  CHECK_THROWS_AS(QuantumDefectTable::parse(missing), ConfigError);
}

namespace {

GridSpec fine_grid() {
  GridSpec g;
  g.core_radius = 1e-3;
  return g;
}

}  // namespace

TEST_CASE("hydrogen 1s wavefunction matches the analytic form") {
  const auto wf = numerov_radial({1, 0, 1, 1}, QuantumDefectTable::hydrogenic(), fine_grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < wf.size(); ++i) {
    const double r = wf.radii[i];
    if (r < 0.5 || r > 20.0) continue;
    const double exact = 2.0 * r * std::exp(-r);
    worst = std::max(worst, testing::rel(std::abs(wf.values[i]), exact));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("hydrogen radial matrix elements") {
  const auto h = QuantumDefectTable::hydrogenic();
  const auto s1 = numerov_radial({1, 0, 1, 1}, h, fine_grid());
  const auto p2 = numerov_radial({2, 1, 1, 1}, h, fine_grid());
  CHECK(std::abs(radial_matrix_element(s1, p2, 1)) ==
        doctest::Approx(128.0 * std::sqrt(6.0) / 243.0).epsilon(1e-5));
  CHECK(radial_matrix_element(s1, s1, 1) == doctest::Approx(1.5).epsilon(1e-6));
  // <r^2> for 2p is 30 a0^2
  CHECK(radial_matrix_element(p2, p2, 2) == doctest::Approx(30.0).epsilon(1e-6));
}

TEST_CASE("node counts follow n - l - 1") {
  const auto h = QuantumDefectTable::hydrogenic();
  for (int n = 1; n <= 10; ++n)
    for (int l = 0; l < n; ++l) {
      const auto wf = numerov_radial({n, l, l == 0 ? 1 : 2 * l + 1, 1}, h);
      CHECK_MESSAGE(wf.node_count() == n - l - 1, "n=" << n << " l=" << l);
    }
}

TEST_CASE("zero-defect states of equal l are orthogonal") {
  const auto h = QuantumDefectTable::hydrogenic();
  for (int l : {0, 1, 2})
    for (int n1 = l + 1; n1 <= 8; ++n1)
      for (int n2 = n1 + 1; n2 <= 8; ++n2) {
        const int j2 = l == 0 ? 1 : 2 * l + 1;
        const auto a = numerov_radial({n1, l, j2, 1}, h, fine_grid());
        const auto b = numerov_radial({n2, l, j2, 1}, h, fine_grid());
        CHECK(std::abs(radial_matrix_element(a, b, 0)) < 1e-4);
      }
}

TEST_CASE("Rydberg wavefunctions") {
  const auto& rb = testing::rb_table();
  const auto s = numerov_radial({43, 0, 1, 1}, rb);
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-8));

  SUBCASE("decay beyond the outer turning point") {
    const double ns = s.n_star;
    const double turning = ns * ns + ns * std::sqrt(ns * ns);  // l = 0
    double last = INFINITY;
    // radii are stored outermost first
    for (std::size_t i = s.size(); i-- > 0;) {
      if (s.radii[i] < turning) continue;
      const double v = std::abs(s.values[i]);
      CHECK(v <= last);
      last = v;
    }
  }

  SUBCASE("bra and ket exchange") {
    const auto p = numerov_radial({43, 1, 3, 3}, rb);
    const double ab = radial_matrix_element(s, p, 1), ba = radial_matrix_element(p, s, 1);
    CHECK(std::abs(ab - ba) <= 1e-10 * std::abs(ab));
  }

  SUBCASE("n* scaling of radial elements") {
    std::vector<double> nstar, quad, dip;
    for (int n : {32, 43, 54}) {
      const QuantumState ns{n, 0, 1, 1};
      const auto a = numerov_radial(ns, rb);
      nstar.push_back(a.n_star);
      quad.push_back(radial_matrix_element(a, a, 2));
      const auto p = numerov_radial({n, 1, 1, 1}, rb);
      dip.push_back(radial_matrix_element(a, p, 1));
    }
    CHECK(testing::loglog_slope(nstar, quad) == doctest::Approx(4.0).epsilon(0.3 / 4));
    CHECK(testing::loglog_slope(nstar, dip) == doctest::Approx(2.0).epsilon(0.3 / 2));
  }
}

TEST_CASE("dipole element of the dominant channel grows as n*^2 over n in [30, 60]") {
  const auto& rb = testing::rb_table();
  std::vector<double> nstar, dip;
  for (int n = 30; n <= 60; n += 5) {
    const auto a = numerov_radial({n, 0, 1, 1}, rb);
    // the p level closest in energy below the s level is (n-1)p
    const auto p = numerov_radial({n - 1, 1, 3, 3}, rb);
    nstar.push_back(a.n_star);
    dip.push_back(radial_matrix_element(a, p, 1));
  }
  const double slope = testing::loglog_slope(nstar, dip);
  CHECK(slope > 1.7);
  CHECK(slope < 2.3);
}

TEST_CASE("lowest principal quantum numbers") {
  CHECK(lowest_principal("Rb87", 0) == 5);
  CHECK(lowest_principal("Rb87", 1) == 5);
  CHECK(lowest_principal("Rb87", 2) == 4);
  CHECK(lowest_principal("Rb87", 3) == 4);
  CHECK(lowest_principal("H", 2) == 3);
}
