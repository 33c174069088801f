#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <random>

#include "green_oracle.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"
#include "rydcp/green.hpp"
#include "rydcp/medium.hpp"
#include "support.hpp"

using namespace rydcp;
using cplx = std::complex<double>;

namespace {

const double c0 = constants::speed_of_light;
const double pi = constants::pi;

double crel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Drude permittivity") {
  const DrudeModel vac{0.0, 1e13};
  CHECK(drude_permittivity(vac, 1e12, Axis::real) == cplx(1.0, 0.0));
  const DrudeModel lossless{1e16, 0.0};
  CHECK(drude_permittivity(lossless, 1e16, Axis::imaginary).real() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(drude_permittivity(lossless, 1e16, Axis::real)) < 1e-15);
  CHECK_THROWS_AS(drude_permittivity(testing::copper(), 0.0, Axis::imaginary), InvalidArgument);
  CHECK_THROWS_AS(drude_permittivity(testing::copper(), 1e12, Axis::static_weighted), InvalidArgument);
  CHECK_THROWS_AS(DrudeModel({-1.0, 1e13}).validate(), InvalidArgument);
}

TEST_CASE("Fresnel coefficients") {
  SUBCASE("no interface") {
    const auto f = fresnel(3e5, 1e14, cplx(1.0), Axis::real);
    CHECK(std::abs(f.rs) == 0.0);
    CHECK(std::abs(f.rp) == 0.0);
  }
  SUBCASE("mirror limit") {
    for (double k : {0.0, 1e3, 1e6, 1e8}) {
      const auto f = fresnel(k, 1e13, cplx(1e22, 1e24), Axis::real);
      CHECK(std::abs(f.rs + 1.0) < 1e-5);
      CHECK(std::abs(f.rp - 1.0) < 1e-5);
      const auto g = fresnel(k, 1e13, cplx(1e24), Axis::imaginary);
      CHECK(std::abs(g.rs + 1.0) < 1e-5);
      CHECK(std::abs(g.rp - 1.0) < 1e-5);
    }
  }
  SUBCASE("passivity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> lf(std::log(1e9), std::log(1e16)), lk(-8.0, std::log(1e4)),
        u(0.0, 1.0);
    bool rp_above_one = false;
    for (int t = 0; t < 2000; ++t) {
      const double w = std::exp(lf(rng));
      const cplx eps = drude_permittivity(testing::copper(), w, Axis::real);
      // evanescent: |r_s| <= 1 and no gain in either polarization
      const double k = (w / c0) * (1.0 + std::exp(lk(rng)));
      const auto f = fresnel(k, w, eps, Axis::real);
      CHECK(std::abs(f.rs) <= 1.0 + 1e-12);
      CHECK(f.rs.imag() >= 0.0);
      CHECK(f.rp.imag() >= 0.0);
      rp_above_one = rp_above_one || std::abs(f.rp) > 1.0;
      // propagating
      const auto p = fresnel(u(rng) * w / c0, w, eps, Axis::real);
      CHECK(std::abs(p.rs) <= 1.0 + 1e-12);
      CHECK(std::abs(p.rp) <= 1.0 + 1e-12);
      // imaginary axis: real, with 0 <= r_p <= 1 and -1 <= r_s <= 0
      const double kk = (w / c0) * std::exp(lk(rng));
      const auto g = fresnel(kk, w, drude_permittivity(testing::copper(), w, Axis::imaginary), Axis::imaginary);
      CHECK(g.rs.imag() == 0.0);
      CHECK(g.rp.imag() == 0.0);
      CHECK(g.rs.real() <= 0.0);
      CHECK(g.rs.real() >= -1.0);
      CHECK(g.rp.real() >= 0.0);
      CHECK(g.rp.real() <= 1.0);
    }
    // evanescent p waves of a metal are not bounded by one
    CHECK(rp_above_one);
  }
  SUBCASE("matches the textbook expressions") {
    const double w = 2e12, k = 5e4;
    const cplx eps = drude_permittivity(testing::copper(), w, Axis::real);
    const cplx q2 = w * w / (c0 * c0);
    const cplx bp = testing::upper_sqrt(q2 - k * k), bm = testing::upper_sqrt(eps * q2 - k * k);
    const auto f = fresnel(k, w, eps, Axis::real);
    CHECK(crel(f.rs, (bp - bm) / (bp + bm)) < 1e-12);
    CHECK(crel(f.rp, (eps * bp - bm) / (eps * bp + bm)) < 1e-12);
  }
}

TEST_CASE("scattering Green tensor against direct 2D quadrature") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> lz(std::log(0.5e-6), std::log(10e-6));
  const auto cu = Surface::drude(testing::copper());
  for (int sample = 0; sample < 10; ++sample) {
    const double z = std::exp(lz(rng));
    testing::OracleSetup s;
    s.imaginary = sample % 2 == 0;
    if (s.imaginary) {
      std::uniform_real_distribution<double> lx(std::log(1e-3), std::log(5.0));
      s.freq = std::exp(lx(rng)) * c0 / z;
    } else {
      std::uniform_real_distribution<double> lx(std::log(1e-3), std::log(10.0));
      s.freq = std::exp(lx(rng)) * c0 / z;
    }
    const auto ref = testing::oracle_green(s, 2.0 * z);
    const auto g = scattering_green(cu, z, s.freq, s.imaginary ? Axis::imaginary : Axis::real);
    INFO("z=" << z << " freq=" << s.freq << " imaginary=" << s.imaginary);
    CHECK(crel(g(0, 0), ref[0]) < 1e-6);
    CHECK(crel(g(1, 1), ref[4]) < 1e-6);
    CHECK(crel(g(2, 2), ref[8]) < 1e-6);
    CHECK(std::abs(ref[1]) < 1e-10 * std::abs(ref[0]));
    CHECK(g(0, 1) == 0.0);
    CHECK(g(0, 2) == 0.0);
    CHECK(g(1, 2) == 0.0);
    CHECK(g(0, 0) == g(1, 1));
  }
}

TEST_CASE("perfect mirror closed forms") {
  const auto pm = Surface::perfect_mirror();
  SUBCASE("static-weighted limits") {
    for (double z : {0.5e-6, 1e-6, 7e-6}) {
      const auto g = scattering_green(pm, z, 0.0, Axis::static_weighted);
      const double zz = c0 * c0 / (16 * pi * z * z * z), xx = c0 * c0 / (32 * pi * z * z * z);
      // attractive sign convention: xi^2 G is negative on the imaginary axis
      CHECK(g(2, 2).real() < 0.0);
      CHECK(g(0, 0).real() < 0.0);
      CHECK(std::abs(std::abs(g(2, 2).real()) - zz) < 1e-6 * zz);
      CHECK(std::abs(std::abs(g(0, 0).real()) - xx) < 1e-6 * xx);
    }
  }
  SUBCASE("real axis") {
    const double w = 3e14;
    const double q = w / c0;
    const cplx I(0.0, 1.0);
    for (double z : {1e-6, 3e-6, 3e-6 + pi / (2 * q), 20e-6}) {
      const double x = 2 * q * z;
      const cplx pre = std::exp(I * x) / (8 * pi * z);
      const cplx zz = pre * (-2.0 * I / x + 2.0 / (x * x));
      const cplx xx = -pre * (1.0 + I / x - 1.0 / (x * x));
      const auto g = scattering_green(pm, z, w, Axis::real);
      CHECK(crel(g(2, 2), zz) < 1e-6);
      CHECK(crel(g(0, 0), xx) < 1e-6);
    }
  }
  SUBCASE("Im G_zz oscillates with period pi c / omega") {
    const double w = 3e14, period = pi * c0 / w;
    const double z0 = 10e-6;
    const double a = scattering_green(pm, z0, w, Axis::real)(2, 2).imag();
    const double b = scattering_green(pm, z0 + period, w, Axis::real)(2, 2).imag();
    // the envelope falls as 1/z
    CHECK(b * (z0 + period) == doctest::Approx(a * z0).epsilon(0.02));
  }
}

TEST_CASE("imaginary-axis Green tensor of a Drude metal") {
  const auto cu = Surface::drude(testing::copper());
  SUBCASE("nonretarded limit") {
    const double z = 1e-6;
    const double xi = 1e-3 * c0 / z;
    const auto g = scattering_green(cu, z, xi, Axis::imaginary);
    const double eps = drude_permittivity(testing::copper(), xi, Axis::imaginary).real();
    const double ref = -c0 * c0 / (16 * pi * xi * xi * z * z * z) * (eps - 1) / (eps + 1);
    CHECK(std::abs(g(2, 2).real() / ref - 1.0) < 0.02);
  }
  SUBCASE("real, negative, magnitude decreasing in z and xi") {
    double prev_z = INFINITY;
    for (double z : {0.5e-6, 1e-6, 2e-6, 5e-6, 10e-6}) {
      const auto g = scattering_green(cu, z, 1e12, Axis::imaginary);
      for (int i = 0; i < 3; ++i) {
        CHECK(g(i, i).imag() == 0.0);
        CHECK(g(i, i).real() < 0.0);
      }
      CHECK(std::abs(g(2, 2)) < prev_z);
      prev_z = std::abs(g(2, 2));
    }
    double prev_xi = INFINITY;
    for (double xi : {1e10, 1e11, 1e12, 1e13, 1e14, 1e15}) {
      const auto g = scattering_green(cu, 2e-6, xi, Axis::imaginary);
      CHECK(std::abs(g(0, 0)) < prev_xi);
      prev_xi = std::abs(g(0, 0));
    }
  }
  SUBCASE("static-weighted value equals the xi -> 0 limit of xi^2 G") {
    const double z = 2e-6;
    const auto s = scattering_green(cu, z, 0.0, Axis::static_weighted);
    const double xi = 1e-4 * c0 / z;
    const auto g = scattering_green(cu, z, xi, Axis::imaginary);
    CHECK(xi * xi * g(2, 2).real() == doctest::Approx(s(2, 2).real()).epsilon(1e-3));
  }
}

TEST_CASE("real-axis far field decays as 1/z") {
  const auto cu = Surface::drude(testing::copper());
  const double w = 1e15;
  const double z1 = 20e-6, z2 = 80e-6;
  const auto a = scattering_green(cu, z1, w, Axis::real), b = scattering_green(cu, z2, w, Axis::real);
  CHECK(std::abs(b(0, 0)) * z2 == doctest::Approx(std::abs(a(0, 0)) * z1).epsilon(0.05));
}


TEST_CASE("derivative tensor against finite differences") {
  const auto cu = Surface::drude(testing::copper());
  const double z = 1e-6;
  for (bool imaginary : {true, false}) {
    testing::OracleSetup s;
    s.imaginary = imaginary;
    s.freq = imaginary ? 0.3 * c0 / z : 0.5 * c0 / z;
    const auto fd = testing::fd_derivs(s, z);
    const auto d = scattering_green_derivs(cu, z, s.freq, imaginary ? Axis::imaginary : Axis::real);
    for (int idx = 0; idx < 81; ++idx) {
      const int i = idx / 27, j = idx / 9 % 3, k = idx / 3 % 3, l = idx % 3;
      INFO("imaginary=" << imaginary << " ijkl=" << i << j << k << l);
      if (!deriv_component_allowed(i, j, k, l)) {
        CHECK(d.d[idx] == 0.0);
        continue;
      }
      CHECK(crel(d.d[idx], fd[idx]) < 1e-4);
    }
  }
}

TEST_CASE("derivative tensor symmetries") {
  const auto cu = Surface::drude(testing::copper());
  const auto d = scattering_green_derivs(cu, 2e-6, 4e11, Axis::real);
  const int swap_xy[3] = {1, 0, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const int nx = (i == 0) + (j == 0) + (k == 0) + (l == 0);
          const int ny = (i == 1) + (j == 1) + (k == 1) + (l == 1);
          CHECK(deriv_component_allowed(i, j, k, l) == (nx % 2 == 0 && ny % 2 == 0));
          // relabelling x <-> y and reciprocity
          CHECK(std::abs(d(i, j, k, l) - d(swap_xy[i], swap_xy[j], swap_xy[k], swap_xy[l])) <=
                1e-12 * std::abs(d(i, j, k, l)));
          CHECK(std::abs(d(i, j, k, l) - d(l, k, j, i)) <= 1e-9 * std::abs(d(i, j, k, l)));
        }
}

TEST_CASE("static-weighted D_zzzz falls as z^-5") {
  const auto cu = Surface::drude(testing::copper());
  std::vector<double> zs, v;
  for (double z = 0.5e-6; z <= 5.0001e-6; z *= std::pow(10.0, 0.125)) {
    zs.push_back(z);
    v.push_back(scattering_green_derivs(cu, z, 0.0, Axis::static_weighted)(2, 2, 2, 2).real());
  }
  CHECK(testing::loglog_slope(zs, v) == doctest::Approx(-5.0).epsilon(0.02 / 5));
}

namespace {

// Im G0(R) from its plane-wave angular average, accurate at small q R.
std::array<double, 9> im_g0(double q, const double R[3]) {
  std::array<double, 9> out{};
  constexpr int n_phi = 32;
  auto in_theta = [&](double x, int i, int j) {
    const double st = std::sqrt(1 - x * x);
    double s = 0.0;
    for (int a = 0; a < n_phi; ++a) {
      const double phi = 2 * pi * a / n_phi;
      const double n[3] = {st * std::cos(phi), st * std::sin(phi), x};
      s += ((i == j) - n[i] * n[j]) * std::cos(q * (n[0] * R[0] + n[1] * R[1] + n[2] * R[2]));
    }
    return s * 2 * pi / n_phi;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out[3 * i + j] = q / (16 * pi * pi) *
                       boost::math::quadrature::gauss<double, 20>::integrate(
                           [&](double x) { return in_theta(x, i, j); }, -1.0, 1.0);
  return out;
}

}  // namespace

TEST_CASE("free-space Green tensor") {
  const double w = 2e12, q = w / c0;
  const auto g = freespace_im_green(w);
  CHECK((g(0, 0) + g(1, 1) + g(2, 2)).real() == doctest::Approx(w / (2 * pi * c0)).epsilon(1e-14));
  CHECK(freespace_im_green(2 * w)(0, 0).real() == doctest::Approx(2 * g(0, 0).real()).epsilon(1e-14));

  const auto d = freespace_im_green_derivs(w);
  const double h = 2e-3 / q;
  double worst = 0.0, scale = 0.0;
  for (const auto& v : d.d) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) {
      // d_i d'_l G(r - r') = -d_i d_l G(R)
      std::array<double, 9> acc{};
      for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
          double R[3] = {0, 0, 0};
          R[i] += s1 * h;
          R[l] -= s2 * h;
          const auto v = im_g0(q, R);
          for (int m = 0; m < 9; ++m) acc[m] += s1 * s2 * v[m] / (4 * h * h);
        }
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double lib = d(i, j, k, l).real();
          const double fd = acc[3 * j + k];
          worst = std::max(worst, std::abs(lib - fd) / scale);
          if (std::abs(fd) > 1e-3 * scale) CHECK(std::abs(lib - fd) < 1e-6 * std::abs(fd));
        }
    }
  CHECK(worst < 1e-6);

  std::vector<double> ws, v;
  for (double x = 1e10; x < 1e14; x *= 3) {
    ws.push_back(x);
    v.push_back(freespace_im_green_derivs(x)(2, 2, 2, 2).real());
  }
  CHECK(std::abs(testing::loglog_slope(ws, v) - 3.0) < 1e-3);
}
