#include "rydcp/green.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"
#include "rydcp/quadrature.hpp"

namespace rydcp {

namespace {

using constants::pi;
constexpr complex I{0.0, 1.0};

// One Cartesian component of a polarization or derivative vector: a scalar
// times cos(phi)^c sin(phi)^s.
struct Mono {
  complex v;
  int c;
  int s;
};
using Vec3 = std::array<Mono, 3>;

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

// Integral of cos^a sin^b over a full period.
double trig_moment(int a, int b) {
  if (a % 2 != 0 || b % 2 != 0) return 0.0;
  return 2.0 * pi * double_factorial(a - 1) * double_factorial(b - 1) / double_factorial(a + b);
}

// Polarization vectors for in-plane wavenumber k and normal wavenumber b.
// The p vectors are left unnormalized (times q), the 1/q^2 is applied later.
Vec3 e_s() { return {Mono{1.0, 0, 1}, Mono{-1.0, 1, 0}, Mono{0.0, 0, 0}}; }
Vec3 e_p_plus(complex k, complex b) { return {Mono{-b, 1, 0}, Mono{-b, 0, 1}, Mono{k, 0, 0}}; }
Vec3 e_p_minus(complex k, complex b) { return {Mono{b, 1, 0}, Mono{b, 0, 1}, Mono{k, 0, 0}}; }
// Gradient factors acting on exp(i k.rho + i b z) (first point) and on
// exp(-i k.rho' + i b z') (second point).
Vec3 grad_first(complex k, complex b) {
  return {Mono{I * k, 1, 0}, Mono{I * k, 0, 1}, Mono{I * b, 0, 0}};
}
Vec3 grad_second(complex k, complex b) {
  return {Mono{-I * k, 1, 0}, Mono{-I * k, 0, 1}, Mono{I * b, 0, 0}};
}

Mono times(const Mono& a, const Mono& b) { return {a.v * b.v, a.c + b.c, a.s + b.s}; }

complex angular(const Mono& m) {
  if (m.v == 0.0) return 0.0;
  const double w = trig_moment(m.c, m.s);
  return w == 0.0 ? complex(0.0) : m.v * w;
}

// Angle-integrated polarization sums for a single (k, b):
// s_out[jk] = int dphi (e_s e_s)_jk [(grad) factors], p_out likewise with e_p.
struct Kernel {
  bool derivs;
  std::vector<int> comps;  // flat indices of structurally nonzero entries

  explicit Kernel(bool with_derivs) : derivs(with_derivs) {
    const int n = derivs ? 81 : 9;
    std::vector<complex> s(n), p(n);
    eval(complex(1.0), complex(1.0), s, p);
    for (int i = 0; i < n; ++i)
      if (s[i] != 0.0 || p[i] != 0.0) comps.push_back(i);
  }

  void eval(complex k, complex b, std::vector<complex>& s_out, std::vector<complex>& p_out) const {
    const Vec3 es = e_s();
    const Vec3 epp = e_p_plus(k, b);
    const Vec3 epm = e_p_minus(k, b);
    if (!derivs) {
      for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 3; ++l) {
          s_out[3 * j + l] = angular(times(es[j], es[l]));
          p_out[3 * j + l] = angular(times(epp[j], epm[l]));
        }
      }
      return;
    }
    const Vec3 a = grad_first(k, b);
    const Vec3 g = grad_second(k, b);
    for (int i = 0; i < 3; ++i) {
      for (int l = 0; l < 3; ++l) {
        const Mono ag = times(a[i], g[l]);
        for (int j = 0; j < 3; ++j) {
          const Mono agj_s = times(ag, es[j]);
          const Mono agj_p = times(ag, epp[j]);
          for (int kk = 0; kk < 3; ++kk) {
            const int idx = GreenDerivTensor::index(i, j, kk, l);
            s_out[idx] = angular(times(agj_s, es[kk]));
            p_out[idx] = angular(times(agj_p, epm[kk]));
          }
        }
      }
    }
  }
};

const Kernel& kernel(bool derivs) {
  static const Kernel g(false);
  static const Kernel d(true);
  return derivs ? d : g;
}

// Integrates the angle-reduced reflection integral and returns the entries
// of G (derivs = false) or D (derivs = true), flat row-major.
std::vector<complex> coincidence_integral(const Surface& surface, double z, double freq, Axis axis,
                                          bool derivs, const GreenOptions& opts) {
  if (!(z > 0.0) || !std::isfinite(z)) throw InvalidArgument("Green tensor requires z > 0");
  if (axis != Axis::static_weighted && !(freq > 0.0))
    throw InvalidArgument("Green tensor requires freq > 0; use the static-weighted axis at zero");

  const Kernel& ker = kernel(derivs);
  const std::size_t nc = ker.comps.size();
  const int n = derivs ? 81 : 9;
  const double c = constants::speed_of_light;
  const bool mirror = surface.is_perfect_mirror();
  const DrudeModel& model = surface.model();
  const double wp2 = model.plasma_frequency * model.plasma_frequency;
  const double pref = 1.0 / (8.0 * pi * pi);

  std::vector<complex> out(n, 0.0);
  if (!mirror && model.plasma_frequency == 0.0) return out;

  QuadratureOptions qo;
  qo.rel_tol = opts.rel_tol;
  qo.max_intervals = opts.max_intervals;

  auto fail = [&](const QuadratureResult& r, const char* part) {
    throw QuadratureError(std::string("Green tensor quadrature (") + part + ", axis " +
                              axis_name(axis) + ", z = " + std::to_string(z) +
                              " m) did not converge; achieved relative error " +
                              std::to_string(r.achieved_rel_error),
                          r.achieved_rel_error);
  };

  // Per-call scratch reused across integrand evaluations.
  std::vector<complex> s(n), p(n);

  if (axis == Axis::static_weighted) {
    // lim xi^2 G: only the p term survives, with xi^2/q^2 = -c^2 and b = i kappa, k = kappa.
    const double rp = surface.static_rp();
    auto f = [&](double t, std::span<double> vals) {
      const double kappa = t / (2.0 * z);
      ker.eval(kappa, I * kappa, s, p);
      const double w = -c * c * rp * std::exp(-t) / (2.0 * z) * pref;
      for (std::size_t i = 0; i < nc; ++i) vals[i] = w * p[ker.comps[i]].real();
    };
    const auto r = integrate_to_infinity(f, nc, 0.0, derivs ? 4.0 : 2.0, qo);
    if (!r.converged) fail(r, "static");
    for (std::size_t i = 0; i < nc; ++i) out[ker.comps[i]] = r.value[i];
    return out;
  }

  if (axis == Axis::imaginary) {
    const double xi = freq;
    const double kz0 = xi / c;
    const double eps = 1.0 + wp2 / (xi * (xi + model.relaxation_rate));
    // q^2 (eps - 1) without cancellation
    const double dq = -wp2 * xi / ((xi + model.relaxation_rate) * c * c);
    const complex q2 = -kz0 * kz0;
    auto f = [&](double t, std::span<double> vals) {
      const double kappa = t / (2.0 * z);
      const double k = std::sqrt(std::max(0.0, (kappa - kz0) * (kappa + kz0)));
      const complex b = I * kappa;
      FresnelPair r;
      if (mirror) r = {-1.0, 1.0};
      else r = fresnel_from_beta(b, q2, eps, dq);
      ker.eval(k, b, s, p);
      // dk k/b = -i dkappa, times the i/(8 pi^2) prefactor
      const double w = std::exp(-t) / (2.0 * z) * pref;
      for (std::size_t i = 0; i < nc; ++i) {
        const int idx = ker.comps[i];
        vals[i] = w * (r.rs * s[idx] + r.rp * p[idx] / q2).real();
      }
    };
    const double t0 = 2.0 * z * kz0;
    const auto r = integrate_to_infinity(f, nc, t0, derivs ? 4.0 : 2.0, qo);
    if (!r.converged) fail(r, "imaginary");
    for (std::size_t i = 0; i < nc; ++i) out[ker.comps[i]] = r.value[i];
    return out;
  }

  // Real axis: propagating part over b in [0, q], evanescent part over t = 2 kappa z.
  const double q = freq / c;
  const complex q2 = q * q;
  const complex eps = mirror ? complex(1.0) : drude_permittivity(model, freq, Axis::real);
  const complex dq = q2 * (-wp2 / (freq * complex(freq, model.relaxation_rate)));
  auto reflect = [&](complex b) -> FresnelPair {
    if (mirror) return {-1.0, 1.0};
    return fresnel_from_beta(b, q2, eps, dq);
  };

  auto prop = [&](double b, std::span<double> vals) {
    const double k = std::sqrt(std::max(0.0, (q - b) * (q + b)));
    const FresnelPair r = reflect(complex(b, 0.0));
    ker.eval(k, b, s, p);
    // dk k/b = db; prefactor i/(8 pi^2)
    const complex w = I * pref * std::exp(complex(0.0, 2.0 * b * z));
    for (std::size_t i = 0; i < nc; ++i) {
      const int idx = ker.comps[i];
      const complex v = w * (r.rs * s[idx] + r.rp * p[idx] / q2);
      vals[2 * i] = v.real();
      vals[2 * i + 1] = v.imag();
    }
  };
  auto evan = [&](double t, std::span<double> vals) {
    const double kappa = t / (2.0 * z);
    const double k = std::hypot(q, kappa);
    const complex b = I * kappa;
    const FresnelPair r = reflect(b);
    ker.eval(k, b, s, p);
    // dk k/b = -i dkappa; (i)(-i) = 1
    const double w = std::exp(-t) / (2.0 * z) * pref;
    for (std::size_t i = 0; i < nc; ++i) {
      const int idx = ker.comps[i];
      const complex v = w * (r.rs * s[idx] + r.rp * p[idx] / q2);
      vals[2 * i] = v.real();
      vals[2 * i + 1] = v.imag();
    }
  };

  const auto rp_part = integrate(prop, 2 * nc, 0.0, q, qo);
  if (!rp_part.converged) fail(rp_part, "propagating");
  const auto re_part = integrate_to_infinity(evan, 2 * nc, 0.0, derivs ? 4.0 : 2.0, qo);
  if (!re_part.converged) fail(re_part, "evanescent");
  for (std::size_t i = 0; i < nc; ++i) {
    out[ker.comps[i]] = complex(rp_part.value[2 * i] + re_part.value[2 * i],
                                rp_part.value[2 * i + 1] + re_part.value[2 * i + 1]);
  }
  return out;
}

}  // namespace

bool deriv_component_allowed(int i, int j, int k, int l) {
  int nx = 0, ny = 0;
  for (int a : {i, j, k, l}) {
    nx += a == 0;
    ny += a == 1;
  }
  return nx % 2 == 0 && ny % 2 == 0;
}

GreenEval scattering_green(const Surface& surface, double z, double freq, Axis axis,
                           const GreenOptions& opts) {
  const auto v = coincidence_integral(surface, z, freq, axis, false, opts);
  GreenEval g;
  g.axis = axis;
  g.z = z;
  g.freq = freq;
  for (int i = 0; i < 9; ++i) g.m[i] = v[i];
  // Exact in-plane isotropy.
  g(1, 1) = g(0, 0);
  return g;
}

GreenDerivTensor scattering_green_derivs(const Surface& surface, double z, double freq, Axis axis,
                                         const GreenOptions& opts) {
  const auto v = coincidence_integral(surface, z, freq, axis, true, opts);
  GreenDerivTensor d;
  d.axis = axis;
  d.z = z;
  d.freq = freq;
  for (int i = 0; i < 81; ++i) d.d[i] = v[i];
  return d;
}

GreenEval freespace_im_green(double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("free-space Green tensor requires omega > 0");
  GreenEval g;
  g.axis = Axis::real;
  g.z = 0.0;
  g.freq = omega;
  const double v = omega / (6.0 * pi * constants::speed_of_light);
  for (int i = 0; i < 3; ++i) g(i, i) = v;
  return g;
}

GreenDerivTensor freespace_im_green_derivs(double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("free-space Green tensor requires omega > 0");
  GreenDerivTensor d;
  d.axis = Axis::real;
  d.freq = omega;
  const double q = omega / constants::speed_of_light;
  const double pref = q * q * q / (60.0 * pi);
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          d(i, j, k, l) = pref * (4.0 * delta(i, l) * delta(j, k) - delta(i, j) * delta(k, l) -
                                  delta(i, k) * delta(j, l));
  return d;
}

}  // namespace rydcp
