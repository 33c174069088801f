#include "rydcp/cp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"
#include "rydcp/quadrature.hpp"

namespace rydcp {

namespace {

using constants::boltzmann;
using constants::hbar;
using constants::mu0;
using constants::pi;

// 2 w / (hbar (w^2 + xi^2)): the frequency factor of a channel's polarizability.
double response(double omega, double xi) {
  if (omega == 0.0) throw SingularChannel("transition channel with zero frequency");
  return 2.0 * omega / (hbar * (omega * omega + xi * xi));
}

bool has_order(const std::vector<ChannelGroup>& groups, Multipole order) {
  for (const auto& g : groups)
    if (g.order == order) return true;
  return false;
}

// Real-axis scattering tensors keyed by |w|, filled on demand.
class RealAxisCache {
 public:
  RealAxisCache(const Surface& surface, double z, const GreenOptions& opts)
      : surface_(surface), z_(z), opts_(opts) {}

  const GreenEval& green(double w) {
    auto it = g_.find(w);
    if (it == g_.end()) it = g_.emplace(w, scattering_green(surface_, z_, w, Axis::real, opts_)).first;
    return it->second;
  }
  const GreenDerivTensor& derivs(double w) {
    auto it = d_.find(w);
    if (it == d_.end())
      it = d_.emplace(w, scattering_green_derivs(surface_, z_, w, Axis::real, opts_)).first;
    return it->second;
  }

 private:
  const Surface& surface_;
  double z_;
  GreenOptions opts_;
  std::map<double, GreenEval> g_;
  std::map<double, GreenDerivTensor> d_;
};

// Contraction of a group with the tensor of its multipole order.
double group_contract(const ChannelGroup& g, const GreenEval& green, const GreenDerivTensor* derivs) {
  return g.order == Multipole::dipole ? contract(g.coupling, green) : contract(g.coupling, *derivs);
}

}  // namespace

ThermalEnvironment::ThermalEnvironment(double temperature) : temperature_(temperature) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw InvalidArgument("temperature must be finite and >= 0");
}

double ThermalEnvironment::matsubara(int j) const {
  return 2.0 * pi * boltzmann * temperature_ * j / hbar;
}

double ThermalEnvironment::occupation(double omega) const {
  if (omega == 0.0) throw InvalidArgument("photon occupation is singular at zero frequency");
  const double w = std::abs(omega);
  const double n = temperature_ == 0.0 ? 0.0 : 1.0 / std::expm1(hbar * w / (boltzmann * temperature_));
  return omega > 0.0 ? n : -(1.0 + n);
}

std::array<double, 9> dipole_polarizability(const std::vector<TransitionChannel>& channels,
                                            double xi) {
  if (!(xi >= 0.0)) throw InvalidArgument("polarizability requires xi >= 0");
  std::array<double, 9> a{};
  for (const auto& ch : channels) {
    if (ch.order != Multipole::dipole) continue;
    const double f = response(ch.omega, xi);
    const auto t = ch.coupling();
    for (int i = 0; i < 9; ++i) a[i] += f * t[i];
  }
  // Symmetrize so single-m inputs return the reciprocal (symmetric) part.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) a[3 * i + j] = a[3 * j + i] = 0.5 * (a[3 * i + j] + a[3 * j + i]);
  return a;
}

std::array<double, 81> quadrupole_polarizability(const std::vector<TransitionChannel>& channels,
                                                 double xi) {
  if (!(xi >= 0.0)) throw InvalidArgument("polarizability requires xi >= 0");
  std::array<double, 81> a{};
  for (const auto& ch : channels) {
    if (ch.order != Multipole::quadrupole) continue;
    const double f = response(ch.omega, xi);
    const auto t = ch.coupling();
    for (int i = 0; i < 81; ++i) a[i] += f * t[i];
  }
  return a;
}

double contract(const std::vector<double>& coupling, const GreenEval& g) {
  if (coupling.size() != 9) throw InvalidArgument("dipole coupling must have 9 entries");
  double s = 0.0;
  for (int i = 0; i < 9; ++i) s += coupling[i] * g.m[i].real();
  return s;
}

double contract(const std::vector<double>& coupling, const GreenDerivTensor& d) {
  if (coupling.size() != 81) throw InvalidArgument("quadrupole coupling must have 81 entries");
  double s = 0.0;
  for (int i = 0; i < 81; ++i) s += coupling[i] * d.d[i].real();
  return s;
}

double CPResult::hz(double joules) { return joules / constants::planck; }

CPResult cp_potential(double z, const ThermalEnvironment& env, const Surface& surface,
                      const std::vector<TransitionChannel>& channels, const CPOptions& opts) {
  if (!(z > 0.0)) throw InvalidArgument("cp_potential requires z > 0");
  for (const auto& ch : channels)
    if (ch.omega == 0.0) throw SingularChannel("channel " + ch.final_state.label() + " has zero frequency");
  const auto groups = group_channels(channels);
  const bool want_quad = has_order(groups, Multipole::quadrupole);

  CPResult res;
  res.z = z;
  res.temperature = env.temperature();
  res.channels.resize(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    res.channels[g].label = groups[g].label();
    res.channels[g].final_level = groups[g].final_level;
    res.channels[g].order = groups[g].order;
    res.channels[g].omega = groups[g].omega;
  }

  // Static-weighted tensors: the j = 0 term and the xi -> 0 end of the T = 0 integral.
  const GreenEval g_static = scattering_green(surface, z, 0.0, Axis::static_weighted, opts.green);
  GreenDerivTensor d_static;
  if (want_quad) d_static = scattering_green_derivs(surface, z, 0.0, Axis::static_weighted, opts.green);

  // Per-group xi^2 alpha . G at imaginary frequency xi (without outer prefactors).
  auto group_terms = [&](double xi, const GreenEval& gg, const GreenDerivTensor* dd,
                         std::vector<double>& out) {
    for (std::size_t g = 0; g < groups.size(); ++g)
      out[g] = response(groups[g].omega, xi) * group_contract(groups[g], gg, dd);
  };

  std::vector<double> terms(groups.size());
  if (!env.is_zero_temperature()) {
    const double pref = mu0 * boltzmann * env.temperature();
    double sum_d = 0.0, sum_q = 0.0;
    double prev_d = 0.0, prev_q = 0.0;
    bool converged = false;
    for (int j = 0; j < opts.max_matsubara_terms; ++j) {
      const double xi = env.matsubara(j);
      if (j == 0) {
        group_terms(0.0, g_static, want_quad ? &d_static : nullptr, terms);
      } else {
        GreenEval gg = scattering_green(surface, z, xi, Axis::imaginary, opts.green);
        GreenDerivTensor dd;
        if (want_quad) dd = scattering_green_derivs(surface, z, xi, Axis::imaginary, opts.green);
        for (auto& v : gg.m) v *= xi * xi;
        for (auto& v : dd.d) v *= xi * xi;
        group_terms(xi, gg, want_quad ? &dd : nullptr, terms);
      }
      const double w = (j == 0 ? 0.5 : 1.0) * pref;
      MatsubaraTerm term{j, xi, 0.0, 0.0};
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const double v = w * terms[g];
        res.channels[g].nonresonant += v;
        (groups[g].order == Multipole::dipole ? term.dipole : term.quadrupole) += v;
      }
      res.ledger.push_back(term);
      sum_d += term.dipole;
      sum_q += term.quadrupole;
      if (j >= 2) {
        // Geometric tail from the last ratio of consecutive terms, per multipole.
        auto tail = [](double cur, double prev) {
          if (cur == 0.0) return 0.0;
          if (prev == 0.0) return std::numeric_limits<double>::infinity();
          const double r = std::abs(cur / prev);
          return r < 1.0 ? std::abs(cur) * r / (1.0 - r) : std::numeric_limits<double>::infinity();
        };
        const double td = tail(term.dipole, prev_d);
        const double tq = tail(term.quadrupole, prev_q);
        if (td <= opts.matsubara_tail * std::abs(sum_d) && tq <= opts.matsubara_tail * std::abs(sum_q)) {
          res.truncation_estimate = td + tq;
          converged = true;
          break;
        }
      }
      prev_d = term.dipole;
      prev_q = term.quadrupole;
    }
    if (!converged)
      throw MatsubaraNonConvergence("Matsubara sum at z = " + std::to_string(z) + " m, T = " +
                                    std::to_string(env.temperature()) + " K did not meet the tail criterion in " +
                                    std::to_string(opts.max_matsubara_terms) + " terms");
    for (const auto& t : res.ledger) {
      res.dipole_nonresonant += t.dipole;
      res.quadrupole_nonresonant += t.quadrupole;
    }
  } else {
    // hbar mu0 / (2 pi) int_0^inf dxi xi^2 alpha(i xi) . G(i xi), in u = ln xi.
    double w_min = std::numeric_limits<double>::infinity();
    for (const auto& g : groups) w_min = std::min(w_min, std::abs(g.omega));
    const double xi_lo = 1e-4 * w_min;
    const double xi_hi = 25.0 * constants::speed_of_light / z;
    const double pref = hbar * mu0 / (2.0 * pi);
    const std::size_t ng = groups.size();
    QuadratureOptions qo;
    qo.rel_tol = opts.frequency_tol;
    qo.floor_group.resize(ng);
    for (std::size_t g = 0; g < ng; ++g) qo.floor_group[g] = groups[g].order == Multipole::dipole ? 0 : 1;
    std::vector<double> local(ng);
    auto f = [&](double u, std::span<double> out) {
      const double xi = std::exp(u);
      GreenEval gg = scattering_green(surface, z, xi, Axis::imaginary, opts.green);
      GreenDerivTensor dd;
      if (want_quad) dd = scattering_green_derivs(surface, z, xi, Axis::imaginary, opts.green);
      for (auto& v : gg.m) v *= xi * xi;
      for (auto& v : dd.d) v *= xi * xi;
      group_terms(xi, gg, want_quad ? &dd : nullptr, local);
      for (std::size_t g = 0; g < ng; ++g) out[g] = xi * local[g];
    };
    const auto r = integrate(f, ng, std::log(xi_lo), std::log(xi_hi), qo);
    if (!r.converged)
      throw QuadratureError("zero-temperature frequency integral at z = " + std::to_string(z) +
                                " m did not converge",
                            r.achieved_rel_error);
    group_terms(0.0, g_static, want_quad ? &d_static : nullptr, local);
    double err = 0.0;
    for (std::size_t g = 0; g < ng; ++g) {
      const double v = pref * (r.value[g] + xi_lo * local[g]);
      res.channels[g].nonresonant = v;
      err += pref * r.error[g];
      (groups[g].order == Multipole::dipole ? res.dipole_nonresonant : res.quadrupole_nonresonant) += v;
    }
    res.truncation_estimate = err;
  }

  // Resonant terms: mu0 w^2 n(w) T . Re G(|w|).
  RealAxisCache cache(surface, z, opts.green);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& grp = groups[g];
    const double n = env.occupation(grp.omega);
    if (n == 0.0) continue;
    const double w = std::abs(grp.omega);
    const double c = grp.order == Multipole::dipole ? contract(grp.coupling, cache.green(w))
                                                    : contract(grp.coupling, cache.derivs(w));
    const double v = mu0 * w * w * n * c;
    res.channels[g].resonant = v;
    (grp.order == Multipole::dipole ? res.dipole_resonant : res.quadrupole_resonant) += v;
  }
  return res;
}

DecayResult decay_rates(double z, const ThermalEnvironment& env, const Surface& surface,
                        const std::vector<TransitionChannel>& channels, const GreenOptions& opts) {
  if (!(z > 0.0)) throw InvalidArgument("decay_rates requires z > 0");
  const auto groups = group_channels(channels);
  DecayResult res;
  res.z = z;
  res.temperature = env.temperature();
  RealAxisCache cache(surface, z, opts);
  for (const auto& grp : groups) {
    if (grp.omega == 0.0) throw SingularChannel("channel " + grp.label() + " has zero frequency");
    ChannelRate rate;
    rate.label = grp.label();
    rate.order = grp.order;
    rate.omega = grp.omega;
    rate.upward = grp.omega > 0.0;
    const double w = std::abs(grp.omega);
    // Downward: n(|w|) + 1 = -n(-|w|); upward: n(w).
    const double weight = rate.upward ? env.occupation(w) : 1.0 + env.occupation(w);
    if (weight > 0.0) {
      const double pref = 2.0 * mu0 * w * w / hbar * weight;
      double scat = 0.0, free = 0.0;
      if (grp.order == Multipole::dipole) {
        const auto& g = cache.green(w);
        const auto g0 = freespace_im_green(w);
        for (int i = 0; i < 9; ++i) {
          scat += grp.coupling[i] * g.m[i].imag();
          free += grp.coupling[i] * g0.m[i].real();
        }
      } else {
        const auto& d = cache.derivs(w);
        const auto d0 = freespace_im_green_derivs(w);
        for (int i = 0; i < 81; ++i) {
          scat += grp.coupling[i] * d.d[i].imag();
          free += grp.coupling[i] * d0.d[i].real();
        }
      }
      rate.rate = pref * (free + scat);
      rate.freespace_rate = pref * free;
    }
    (grp.order == Multipole::dipole ? res.dipole : res.quadrupole) += rate.rate;
    res.freespace += rate.freespace_rate;
    res.channels.push_back(rate);
  }
  return res;
}

std::vector<ChannelShare> contribution_breakdown(const CPResult& result) {
  const double totals[2] = {result.dipole(), result.quadrupole()};
  std::vector<ChannelShare> out;
  bool present[2] = {false, false};
  for (const auto& ch : result.channels) present[ch.order == Multipole::dipole ? 0 : 1] = true;
  for (int k = 0; k < 2; ++k)
    if (present[k] && totals[k] == 0.0)
      throw InvalidArgument(std::string("total ") + (k == 0 ? "dipole" : "quadrupole") +
                            " shift is zero; shares are undefined");
  for (const auto& ch : result.channels) {
    ChannelShare s;
    s.label = ch.label;
    s.final_level = ch.final_level;
    s.order = ch.order;
    s.omega = ch.omega;
    s.shift = ch.total();
    s.share = s.shift / totals[ch.order == Multipole::dipole ? 0 : 1];
    out.push_back(s);
  }
  return out;
}

std::vector<ChannelShare> merge_fine_structure(const std::vector<ChannelShare>& shares) {
  std::vector<ChannelShare> out;
  for (const auto& s : shares) {
    auto it = std::find_if(out.begin(), out.end(), [&](const ChannelShare& m) {
      return m.order == s.order && m.final_level.n == s.final_level.n && m.final_level.l == s.final_level.l;
    });
    if (it == out.end()) {
      ChannelShare m = s;
      m.label = std::to_string(s.final_level.n) + orbital_letter(s.final_level.l);
      out.push_back(m);
      continue;
    }
    it->shift += s.shift;
    it->share += s.share;
    if (std::abs(s.omega) < std::abs(it->omega)) it->omega = s.omega;
  }
  return out;
}

ScalingFit scaling_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("scaling_fit: x and y differ in length");
  if (x.size() < 4) throw InvalidArgument("scaling_fit needs at least 4 samples");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] != 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw InvalidArgument("scaling_fit needs x > 0 and finite nonzero y");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("scaling_fit needs at least two distinct x values");
  ScalingFit fit;
  fit.samples = n;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + fit.exponent * lx[i]);
    ssr += r * r;
  }
  fit.uncertainty = std::sqrt(ssr / (n - 2) / sxx);
  return fit;
}

std::vector<TemperatureRow> temperature_sweep(double z, const std::vector<double>& temperatures,
                                              const Surface& surface,
                                              const std::vector<TransitionChannel>& channels,
                                              const CPOptions& opts) {
  std::vector<TemperatureRow> rows;
  for (const double t : temperatures) {
    const ThermalEnvironment env(t);
    rows.push_back({t, cp_potential(z, env, surface, channels, opts),
                    decay_rates(z, env, surface, channels, opts.green)});
  }
  return rows;
}

}  // namespace rydcp
