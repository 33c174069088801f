#include "rydcp/radial.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rydcp/errors.hpp"

namespace rydcp {

namespace {

double inner_turning_point(double n_star, int l) {
  const double ll = l * (l + 1.0);
  const double disc = n_star * n_star - ll;
  if (disc <= 0.0) return n_star * n_star;
  // n*^2 - n* sqrt(n*^2 - l(l+1)), written to avoid cancellation.
  return ll / (1.0 + std::sqrt(disc) / n_star);
}

// Cubic Lagrange interpolation of a coarse lattice function at fractional
// lattice coordinate s. `coarse_at(k)` returns the value at coarse index k,
// valid for k in [k_lo, k_hi].
template <class F>
double interpolate_cubic(F coarse_at, int k_lo, int k_hi, double s) {
  int k0 = static_cast<int>(std::floor(s)) - 1;
  k0 = std::clamp(k0, k_lo, std::max(k_lo, k_hi - 3));
  const double exact = s - std::round(s);
  if (std::abs(exact) < 1e-12) {
    const int k = static_cast<int>(std::lround(s));
    if (k >= k_lo && k <= k_hi) return coarse_at(k);
  }
  double result = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b == a) continue;
      w *= (s - (k0 + b)) / static_cast<double>(a - b);
    }
    result += w * coarse_at(k0 + a);
  }
  return result;
}

}  // namespace

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 2) throw InvalidArgument("simpson needs at least two samples");
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  if (n == 3) return h / 3.0 * (f[0] + 4.0 * f[1] + f[2]);
  auto simpson_odd = [&](std::size_t first, std::size_t count) {
    // count is odd, >= 3
    double s = f[first] + f[first + count - 1];
    for (std::size_t i = 1; i + 1 < count; ++i) s += (i % 2 ? 4.0 : 2.0) * f[first + i];
    return s * h / 3.0;
  };
  if (n % 2 == 1) return simpson_odd(0, n);
  // even: 3/8 rule on the last three intervals
  const std::size_t m = n - 3;
  const double tail = 3.0 * h / 8.0 * (f[m - 1] + 3.0 * f[m] + 3.0 * f[m + 1] + f[m + 2]);
  if (m == 1) return tail;
  return simpson_odd(0, m) + tail;
}

double inner_cutoff(double n_star, int l, const GridSpec& grid) {
  return std::max(grid.core_radius, inner_turning_point(n_star, l) / 10.0);
}

double outer_radius(double n_star, const GridSpec& grid) {
  return 2.0 * n_star * (n_star + grid.outer_padding);
}

double grid_step(double n_star, const GridSpec& grid) {
  // y(x) oscillates with local wavenumber sqrt(2 r + 2 E r^2 - (l+1/2)^2),
  // which peaks near n* at r = n*^2.
  const double max_wavenumber = std::max(n_star, 1.0);
  const double limit = 2.0 * constants::pi / (grid.points_per_wavelength * max_wavenumber);
  double h = grid.base_step;
  while (h > limit) h *= 0.5;
  return h;
}

int RadialWavefunction::node_count() const {
  int nodes = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if ((values[i - 1] < 0.0 && values[i] > 0.0) || (values[i - 1] > 0.0 && values[i] < 0.0)) {
      ++nodes;
    }
  }
  return nodes;
}

double RadialWavefunction::norm_squared() const {
  std::vector<double> f(values.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = values[i] * values[i] * radii[i];
  return simpson(f, step);
}

RadialWavefunction numerov_radial(const QuantumState& state, const QuantumDefectTable& table,
                                  const GridSpec& grid) {
  const double n_star = effective_quantum_number(state, table);
  // Hartree units with the infinite-mass Coulomb potential: E = -1/(2 n*^2).
  const double energy = -0.5 / (n_star * n_star);
  const double h = grid_step(n_star, grid);
  const double r_in = inner_cutoff(n_star, state.l, grid);
  const double r_out = outer_radius(n_star, grid);
  if (!(r_in < r_out)) throw IntegrationFailure("inner cutoff beyond outer radius for " + state.label());

  const int k_out = static_cast<int>(std::ceil(std::log(r_out) / h));
  const int k_in = static_cast<int>(std::floor(std::log(r_in) / h));
  const int count = k_out - k_in + 1;
  if (count < 8) throw IntegrationFailure("radial grid too short for " + state.label());

  RadialWavefunction wf;
  wf.state = state;
  wf.n_star = n_star;
  wf.step = h;
  wf.outer_index = k_out;
  wf.radii.resize(count);
  wf.values.resize(count);

  // With x = ln r and u = sqrt(r) y:  y'' = g(x) y,
  // g = (l + 1/2)^2 - 2 r - 2 E r^2.
  const double lh = state.l + 0.5;
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    const double r = std::exp((k_out - i) * h);
    wf.radii[i] = r;
    g[i] = lh * lh - 2.0 * r - 2.0 * energy * r * r;
  }
  const double h2_12 = h * h / 12.0;
  std::vector<double> y(count);
  y[0] = 1e-30;
  y[1] = y[0] * std::exp(h * std::sqrt(std::max(g[0], 0.0)));
  for (int i = 1; i + 1 < count; ++i) {
    const double next = (2.0 * y[i] * (1.0 + 5.0 * h2_12 * g[i]) - y[i - 1] * (1.0 - h2_12 * g[i - 1])) /
                        (1.0 - h2_12 * g[i + 1]);
    y[i + 1] = next;
    if (std::abs(next) > 1e150) {
      for (int j = 0; j <= i + 1; ++j) y[j] *= 1e-150;
    }
    if (!std::isfinite(y[i + 1])) {
      throw IntegrationFailure("Numerov integration diverged for " + state.label() + " at r=" +
                               std::to_string(wf.radii[i + 1]));
    }
  }
  for (int i = 0; i < count; ++i) wf.values[i] = y[i] * std::sqrt(wf.radii[i]);

  // Inside the inner turning point the regular solution falls monotonically
  // toward the origin. Once |u| turns up again (or flips sign) the irregular
  // branch dominates, so the grid ends there.
  const double r_turn = inner_turning_point(n_star, state.l);
  for (int i = 0; i + 1 < count; ++i) {
    if (wf.radii[i] > r_turn) continue;
    const bool flips = (wf.values[i] > 0.0) != (wf.values[i + 1] > 0.0);
    if (flips || std::abs(wf.values[i + 1]) > std::abs(wf.values[i])) {
      const int kept = i + 1;
      if (kept < 8) throw IntegrationFailure("radial grid too short for " + state.label());
      wf.radii.resize(kept);
      wf.values.resize(kept);
      break;
    }
  }

  // An inward solution whose largest amplitude sits at the cutoff, far above
  // the bound-state lobes, is the irregular branch taking over.
  double max_outside = 0.0;
  for (std::size_t i = 0; i < wf.size(); ++i) {
    if (wf.radii[i] >= r_turn) max_outside = std::max(max_outside, std::abs(wf.values[i]));
  }
  if (max_outside > 0.0 && std::abs(wf.values.back()) > 1e3 * max_outside) {
    throw IntegrationFailure("Numerov solution diverges before the inner cutoff for " + state.label());
  }

  const double norm2 = wf.norm_squared();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw IntegrationFailure("cannot normalize radial function of " + state.label());
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& v : wf.values) v *= scale;
  wf.normalized = true;
  return wf;
}

double radial_matrix_element(const RadialWavefunction& a, const RadialWavefunction& b, int power) {
  if (power < 0 || power > 2) throw InvalidArgument("radial power must be 0, 1 or 2");
  if (!a.normalized || !b.normalized) throw InvalidArgument("radial functions must be normalized");

  // Order the pair by step (finer first) so the result does not depend on
  // argument order.
  const bool a_finer = a.step < b.step || (a.step == b.step && !(b.state < a.state));
  const RadialWavefunction& fine = a_finer ? a : b;
  const RadialWavefunction& coarse = a_finer ? b : a;
  const double ratio_d = coarse.step / fine.step;
  const int ratio = static_cast<int>(std::lround(ratio_d));
  if (std::abs(ratio_d - ratio) > 1e-9 || ratio < 1) {
    throw GridOverlapError("radial grids are not on nested lattices");
  }

  // Overlap in fine lattice indices.
  const int fine_hi = std::min(fine.outer_index, coarse.outer_index * ratio);
  const int fine_lo = std::max(fine.inner_index(), coarse.inner_index() * ratio);
  const int count = fine_hi - fine_lo + 1;
  if (count < 16) throw GridOverlapError("radial grids overlap on fewer than 16 points");

  auto coarse_at = [&](int k) { return coarse.values[coarse.outer_index - k]; };
  std::vector<double> f(count);
  for (int i = 0; i < count; ++i) {
    const int k = fine_hi - i;
    const std::size_t fi = static_cast<std::size_t>(fine.outer_index - k);
    const double r = fine.radii[fi];
    const double cv = ratio == 1 ? coarse_at(k)
                                 : interpolate_cubic(coarse_at, coarse.inner_index(),
                                                     coarse.outer_index,
                                                     static_cast<double>(k) / ratio);
    double rp = r;  // dr = r dx
    for (int p = 0; p < power; ++p) rp *= r;
    f[i] = fine.values[fi] * cv * rp;
  }
  return simpson(f, fine.step);
}

}  // namespace rydcp
