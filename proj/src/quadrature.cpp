#include "rydcp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rydcp {

namespace {

// Kronrod 15-point abscissae and weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b;
  std::vector<double> value, error, l1;
};

Interval gauss_kronrod(const VectorIntegrand& f, std::size_t dim, double a, double b,
                       std::vector<double>& scratch, int& evals) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // samples[k][c]: k = 0..14, node order: center, then +- pairs
  scratch.assign(15 * dim, 0.0);
  auto row = [&](int k) { return std::span<double>(scratch.data() + k * dim, dim); };
  f(center, row(0));
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f(center - dx, row(1 + 2 * j));
    f(center + dx, row(2 + 2 * j));
  }
  evals += 15;

  Interval out{a, b, std::vector<double>(dim), std::vector<double>(dim), std::vector<double>(dim)};
  for (std::size_t c = 0; c < dim; ++c) {
    const double fc = scratch[c];
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);
    for (int j = 0; j < 7; ++j) {
      const double f1 = scratch[(1 + 2 * j) * dim + c];
      const double f2 = scratch[(2 + 2 * j) * dim + c];
      resk += kWgk[j] * (f1 + f2);
      resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
      resasc += kWgk[j] * (std::abs(scratch[(1 + 2 * j) * dim + c] - mean) +
                           std::abs(scratch[(2 + 2 * j) * dim + c] - mean));
    }
    double err = std::abs((resk - resg) * half);
    resasc *= std::abs(half);
    resabs *= std::abs(half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(resk)) err = std::numeric_limits<double>::infinity();
    out.value[c] = resk * half;
    out.error[c] = err;
    out.l1[c] = resabs;
  }
  return out;
}

void totals(const std::vector<Interval>& intervals, std::size_t dim, std::vector<double>& value,
            std::vector<double>& error, std::vector<double>& l1) {
  value.assign(dim, 0.0);
  error.assign(dim, 0.0);
  l1.assign(dim, 0.0);
  for (const auto& iv : intervals) {
    for (std::size_t c = 0; c < dim; ++c) {
      value[c] += iv.value[c];
      error[c] += iv.error[c];
      l1[c] += iv.l1[c];
    }
  }
}

// Per-component L1 floor, widened to the group mass where groups are given.
std::vector<double> floors(const std::vector<double>& l1, const QuadratureOptions& opts) {
  std::vector<double> out(l1.size());
  for (std::size_t c = 0; c < l1.size(); ++c) out[c] = 1e-3 * l1[c];
  if (opts.floor_group.size() != l1.size()) return out;
  std::vector<double> mass;
  for (std::size_t c = 0; c < l1.size(); ++c) {
    const int g = opts.floor_group[c];
    if (g < 0) continue;
    if (static_cast<std::size_t>(g) >= mass.size()) mass.resize(g + 1, 0.0);
    mass[g] += l1[c];
  }
  for (std::size_t c = 0; c < l1.size(); ++c) {
    const int g = opts.floor_group[c];
    if (g >= 0) out[c] = std::max(out[c], 1e-3 * mass[g]);
  }
  return out;
}

double achieved(const std::vector<double>& value, const std::vector<double>& error,
                const std::vector<double>& floor) {
  double worst = 0.0;
  for (std::size_t c = 0; c < value.size(); ++c) {
    const double scale = std::max(std::abs(value[c]), floor[c]);
    if (scale > 0.0) worst = std::max(worst, error[c] / scale);
    else if (error[c] > 0.0) worst = std::numeric_limits<double>::infinity();
  }
  return worst;
}

}  // namespace

QuadratureResult integrate(const VectorIntegrand& f, std::size_t dim, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult result;
  std::vector<double> scratch;
  std::vector<Interval> intervals;
  // Start from four panels so narrow features near the ends are seen early.
  constexpr int kInitial = 4;
  for (int i = 0; i < kInitial; ++i) {
    const double x0 = a + (b - a) * i / kInitial;
    const double x1 = (i + 1 == kInitial) ? b : a + (b - a) * (i + 1) / kInitial;
    intervals.push_back(gauss_kronrod(f, dim, x0, x1, scratch, result.evaluations));
  }

  std::vector<double> value, error, l1, tol(dim);
  std::vector<std::pair<double, std::size_t>> scores;
  while (true) {
    totals(intervals, dim, value, error, l1);
    const auto floor = floors(l1, opts);
    bool done = true;
    for (std::size_t c = 0; c < dim; ++c) {
      tol[c] = opts.rel_tol * std::max(std::abs(value[c]), floor[c]) + opts.abs_tol;
      if (error[c] > tol[c]) done = false;
    }
    if (done) {
      result.converged = true;
      break;
    }
    if (static_cast<int>(intervals.size()) >= opts.max_intervals) break;

    scores.clear();
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        if (tol[c] > 0.0) s = std::max(s, intervals[i].error[c] / tol[c]);
        else if (intervals[i].error[c] > 0.0) s = std::numeric_limits<double>::infinity();
      }
      scores.emplace_back(s, i);
    }
    std::sort(scores.begin(), scores.end(), [](const auto& x, const auto& y) {
      return x.first > y.first || (x.first == y.first && x.second < y.second);
    });
    // Bisect the worst tenth (at least one) of the intervals.
    const std::size_t n_split = std::max<std::size_t>(1, scores.size() / 10);
    std::vector<std::size_t> to_split;
    for (std::size_t k = 0; k < n_split && k < scores.size(); ++k) {
      if (scores[k].first <= 0.0) break;
      to_split.push_back(scores[k].second);
    }
    if (to_split.empty()) break;
    std::sort(to_split.begin(), to_split.end(), std::greater<>());
    for (const std::size_t idx : to_split) {
      const Interval old = intervals[idx];
      const double mid = 0.5 * (old.a + old.b);
      if (!(mid > std::min(old.a, old.b) && mid < std::max(old.a, old.b))) continue;
      intervals[idx] = gauss_kronrod(f, dim, old.a, mid, scratch, result.evaluations);
      intervals.push_back(gauss_kronrod(f, dim, mid, old.b, scratch, result.evaluations));
    }
  }
  // Sum in interval-position order for reproducibility.
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a; });
  totals(intervals, dim, value, error, l1);
  result.value = value;
  result.error = error;
  result.intervals = static_cast<int>(intervals.size());
  result.achieved_rel_error = achieved(value, error, floors(l1, opts));
  return result;
}

QuadratureResult integrate_to_infinity(const VectorIntegrand& f, std::size_t dim, double a,
                                       double scale, const QuadratureOptions& opts) {
  QuadratureResult total;
  total.value.assign(dim, 0.0);
  total.error.assign(dim, 0.0);
  total.converged = true;
  std::vector<double> l1(dim, 0.0);
  double lo = a;
  double width = scale;
  constexpr int kMaxPanels = 64;
  bool tail_small = false;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const double hi = lo + width;
    const auto part = integrate(f, dim, lo, hi, opts);
    total.evaluations += part.evaluations;
    total.intervals += part.intervals;
    total.converged = total.converged && part.converged;
    tail_small = panel >= 1;
    for (std::size_t c = 0; c < dim; ++c) {
      total.value[c] += part.value[c];
      total.error[c] += part.error[c];
      // Each panel's L1 mass equals |value| when the integrand keeps its sign.
      l1[c] += std::abs(part.value[c]);
    }
    const auto floor = floors(l1, opts);
    for (std::size_t c = 0; c < dim; ++c) {
      const double ref = std::max(std::abs(total.value[c]), floor[c]);
      if (std::abs(part.value[c]) > 1e-2 * opts.rel_tol * ref + opts.abs_tol) tail_small = false;
    }
    lo = hi;
    width *= 2.0;
    if (tail_small) break;
  }
  if (!tail_small) total.converged = false;
  total.achieved_rel_error = achieved(total.value, total.error, floors(l1, opts));
  return total;
}

}  // namespace rydcp
