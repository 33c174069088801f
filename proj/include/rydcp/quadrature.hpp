#pragma once

#include <functional>
#include <span>
#include <vector>

namespace rydcp {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  /// Per-component absolute floor, added to the relative criterion.
  double abs_tol = 0.0;
  int max_intervals = 4000;
  /// Optional component -> group map (negative: ungrouped). A grouped
  /// component's error floor becomes 1e-3 of the L1 mass of its whole group,
  /// so small members of a sum are not resolved beyond what the sum needs.
  std::vector<int> floor_group;
};

struct QuadratureResult {
  std::vector<double> value;
  std::vector<double> error;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
  /// max over components of error / max(|value|, L1 floor)
  double achieved_rel_error = 0.0;
};

/// Vector integrand: writes dim values for abscissa x into out.
using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

/// Globally adaptive 15-point Gauss-Kronrod quadrature of a vector-valued
/// function on [a, b]. Each component must satisfy
/// err_c <= rel_tol * max(|I_c|, 1e-3 * L1_c) + abs_tol, with L1_c the
/// integral of |f_c|; the L1 floor keeps components that cancel to nearly
/// zero from stalling the refinement.
QuadratureResult integrate(const VectorIntegrand& f, std::size_t dim, double a, double b,
                           const QuadratureOptions& opts = {});

/// Integral over [a, inf) of a function that decays on the length scale
/// `scale`: panels [a, a+s], [a+s, a+3s], ... of doubling width are summed
/// until a whole panel adds less than rel_tol * 1e-2 of the running value
/// (or its L1 floor) in every component.
QuadratureResult integrate_to_infinity(const VectorIntegrand& f, std::size_t dim, double a,
                                       double scale, const QuadratureOptions& opts = {});

}  // namespace rydcp
