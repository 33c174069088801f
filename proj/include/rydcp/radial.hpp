#pragma once

#include <vector>

#include "rydcp/atomic_structure.hpp"
#include "rydcp/quantum_state.hpp"

namespace rydcp {

/// Radial grid controls, atomic units (lengths in Bohr radii).
///
/// Grids are uniform in x = ln r and anchored to the lattice x_k = k * step.
/// The step is base_step / 2^p with the smallest p giving at least
/// points_per_wavelength samples per local wavelength, so the lattices of
/// any two states nest and share points exactly.
struct GridSpec {
  double core_radius = 0.1;
  double base_step = 0.01;
  double points_per_wavelength = 40.0;
  /// r_out = 2 n* (n* + outer_padding).
  double outer_padding = 15.0;
};

/// u(r) = r R(r) sampled on a logarithmic grid, stored in integration order
/// (strictly decreasing radii).
struct RadialWavefunction {
  QuantumState state;
  double n_star = 0.0;
  double step = 0.0;        ///< spacing in ln r
  int outer_index = 0;      ///< lattice index k of radii.front()
  std::vector<double> radii;
  std::vector<double> values;
  bool normalized = false;

  std::size_t size() const noexcept { return radii.size(); }
  int lattice_index(std::size_t i) const noexcept { return outer_index - static_cast<int>(i); }
  int inner_index() const noexcept { return lattice_index(size() - 1); }
  double inner_radius() const { return radii.back(); }
  double outer_radius() const { return radii.front(); }

  /// Sign changes of u over the grid.
  int node_count() const;
  /// Integral of u^2 dr.
  double norm_squared() const;
};

/// Inner cutoff r_in = max(core_radius, r_turn_inner / 10), a.u.
double inner_cutoff(double n_star, int l, const GridSpec& grid);
/// Outer start radius 2 n* (n* + padding), a.u.
double outer_radius(double n_star, const GridSpec& grid);
/// Log-grid spacing chosen for this state.
double grid_step(double n_star, const GridSpec& grid);

/// Inward Numerov integration of the radial equation in a pure Coulomb
/// potential at the quantum-defect energy. Throws IntegrationFailure when the
/// solution is non-finite or dominated by the irregular branch at the cutoff.
RadialWavefunction numerov_radial(const QuantumState& state, const QuantumDefectTable& table,
                                  const GridSpec& grid = {});

/// Integral of u_a r^power u_b dr in Bohr radii^power, power in {0, 1, 2}.
/// Grids of different spacing are merged on the finer lattice with cubic
/// interpolation of the coarser function. Symmetric in (a, b).
double radial_matrix_element(const RadialWavefunction& a, const RadialWavefunction& b, int power);

/// Composite Simpson rule on uniformly spaced samples (3/8 rule closes an
/// even number of points). Requires at least 2 samples.
double simpson(const std::vector<double>& f, double h);

}  // namespace rydcp
