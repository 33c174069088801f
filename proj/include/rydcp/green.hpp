#pragma once

#include <array>
#include <complex>

#include "rydcp/medium.hpp"

namespace rydcp {

/// Coincidence value of a 3x3 Green tensor (1/m), row-major.
///
/// On the static-weighted axis the entries hold lim xi^2 G(i xi), in m/s^2.
struct GreenEval {
  std::array<complex, 9> m{};
  Axis axis = Axis::imaginary;
  double z = 0.0;
  double freq = 0.0;

  complex& operator()(int i, int j) { return m[3 * i + j]; }
  const complex& operator()(int i, int j) const { return m[3 * i + j]; }
};

/// D_ijkl = d_i d'_l G_jk(r, r') at r = r' (1/m^3): d acts on the first
/// argument, d' on the second. Static-weighted entries hold lim xi^2 D(i xi).
struct GreenDerivTensor {
  std::array<complex, 81> d{};
  Axis axis = Axis::imaginary;
  double z = 0.0;
  double freq = 0.0;

  static constexpr int index(int i, int j, int k, int l) { return 27 * i + 9 * j + 3 * k + l; }
  complex& operator()(int i, int j, int k, int l) { return d[index(i, j, k, l)]; }
  const complex& operator()(int i, int j, int k, int l) const { return d[index(i, j, k, l)]; }
};

struct GreenOptions {
  double rel_tol = 1e-8;
  int max_intervals = 4000;
};

/// Which entries of D can be nonzero for a planar surface: those with an
/// even number of x indices and an even number of y indices.
bool deriv_component_allowed(int i, int j, int k, int l);

/// Reflected (scattering) Green tensor of the half-space at r = r' = (0, 0, z).
///
/// The in-plane wavevector integral is reduced analytically over its angle;
/// the remaining radial integral runs over the normal wavenumber. On the real
/// axis it splits into the propagating range and the evanescent tail (in
/// t = 2 kappa z); on the imaginary axis only the tail remains. Throws
/// QuadratureError when the tolerance is not met.
GreenEval scattering_green(const Surface& surface, double z, double freq, Axis axis,
                           const GreenOptions& opts = {});

/// Double gradient of the scattering Green tensor at coincidence.
GreenDerivTensor scattering_green_derivs(const Surface& surface, double z, double freq, Axis axis,
                                         const GreenOptions& opts = {});

/// Im G0(r, r, w) of free space: w / (6 pi c) times the identity.
GreenEval freespace_im_green(double omega);

/// Im [d_i d'_l G0_jk] at coincidence:
/// (w/c)^3 / (60 pi) [4 d_il d_jk - d_ij d_kl - d_ik d_jl].
GreenDerivTensor freespace_im_green_derivs(double omega);

}  // namespace rydcp
