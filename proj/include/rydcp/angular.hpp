#pragma once

#include <array>
#include <complex>
#include <vector>

namespace rydcp {

using complex = std::complex<double>;

/// Fine-structure angular labels |l, j, m> with j, m doubled.
struct AngularState {
  int l = 0;
  int j2 = 1;
  int m2 = 1;
};

/// <l' j' m'| e_r |l j m>, Cartesian components ordered (x, y, z).
using DipoleAngularVector = std::array<complex, 3>;

/// <l' j' m'| e_r (x) e_r |l j m>, row-major 3x3.
using QuadAngularTensor = std::array<complex, 9>;

/// A real function on the sphere written as sum_k coeff_k Y_{L_k M_k}.
struct HarmonicTerm {
  complex coeff;
  int L;
  int M;
};
using HarmonicExpansion = std::vector<HarmonicTerm>;

/// Cartesian components of e_r in spherical harmonics.
const std::array<HarmonicExpansion, 3>& unit_vector_expansion();
/// Components of e_r (x) e_r, row-major, in spherical harmonics.
const std::array<HarmonicExpansion, 9>& unit_dyad_expansion();

/// <Y_{l' m'}| f |Y_{l m}> for f given as a harmonic expansion (Gaunt integrals).
complex orbital_element(const HarmonicExpansion& f, int l_final, int m_final, int l_initial,
                        int m_initial);

/// <final| f |initial> between spin-orbit coupled states, summing the
/// uncoupled |l m_l>|m_s> elements weighted by Clebsch-Gordan coefficients.
complex coupled_element(const HarmonicExpansion& f, const AngularState& final_state,
                        const AngularState& initial_state);

DipoleAngularVector dipole_angular(const AngularState& final_state,
                                   const AngularState& initial_state);

QuadAngularTensor quadrupole_angular(const AngularState& final_state,
                                     const AngularState& initial_state);

}  // namespace rydcp
