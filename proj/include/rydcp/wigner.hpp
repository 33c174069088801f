#pragma once

// Angular momentum coupling coefficients. All angular momenta and projections
// are passed doubled (two_j = 2j) so half-integers are exact. Phases follow
// the Condon-Shortley convention.

namespace rydcp {

/// True when (j1 j2 j3; m1 m2 m3) passes every selection rule: |m_i| <= j_i,
/// j_i + m_i integral, m1 + m2 + m3 = 0, triangle inequality and integral
/// j1 + j2 + j3.
bool wigner3j_allowed(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);

/// Wigner 3j symbol from the Racah sum with long-double factorials. Returns an
/// exact 0.0 whenever wigner3j_allowed is false, and for the (j1 j2 j3; 0 0 0)
/// symbols with odd j1 + j2 + j3.
double wigner3j(int two_j1, int two_j2, int two_j3, int two_m1, int two_m2, int two_m3);

/// <j1 m1; j2 m2 | j m> = (-1)^(j1 - j2 + m) sqrt(2j + 1) (j1 j2 j; m1 m2 -m).
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// Integral of Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} over the unit sphere. Integer
/// (not doubled) arguments.
double gaunt(int l1, int m1, int l2, int m2, int l3, int m3);

}  // namespace rydcp
