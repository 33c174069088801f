#include "rydcp/angular.hpp"

#include <cmath>
#include <cstdlib>

#include "rydcp/constants.hpp"
#include "rydcp/wigner.hpp"

namespace rydcp {

namespace {

constexpr complex I{0.0, 1.0};

HarmonicExpansion scaled(HarmonicExpansion terms, double factor) {
  for (auto& t : terms) t.coeff *= factor;
  return terms;
}

}  // namespace

const std::array<HarmonicExpansion, 3>& unit_vector_expansion() {
  static const auto expansion = [] {
    const double s = std::sqrt(2.0 * constants::pi / 3.0);
    return std::array<HarmonicExpansion, 3>{
        scaled({{1.0, 1, -1}, {-1.0, 1, 1}}, s),
        scaled({{I, 1, -1}, {I, 1, 1}}, s),
        scaled({{std::sqrt(2.0), 1, 0}}, s),
    };
  }();
  return expansion;
}

const std::array<HarmonicExpansion, 9>& unit_dyad_expansion() {
  static const auto expansion = [] {
    const double s = std::sqrt(2.0 * constants::pi / 15.0);
    const double c20 = std::sqrt(2.0 / 3.0);
    const double c00 = std::sqrt(10.0 / 3.0);
    const HarmonicExpansion xx = {{1.0, 2, -2}, {1.0, 2, 2}, {-c20, 2, 0}, {c00, 0, 0}};
    const HarmonicExpansion yy = {{-1.0, 2, -2}, {-1.0, 2, 2}, {-c20, 2, 0}, {c00, 0, 0}};
    const HarmonicExpansion xy = {{I, 2, -2}, {-I, 2, 2}};
    const HarmonicExpansion xz = {{1.0, 2, -1}, {-1.0, 2, 1}};
    const HarmonicExpansion yz = {{I, 2, -1}, {I, 2, 1}};
    const HarmonicExpansion zz = {{std::sqrt(8.0 / 3.0), 2, 0}, {c00, 0, 0}};
    return std::array<HarmonicExpansion, 9>{
        scaled(xx, s), scaled(xy, s), scaled(xz, s),  //
        scaled(xy, s), scaled(yy, s), scaled(yz, s),  //
        scaled(xz, s), scaled(yz, s), scaled(zz, s),
    };
  }();
  return expansion;
}

complex orbital_element(const HarmonicExpansion& f, int l_final, int m_final, int l_initial,
                        int m_initial) {
  // Y*_{l'm'} = (-1)^{m'} Y_{l',-m'}
  complex sum = 0.0;
  for (const auto& term : f) {
    if (-m_final + term.M + m_initial != 0) continue;
    const double g = gaunt(l_final, -m_final, term.L, term.M, l_initial, m_initial);
    if (g == 0.0) continue;
    sum += term.coeff * g;
  }
  if (std::abs(m_final) % 2 == 1) sum = -sum;
  return sum;
}

complex coupled_element(const HarmonicExpansion& f, const AngularState& fin,
                        const AngularState& ini) {
  complex sum = 0.0;
  for (int ms2 : {-1, 1}) {
    const int ml2 = ini.m2 - ms2;
    const int ml2_final = fin.m2 - ms2;
    if (std::abs(ml2) > 2 * ini.l || std::abs(ml2_final) > 2 * fin.l) continue;
    const double c_ini = clebsch_gordan(2 * ini.l, ml2, 1, ms2, ini.j2, ini.m2);
    if (c_ini == 0.0) continue;
    const double c_fin = clebsch_gordan(2 * fin.l, ml2_final, 1, ms2, fin.j2, fin.m2);
    if (c_fin == 0.0) continue;
    const complex orb = orbital_element(f, fin.l, ml2_final / 2, ini.l, ml2 / 2);
    if (orb == 0.0) continue;
    sum += c_ini * c_fin * orb;
  }
  return sum;
}

DipoleAngularVector dipole_angular(const AngularState& fin, const AngularState& ini) {
  DipoleAngularVector out{};
  if (std::abs(fin.l - ini.l) != 1) return out;
  const auto& e_r = unit_vector_expansion();
  for (int c = 0; c < 3; ++c) out[c] = coupled_element(e_r[c], fin, ini);
  return out;
}

QuadAngularTensor quadrupole_angular(const AngularState& fin, const AngularState& ini) {
  QuadAngularTensor out{};
  if ((fin.l + ini.l) % 2 != 0 || std::abs(fin.l - ini.l) > 2) return out;
  const auto& dyad = unit_dyad_expansion();
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const complex v = coupled_element(dyad[3 * a + b], fin, ini);
      out[3 * a + b] = v;
      out[3 * b + a] = v;
    }
  }
  return out;
}

}  // namespace rydcp
