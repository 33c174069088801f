#include "rydcp/channels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <tuple>

#include "rydcp/angular.hpp"
#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"

namespace rydcp {

const char* multipole_name(Multipole order) {
  return order == Multipole::dipole ? "dipole" : "quadrupole";
}

void TransitionChannel::validate() const {
  initial.validate();
  final_state.validate();
  const int dl = std::abs(initial.l - final_state.l);
  if (order == Multipole::dipole && dl != 1)
    throw InvalidArgument("dipole channel requires |l - l'| = 1: " + initial.label() + " -> " +
                          final_state.label());
  if (order == Multipole::quadrupole &&
      ((initial.l + final_state.l) % 2 != 0 || dl > 2 || (initial.l == 0 && final_state.l == 0)))
    throw InvalidArgument("quadrupole channel violates selection rules: " + initial.label() +
                          " -> " + final_state.label());
}

std::vector<double> TransitionChannel::coupling() const {
  if (order == Multipole::dipole) {
    std::vector<double> t(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) t[3 * i + j] = weight * (std::conj(dipole[i]) * dipole[j]).real();
    return t;
  }
  std::vector<double> t(81);
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      t[9 * a + b] = weight * (std::conj(quadrupole[a]) * quadrupole[b]).real();
  return t;
}

std::vector<TransitionChannel> build_channels(const QuantumState& initial,
                                              const QuantumDefectTable& table,
                                              const ChannelOptions& opts) {
  initial.validate();
  if (opts.window < 0) throw InvalidArgument("channel window must be >= 0");

  const double e = constants::elementary_charge;
  const double a0 = constants::bohr_radius;
  const auto psi0 = numerov_radial(initial, table, opts.grid);

  std::vector<int> m_list;
  if (opts.average_initial_m) {
    for (int m2 = -initial.j2; m2 <= initial.j2; m2 += 2) m_list.push_back(m2);
  } else {
    m_list.push_back(initial.m2);
  }
  const double weight = 1.0 / m_list.size();

  struct Target {
    int l;
    Multipole order;
  };
  std::vector<Target> targets;
  if (opts.include_dipole) {
    if (initial.l > 0) targets.push_back({initial.l - 1, Multipole::dipole});
    targets.push_back({initial.l + 1, Multipole::dipole});
  }
  if (opts.include_quadrupole) {
    for (int lp : {initial.l - 2, initial.l, initial.l + 2}) {
      if (lp < 0 || (initial.l == 0 && lp == 0)) continue;
      targets.push_back({lp, Multipole::quadrupole});
    }
  }

  std::vector<TransitionChannel> out;
  for (const auto& target : targets) {
    const int n_floor = lowest_principal(table.species(), target.l);
    const int n_lo = opts.include_all_lower ? n_floor : std::max(n_floor, initial.n - opts.window);
    for (int np = n_lo; np <= initial.n + opts.window; ++np) {
      if (np <= target.l) continue;
      for (int jp2 : {2 * target.l - 1, 2 * target.l + 1}) {
        if (jp2 < 1) continue;
        QuantumState level{np, target.l, jp2, jp2};
        const double omega = transition_frequency(initial, level, table);
        if (omega == 0.0) continue;
        const auto psi = numerov_radial(level, table, opts.grid);
        const int power = target.order == Multipole::dipole ? 1 : 2;
        const double radial = radial_matrix_element(psi, psi0, power);
        for (const int m2 : m_list) {
          const AngularState ini{initial.l, initial.j2, m2};
          for (int mp2 = -jp2; mp2 <= jp2; mp2 += 2) {
            const AngularState fin{target.l, jp2, mp2};
            TransitionChannel ch;
            ch.initial = {initial.n, initial.l, initial.j2, m2};
            ch.final_state = {np, target.l, jp2, mp2};
            ch.omega = omega;
            ch.order = target.order;
            ch.weight = weight;
            bool nonzero = false;
            if (target.order == Multipole::dipole) {
              const auto ang = dipole_angular(fin, ini);
              for (int c = 0; c < 3; ++c) {
                ch.dipole[c] = e * radial * a0 * ang[c];
                nonzero = nonzero || ang[c] != 0.0;
              }
            } else {
              const auto ang = quadrupole_angular(fin, ini);
              for (int c = 0; c < 9; ++c) {
                ch.quadrupole[c] = 0.5 * e * radial * a0 * a0 * ang[c];
                nonzero = nonzero || ang[c] != 0.0;
              }
            }
            if (nonzero) out.push_back(ch);
          }
        }
      }
    }
  }
  if (out.empty())
    throw InvalidArgument("no transition channels for " + initial.label() + " in the window");
  return out;
}

std::vector<ChannelGroup> group_channels(const std::vector<TransitionChannel>& channels) {
  std::map<std::tuple<int, int, int, int>, ChannelGroup> groups;
  for (const auto& ch : channels) {
    const auto key = std::make_tuple(ch.order == Multipole::dipole ? 0 : 1, ch.final_state.n,
                                     ch.final_state.l, ch.final_state.j2);
    auto it = groups.find(key);
    if (it == groups.end()) {
      ChannelGroup g;
      g.final_level = ch.final_state;
      g.final_level.m2 = g.final_level.j2;
      g.omega = ch.omega;
      g.order = ch.order;
      g.coupling.assign(ch.order == Multipole::dipole ? 9 : 81, 0.0);
      it = groups.emplace(key, std::move(g)).first;
    } else if (it->second.omega != ch.omega) {
      throw InvalidArgument("channels to " + ch.final_state.label() +
                            " carry inconsistent frequencies");
    }
    const auto t = ch.coupling();
    for (std::size_t i = 0; i < t.size(); ++i) it->second.coupling[i] += t[i];
  }
  std::vector<ChannelGroup> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

}  // namespace rydcp
