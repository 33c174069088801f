#include "rydcp/atomic_structure.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"

namespace rydcp {

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected an integer, got '" + s + "'");
  }
}

}  // namespace

double species_rydberg_energy(const std::string& species) {
  // Nuclear masses in atomic mass units (atomic mass minus electrons is
  // irrelevant at the precision of the defect tables).
  static const std::unordered_map<std::string, double> masses = {
      {"Li7", 7.0160034366},   {"Na23", 22.9897692820}, {"K39", 38.9637064864},
      {"Rb85", 84.9117897379}, {"Rb87", 86.9091805310}, {"Cs133", 132.9054519610},
  };
  const auto it = masses.find(species);
  if (it == masses.end()) return constants::rydberg_energy;
  const double mass = it->second * constants::atomic_mass_unit;
  return constants::rydberg_energy / (1.0 + constants::electron_mass / mass);
}

int lowest_principal(const std::string& species, int l) {
  // Lowest valence n per l for the alkali ground configurations; orbitals
  // below these belong to the closed core.
  static const std::unordered_map<std::string, std::array<int, 4>> lowest = {
      {"Li7", {2, 2, 3, 4}},  {"Na23", {3, 3, 3, 4}}, {"K39", {4, 4, 3, 4}},
      {"Rb85", {5, 5, 4, 4}}, {"Rb87", {5, 5, 4, 4}}, {"Cs133", {6, 6, 5, 4}},
  };
  if (l < 0) throw InvalidArgument("l must be >= 0");
  const auto it = lowest.find(species);
  if (it == lowest.end() || l > 3) return l + 1;
  return it->second[l];
}

QuantumDefectTable::QuantumDefectTable(std::string species, double rydberg_energy)
    : species_(std::move(species)), rydberg_energy_(rydberg_energy) {
  if (!(rydberg_energy_ > 0.0)) throw InvalidArgument("Rydberg energy must be positive");
}

QuantumDefectTable QuantumDefectTable::hydrogenic() {
  return QuantumDefectTable("H", constants::rydberg_energy);
}

void QuantumDefectTable::set_series(int l, int j2, DefectSeries s) {
  if (l < 0 || (j2 != 2 * l + 1 && j2 != 2 * l - 1) || j2 < 1) {
    throw InvalidArgument("invalid defect series l=" + std::to_string(l) +
                          " j2=" + std::to_string(j2));
  }
  series_[{l, j2}] = s;
  l_max_ = std::max(l_max_, l);
}

void QuantumDefectTable::check_complete() const {
  for (int l = 0; l <= l_max_; ++l) {
    for (int j2 : {2 * l - 1, 2 * l + 1}) {
      if (j2 < 1) continue;
      if (!series_.contains({l, j2})) {
        throw ConfigError("defect table for " + species_ + " lacks series l=" +
                          std::to_string(l) + " j2=" + std::to_string(j2));
      }
    }
  }
}

double QuantumDefectTable::defect(int n, int l, int j2) const {
  if (l > l_max_) return 0.0;
  const auto it = series_.find({l, j2});
  if (it == series_.end()) {
    throw InvalidState("no defect series for l=" + std::to_string(l) + " j2=" + std::to_string(j2));
  }
  const auto& s = it->second;
  const double base = n - s.delta0;
  if (s.delta2 == 0.0) return s.delta0;
  if (base <= 0.0) {
    throw InvalidState("n=" + std::to_string(n) + " is below the defect of series l=" +
                       std::to_string(l));
  }
  return s.delta0 + s.delta2 / (base * base);
}

QuantumDefectTable QuantumDefectTable::parse(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::string species;
  QuantumDefectTable table;
  bool table_init = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = source_name + ":" + std::to_string(line_no);
    const auto fields = split_csv(line);
    if (!header_seen) {
      const std::vector<std::string> expected = {"species", "l", "j2", "delta0", "delta2"};
      if (fields != expected) {
        throw ConfigError(where + ": expected header 'species,l,j2,delta0,delta2'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) throw ConfigError(where + ": expected 5 fields");
    if (!table_init) {
      species = fields[0];
      table = QuantumDefectTable(species, species_rydberg_energy(species));
      table_init = true;
    } else if (fields[0] != species) {
      throw ConfigError(where + ": mixed species '" + fields[0] + "' and '" + species + "'");
    }
    const int l = parse_int(fields[1], where);
    const int j2 = parse_int(fields[2], where);
    DefectSeries s{parse_double(fields[3], where), parse_double(fields[4], where)};
    if (s.delta0 < 0.0) throw ConfigError(where + ": delta0 must be nonnegative");
    try {
      table.set_series(l, j2, s);
    } catch (const InvalidArgument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (!header_seen) throw ConfigError(source_name + ": missing header");
  if (!table_init) throw ConfigError(source_name + ": no series rows");
  table.check_complete();
  return table;
}

QuantumDefectTable QuantumDefectTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open defect table " + path.string());
  return parse(in, path.string());
}

double effective_quantum_number(const QuantumState& state, const QuantumDefectTable& table) {
  state.validate();
  const double n_star = state.n - table.defect(state.n, state.l, state.j2);
  if (!(n_star > 0.0)) {
    throw InvalidState("effective quantum number of " + state.label() + " is nonpositive");
  }
  return n_star;
}

double state_energy(const QuantumState& state, const QuantumDefectTable& table) {
  const double n_star = effective_quantum_number(state, table);
  return -table.rydberg_energy() / (n_star * n_star);
}

double transition_frequency(const QuantumState& a, const QuantumState& b,
                            const QuantumDefectTable& table) {
  if (a.same_level(b)) {
    a.validate();
    return 0.0;
  }
  return (state_energy(b, table) - state_energy(a, table)) / constants::hbar;
}

}  // namespace rydcp
