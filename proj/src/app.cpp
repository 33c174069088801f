#include "rydcp/app.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"

namespace rydcp::app {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- config

std::vector<double> DistanceGrid::points() const {
  std::vector<double> z(count);
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    z[i] = logarithmic ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  if (count > 1) z.back() = max;
  return z;
}

void RunConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
  };
  if (defects.empty()) bad("defects", "a quantum-defect table path is required");
  if (!material_file && !material && !perfect_mirror) bad("material", "no material given");
  if (material) {
    try {
      material->validate();
    } catch (const InvalidArgument& e) {
      bad("material", e.what());
    }
  }
  if (states.empty()) bad("states", "at least one initial state is required");
  for (std::size_t i = 0; i < states.size(); ++i) {
    try {
      states[i].state().validate();
    } catch (const InvalidState& e) {
      bad("states[" + std::to_string(i) + "]", e.what());
    }
  }
  if (temperatures.empty()) bad("temperatures", "at least one temperature is required");
  for (double t : temperatures)
    if (!(t >= 0.0) || !std::isfinite(t)) bad("temperatures", "temperatures must be >= 0");
  if (!(distances.min > 0.0)) bad("distances.min", "must be > 0");
  if (!(distances.max >= distances.min)) bad("distances.max", "must be >= distances.min");
  if (distances.count < 2) bad("distances.count", "must be >= 2");
  if (window < 0) bad("window", "must be >= 0");
  if (!(tolerance > 0.0 && tolerance <= 1e-2)) bad("tolerance", "must lie in (0, 1e-2]");
  if (!(matsubara_tail > 0.0 && matsubara_tail <= 1e-2))
    bad("matsubara_tail", "must lie in (0, 1e-2]");
  if (threads < 0) bad("threads", "must be >= 0");
  for (double z : contribution_z)
    if (!(z > 0.0)) bad("contributions.z", "distances must be > 0");
  if (!(scaling_z > 0.0)) bad("scaling.z_for_n", "must be > 0");
}

namespace {

template <typename T>
T get_field(const json& j, const std::string& key, const std::string& path) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config field '" + path + "': " + e.what());
  }
}

StateSpec parse_state(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError("config field '" + path + "': expected an object");
  StateSpec s;
  s.n = get_field<int>(j, "n", path + ".n");
  s.l = j.contains("l") ? get_field<int>(j, "l", path + ".l") : 0;
  const double jj = j.contains("j") ? get_field<double>(j, "j", path + ".j") : s.l + 0.5;
  s.j2 = static_cast<int>(std::lround(2.0 * jj));
  if (std::abs(2.0 * jj - s.j2) > 1e-9) throw ConfigError("config field '" + path + ".j': must be half-integer");
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& text, const fs::path& base_dir,
                       const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source_name + ": top level must be an object");

  static const std::vector<std::string> known = {
      "species", "defects", "material", "state", "states", "temperatures", "distances",
      "window", "include_all_lower", "tolerance", "matsubara_tail", "output", "threads",
      "contributions", "scaling"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(source_name + ": unknown config field '" + key + "'");

  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return (path.is_absolute() ? path : base_dir / path).lexically_normal();
  };

  RunConfig c;
  if (j.contains("species")) c.species = get_field<std::string>(j, "species", "species");
  if (!j.contains("defects")) throw ConfigError(source_name + ": config field 'defects' is required");
  c.defects = resolve(get_field<std::string>(j, "defects", "defects"));

  if (!j.contains("material")) throw ConfigError(source_name + ": config field 'material' is required");
  const auto& m = j.at("material");
  if (m.is_string()) {
    const auto s = m.get<std::string>();
    if (s == "perfect_mirror") c.perfect_mirror = true;
    else c.material_file = resolve(s);
  } else if (m.is_object()) {
    if (m.contains("file")) {
      c.material_file = resolve(get_field<std::string>(m, "file", "material.file"));
    } else {
      c.material = DrudeModel{get_field<double>(m, "omega_p", "material.omega_p"),
                              get_field<double>(m, "gamma", "material.gamma")};
    }
  } else {
    throw ConfigError("config field 'material': expected a path, \"perfect_mirror\" or an object");
  }

  if (j.contains("state") && j.contains("states"))
    throw ConfigError(source_name + ": give either 'state' or 'states', not both");
  if (j.contains("state")) {
    c.states = {parse_state(j.at("state"), "state")};
  } else if (j.contains("states")) {
    const auto& arr = j.at("states");
    if (!arr.is_array()) throw ConfigError("config field 'states': expected an array");
    c.states.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      c.states.push_back(parse_state(arr[i], "states[" + std::to_string(i) + "]"));
  }
  if (j.contains("temperatures")) {
    const auto& t = j.at("temperatures");
    if (t.is_number()) c.temperatures = {t.get<double>()};
    else c.temperatures = get_field<std::vector<double>>(j, "temperatures", "temperatures");
  }
  if (j.contains("distances")) {
    const auto& d = j.at("distances");
    if (!d.is_object()) throw ConfigError("config field 'distances': expected an object");
    c.distances.min = get_field<double>(d, "min", "distances.min");
    c.distances.max = get_field<double>(d, "max", "distances.max");
    c.distances.count = get_field<int>(d, "count", "distances.count");
    if (d.contains("spacing")) {
      const auto s = get_field<std::string>(d, "spacing", "distances.spacing");
      if (s == "log") c.distances.logarithmic = true;
      else if (s == "linear") c.distances.logarithmic = false;
      else throw ConfigError("config field 'distances.spacing': expected 'log' or 'linear'");
    }
  }
  if (j.contains("window")) c.window = get_field<int>(j, "window", "window");
  if (j.contains("include_all_lower"))
    c.include_all_lower = get_field<bool>(j, "include_all_lower", "include_all_lower");
  if (j.contains("tolerance")) c.tolerance = get_field<double>(j, "tolerance", "tolerance");
  if (j.contains("matsubara_tail"))
    c.matsubara_tail = get_field<double>(j, "matsubara_tail", "matsubara_tail");
  if (j.contains("output")) c.output = resolve(get_field<std::string>(j, "output", "output"));
  else c.output = base_dir / "out";
  if (j.contains("threads")) c.threads = get_field<int>(j, "threads", "threads");
  if (j.contains("contributions")) {
    const auto& s = j.at("contributions");
    if (s.contains("z")) {
      if (s.at("z").is_number()) c.contribution_z = {s.at("z").get<double>()};
      else c.contribution_z = get_field<std::vector<double>>(s, "z", "contributions.z");
    }
    if (s.contains("fine_structure"))
      c.fine_structure = get_field<bool>(s, "fine_structure", "contributions.fine_structure");
  }
  if (j.contains("scaling")) {
    const auto& s = j.at("scaling");
    if (s.contains("z_for_n")) c.scaling_z = get_field<double>(s, "z_for_n", "scaling.z_for_n");
  }
  c.validate();
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path(), path.string());
}

// ---------------------------------------------------------------- inputs

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[8192];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, in.gcount());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char b[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(b, sizeof b, "%02x", digest[i]);
    hex += b;
  }
  return hex;
}

Inputs load_inputs(const RunConfig& config) {
  Inputs in;
  in.table = QuantumDefectTable::load(config.defects);
  if (in.table.species() != config.species)
    throw ConfigError("config field 'species': '" + config.species + "' but " +
                      config.defects.string() + " holds '" + in.table.species() + "'");
  in.defects_sha256 = sha256_file(config.defects);
  if (config.perfect_mirror) {
    in.surface = Surface::perfect_mirror();
    in.material_sha256 = "perfect-mirror";
    in.material_label = "perfect mirror";
  } else if (config.material_file) {
    in.surface = Surface::drude(load_drude(*config.material_file));
    in.material_sha256 = sha256_file(*config.material_file);
    in.material_label = config.material_file->string();
  } else {
    in.surface = Surface::drude(*config.material);
    in.material_sha256 = "inline";
    in.material_label = "inline";
  }
  return in;
}

// ---------------------------------------------------------------- parallelism

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& f) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t i) {
    try {
      f(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run(i);
      });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------- output

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

namespace {

std::string state_tag(const QuantumState& s) {
  std::string t = std::to_string(s.n) + orbital_letter(s.l) + std::to_string(s.j2) + "_2";
  return t;
}

std::string temperature_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "T%gK", t);
  return buf;
}

std::string provenance(const std::string& kind, const RunConfig& c, const Inputs& in) {
  std::ostringstream os;
  os << "# rydcp " << kind << "\n";
  os << "# defects: " << c.defects.filename().string() << " sha256=" << in.defects_sha256 << "\n";
  os << "# material: " << (c.material_file ? c.material_file->filename().string() : in.material_label)
     << " sha256=" << in.material_sha256 << "\n";
  return os.str();
}

json constants_json() {
  namespace k = constants;
  return {{"hbar_J_s", k::hbar},
          {"planck_J_s", k::planck},
          {"speed_of_light_m_s", k::speed_of_light},
          {"boltzmann_J_K", k::boltzmann},
          {"epsilon0_F_m", k::epsilon0},
          {"mu0_N_A2", k::mu0},
          {"elementary_charge_C", k::elementary_charge},
          {"bohr_radius_m", k::bohr_radius},
          {"rydberg_energy_J", k::rydberg_energy},
          {"source", "CODATA 2018"}};
}

json config_json(const RunConfig& c) {
  json states = json::array();
  for (const auto& s : c.states) states.push_back({{"n", s.n}, {"l", s.l}, {"j", 0.5 * s.j2}});
  json material;
  if (c.perfect_mirror) material = "perfect_mirror";
  else if (c.material_file) material = {{"file", c.material_file->string()}};
  else material = {{"omega_p", c.material->plasma_frequency}, {"gamma", c.material->relaxation_rate}};
  return {{"species", c.species},
          {"defects", c.defects.string()},
          {"material", material},
          {"states", states},
          {"temperatures", c.temperatures},
          {"distances",
           {{"min", c.distances.min},
            {"max", c.distances.max},
            {"count", c.distances.count},
            {"spacing", c.distances.logarithmic ? "log" : "linear"}}},
          {"window", c.window},
          {"include_all_lower", c.include_all_lower},
          {"tolerance", c.tolerance},
          {"matsubara_tail", c.matsubara_tail},
          {"contributions", {{"z", c.contribution_z}, {"fine_structure", c.fine_structure}}},
          {"scaling", {{"z_for_n", c.scaling_z}}}};
}

struct Manifest {
  json body;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Manifest(const std::string& kind, const RunConfig& c, const Inputs& in) {
    body["subcommand"] = kind;
    body["config"] = config_json(c);
    body["constants"] = constants_json();
    body["fixtures"] = {{"defects", {{"path", c.defects.string()}, {"sha256", in.defects_sha256}}},
                        {"material", {{"label", in.material_label}, {"sha256", in.material_sha256}}}};
    body["outputs"] = json::array();
  }

  fs::path write(const RunConfig& c, const std::string& kind, int threads) {
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    body["wall_time_s"] = elapsed.count();
    body["threads"] = threads;
    const auto path = c.output / (kind + "_manifest.json");
    std::ofstream out(path);
    if (!out) throw ComputationError("cannot write " + path.string());
    out << body.dump(2) << "\n";
    return path;
  }
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputationError("cannot write " + path.string());
  out << text;
}

int effective_threads(const RunConfig& c) {
  return c.threads > 0 ? c.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

CPOptions cp_options(const RunConfig& c) {
  CPOptions o;
  o.matsubara_tail = c.matsubara_tail;
  o.green.rel_tol = c.tolerance;
  o.frequency_tol = std::max(c.tolerance, 1e-6);
  return o;
}

std::vector<TransitionChannel> channels_for(const RunConfig& c, const Inputs& in,
                                            const QuantumState& s) {
  ChannelOptions o;
  o.window = c.window;
  o.include_all_lower = c.include_all_lower;
  try {
    return build_channels(s, in.table, o);
  } catch (const Error& e) {
    throw ComputationError("building channels for " + s.label() + ": " + e.what());
  }
}

std::string sample_tag(double z, double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(z = %.6e m, T = %g K)", z, t);
  return buf;
}

json ledger_json(const CPResult& r) {
  json j = {{"z_m", r.z}, {"matsubara_terms", r.ledger.size()}, {"truncation_estimate_J", r.truncation_estimate}};
  if (!r.ledger.empty() && r.dipole_nonresonant != 0.0)
    j["j0_share_dipole"] = r.ledger.front().dipole / r.dipole_nonresonant;
  return j;
}

}  // namespace

RunOutput run_potential(const RunConfig& config) {
  config.validate();
  const Inputs in = load_inputs(config);
  fs::create_directories(config.output);
  Manifest manifest("potential", config, in);
  const auto zs = config.distances.points();
  const auto opts = cp_options(config);
  const int threads = effective_threads(config);
  RunOutput out;
  for (const auto& spec : config.states) {
    const auto state = spec.state();
    const auto channels = channels_for(config, in, state);
    for (const double t : config.temperatures) {
      const ThermalEnvironment env(t);
      std::vector<CPResult> rows(zs.size());
      parallel_for(zs.size(), threads, [&](std::size_t i) {
        try {
          rows[i] = cp_potential(zs[i], env, in.surface, channels, opts);
        } catch (const Error& e) {
          throw ComputationError(std::string(e.what()) + " " + sample_tag(zs[i], t));
        }
      });
      std::ostringstream os;
      os << provenance("potential", config, in);
      os << "# state: " << state.label() << " (m-averaged), T = " << t << " K, window = " << config.window
         << "\n";
      os << "z_m,U_total_Hz,U_dip_nonres_Hz,U_dip_res_Hz,U_quad_nonres_Hz,U_quad_res_Hz\n";
      json ledgers = json::array();
      for (const auto& r : rows) {
        os << format_number(r.z) << ',' << format_number(CPResult::hz(r.total())) << ','
           << format_number(CPResult::hz(r.dipole_nonresonant)) << ','
           << format_number(CPResult::hz(r.dipole_resonant)) << ','
           << format_number(CPResult::hz(r.quadrupole_nonresonant)) << ','
           << format_number(CPResult::hz(r.quadrupole_resonant)) << '\n';
        ledgers.push_back(ledger_json(r));
      }
      const auto path = config.output / ("potential_" + state_tag(state) + "_" + temperature_tag(t) + ".csv");
      write_file(path, os.str());
      out.files.push_back(path);
      manifest.body["outputs"].push_back(
          {{"file", path.filename().string()}, {"state", state.label()}, {"temperature_K", t}, {"ledger", ledgers}});
    }
  }
  out.manifest = manifest.write(config, "potential", threads);
  return out;
}

RunOutput run_decay(const RunConfig& config) {
  config.validate();
  const Inputs in = load_inputs(config);
  fs::create_directories(config.output);
  Manifest manifest("decay", config, in);
  const auto zs = config.distances.points();
  const auto opts = cp_options(config);
  const int threads = effective_threads(config);
  RunOutput out;
  for (const auto& spec : config.states) {
    const auto state = spec.state();
    const auto channels = channels_for(config, in, state);
    for (const double t : config.temperatures) {
      const ThermalEnvironment env(t);
      std::vector<DecayResult> rows(zs.size());
      parallel_for(zs.size(), threads, [&](std::size_t i) {
        try {
          rows[i] = decay_rates(zs[i], env, in.surface, channels, opts.green);
        } catch (const Error& e) {
          throw ComputationError(std::string(e.what()) + " " + sample_tag(zs[i], t));
        }
      });
      std::ostringstream os;
      os << provenance("decay", config, in);
      os << "# state: " << state.label() << " (m-averaged), T = " << t << " K, window = " << config.window
         << (config.include_all_lower ? " plus all lower levels" : "") << "\n";
      os << "z_m,Gamma_total_s,Gamma_dip_s,Gamma_quad_s,Gamma_freespace_s\n";
      for (const auto& r : rows) {
        os << format_number(r.z) << ',' << format_number(r.total()) << ',' << format_number(r.dipole)
           << ',' << format_number(r.quadrupole) << ',' << format_number(r.freespace) << '\n';
      }
      const auto path = config.output / ("decay_" + state_tag(state) + "_" + temperature_tag(t) + ".csv");
      write_file(path, os.str());
      out.files.push_back(path);
      manifest.body["outputs"].push_back(
          {{"file", path.filename().string()}, {"state", state.label()}, {"temperature_K", t}});
    }
  }
  out.manifest = manifest.write(config, "decay", threads);
  return out;
}

RunOutput run_contributions(const RunConfig& config) {
  config.validate();
  const Inputs in = load_inputs(config);
  fs::create_directories(config.output);
  Manifest manifest("contributions", config, in);
  const auto opts = cp_options(config);
  const int threads = effective_threads(config);
  RunOutput out;
  for (const auto& spec : config.states) {
    const auto state = spec.state();
    const auto channels = channels_for(config, in, state);
    for (const double t : config.temperatures) {
      const ThermalEnvironment env(t);
      std::vector<CPResult> rows(config.contribution_z.size());
      parallel_for(rows.size(), threads, [&](std::size_t i) {
        const double z = config.contribution_z[i];
        try {
          rows[i] = cp_potential(z, env, in.surface, channels, opts);
        } catch (const Error& e) {
          throw ComputationError(std::string(e.what()) + " " + sample_tag(z, t));
        }
      });
      for (const auto& r : rows) {
        auto shares = contribution_breakdown(r);
        if (!config.fine_structure) shares = merge_fine_structure(shares);
        std::ostringstream os;
        os << provenance("contributions", config, in);
        os << "# state: " << state.label() << " (m-averaged), T = " << t << " K, z = " << format_number(r.z)
           << " m, window = " << config.window << "\n";
        os << "final_state,multipole,omega_rad_s,share\n";
        for (const auto& s : shares)
          os << s.label << ',' << multipole_name(s.order) << ',' << format_number(s.omega) << ','
             << format_number(s.share) << '\n';
        char ztag[32];
        std::snprintf(ztag, sizeof ztag, "z%gm", r.z);
        const auto path = config.output / ("contributions_" + state_tag(state) + "_" + temperature_tag(t) +
                                           "_" + ztag + ".csv");
        write_file(path, os.str());
        out.files.push_back(path);
        manifest.body["outputs"].push_back({{"file", path.filename().string()},
                                            {"state", state.label()},
                                            {"temperature_K", t},
                                            {"ledger", ledger_json(r)}});
      }
    }
  }
  out.manifest = manifest.write(config, "contributions", threads);
  return out;
}

RunOutput run_scaling(const RunConfig& config) {
  config.validate();
  if (config.distances.count < 4 && config.states.size() < 4)
    throw ComputationError("scaling needs at least 4 distances or 4 states");
  const Inputs in = load_inputs(config);
  fs::create_directories(config.output);
  Manifest manifest("scaling", config, in);
  const auto zs = config.distances.points();
  const auto opts = cp_options(config);
  const int threads = effective_threads(config);

  auto fit_json = [](const std::vector<double>& x, const std::vector<double>& y) -> json {
    try {
      const auto f = scaling_fit(x, y);
      return {{"exponent", f.exponent}, {"uncertainty", f.uncertainty}, {"samples", f.samples}};
    } catch (const InvalidArgument& e) {
      return {{"error", e.what()}};
    }
  };

  json report;
  report["z_for_n_m"] = config.scaling_z;
  report["versus_z"] = json::array();
  report["versus_n"] = json::array();

  std::vector<std::vector<TransitionChannel>> channel_sets(config.states.size());
  for (std::size_t s = 0; s < config.states.size(); ++s)
    channel_sets[s] = channels_for(config, in, config.states[s].state());

  for (const double t : config.temperatures) {
    const ThermalEnvironment env(t);
    // Distance scaling for each state.
    for (std::size_t s = 0; s < config.states.size(); ++s) {
      const auto state = config.states[s].state();
      std::vector<CPResult> u(zs.size());
      std::vector<DecayResult> g(zs.size());
      parallel_for(zs.size(), threads, [&](std::size_t i) {
        try {
          u[i] = cp_potential(zs[i], env, in.surface, channel_sets[s], opts);
          g[i] = decay_rates(zs[i], env, in.surface, channel_sets[s], opts.green);
        } catch (const Error& e) {
          throw ComputationError(std::string(e.what()) + " " + sample_tag(zs[i], t));
        }
      });
      std::vector<double> ud, uq, gd, gq;
      for (std::size_t i = 0; i < zs.size(); ++i) {
        ud.push_back(u[i].dipole());
        uq.push_back(u[i].quadrupole());
        // Surface-induced part of the rates.
        double fd = 0.0, fq = 0.0;
        for (const auto& ch : g[i].channels)
          (ch.order == Multipole::dipole ? fd : fq) += ch.freespace_rate;
        gd.push_back(g[i].dipole - fd);
        gq.push_back(g[i].quadrupole - fq);
      }
      report["versus_z"].push_back({{"state", state.label()},
                                    {"temperature_K", t},
                                    {"U_dip", fit_json(zs, ud)},
                                    {"U_quad", fit_json(zs, uq)},
                                    {"Gamma_dip_surface", fit_json(zs, gd)},
                                    {"Gamma_quad_surface", fit_json(zs, gq)}});
    }
    // Principal-quantum-number scaling at fixed z.
    std::vector<double> nstar(config.states.size()), ud(nstar.size()), uq(nstar.size()),
        gd(nstar.size()), gq(nstar.size());
    parallel_for(config.states.size(), threads, [&](std::size_t s) {
      const auto state = config.states[s].state();
      try {
        nstar[s] = effective_quantum_number(state, in.table);
        const auto u = cp_potential(config.scaling_z, env, in.surface, channel_sets[s], opts);
        const auto g = decay_rates(config.scaling_z, env, in.surface, channel_sets[s], opts.green);
        double fd = 0.0, fq = 0.0;
        for (const auto& ch : g.channels) (ch.order == Multipole::dipole ? fd : fq) += ch.freespace_rate;
        ud[s] = u.dipole();
        uq[s] = u.quadrupole();
        gd[s] = g.dipole - fd;
        gq[s] = g.quadrupole - fq;
      } catch (const Error& e) {
        throw ComputationError(std::string(e.what()) + " " + sample_tag(config.scaling_z, t));
      }
    });
    report["versus_n"].push_back({{"temperature_K", t},
                                  {"n_star", nstar},
                                  {"U_dip", fit_json(nstar, ud)},
                                  {"U_quad", fit_json(nstar, uq)},
                                  {"Gamma_dip_surface", fit_json(nstar, gd)},
                                  {"Gamma_quad_surface", fit_json(nstar, gq)}});
  }
  RunOutput out;
  const auto path = config.output / "scaling.json";
  json doc = {{"fixtures",
               {{"defects_sha256", in.defects_sha256}, {"material_sha256", in.material_sha256}}},
              {"report", report}};
  write_file(path, doc.dump(2) + "\n");
  out.files.push_back(path);
  manifest.body["outputs"].push_back({{"file", path.filename().string()}});
  out.manifest = manifest.write(config, "scaling", threads);
  return out;
}

}  // namespace rydcp::app
