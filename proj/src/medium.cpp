#include "rydcp/medium.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "rydcp/constants.hpp"
#include "rydcp/errors.hpp"

namespace rydcp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::real: return "real";
    case Axis::imaginary: return "imaginary";
    case Axis::static_weighted: return "static_weighted";
  }
  return "?";
}

void DrudeModel::validate() const {
  if (!std::isfinite(plasma_frequency) || plasma_frequency < 0.0)
    throw InvalidArgument("Drude plasma frequency must be finite and >= 0");
  if (!std::isfinite(relaxation_rate) || relaxation_rate < 0.0)
    throw InvalidArgument("Drude relaxation rate must be finite and >= 0");
}

DrudeModel parse_drude(std::istream& in, const std::string& source_name) {
  std::optional<double> wp, gamma;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const auto where = source_name + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto text = trim(line.substr(eq + 1));
    double value = 0.0;
    std::size_t used = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      throw ConfigError(where + ": '" + text + "' is not a number");
    }
    if (used != text.size()) throw ConfigError(where + ": trailing characters after number");
    if (key == "omega_p") wp = value;
    else if (key == "gamma") gamma = value;
    else throw ConfigError(where + ": unknown key '" + key + "'");
  }
  if (!wp) throw ConfigError(source_name + ": missing omega_p");
  if (!gamma) throw ConfigError(source_name + ": missing gamma");
  DrudeModel model{*wp, *gamma};
  try {
    model.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  return model;
}

DrudeModel load_drude(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material file " + path.string());
  return parse_drude(in, path.string());
}

complex drude_permittivity(const DrudeModel& model, double freq, Axis axis) {
  if (axis == Axis::static_weighted)
    throw InvalidArgument("permittivity has no static-weighted form; use the static Green path");
  if (!(freq > 0.0))
    throw InvalidArgument("permittivity at zero frequency diverges; use the static Green path");
  const double wp2 = model.plasma_frequency * model.plasma_frequency;
  if (axis == Axis::real) return 1.0 - wp2 / (freq * complex(freq, model.relaxation_rate));
  return 1.0 + wp2 / (freq * (freq + model.relaxation_rate));
}

FresnelPair fresnel_from_beta(complex bp, complex q2, complex eps, complex dq) {
  // b-^2 = b+^2 + q^2 (eps - 1)
  complex bm = std::sqrt(bp * bp + dq);
  if (bm.imag() < 0.0 || (bm.imag() == 0.0 && bm.real() < 0.0)) bm = -bm;
  const complex sum = bp + bm;
  FresnelPair r;
  r.rs = sum == 0.0 ? complex(0.0) : -dq / (sum * sum);
  const complex den = eps * bp + bm;
  if (den == 0.0) {
    r.rp = 0.0;
  } else if (std::abs(eps) > 2.0) {
    r.rp = 1.0 - 2.0 * bm / den;
  } else {
    r.rp = (eps - 1.0) * (bp - q2 / sum) / den;
  }
  return r;
}

FresnelPair fresnel(double k_par, double freq, complex eps, Axis axis) {
  if (k_par < 0.0) throw InvalidArgument("fresnel: k_par must be >= 0");
  if (axis == Axis::static_weighted) throw InvalidArgument("fresnel: no static-weighted form");
  const double c = constants::speed_of_light;
  const complex q = axis == Axis::real ? complex(freq / c, 0.0) : complex(0.0, freq / c);
  const complex q2 = q * q;
  complex bp;
  if (axis == Axis::real) {
    const double b2 = (freq / c - k_par) * (freq / c + k_par);
    bp = b2 >= 0.0 ? complex(std::sqrt(b2), 0.0) : complex(0.0, std::sqrt(-b2));
  } else {
    bp = complex(0.0, std::hypot(k_par, freq / c));
  }
  return fresnel_from_beta(bp, q2, eps, q2 * (eps - 1.0));
}

Surface Surface::drude(const DrudeModel& model) {
  model.validate();
  Surface s;
  s.model_ = model;
  return s;
}

Surface Surface::perfect_mirror() {
  Surface s;
  s.mirror_ = true;
  return s;
}

FresnelPair Surface::reflection(double k_par, double freq, Axis axis) const {
  if (mirror_) return {-1.0, 1.0};
  if (axis == Axis::static_weighted) return {0.0, static_rp()};
  return fresnel(k_par, freq, drude_permittivity(model_, freq, axis), axis);
}

double Surface::static_rp() const noexcept {
  if (mirror_) return 1.0;
  return model_.plasma_frequency > 0.0 ? 1.0 : 0.0;
}

}  // namespace rydcp
