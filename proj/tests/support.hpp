#pragma once

#include <cmath>
#include <filesystem>
#include <vector>

#include "rydcp/atomic_structure.hpp"
#include "rydcp/medium.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return RYDCP_DATA_DIR; }

inline const rydcp::QuantumDefectTable& rb_table() {
  static const auto table = rydcp::QuantumDefectTable::load(data_dir() / "rb87_quantum_defects.csv");
  return table;
}

inline rydcp::DrudeModel copper() { return {1.12e16, 1.38e13}; }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Least-squares slope of log|y| against log x, computed here without the
/// library fit.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testing
