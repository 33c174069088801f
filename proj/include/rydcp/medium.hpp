#pragma once

#include <complex>
#include <filesystem>
#include <istream>
#include <string>

namespace rydcp {

using complex = std::complex<double>;

/// Which frequency axis a response function is evaluated on.
///
/// `static_weighted` stands for lim_{xi -> 0} xi^2 F(i xi), the form in which
/// the zero-frequency Matsubara term enters.
enum class Axis { real, imaginary, static_weighted };

const char* axis_name(Axis axis);

/// Drude metal, eps(w) = 1 - wp^2 / (w (w + i gamma)).
struct DrudeModel {
  double plasma_frequency = 0.0;  ///< rad/s
  double relaxation_rate = 0.0;   ///< rad/s

  /// Throws InvalidArgument for negative or non-finite parameters. A zero
  /// plasma frequency is accepted and describes vacuum.
  void validate() const;
};

/// Reads `omega_p = <rad/s>` and `gamma = <rad/s>` lines. `#` starts a comment.
DrudeModel parse_drude(std::istream& in, const std::string& source_name = "<stream>");
DrudeModel load_drude(const std::filesystem::path& path);

/// eps on the real axis (freq = w) or at i*xi (freq = xi). Throws
/// InvalidArgument at freq <= 0 or for the static-weighted axis; the static
/// limit has its own path in the Green tensor.
complex drude_permittivity(const DrudeModel& model, double freq, Axis axis);

struct FresnelPair {
  complex rs;
  complex rp;
};

/// Plane-wave reflection coefficients of the vacuum/medium interface, with
/// the eps-weighted coefficient belonging to p polarization:
///   r_s = (b+ - b-) / (b+ + b-),   r_p = (eps b+ - b-) / (eps b+ + b-),
///   b+ = sqrt(q^2 - k^2), b- = sqrt(q^2 eps - k^2).
/// q = w/c on the real axis and i xi/c on the imaginary axis. Branches give
/// Im b+- >= 0 on the real axis and b+- = i kappa+- with kappa+- > 0 on the
/// imaginary axis. Both are evaluated in forms free of cancellation as
/// eps -> 1 and of overflow as |eps| -> infinity.
FresnelPair fresnel(double k_par, double freq, complex eps, Axis axis);

/// Same coefficients from the normal wavenumber b+ directly, with
/// dq = q^2 (eps - 1). Used inside the Green-tensor integrands.
FresnelPair fresnel_from_beta(complex beta_plus, complex q2, complex eps, complex dq);

/// Half-space material: a Drude metal or an ideal perfect conductor.
class Surface {
 public:
  static Surface drude(const DrudeModel& model);
  static Surface perfect_mirror();

  bool is_perfect_mirror() const noexcept { return mirror_; }
  const DrudeModel& model() const noexcept { return model_; }

  /// Reflection coefficients at in-plane wavenumber k_par.
  FresnelPair reflection(double k_par, double freq, Axis axis) const;
  /// Static limit of r_p on the imaginary axis (1 for a conductor, 0 for vacuum).
  double static_rp() const noexcept;

 private:
  bool mirror_ = false;
  DrudeModel model_{};
};

}  // namespace rydcp
