#pragma once

// Scalar time coefficients b(t), omega(t), f(t) and their exponentially
// weighted integrals  I(mu; a, b) = int_a^b e^{-mu (b - s)} f(s) ds.

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace attlab {

class TimeFn {
 public:
  enum class Kind { constant, affine, sinusoidal, exp_ramp, table };

  static TimeFn constant(double c);
  /// c0 + c1 * t
  static TimeFn affine(double c0, double c1);
  /// c0 + c1 * sin(freq * t + phase)
  static TimeFn sinusoidal(double c0, double c1, double freq = 1.0, double phase = 0.0);
  /// c0 for t <= onset, c_inf + (c0 - c_inf) e^{-rate (t - onset)} afterwards.
  static TimeFn exp_ramp(double c_inf, double c0, double rate, double onset = 0.0);
  /// Piecewise-linear interpolation of (t, value) knots, constant outside.
  static TimeFn table(std::vector<std::pair<double, double>> knots);

  Kind kind() const noexcept { return kind_; }
  double operator()(double t) const;

  /// t -> +inf limit when it exists.
  std::optional<double> declared_limit() const;
  /// Exact inf / sup over the whole real line (+-inf for affine with c1 != 0).
  double inf() const;
  double sup() const;
  double sup_abs() const;
  /// 2 pi / freq for a non-degenerate sinusoid, 0 otherwise.
  double period() const;
  bool is_constant() const;

  /// Closed form for every kind except table, which falls back to quadrature.
  double weighted_integral(double mu, double a, double b) const;
  /// Same integral by adaptive Simpson; independent of the closed forms.
  double weighted_integral_quadrature(double mu, double a, double b, double tol = 1e-10) const;
  /// int_{-inf}^t e^{-mu (t - s)} f(s) ds for mu > 0, truncated at t - L with
  /// the tail bounded by e^{-mu L} sup|f| / mu <= tol. constant and affine
  /// use their exact improper closed forms.
  double pullback_integral(double mu, double t, double tol = 1e-12) const;
  /// Truncation depth used by pullback_integral.
  double truncation_depth(double mu, double tol = 1e-12) const;

  /// Knots where the function is not smooth (onset, table knots).
  std::vector<double> breakpoints() const;

  const std::vector<double>& params() const noexcept { return p_; }
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }

 private:
  TimeFn(Kind kind, std::vector<double> p) : kind_(kind), p_(std::move(p)) {}

  double smooth_piece_integral(double mu, double a, double b) const;

  Kind kind_ = Kind::constant;
  std::vector<double> p_;
  std::vector<std::pair<double, double>> knots_;
};

std::string_view to_string(TimeFn::Kind kind);

/// int_0^L e^{-m u} du, stable for m L -> 0 and m < 0.
double exp_kernel(double m, double L);
/// int_0^L u e^{-m u} du, stable for m L -> 0.
double exp_kernel_moment(double m, double L);

}  // namespace attlab
