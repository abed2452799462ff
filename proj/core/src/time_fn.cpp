#include "attlab/time_fn.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "attlab/errors.hpp"
#include "attlab/quadrature.hpp"

namespace attlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - e^{-z L}) / z for complex z, with the z -> 0 series.
std::complex<double> complex_kernel(std::complex<double> z, double L) {
  const std::complex<double> zl = z * L;
  if (std::abs(zl) < 1e-5) return L * (1.0 - zl / 2.0 + zl * zl / 6.0);
  return (1.0 - std::exp(-zl)) / z;
}

}  // namespace

double exp_kernel(double m, double L) {
  const double ml = m * L;
  if (std::abs(ml) < 1e-5) return L * (1.0 - ml / 2.0 + ml * ml / 6.0);
  return -std::expm1(-ml) / m;
}

double exp_kernel_moment(double m, double L) {
  const double ml = m * L;
  if (std::abs(ml) < 0.1) {
    // sum_k (-m)^k L^{k+2} / (k! (k+2))
    double term = L * L;  // (-m L)^k L^2 / k!
    double sum = 0.0;
    for (int k = 0; k < 24; ++k) {
      sum += term / (k + 2);
      term *= -ml / (k + 1);
    }
    return sum;
  }
  return (1.0 - std::exp(-ml) * (1.0 + ml)) / (m * m);
}

std::string_view to_string(TimeFn::Kind kind) {
  switch (kind) {
    case TimeFn::Kind::constant: return "constant";
    case TimeFn::Kind::affine: return "affine";
    case TimeFn::Kind::sinusoidal: return "sinusoidal";
    case TimeFn::Kind::exp_ramp: return "exp-ramp";
    case TimeFn::Kind::table: return "table";
  }
  return "constant";
}

TimeFn TimeFn::constant(double c) { return TimeFn(Kind::constant, {c}); }

TimeFn TimeFn::affine(double c0, double c1) { return TimeFn(Kind::affine, {c0, c1}); }

TimeFn TimeFn::sinusoidal(double c0, double c1, double freq, double phase) {
  return TimeFn(Kind::sinusoidal, {c0, c1, freq, phase});
}

TimeFn TimeFn::exp_ramp(double c_inf, double c0, double rate, double onset) {
  if (!(rate > 0.0)) throw ContractViolation("exp-ramp: rate must be positive");
  return TimeFn(Kind::exp_ramp, {c_inf, c0, rate, onset});
}

TimeFn TimeFn::table(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw ContractViolation("table: no knots");
  for (std::size_t i = 1; i < knots.size(); ++i)
    if (!(knots[i].first > knots[i - 1].first))
      throw ContractViolation("table: knot times must increase");
  TimeFn f(Kind::table, {});
  f.knots_ = std::move(knots);
  return f;
}

double TimeFn::operator()(double t) const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine: return p_[0] + p_[1] * t;
    case Kind::sinusoidal: return p_[0] + p_[1] * std::sin(p_[2] * t + p_[3]);
    case Kind::exp_ramp:
      if (t <= p_[3]) return p_[1];
      return p_[0] + (p_[1] - p_[0]) * std::exp(-p_[2] * (t - p_[3]));
    case Kind::table: {
      if (t <= knots_.front().first) return knots_.front().second;
      if (t >= knots_.back().first) return knots_.back().second;
      auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                 [](double v, const auto& k) { return v < k.first; });
      const auto& [t1, v1] = *it;
      const auto& [t0, v0] = *std::prev(it);
      return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
  }
  return 0.0;
}

std::optional<double> TimeFn::declared_limit() const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine:
      if (p_[1] == 0.0) return p_[0];
      return std::nullopt;
    case Kind::sinusoidal:
      if (p_[1] == 0.0) return p_[0];
      if (p_[2] == 0.0) return p_[0] + p_[1] * std::sin(p_[3]);
      return std::nullopt;
    case Kind::exp_ramp: return p_[0];
    case Kind::table: return knots_.back().second;
  }
  return std::nullopt;
}

double TimeFn::inf() const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine: return p_[1] == 0.0 ? p_[0] : -kInf;
    case Kind::sinusoidal:
      return p_[2] == 0.0 ? p_[0] + p_[1] * std::sin(p_[3]) : p_[0] - std::abs(p_[1]);
    case Kind::exp_ramp: return std::min(p_[0], p_[1]);
    case Kind::table: {
      double m = kInf;
      for (const auto& k : knots_) m = std::min(m, k.second);
      return m;
    }
  }
  return 0.0;
}

double TimeFn::sup() const {
  switch (kind_) {
    case Kind::constant: return p_[0];
    case Kind::affine: return p_[1] == 0.0 ? p_[0] : kInf;
    case Kind::sinusoidal:
      return p_[2] == 0.0 ? p_[0] + p_[1] * std::sin(p_[3]) : p_[0] + std::abs(p_[1]);
    case Kind::exp_ramp: return std::max(p_[0], p_[1]);
    case Kind::table: {
      double m = -kInf;
      for (const auto& k : knots_) m = std::max(m, k.second);
      return m;
    }
  }
  return 0.0;
}

double TimeFn::sup_abs() const { return std::max(std::abs(inf()), std::abs(sup())); }

double TimeFn::period() const {
  if (kind_ == Kind::sinusoidal && p_[1] != 0.0 && p_[2] != 0.0)
    return 2.0 * std::numbers::pi / std::abs(p_[2]);
  return 0.0;
}

bool TimeFn::is_constant() const {
  switch (kind_) {
    case Kind::constant: return true;
    case Kind::affine: return p_[1] == 0.0;
    case Kind::sinusoidal: return p_[1] == 0.0 || p_[2] == 0.0;
    case Kind::exp_ramp: return p_[0] == p_[1];
    case Kind::table: return inf() == sup();
  }
  return false;
}

std::vector<double> TimeFn::breakpoints() const {
  std::vector<double> out;
  if (kind_ == Kind::exp_ramp) out.push_back(p_[3]);
  if (kind_ == Kind::table)
    for (const auto& k : knots_) out.push_back(k.first);
  return out;
}

// Integral over [a, b] of a piece on which the function has a single smooth
// formula, weighted towards b.
double TimeFn::smooth_piece_integral(double mu, double a, double b) const {
  const double L = b - a;
  switch (kind_) {
    case Kind::constant: return p_[0] * exp_kernel(mu, L);
    case Kind::affine:
      return (p_[0] + p_[1] * b) * exp_kernel(mu, L) - p_[1] * exp_kernel_moment(mu, L);
    case Kind::sinusoidal: {
      const double theta = p_[2] * b + p_[3];
      const std::complex<double> z(mu, p_[2]);
      const double osc = (std::polar(1.0, theta) * complex_kernel(z, L)).imag();
      return p_[0] * exp_kernel(mu, L) + p_[1] * osc;
    }
    case Kind::exp_ramp: {
      if (b <= p_[3]) return p_[1] * exp_kernel(mu, L);
      // a >= onset here
      const double amp = (p_[1] - p_[0]) * std::exp(-p_[2] * (b - p_[3]));
      return p_[0] * exp_kernel(mu, L) + amp * exp_kernel(mu - p_[2], L);
    }
    case Kind::table: return weighted_integral_quadrature(mu, a, b);
  }
  return 0.0;
}

double TimeFn::weighted_integral(double mu, double a, double b) const {
  if (b < a) throw ContractViolation("weighted_integral: b < a");
  if (a == b) return 0.0;
  if (kind_ == Kind::table) return weighted_integral_quadrature(mu, a, b);
  if (kind_ == Kind::exp_ramp && a < p_[3] && p_[3] < b) {
    const double ts = p_[3];
    return std::exp(-mu * (b - ts)) * smooth_piece_integral(mu, a, ts) +
           smooth_piece_integral(mu, ts, b);
  }
  return smooth_piece_integral(mu, a, b);
}

double TimeFn::weighted_integral_quadrature(double mu, double a, double b, double tol) const {
  if (b < a) throw ContractViolation("weighted_integral: b < a");
  if (a == b) return 0.0;
  std::vector<double> cuts{a};
  for (double k : breakpoints())
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  const auto integrand = [&](double s) { return std::exp(-mu * (b - s)) * (*this)(s); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], tol / (cuts.size() - 1));
  return total;
}

double TimeFn::truncation_depth(double mu, double tol) const {
  if (!(mu > 0.0)) throw ContractViolation("pullback integral needs a dissipative rate mu > 0");
  const double s = sup_abs();
  if (!std::isfinite(s)) throw UnsupportedModel("truncation depth: unbounded coefficient");
  if (s == 0.0) return 0.0;
  return std::max(0.0, std::log(s / (mu * tol)) / mu);
}

double TimeFn::pullback_integral(double mu, double t, double tol) const {
  if (!(mu > 0.0)) throw ContractViolation("pullback integral needs a dissipative rate mu > 0");
  if (kind_ == Kind::constant) return p_[0] / mu;
  if (kind_ == Kind::affine) return (p_[0] + p_[1] * t) / mu - p_[1] / (mu * mu);
  const double L = truncation_depth(mu, tol);
  return weighted_integral(mu, t - L, t);
}

}  // namespace attlab
