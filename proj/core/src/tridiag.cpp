#include "attlab/tridiag.hpp"

#include <cmath>
#include <limits>

#include "attlab/errors.hpp"

namespace attlab {

namespace {

double checked_pivot(double p) {
  if (!(std::abs(p) > 0.0) || !std::isfinite(p))
    throw NumericalFailure("tridiagonal solve: zero pivot",
                           std::numeric_limits<double>::quiet_NaN());
  return p;
}

}  // namespace

void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs) {
  const std::size_t n = diag.size();
  if (sub.size() != n || sup.size() != n || rhs.size() != n)
    throw ContractViolation("solve_tridiagonal: size mismatch");
  if (n == 0) return;
  std::vector<double> c(n);
  double p = checked_pivot(diag[0]);
  c[0] = sup[0] / p;
  rhs[0] /= p;
  for (std::size_t i = 1; i < n; ++i) {
    p = checked_pivot(diag[i] - sub[i] * c[i - 1]);
    c[i] = i + 1 < n ? sup[i] / p : 0.0;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / p;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

ToeplitzTridiag::ToeplitzTridiag(std::size_t n, double diag, double off)
    : diag_(diag), off_(off), inv_pivot_(n), upper_(n) {
  if (n == 0) throw ContractViolation("ToeplitzTridiag: empty system");
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = checked_pivot(diag - off * c);
    inv_pivot_[i] = 1.0 / p;
    c = off / p;
    upper_[i] = c;
  }
}

void ToeplitzTridiag::solve(std::span<double> rhs) const {
  const std::size_t n = inv_pivot_.size();
  if (rhs.size() != n) throw ContractViolation("ToeplitzTridiag::solve: size mismatch");
  rhs[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - off_ * rhs[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper_[i] * rhs[i + 1];
}

}  // namespace attlab
