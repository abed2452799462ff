#include "attlab/grid.hpp"

#include <cmath>
#include <numbers>

#include "attlab/errors.hpp"

namespace attlab {

Grid1D::Grid1D(double length, std::size_t n_interior) : length_(length), n_(n_interior) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw ContractViolation("Grid1D: length must be positive");
  if (n_interior < min_interior) throw ContractViolation("Grid1D: need at least 15 interior nodes");
}

Grid1D Grid1D::chafee(std::size_t n_interior) { return {std::numbers::pi, n_interior}; }
Grid1D Grid1D::unit(std::size_t n_interior) { return {1.0, n_interior}; }

std::vector<double> Grid1D::sample(const std::function<double(double)>& f) const {
  std::vector<double> v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = f(x(i));
  return v;
}

StatePoint Grid1D::field(std::vector<double> values, NormTag tag) const {
  if (values.size() != n_) throw ContractViolation("Grid1D::field: size does not match the grid");
  return StatePoint::field(std::move(values), h(), tag);
}

double Grid1D::lambda1() const noexcept {
  const double k = std::numbers::pi / length_;
  return k * k;
}

double Grid1D::lambda1_h() const noexcept {
  const double hh = h();
  const double s = std::sin(std::numbers::pi * hh / (2.0 * length_));
  return 4.0 * s * s / (hh * hh);
}

void Grid1D::apply_laplacian(std::span<const double> u, std::span<double> out) const {
  if (u.size() != n_ || out.size() != n_)
    throw ContractViolation("apply_laplacian: size does not match the grid");
  const double c = 1.0 / (h() * h());
  for (std::size_t i = 0; i < n_; ++i) {
    const double left = i > 0 ? u[i - 1] : 0.0;
    const double right = i + 1 < n_ ? u[i + 1] : 0.0;
    out[i] = c * (2.0 * u[i] - left - right);
  }
}

}  // namespace attlab
