#pragma once

// Uniform interior grids on (0, L) with homogeneous Dirichlet ends, and the
// second-difference operator A_h = -D^2 on them.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "attlab/setcalc.hpp"

namespace attlab {

class Grid1D {
 public:
  static constexpr std::size_t min_interior = 15;

  Grid1D(double length, std::size_t n_interior);

  /// (0, pi): first Dirichlet eigenvalue 1.
  static Grid1D chafee(std::size_t n_interior = 127);
  /// (0, 1): first Dirichlet eigenvalue pi^2.
  static Grid1D unit(std::size_t n_interior = 127);

  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return n_; }
  double h() const noexcept { return length_ / static_cast<double>(n_ + 1); }
  /// Interior node i = 0..n-1 sits at (i + 1) h.
  double x(std::size_t i) const noexcept { return static_cast<double>(i + 1) * h(); }

  std::vector<double> sample(const std::function<double(double)>& f) const;
  StatePoint field(std::vector<double> values, NormTag tag = NormTag::l2_discrete) const;

  /// (pi / L)^2.
  double lambda1() const noexcept;
  /// Smallest eigenvalue of A_h: (4 / h^2) sin^2(pi h / (2 L)).
  double lambda1_h() const noexcept;

  /// out = A_h u, with zero boundary values.
  void apply_laplacian(std::span<const double> u, std::span<double> out) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double length_;
  std::size_t n_;
};

}  // namespace attlab
