#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace attlab {

/// Thomas algorithm. sub[0] and sup[n-1] are ignored; rhs is overwritten by
/// the solution. No pivoting: intended for diagonally dominant systems.
void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                       std::span<const double> sup, std::span<double> rhs);

/// Constant-coefficient symmetric tridiagonal matrix, factored once for
/// repeated solves.
class ToeplitzTridiag {
 public:
  ToeplitzTridiag(std::size_t n, double diag, double off);

  std::size_t size() const noexcept { return inv_pivot_.size(); }
  double diag() const noexcept { return diag_; }
  double off() const noexcept { return off_; }

  void solve(std::span<double> rhs) const;

 private:
  double diag_;
  double off_;
  std::vector<double> inv_pivot_;
  std::vector<double> upper_;  // c'_i = off / pivot_i
};

}  // namespace attlab
