#pragma once

// Heaviside inclusion u_t - u_xx in b(t) H0(u) + omega(t) u on (0, 1) with
// Dirichlet ends, restricted to the non-negative cone.
//
// A non-negative, not identically zero state is strictly positive for all
// later times, so it follows the linear problem u_t - u_xx = b(t) + omega(t) u.
// The zero state additionally rests at 0 for a while and then departs along
// that linear problem. Time stepping:
//   (I + k A_h - k omega(t_n) I) u^{n+1} = u^n + k b(t_n) 1.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "attlab/grid.hpp"
#include "attlab/process.hpp"
#include "attlab/report.hpp"
#include "attlab/setcalc.hpp"
#include "attlab/time_fn.hpp"
#include "attlab/tridiag.hpp"

namespace attlab {

struct ParabolicInclusionModel {
  static constexpr double max_dt = 0.01;

  TimeFn b = TimeFn::constant(2.0);
  TimeFn omega = TimeFn::constant(0.0);
  Grid1D grid = Grid1D::unit();
  double dt = 0.005;

  /// inf b > 0, 0 <= inf omega, sup omega < pi^2, 0 < dt <= max_dt, domain (0, 1).
  void validate() const;
  ParabolicInclusionModel limit_model() const;
  bool is_autonomous() const { return b.is_constant() && omega.is_constant(); }
};

class ParabolicStepper {
 public:
  explicit ParabolicStepper(ParabolicInclusionModel m);

  const ParabolicInclusionModel& model() const noexcept { return m_; }

  /// Advances u from t to t + k, 0 < k <= dt.
  void step(double t, std::vector<double>& u, double k);
  /// Equal steps no longer than dt from t to t_end.
  void advance(double& t, std::vector<double>& u, double t_end);

 private:
  ParabolicInclusionModel m_;
  std::optional<ToeplitzTridiag> lhs_;
  std::vector<double> rhs_;
};

/// Branches of U+(t, t0, u0): a single branch for u0 != 0, otherwise the
/// zero-rest branch plus departures from 0 at budget - 1 equally spaced
/// times r in [t0, t). Entries of u0 must be >= -1e-12.
std::vector<Branch> parabolic_solve(const ParabolicInclusionModel& m, double t, double t0,
                                    const StatePoint& u0, int budget);

/// Same along increasing times; departures are spread over [t0, times.back()).
std::vector<BranchPath> parabolic_solve_path(const ParabolicInclusionModel& m,
                                             std::span<const double> times, double t0,
                                             const StatePoint& u0, int budget);

ProcessHandle parabolic_process(const ParabolicInclusionModel& m,
                                std::string model_id = "parabolic-inclusion");

/// Rate used by parabolic_decay_check.
enum class DecayRate {
  /// e^{-2 (pi^2 - omega_1)(t - s)}
  continuum,
  /// prod over steps of (1 + k (mu_1 - omega_1))^{-2}, mu_1 the smallest
  /// eigenvalue of A_h: the contraction the scheme itself guarantees.
  scheme,
};

/// For w = u_a - u_b, checks ||w(t)||^2 <= bound(s, t) ||w(s)||^2 (1 + 1e-6)
/// over all pairs s < t of {t0} + times. Curve values are the ratios
/// lhs / (bound ||w(s)||^2), one per pair.
VerifierReport parabolic_decay_check(const ParabolicInclusionModel& m, const StatePoint& u0a,
                                     const StatePoint& u0b, std::span<const double> times,
                                     double t0, DecayRate rate = DecayRate::continuum);

/// Solution of A_h v - omega v = b 1 for constant coefficients.
StatePoint parabolic_stationary(const ParabolicInclusionModel& m);

/// Unique bounded complete trajectory at t, by pullback from the constant
/// field 5 with depth doubling as in chafee_xi_M.
StatePoint parabolic_xi_M(const ParabolicInclusionModel& m, double t, double depth_L,
                          double tol = 1e-6, double max_depth = 200.0);

/// Departure-branch states at t: u = 0 until r, then the linear problem, for
/// r = t - depth_L + j depth_L / (n_departures - 1).
std::vector<StatePoint> parabolic_departure_states(const ParabolicInclusionModel& m, double t,
                                                   double depth_L, std::size_t n_departures);

/// {0, xi_M(t)} with the eps-merged departure states.
CompactSetSample parabolic_attractor_sample(const ParabolicInclusionModel& m, double t,
                                            double depth_L, std::size_t n_departures,
                                            double eps = 1e-3);

SetFamily parabolic_attractor_family(const ParabolicInclusionModel& m,
                                     std::span<const double> times, double depth_L,
                                     std::size_t n_departures, double eps = 1e-3);

struct ParabolicAutonomousAttractor {
  StatePoint zero;
  StatePoint v1_plus;
  /// {0, v1+} with the heteroclinic states, sampled like
  /// parabolic_attractor_sample with the same arguments.
  CompactSetSample sample;
};

/// Needs constant b and omega.
ParabolicAutonomousAttractor parabolic_autonomous_attractor(const ParabolicInclusionModel& m,
                                                            double depth_L = 10.0,
                                                            std::size_t n_departures = 201,
                                                            double eps = 1e-3);

/// For each tau: max over t in [0, T] of ||u(tau + t; tau, u0) - z(t)|| with z
/// the solution of the limit model from u0, divided by the largest
/// |b(s) - b_inf| + |omega(s) - omega_inf| on [tau, tau + T]. Passes when
/// every ratio is at most c_max.
VerifierReport parabolic_aa_contract(const ParabolicInclusionModel& m, const StatePoint& u0,
                                     std::span<const double> taus, double T,
                                     double c_max = 10.0);

}  // namespace attlab
