#pragma once

// Chafee-Infante reaction-diffusion on (0, pi) with Dirichlet ends:
//   u_t = u_xx + lambda u - b(t) u^3.
//
// Time stepping is implicit in diffusion and the linear term and explicit in
// the cubic:
//   (I + k (A_h - lambda I)) u^{n+1} = u^n - k b(t_n) (u^n)^3,
// with A_h the second-difference matrix. Fields are StatePoints in the
// discrete L2 metric of the model grid.

#include <cstddef>
#include <functional>
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

struct ChafeeModel {
  static constexpr double max_dt = 0.01;

  double lambda = 2.0;
  TimeFn b = TimeFn::constant(1.0);
  Grid1D grid = Grid1D::chafee();
  double dt = 0.005;

  /// 1 < lambda < 4, 0 < inf b <= sup b < inf, 0 < dt <= max_dt, domain (0, pi).
  void validate() const;
  /// Same model with b frozen at its declared t -> +inf limit.
  ChafeeModel limit_model() const;
};

/// Called with (t, u) at the start of a march and after every step.
using StepObserver = std::function<void(double t, std::span<const double> u)>;

/// One sequential march. The factored left-hand side is cached per step size.
class ChafeeStepper {
 public:
  explicit ChafeeStepper(ChafeeModel m);

  const ChafeeModel& model() const noexcept { return m_; }

  /// Advances u from t to t + k, 0 < k <= dt.
  void step(double t, std::vector<double>& u, double k);
  /// Equal steps no longer than dt from t to t_end; ends exactly at t_end.
  void advance(double& t, std::vector<double>& u, double t_end, const StepObserver& obs = {});

 private:
  ChafeeModel m_;
  std::optional<ToeplitzTridiag> lhs_;
  std::vector<double> rhs_;
};

/// Snapshots of the solution from (t0, u0) at increasing times >= t0.
TrajectorySample chafee_solve(const ChafeeModel& m, std::span<const double> times, double t0,
                              const StatePoint& u0, const StepObserver& obs = {});
StatePoint chafee_state(const ChafeeModel& m, double t, double t0, const StatePoint& u0);

ProcessHandle chafee_process(const ChafeeModel& m, std::string model_id = "chafee");

/// Max-norm of A_h v - lambda v + b v^3.
double chafee_stationary_residual(const Grid1D& g, double lambda, double b,
                                  std::span<const double> v);

/// Newton iteration on the stationary system from `guess`; NumericalFailure
/// carrying the last residual if it does not reach tol.
std::vector<double> chafee_newton(const Grid1D& g, double lambda, double b,
                                  std::vector<double> guess, double tol = 1e-10,
                                  int max_iter = 50, int* iterations = nullptr);

struct ChafeeEquilibria {
  StatePoint zero;
  StatePoint v1_plus;
  StatePoint v1_minus;
  double residual = 0.0;
  int newton_iterations = 0;
};

/// 0 and +-v1: v1_plus from a march of 0.5 sin x over [0, 200] polished by
/// Newton to residual 1e-10. Needs constant b.
ChafeeEquilibria chafee_autonomous_equilibria(const ChafeeModel& m);

/// Maximal (sign > 0) or minimal bounded complete trajectory at t, by
/// pullback from the constant field sign * 5. The depth starts at depth_L and
/// doubles until successive states differ by at most tol; NumericalFailure
/// once it would exceed max_depth.
StatePoint chafee_xi_M(const ChafeeModel& m, double t, int sign, double depth_L,
                       double tol = 1e-6, double max_depth = 200.0);

/// The initial fields behind chafee_attractor_sample: half are tiny multiples
/// of +-sin x scaled by e^{-(lambda - 1) L} so they sit on the unstable
/// manifold of 0 after the pullback, the rest +-c sin(kx) for k in {1, 2}.
std::vector<std::vector<double>> chafee_seed_bank(const ChafeeModel& m, double depth_L,
                                                  std::size_t ic_count);

/// eps-merged states at t of the seed bank evolved from t - depth_L, with 0
/// and +-xi_M(t) appended.
CompactSetSample chafee_attractor_sample(const ChafeeModel& m, double t, double depth_L,
                                         std::size_t ic_count, double eps = 1e-3);

SetFamily chafee_attractor_family(const ChafeeModel& m, std::span<const double> times,
                                  double depth_L, std::size_t ic_count, double eps = 1e-3);

struct HeteroclinicFit {
  double exponent = 0.0;
  double window_lo = 0.0;  // time where the V-norm first reaches 1e-5
  double window_hi = 0.0;
  std::size_t points = 0;
};

/// Growth exponent of ||u||_V from amplitude * sin x, fitted log-linearly on
/// the part of the orbit with 1e-5 <= ||u||_V <= 1e-2. Needs constant b.
HeteroclinicFit chafee_heteroclinic_fit(const ChafeeModel& m, double amplitude = 1e-6);
double chafee_heteroclinic_rate(const ChafeeModel& m, double amplitude = 1e-6);

struct ChafeeEnergyConstants {
  double alpha = 0.0;  // lambda - lambda_1 + 1
  double gamma = 1.0;  // alpha + lambda_1 - lambda
  double b0 = 0.0;
  double domain_measure = 0.0;
  /// alpha^2 |Omega| / (4 gamma b0)
  double absorbing = 0.0;
  /// alpha^2 / (4 gamma b0), without the domain measure
  double absorbing_unscaled = 0.0;
  double R0 = 0.0;  // sqrt(1 + absorbing)
  double R1 = 0.0;  // V-norm radius once ||u|| <= R0
};

ChafeeEnergyConstants chafee_energy_constants(const ChafeeModel& m);

/// At every step of the march from (t0, u0) to t:
///   ||u(s)||^2 <= e^{-2 gamma (s - t0)} ||u0||^2 + absorbing,
/// and, sub-check chafee_v_norm_bound, with l >= 1 the shortest whole number
/// of steps covering one time unit and s >= t0 + l,
///   ||u(s)||_V^2 <= (1 + 2 (lambda - lambda_1)) (||u(s - l)||^2 / 2 + l alpha^2 |Omega| / (4 b0)).
/// Curves hold lhs / rhs against tolerance 1.
VerifierReport chafee_energy_check(const ChafeeModel& m, const StatePoint& u0, double t0,
                                   double t);

/// March u from (t0, u0) alongside xi_M^+ and record the worst nodewise
/// excess of |u| over xi_M^+ at every step; passes when it stays below tol.
VerifierReport chafee_order_check(const ChafeeModel& m, const StatePoint& u0, double t0,
                                  double t, double depth_L, double tol = 1e-8);

}  // namespace attlab
