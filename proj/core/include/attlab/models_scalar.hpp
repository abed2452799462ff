#pragma once

// Closed-form scalar models: linear equations y' = a y + f(t) and the
// Heaviside inclusion u' + lambda u in b(t) H0(u).

#include <array>
#include <vector>

#include "attlab/process.hpp"
#include "attlab/setcalc.hpp"
#include "attlab/time_fn.hpp"

namespace attlab {

struct LinearModel {
  double drift = -1.0;  // a in y' = a y + f(t)
  TimeFn forcing = TimeFn::constant(0.0);
};

/// Variation of constants: e^{a(t-t0)} y0 + int_{t0}^t e^{a(t-s)} f(s) ds.
double linear_solution(const LinearModel& m, double t, double t0, double y0);

/// The bounded complete trajectory int_{-inf}^t e^{a(t-s)} f(s) ds (a < 0).
double linear_pullback_trajectory(const LinearModel& m, double t);

ProcessHandle linear_process(const LinearModel& m, std::string model_id = "linear");

/// Deviation z = y - y*(t) from the pullback trajectory: z' = a z. Gives
/// bounded coordinates for models whose attractor drifts to infinity.
ProcessHandle linear_deviation_process(const LinearModel& m,
                                       std::string model_id = "linear-deviation");

/// Singleton family {y*(t)} on a grid.
SetFamily linear_attractor_family(const LinearModel& m, std::span<const double> times);

struct InclusionModel {
  double lambda = 1.0;
  TimeFn b = TimeFn::constant(1.0);

  /// lambda > 0 and 0 < inf b.
  void validate() const;
};

/// Solution catalogue at time t: the unique branch for u0 != 0, otherwise the
/// zero-rest branch plus u_r^{+-} for r on departure_grid(t0, t, budget).
std::vector<Branch> inclusion_solution_set(const InclusionModel& m, double t, double t0,
                                           double u0, int budget);

/// u_r^{sign}(t): 0 for t <= r, sign * int_r^t e^{-lambda(t-s)} b(s) ds after.
double inclusion_departure_branch(const InclusionModel& m, double r, double t, int sign);

/// Nonautonomous equilibria xi_M^{sign}(t) = sign * int_{-inf}^t e^{-lambda(t-s)} b(s) ds.
double inclusion_xi_M(const InclusionModel& m, double t, int sign);

/// Uniform sample of [xi_M^-(t), xi_M^+(t)].
CompactSetSample inclusion_attractor(const InclusionModel& m, double t, std::size_t n_points);

SetFamily inclusion_attractor_family(const InclusionModel& m, std::span<const double> times,
                                     std::size_t n_points);

struct InclusionAutonomousLimit {
  double lambda = 1.0;
  double b = 1.0;
  std::array<double, 3> fixed_points{};  // 0, +b/lambda, -b/lambda
  CompactSetSample attractor;            // sample of [-b/lambda, b/lambda]

  /// phi_r^{sign}(t): 0 for t <= r, sign * b/lambda (1 - e^{-lambda(t-r)}) after.
  double heteroclinic(double r, double t, int sign = 1) const;
};

/// Autonomous limit system; needs b.declared_limit().
InclusionAutonomousLimit inclusion_autonomous_limit(const InclusionModel& m,
                                                    std::size_t n_points = 2001);

/// Same inclusion with b frozen at its t -> +inf limit.
InclusionModel inclusion_limit_model(const InclusionModel& m);

ProcessHandle inclusion_process(const InclusionModel& m, std::string model_id = "ode-inclusion");

}  // namespace attlab
