#include "attlab/models_scalar.hpp"

#include <cmath>

#include "attlab/errors.hpp"

namespace attlab {

double linear_solution(const LinearModel& m, double t, double t0, double y0) {
  if (!(t >= t0)) throw ContractViolation("linear_solution: t < t0");
  return std::exp(m.drift * (t - t0)) * y0 + m.forcing.weighted_integral(-m.drift, t0, t);
}

double linear_pullback_trajectory(const LinearModel& m, double t) {
  if (!(m.drift < 0.0))
    throw UnsupportedModel("linear_pullback_trajectory: drift must be negative (dissipative)");
  return m.forcing.pullback_integral(-m.drift, t);
}

ProcessHandle linear_process(const LinearModel& m, std::string model_id) {
  auto ev = [m](double t, double t0, const StatePoint& x, int) {
    const double y = linear_solution(m, t, t0, x.scalar_value());
    guard_state(std::span<const double>(&y, 1), 1.0, t, t0);
    return std::vector<Branch>{{BranchLabel::unique(), StatePoint::scalar(y)}};
  };
  return ProcessHandle(std::move(model_id), ev, false, m.forcing.is_constant());
}

ProcessHandle linear_deviation_process(const LinearModel& m, std::string model_id) {
  const double a = m.drift;
  auto ev = [a](double t, double t0, const StatePoint& x, int) {
    const double z = std::exp(a * (t - t0)) * x.scalar_value();
    return std::vector<Branch>{{BranchLabel::unique(), StatePoint::scalar(z)}};
  };
  return ProcessHandle(std::move(model_id), ev, false, true);
}

SetFamily linear_attractor_family(const LinearModel& m, std::span<const double> times) {
  std::vector<CompactSetSample> sections;
  sections.reserve(times.size());
  for (double t : times)
    sections.emplace_back(std::vector<StatePoint>{StatePoint::scalar(linear_pullback_trajectory(m, t))});
  return SetFamily(std::vector<double>(times.begin(), times.end()), std::move(sections),
                   "closed-form");
}

void InclusionModel::validate() const {
  if (!(lambda > 0.0)) throw ContractViolation("InclusionModel: lambda must be positive");
  if (!(b.inf() > 0.0)) throw ContractViolation("InclusionModel: b must satisfy 0 < b0 <= b(t)");
  if (!std::isfinite(b.sup())) throw ContractViolation("InclusionModel: b must be bounded");
}

double inclusion_departure_branch(const InclusionModel& m, double r, double t, int sign) {
  if (t <= r) return 0.0;
  return (sign > 0 ? 1.0 : -1.0) * m.b.weighted_integral(m.lambda, r, t);
}

std::vector<Branch> inclusion_solution_set(const InclusionModel& m, double t, double t0,
                                           double u0, int budget) {
  if (!(t >= t0)) throw ContractViolation("inclusion_solution_set: t < t0");
  if (t == t0) return {{BranchLabel::unique(), StatePoint::scalar(u0)}};
  if (u0 != 0.0) {
    const double sgn = u0 > 0.0 ? 1.0 : -1.0;
    const double u =
        std::exp(-m.lambda * (t - t0)) * u0 + sgn * m.b.weighted_integral(m.lambda, t0, t);
    return {{BranchLabel::unique(), StatePoint::scalar(u)}};
  }
  std::vector<Branch> out;
  out.push_back({BranchLabel::zero_rest(), StatePoint::scalar(0.0)});
  for (double r : departure_grid(t0, t, budget)) {
    const double v = m.b.weighted_integral(m.lambda, r, t);
    out.push_back({BranchLabel::departure(+1, r), StatePoint::scalar(v)});
    out.push_back({BranchLabel::departure(-1, r), StatePoint::scalar(-v)});
  }
  return out;
}

double inclusion_xi_M(const InclusionModel& m, double t, int sign) {
  return (sign > 0 ? 1.0 : -1.0) * m.b.pullback_integral(m.lambda, t);
}

CompactSetSample inclusion_attractor(const InclusionModel& m, double t, std::size_t n_points) {
  if (n_points < 2) throw ContractViolation("inclusion_attractor: need at least 2 points");
  const double hi = inclusion_xi_M(m, t, +1);
  return CompactSetSample::interval(-hi, hi, n_points);
}

SetFamily inclusion_attractor_family(const InclusionModel& m, std::span<const double> times,
                                     std::size_t n_points) {
  std::vector<CompactSetSample> sections;
  sections.reserve(times.size());
  for (double t : times) sections.push_back(inclusion_attractor(m, t, n_points));
  return SetFamily(std::vector<double>(times.begin(), times.end()), std::move(sections),
                   "closed-form");
}

double InclusionAutonomousLimit::heteroclinic(double r, double t, int sign) const {
  if (t <= r) return 0.0;
  return (sign > 0 ? 1.0 : -1.0) * b / lambda * (-std::expm1(-lambda * (t - r)));
}

InclusionModel inclusion_limit_model(const InclusionModel& m) {
  const auto lim = m.b.declared_limit();
  if (!lim) throw UnsupportedModel("inclusion: b(t) has no limit as t -> +inf");
  return InclusionModel{m.lambda, TimeFn::constant(*lim)};
}

InclusionAutonomousLimit inclusion_autonomous_limit(const InclusionModel& m, std::size_t n_points) {
  const auto lim = inclusion_limit_model(m);
  InclusionAutonomousLimit out;
  out.lambda = m.lambda;
  out.b = lim.b(0.0);
  const double z = out.b / out.lambda;
  out.fixed_points = {0.0, z, -z};
  out.attractor = CompactSetSample::interval(-z, z, n_points);
  return out;
}

ProcessHandle inclusion_process(const InclusionModel& m, std::string model_id) {
  m.validate();
  auto ev = [m](double t, double t0, const StatePoint& x, int budget) {
    return inclusion_solution_set(m, t, t0, x.scalar_value(), budget);
  };
  auto path = [m](std::span<const double> times, double t0, const StatePoint& x, int budget) {
    const double u0 = x.scalar_value();
    std::vector<BranchPath> out;
    if (u0 != 0.0) {
      BranchPath p{BranchLabel::unique(), {}};
      for (double t : times)
        p.states.push_back(inclusion_solution_set(m, t, t0, u0, 1).front().state);
      out.push_back(std::move(p));
      return out;
    }
    out.push_back({BranchLabel::zero_rest(),
                   std::vector<StatePoint>(times.size(), StatePoint::scalar(0.0))});
    for (double r : departure_grid(t0, times.back(), budget)) {
      BranchPath plus{BranchLabel::departure(+1, r), {}};
      BranchPath minus{BranchLabel::departure(-1, r), {}};
      for (double t : times) {
        const double v = inclusion_departure_branch(m, r, t, +1);
        plus.states.push_back(StatePoint::scalar(v));
        minus.states.push_back(StatePoint::scalar(-v));
      }
      out.push_back(std::move(plus));
      out.push_back(std::move(minus));
    }
    return out;
  };
  return ProcessHandle(std::move(model_id), ev, true, m.b.is_constant(), path);
}

}  // namespace attlab
