#include "attlab/chafee.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "attlab/errors.hpp"
#include "parallel.hpp"

namespace attlab {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double block = 0.1;  // curve resolution of the per-step checks

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> field_values(const Grid1D& g, const StatePoint& u, const char* op) {
  if (u.size() != g.size() || !u.step())
    throw ContractViolation(std::string(op) + ": initial field does not live on the model grid");
  if (std::abs(*u.step() - g.h()) > 1e-12 * g.h())
    throw ContractViolation(std::string(op) + ": grid step mismatch");
  for (double v : u.values())
    if (!std::isfinite(v)) throw ContractViolation(std::string(op) + ": non-finite initial field");
  return {u.values().begin(), u.values().end()};
}

double sq_l2(std::span<const double> u, double h) {
  const double n = l2_norm(u, h);
  return n * n;
}

// Block-maximum curve: one point per `block` time units, holding the worst
// value seen inside the block.
class BlockCurve {
 public:
  BlockCurve(double t0) : t0_(t0) {}
  void add(double t, double v) {
    const auto b = static_cast<long>(std::floor((t - t0_) / block - 1e-9));
    if (b != current_ && has_) flush();
    current_ = b;
    last_t_ = t;
    worst_ = has_ ? std::max(worst_, v) : v;
    has_ = true;
  }
  std::vector<CurvePoint> finish() {
    if (has_) flush();
    return std::move(curve_);
  }

 private:
  void flush() {
    curve_.push_back({last_t_, worst_});
    has_ = false;
  }
  double t0_;
  long current_ = -1;
  double last_t_ = 0.0;
  double worst_ = 0.0;
  bool has_ = false;
  std::vector<CurvePoint> curve_;
};

}  // namespace

void ChafeeModel::validate() const {
  if (!(lambda > 1.0 && lambda < 4.0)) throw ContractViolation("chafee: need 1 < lambda < 4");
  if (!(b.inf() > 0.0)) throw ContractViolation("chafee: need inf b > 0");
  if (!std::isfinite(b.sup())) throw ContractViolation("chafee: b must be bounded");
  if (!(dt > 0.0)) throw ContractViolation("chafee: dt must be positive");
  if (dt > max_dt) throw ContractViolation("chafee: dt above the cap " + fmt(max_dt));
  if (std::abs(grid.length() - std::numbers::pi) > 1e-12)
    throw ContractViolation("chafee: the domain is (0, pi)");
}

ChafeeModel ChafeeModel::limit_model() const {
  const auto lim = b.declared_limit();
  if (!lim) throw UnsupportedModel("chafee: b has no declared limit");
  ChafeeModel out = *this;
  out.b = TimeFn::constant(*lim);
  return out;
}

ChafeeStepper::ChafeeStepper(ChafeeModel m) : m_(std::move(m)), rhs_(m_.grid.size()) {
  m_.validate();
}

void ChafeeStepper::step(double t, std::vector<double>& u, double k) {
  if (!(k > 0.0) || k > m_.dt * (1.0 + 1e-9))
    throw ContractViolation("ChafeeStepper: step outside (0, dt]");
  const double h = m_.grid.h();
  const double inv_h2 = 1.0 / (h * h);
  const double diag = 1.0 + k * (2.0 * inv_h2 - m_.lambda);
  if (!lhs_ || lhs_->diag() != diag) lhs_.emplace(u.size(), diag, -k * inv_h2);
  const double kb = k * m_.b(t);
  for (std::size_t i = 0; i < u.size(); ++i) rhs_[i] = u[i] - kb * u[i] * u[i] * u[i];
  lhs_->solve(rhs_);
  guard_state(rhs_, h, t + k, t);
  u.swap(rhs_);
}

void ChafeeStepper::advance(double& t, std::vector<double>& u, double t_end,
                            const StepObserver& obs) {
  if (!(t_end >= t)) throw ContractViolation("ChafeeStepper::advance: t_end < t");
  const double span = t_end - t;
  const auto n = static_cast<long>(std::ceil(span / m_.dt - 1e-9));
  if (n <= 0) {
    t = t_end;
    return;
  }
  const double t_start = t;
  const double k = span / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    step(t, u, k);
    t = i + 1 == n ? t_end : t_start + static_cast<double>(i + 1) * k;
    if (obs) obs(t, u);
  }
}

TrajectorySample chafee_solve(const ChafeeModel& m, std::span<const double> times, double t0,
                              const StatePoint& u0, const StepObserver& obs) {
  m.validate();
  if (times.empty()) throw ContractViolation("chafee_solve: no snapshot times");
  auto u = field_values(m.grid, u0, "chafee_solve");
  ChafeeStepper stepper(m);
  TrajectorySample out;
  out.branch = BranchLabel::unique();
  double t = t0;
  if (obs) obs(t, u);
  for (double s : times) {
    if (!(s >= t)) throw ContractViolation("chafee_solve: snapshot times must increase from t0");
    stepper.advance(t, u, s, obs);
    out.times.push_back(s);
    out.states.push_back(m.grid.field(u, u0.norm_tag()));
  }
  return out;
}

StatePoint chafee_state(const ChafeeModel& m, double t, double t0, const StatePoint& u0) {
  const double ts[] = {t};
  return chafee_solve(m, ts, t0, u0).states.front();
}

ProcessHandle chafee_process(const ChafeeModel& m, std::string model_id) {
  m.validate();
  Evaluator ev = [m](double t, double t0, const StatePoint& x, int) {
    if (!(t >= t0)) throw ContractViolation("chafee: t < t0");
    return std::vector<Branch>{{BranchLabel::unique(), chafee_state(m, t, t0, x)}};
  };
  PathEvaluator path = [m](std::span<const double> times, double t0, const StatePoint& x, int) {
    auto tr = chafee_solve(m, times, t0, x);
    return std::vector<BranchPath>{{BranchLabel::unique(), std::move(tr.states)}};
  };
  return ProcessHandle(std::move(model_id), std::move(ev), false, m.b.is_constant(),
                       std::move(path));
}

double chafee_stationary_residual(const Grid1D& g, double lambda, double b,
                                  std::span<const double> v) {
  std::vector<double> r(v.size());
  g.apply_laplacian(v, r);
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    worst = std::max(worst, std::abs(r[i] - lambda * v[i] + b * v[i] * v[i] * v[i]));
  return worst;
}

std::vector<double> chafee_newton(const Grid1D& g, double lambda, double b,
                                  std::vector<double> v, double tol, int max_iter,
                                  int* iterations) {
  if (v.size() != g.size()) throw ContractViolation("chafee_newton: guess size mismatch");
  const std::size_t n = v.size();
  const double inv_h2 = 1.0 / (g.h() * g.h());
  std::vector<double> res(n), sub(n, -inv_h2), diag(n), sup(n, -inv_h2);
  double r = 0.0;
  for (int it = 0; it <= max_iter; ++it) {
    g.apply_laplacian(v, res);
    r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res[i] += -lambda * v[i] + b * v[i] * v[i] * v[i];
      r = std::max(r, std::abs(res[i]));
    }
    if (!std::isfinite(r)) break;
    if (r <= tol) {
      if (iterations) *iterations = it;
      return v;
    }
    if (it == max_iter) break;
    for (std::size_t i = 0; i < n; ++i) diag[i] = 2.0 * inv_h2 - lambda + 3.0 * b * v[i] * v[i];
    solve_tridiagonal(sub, diag, sup, res);
    for (std::size_t i = 0; i < n; ++i) v[i] -= res[i];
  }
  throw NumericalFailure("chafee_newton: no convergence, last residual " + fmt(r), nan);
}

ChafeeEquilibria chafee_autonomous_equilibria(const ChafeeModel& m) {
  m.validate();
  if (!m.b.is_constant()) throw UnsupportedModel("chafee_autonomous_equilibria: b is not constant");
  const double b = m.b(0.0);
  auto v = m.grid.sample([](double x) { return 0.5 * std::sin(x); });
  ChafeeStepper stepper(m);
  double t = 0.0;
  stepper.advance(t, v, 200.0);
  int iterations = 0;
  v = chafee_newton(m.grid, m.lambda, b, std::move(v), 1e-10, 50, &iterations);
  const double residual = chafee_stationary_residual(m.grid, m.lambda, b, v);
  std::vector<double> neg(v.size());
  std::transform(v.begin(), v.end(), neg.begin(), [](double x) { return -x; });
  ChafeeEquilibria out{m.grid.field(std::vector<double>(v.size(), 0.0)), m.grid.field(std::move(v)),
                       m.grid.field(std::move(neg)), residual, iterations};
  return out;
}

StatePoint chafee_xi_M(const ChafeeModel& m, double t, int sign, double depth_L, double tol,
                       double max_depth) {
  m.validate();
  if (!(depth_L > 0.0)) throw ContractViolation("chafee_xi_M: depth must be positive");
  if (sign != 1 && sign != -1) throw ContractViolation("chafee_xi_M: sign must be +-1");
  const auto pull = [&](double L) {
    std::vector<double> u(m.grid.size(), 5.0 * sign);
    ChafeeStepper stepper(m);
    double s = t - L;
    stepper.advance(s, u, t);
    return u;
  };
  double L = depth_L;
  auto prev = pull(L);
  double change = nan;
  while (2.0 * L <= max_depth) {
    L *= 2.0;
    auto cur = pull(L);
    std::vector<double> d(cur.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = cur[i] - prev[i];
    change = l2_norm(d, m.grid.h());
    if (change <= tol) return m.grid.field(std::move(cur));
    prev = std::move(cur);
  }
  throw NumericalFailure("chafee_xi_M: pullback not converged at depth " + fmt(L) +
                             " (last change " + fmt(change) + ")",
                         t);
}

std::vector<std::vector<double>> chafee_seed_bank(const ChafeeModel& m, double depth_L,
                                                  std::size_t ic_count) {
  m.validate();
  if (ic_count < 8) throw ContractViolation("chafee_seed_bank: need at least 8 initial fields");
  // growth rate of sin x under the linear part of the scheme
  const double growth = -std::log1p(m.dt * (m.grid.lambda1_h() - m.lambda)) / m.dt;
  const double shrink = std::exp(-growth * depth_L);
  const std::size_t tiny = ic_count / 2;
  const std::size_t large = ic_count - tiny;
  std::vector<std::vector<double>> bank;
  bank.reserve(ic_count);

  const std::size_t per_sign = (tiny + 1) / 2;
  for (std::size_t j = 0; j < tiny; ++j) {
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    const std::size_t idx = j / 2;
    const double s = per_sign > 1 ? -4.0 + 6.0 * static_cast<double>(idx) / (per_sign - 1) : 0.0;
    const double a = sign * std::pow(10.0, s) * shrink;
    bank.push_back(m.grid.sample([a](double x) { return a * std::sin(x); }));
  }
  for (std::size_t j = 0; j < large; ++j) {
    const std::size_t combo = j % 4;
    const double k = combo < 2 ? 1.0 : 2.0;
    const double sign = combo % 2 == 0 ? 1.0 : -1.0;
    const std::size_t idx = j / 4;
    const std::size_t count = (large - combo + 3) / 4;
    const double c = count > 1 ? 0.5 * std::pow(10.0, static_cast<double>(idx) / (count - 1)) : 1.0;
    bank.push_back(m.grid.sample([=](double x) { return sign * c * std::sin(k * x); }));
  }
  return bank;
}

CompactSetSample chafee_attractor_sample(const ChafeeModel& m, double t, double depth_L,
                                         std::size_t ic_count, double eps) {
  if (!(depth_L > 0.0)) throw ContractViolation("chafee_attractor_sample: depth must be positive");
  const auto bank = chafee_seed_bank(m, depth_L, ic_count);
  std::vector<StatePoint> states(bank.size(), m.grid.field(std::vector<double>(m.grid.size())));
  detail::parallel_for(bank.size(), [&](std::size_t i) {
    auto u = bank[i];
    ChafeeStepper stepper(m);
    double s = t - depth_L;
    stepper.advance(s, u, t);
    states[i] = m.grid.field(std::move(u));
  });
  auto merged = eps_merge(states, eps);
  std::vector<StatePoint> pts = merged.points();
  pts.push_back(m.grid.field(std::vector<double>(m.grid.size(), 0.0)));
  pts.push_back(chafee_xi_M(m, t, +1, depth_L));
  pts.push_back(chafee_xi_M(m, t, -1, depth_L));
  return CompactSetSample(std::move(pts), eps);
}

SetFamily chafee_attractor_family(const ChafeeModel& m, std::span<const double> times,
                                  double depth_L, std::size_t ic_count, double eps) {
  std::vector<CompactSetSample> sections;
  sections.reserve(times.size());
  for (double t : times) sections.push_back(chafee_attractor_sample(m, t, depth_L, ic_count, eps));
  return SetFamily({times.begin(), times.end()}, std::move(sections), "pullback-numerical");
}

HeteroclinicFit chafee_heteroclinic_fit(const ChafeeModel& m, double amplitude) {
  m.validate();
  if (!m.b.is_constant()) throw UnsupportedModel("chafee_heteroclinic_rate: b is not constant");
  if (!(amplitude > 0.0)) throw ContractViolation("chafee_heteroclinic_rate: amplitude must be positive");
  constexpr double lo = 1e-5;
  constexpr double hi = 1e-2;
  const double h = m.grid.h();
  const double t_cap = 40.0 / (m.lambda - m.grid.lambda1()) + 10.0;
  auto u = m.grid.sample([amplitude](double x) { return amplitude * std::sin(x); });
  ChafeeStepper stepper(m);
  std::vector<double> ts, ys;
  double t = 0.0;
  for (double vn = v_norm(u, h); vn <= hi && t < t_cap; vn = v_norm(u, h)) {
    if (vn >= lo) {
      ts.push_back(t);
      ys.push_back(std::log(vn));
    }
    stepper.step(t, u, m.dt);
    t += m.dt;
  }
  if (ts.size() < 3)
    throw NumericalFailure("chafee_heteroclinic_rate: fit window is empty", t);
  const double n = static_cast<double>(ts.size());
  double st = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sy += ys[i];
  }
  const double mt = st / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - mt) * (ys[i] - my);
    sxx += (ts[i] - mt) * (ts[i] - mt);
  }
  return {sxy / sxx, ts.front(), ts.back(), ts.size()};
}

double chafee_heteroclinic_rate(const ChafeeModel& m, double amplitude) {
  return chafee_heteroclinic_fit(m, amplitude).exponent;
}

ChafeeEnergyConstants chafee_energy_constants(const ChafeeModel& m) {
  m.validate();
  ChafeeEnergyConstants c;
  const double l1 = m.grid.lambda1();
  c.alpha = m.lambda - l1 + 1.0;
  c.gamma = c.alpha + l1 - m.lambda;
  c.b0 = m.b.inf();
  c.domain_measure = m.grid.length();
  c.absorbing_unscaled = c.alpha * c.alpha / (4.0 * c.gamma * c.b0);
  c.absorbing = c.absorbing_unscaled * c.domain_measure;
  c.R0 = std::sqrt(1.0 + c.absorbing);
  const double source = c.alpha * c.alpha * c.domain_measure / (4.0 * c.b0);
  c.R1 = std::sqrt((1.0 + 2.0 * (m.lambda - l1)) * (c.R0 * c.R0 / 2.0 + source));
  return c;
}

VerifierReport chafee_energy_check(const ChafeeModel& m, const StatePoint& u0, double t0,
                                   double t) {
  const auto c = chafee_energy_constants(m);
  if (!(t >= t0)) throw ContractViolation("chafee_energy_check: t < t0");
  auto u = field_values(m.grid, u0, "chafee_energy_check");
  const double h = m.grid.h();
  const double l1 = m.grid.lambda1();
  const auto n_steps = static_cast<long>(std::ceil((t - t0) / m.dt - 1e-9));
  const double k = n_steps > 0 ? (t - t0) / static_cast<double>(n_steps) : m.dt;
  const auto lag = static_cast<long>(std::ceil(1.0 / k - 1e-9));
  const double ell = static_cast<double>(lag) * k;
  const double v_factor = 1.0 + 2.0 * (m.lambda - l1);
  const double v_source = ell * c.alpha * c.alpha * c.domain_measure / (4.0 * c.b0);

  const double e0 = sq_l2(u, h);
  std::vector<double> history{e0};
  BlockCurve l2_curve(t0), v_curve(t0);
  double worst = 0.0, worst_v = 0.0;
  long unscaled_violations = 0;
  ChafeeStepper stepper(m);
  for (long j = 1; j <= n_steps; ++j) {
    stepper.step(t0 + static_cast<double>(j - 1) * k, u, k);
    const double s = j == n_steps ? t : t0 + static_cast<double>(j) * k;
    const double e = sq_l2(u, h);
    history.push_back(e);
    const double decay = std::exp(-2.0 * c.gamma * (s - t0)) * e0;
    const double ratio = e / (decay + c.absorbing);
    worst = std::max(worst, ratio);
    l2_curve.add(s, ratio);
    if (e > decay + c.absorbing_unscaled) ++unscaled_violations;
    if (j >= lag) {
      const double vn = v_norm(u, h);
      const double rv = vn * vn / (v_factor * (history[j - lag] / 2.0 + v_source));
      worst_v = std::max(worst_v, rv);
      v_curve.add(s, rv);
    }
  }

  VerifierReport vrep;
  vrep.check_id = "chafee_v_norm_bound";
  vrep.tolerance = 1.0;
  vrep.curve = v_curve.finish();
  vrep.evidence["worst_ratio"] = worst_v;
  vrep.evidence["R1"] = c.R1;
  if (vrep.curve.empty()) vrep.notes.push_back("run shorter than one time unit: nothing to check");
  apply_verdict(vrep, VerdictRule::bounded);

  VerifierReport rep;
  rep.check_id = "chafee_energy";
  rep.tolerance = 1.0;
  rep.curve = l2_curve.finish();
  rep.evidence["worst_ratio"] = worst;
  rep.evidence["absorbing"] = c.absorbing;
  rep.evidence["absorbing_unscaled"] = c.absorbing_unscaled;
  rep.evidence["unscaled_violations"] = static_cast<double>(unscaled_violations);
  rep.evidence["R0"] = c.R0;
  rep.evidence["alpha"] = c.alpha;
  rep.evidence["gamma"] = c.gamma;
  if (unscaled_violations > 0)
    rep.notes.push_back("the bound without the domain measure fails at " +
                        std::to_string(unscaled_violations) + " steps");
  rep.sub_checks.push_back(std::move(vrep));
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

VerifierReport chafee_order_check(const ChafeeModel& m, const StatePoint& u0, double t0,
                                  double t, double depth_L, double tol) {
  m.validate();
  if (!(t >= t0)) throw ContractViolation("chafee_order_check: t < t0");
  auto u = field_values(m.grid, u0, "chafee_order_check");
  const auto xi0 = chafee_xi_M(m, t0, +1, depth_L);
  std::vector<double> xi(xi0.values().begin(), xi0.values().end());
  const auto excess = [&] {
    double e = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(u[i]) - xi[i]);
    return e;
  };
  if (excess() > tol) throw ContractViolation("chafee_order_check: u0 outside [-xi_M, xi_M]");

  VerifierReport rep;
  rep.check_id = "chafee_order_interval";
  rep.tolerance = tol;
  BlockCurve curve(t0);
  const auto n_steps = static_cast<long>(std::ceil((t - t0) / m.dt - 1e-9));
  const double k = n_steps > 0 ? (t - t0) / static_cast<double>(n_steps) : m.dt;
  ChafeeStepper stepper(m);
  double worst = excess();
  for (long j = 1; j <= n_steps; ++j) {
    const double s = t0 + static_cast<double>(j - 1) * k;
    stepper.step(s, u, k);
    stepper.step(s, xi, k);
    const double e = excess();
    worst = std::max(worst, e);
    curve.add(s + k, e);
  }
  rep.curve = curve.finish();
  rep.evidence["worst_excess"] = worst;
  apply_verdict(rep, VerdictRule::bounded);
  return rep;
}

}  // namespace attlab
