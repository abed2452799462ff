#include "context.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "attlab/errors.hpp"

namespace attlab::tools {

namespace {

ProcessHandle make_process(const ScenarioConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::linear: return linear_process(cfg.linear(), cfg.id.empty() ? "linear" : cfg.id);
    case ModelKind::ode_inclusion: return inclusion_process(cfg.inclusion(), cfg.id.empty() ? "ode-inclusion" : cfg.id);
    case ModelKind::chafee: return chafee_process(cfg.chafee(), cfg.id.empty() ? "chafee" : cfg.id);
    case ModelKind::parabolic_inclusion:
      return parabolic_process(cfg.parabolic(), cfg.id.empty() ? "parabolic-inclusion" : cfg.id);
  }
  throw UnsupportedModel("unknown model");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

double to_double(const std::string& s, const std::string& spec) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ContractViolation("initial condition '" + spec + "': bad number '" + s + "'");
}

}  // namespace

ModelContext::ModelContext(ScenarioConfig cfg, io::FieldCache cache)
    : cfg_(std::move(cfg)), cache_(std::move(cache)), process_(make_process(cfg_)) {
  if (cfg_.model == ModelKind::chafee) grid_ = cfg_.chafee().grid;
  if (cfg_.model == ModelKind::parabolic_inclusion) grid_ = cfg_.parabolic().grid;
}

const Grid1D& ModelContext::grid() const {
  if (!grid_) throw UnsupportedModel(std::string(to_string(kind())) + " has no spatial grid");
  return *grid_;
}

StatePoint ModelContext::parse_ic(const std::string& spec) const {
  const auto parts = split(spec, ':');
  const auto& head = parts[0];
  if (head == "zero" && parts.size() == 1) {
    if (!is_field()) return StatePoint::scalar(0.0);
    return grid().field(std::vector<double>(grid().size(), 0.0));
  }
  if (head == "const" && parts.size() == 2) {
    const double a = to_double(parts[1], spec);
    if (!is_field()) return StatePoint::scalar(a);
    return grid().field(std::vector<double>(grid().size(), a));
  }
  if (head == "value" && parts.size() == 2) {
    if (is_field()) throw ContractViolation("initial condition '" + spec + "': value: needs a scalar model");
    return StatePoint::scalar(to_double(parts[1], spec));
  }
  if (head == "sin" && (parts.size() == 2 || parts.size() == 3)) {
    const double a = to_double(parts[1], spec);
    const double k = parts.size() == 3 ? to_double(parts[2], spec) : 1.0;
    const double w = k * std::numbers::pi / grid().length();
    return grid().field(grid().sample([&](double x) { return a * std::sin(w * x); }));
  }
  if (head == "csv" && parts.size() >= 2) {
    std::filesystem::path p = spec.substr(4);
    if (p.is_relative() && !cfg_.base_dir.empty() && !std::filesystem::exists(p)) p = cfg_.base_dir / p;
    const auto set = io::set_from_csv(io::read_file(p));
    if (set.size() != 1) throw ContractViolation("initial condition '" + spec + "': csv must hold one point");
    const auto& x = set[0];
    if (is_field()) {
      if (x.size() != grid().size()) throw ContractViolation("initial condition '" + spec + "': wrong field size");
      return grid().field(std::vector<double>(x.values().begin(), x.values().end()));
    }
    return StatePoint::scalar(x.scalar_value());
  }
  throw ContractViolation("initial condition '" + spec +
                          "': expected zero, const:a, sin:a[:k], value:x or csv:path");
}

CompactSetSample ModelContext::parse_set(const json& spec) const {
  if (spec.is_null()) return default_set();
  if (spec.contains("interval")) {
    if (is_field()) throw ContractViolation("interval sets need a scalar model");
    const auto& v = spec.at("interval");
    return CompactSetSample::interval(v.at(0).get<double>(), v.at(1).get<double>(), v.at(2).get<std::size_t>());
  }
  std::vector<StatePoint> pts;
  if (spec.contains("points")) {
    if (is_field()) throw ContractViolation("point lists need a scalar model");
    for (const auto& x : spec.at("points")) pts.push_back(StatePoint::scalar(x.get<double>()));
  } else if (spec.contains("ics")) {
    for (const auto& s : spec.at("ics")) pts.push_back(parse_ic(s.get<std::string>()));
  } else {
    throw ContractViolation("set spec: expected interval, points or ics");
  }
  return CompactSetSample(std::move(pts));
}

CompactSetSample ModelContext::default_set() const {
  const double r = cfg_.sampling.radius;
  switch (kind()) {
    case ModelKind::linear:
    case ModelKind::ode_inclusion: return CompactSetSample::interval(-r, r, 21);
    case ModelKind::chafee:
      return parse_set(json{{"ics", {"zero", "const:" + io::format_number(r), "const:" + io::format_number(-r),
                                     "sin:1", "sin:-1", "sin:2:2"}}});
    case ModelKind::parabolic_inclusion:
      return parse_set(json{{"ics", {"zero", "const:" + io::format_number(r), "sin:1", "sin:0.2"}}});
  }
  throw UnsupportedModel("unknown model");
}

CompactSetSample ModelContext::section(double t) const {
  const auto& s = cfg_.sampling;
  switch (kind()) {
    case ModelKind::linear:
      return CompactSetSample({StatePoint::scalar(linear_pullback_trajectory(cfg_.linear(), t))});
    case ModelKind::ode_inclusion: return inclusion_attractor(cfg_.inclusion(), t, s.points);
    case ModelKind::chafee: return chafee_attractor_sample(cfg_.chafee(), t, s.depth, s.ic_count, s.eps);
    case ModelKind::parabolic_inclusion:
      return parabolic_attractor_sample(cfg_.parabolic(), t, s.depth, static_cast<std::size_t>(s.departures), s.eps);
  }
  throw UnsupportedModel("unknown model");
}

SetFamily ModelContext::family(const std::vector<double>& times) const {
  std::vector<CompactSetSample> sections;
  sections.reserve(times.size());
  for (double t : times) sections.push_back(section(t));
  const bool closed = kind() == ModelKind::linear || kind() == ModelKind::ode_inclusion;
  return SetFamily(times, std::move(sections), closed ? "closed-form" : "pullback-numerical");
}

CompactSetSample ModelContext::limit_attractor() const {
  const auto& s = cfg_.sampling;
  switch (kind()) {
    case ModelKind::linear: throw UnsupportedModel("linear models have no compact autonomous attractor");
    case ModelKind::ode_inclusion: return inclusion_autonomous_limit(cfg_.inclusion(), s.points).attractor;
    case ModelKind::chafee:
      // the limit system is autonomous, so any section time will do
      return chafee_attractor_sample(cfg_.chafee().limit_model(), 0.0, s.depth, s.ic_count, s.eps);
    case ModelKind::parabolic_inclusion:
      return parabolic_autonomous_attractor(cfg_.parabolic().limit_model(), s.depth,
                                            static_cast<std::size_t>(s.departures), s.eps)
          .sample;
  }
  throw UnsupportedModel("unknown model");
}

StatePoint ModelContext::xi_plus(double t) const {
  const double L = cfg_.sampling.depth;
  switch (kind()) {
    case ModelKind::linear: return StatePoint::scalar(linear_pullback_trajectory(cfg_.linear(), t));
    case ModelKind::ode_inclusion: return StatePoint::scalar(inclusion_xi_M(cfg_.inclusion(), t, +1));
    case ModelKind::chafee: {
      const auto key = cfg_.model_key() + "|xi+|" + io::format_number(t) + "|" + io::format_number(L);
      if (auto hit = cache_.load(key)) return *hit;
      auto xi = chafee_xi_M(cfg_.chafee(), t, +1, L);
      cache_.store(key, xi);
      return xi;
    }
    case ModelKind::parabolic_inclusion: return parabolic_xi_M(cfg_.parabolic(), t, L);
  }
  throw UnsupportedModel("unknown model");
}

StatePoint ModelContext::limit_equilibrium() const {
  switch (kind()) {
    case ModelKind::linear: throw UnsupportedModel("linear models have no positive equilibrium");
    case ModelKind::ode_inclusion: {
      const auto lim = inclusion_autonomous_limit(cfg_.inclusion(), 3);
      return StatePoint::scalar(lim.fixed_points[1]);
    }
    case ModelKind::chafee: {
      const auto key = cfg_.model_key() + "|v1+";
      if (auto hit = cache_.load(key)) return *hit;
      auto v1 = chafee_autonomous_equilibria(cfg_.chafee().limit_model()).v1_plus;
      cache_.store(key, v1);
      return v1;
    }
    case ModelKind::parabolic_inclusion: return parabolic_stationary(cfg_.parabolic().limit_model());
  }
  throw UnsupportedModel("unknown model");
}

std::mt19937_64 ModelContext::rng(const std::string& stream) const {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32),
                    static_cast<std::uint32_t>(io::fnv1a(stream)), static_cast<std::uint32_t>(io::fnv1a(stream) >> 32)};
  return std::mt19937_64(seq);
}

StatePoint ModelContext::random_state(std::mt19937_64& g, bool nonnegative) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (!is_field()) {
    const double r = cfg_.sampling.radius;
    const double x = -r + 2.0 * r * u(g);
    return StatePoint::scalar(nonnegative ? std::abs(x) : x);
  }
  const auto& gr = grid();
  const double w = std::numbers::pi / gr.length();
  if (nonnegative) {
    const double base = 2.0 * u(g);
    const double k = std::floor(1.0 + 6.0 * u(g));
    const double sparsity = 0.9 * u(g);
    std::vector<double> v(gr.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double draw = u(g);
      const double noise = 0.5 * u(g);
      v[i] = draw < sparsity ? 0.0 : base * std::abs(std::sin(k * w * gr.x(i))) + noise;
    }
    v[static_cast<std::size_t>(u(g) * static_cast<double>(v.size() - 1))] += 0.1;
    return gr.field(std::move(v));
  }
  const double amp = std::pow(10.0, -1.0 + 2.0 * u(g));
  double c[4];
  for (auto& ck : c) ck = amp * (2.0 * u(g) - 1.0);
  return gr.field(gr.sample([&](double x) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += c[k] * std::sin((k + 1) * w * x);
    return s;
  }));
}

std::vector<double> merge_times(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double t : a)
    if (out.empty() || t - out.back() > 1e-9) out.push_back(t);
  return out;
}

VerifierReport combine(std::string check_id, std::vector<VerifierReport> parts, const std::vector<double>& params) {
  VerifierReport r;
  r.check_id = std::move(check_id);
  r.passed = true;
  r.margin = HUGE_VAL;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& p = parts[k];
    r.passed = r.passed && p.passed;
    r.margin = std::min(r.margin, p.margin);
    r.tolerance = std::max(r.tolerance, p.tolerance);
    r.curve.push_back({params[k], p.tolerance - p.margin});
  }
  for (auto& p : parts) r.sub_checks.push_back(std::move(p));
  return r;
}

}  // namespace attlab::tools
