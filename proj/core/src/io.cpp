#include "attlab/io.hpp"

#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "attlab/errors.hpp"
#include "json.hpp"

namespace attlab::io {

namespace {

using nlohmann::json;

struct CsvDoc {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
    throw ContractViolation("csv: bad number '" + std::string(s) + "'");
  }
  return v;
}

CsvDoc parse_csv(std::string_view text) {
  CsvDoc doc;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto l = trim(line);
    if (l.empty()) continue;
    if (l.front() == '#') {
      const auto body = trim(l.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos)
        doc.meta[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
      continue;
    }
    if (doc.columns.empty()) {
      for (auto& c : split(l, ',')) doc.columns.emplace_back(trim(c));
      continue;
    }
    std::vector<double> row;
    for (const auto& c : split(l, ',')) row.push_back(parse_number(c));
    if (row.size() != doc.columns.size()) throw ContractViolation("csv: ragged row");
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

void write_columns(std::ostringstream& os, std::size_t n, bool with_t) {
  if (with_t) os << 't';
  for (std::size_t i = 0; i < n; ++i) os << (i || with_t ? "," : "") << "x_" << i;
  os << '\n';
}

void write_values(std::ostringstream& os, std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << format_number(v[i]);
}

void write_point_meta(std::ostringstream& os, NormTag tag, std::optional<double> h) {
  os << "# norm_tag=" << to_string(tag) << '\n';
  os << "# h=" << (h ? format_number(*h) : std::string("none")) << '\n';
}

StatePoint make_point(const std::vector<double>& v, NormTag tag, std::optional<double> h) {
  if (tag == NormTag::abs) {
    if (v.size() != 1) throw ContractViolation("csv: scalar rows need one column");
    return StatePoint::scalar(v[0]);
  }
  if (!h) throw ContractViolation("csv: field rows need '# h='");
  return StatePoint::field(v, *h, tag);
}

std::optional<double> meta_step(const CsvDoc& doc) {
  const auto it = doc.meta.find("h");
  if (it == doc.meta.end() || it->second == "none" || it->second.empty()) return std::nullopt;
  return parse_number(it->second);
}

NormTag meta_tag(const CsvDoc& doc) {
  const auto it = doc.meta.find("norm_tag");
  return it == doc.meta.end() ? NormTag::abs : norm_tag_from_string(it->second);
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

double from_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number(j.get<std::string>());
  throw ContractViolation("report json: expected a number");
}

json report_json(const VerifierReport& r) {
  json curve = json::array();
  for (const auto& c : r.curve) curve.push_back(json::array({number(c.param), number(c.value)}));
  json ev = json::object();
  for (const auto& [k, v] : r.evidence) ev[k] = number(v);
  json subs = json::array();
  for (const auto& s : r.sub_checks) subs.push_back(report_json(s));
  return json{{"check_id", r.check_id}, {"passed", r.passed},     {"tolerance", number(r.tolerance)},
              {"margin", number(r.margin)}, {"curve", curve},     {"notes", r.notes},
              {"evidence", ev},           {"sub_checks", subs}};
}

VerifierReport report_from(const json& j) {
  VerifierReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  r.tolerance = from_number(j.at("tolerance"));
  r.margin = from_number(j.at("margin"));
  for (const auto& c : j.at("curve")) r.curve.push_back({from_number(c.at(0)), from_number(c.at(1))});
  if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("evidence"))
    for (const auto& [k, v] : j.at("evidence").items()) r.evidence[k] = from_number(v);
  if (j.contains("sub_checks"))
    for (const auto& s : j.at("sub_checks")) r.sub_checks.push_back(report_from(s));
  return r;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string set_to_csv(const CompactSetSample& set) {
  std::ostringstream os;
  const NormTag tag = set.empty() ? NormTag::abs : set.norm_tag();
  const std::optional<double> h = set.empty() ? std::nullopt : set[0].step();
  os << "# merge_eps=" << format_number(set.merge_eps()) << '\n';
  write_point_meta(os, tag, h);
  if (set.empty()) return os.str();
  write_columns(os, set.dimension(), false);
  for (const auto& p : set.points()) {
    write_values(os, p.values());
    os << '\n';
  }
  return os.str();
}

CompactSetSample set_from_csv(std::string_view text) {
  const auto doc = parse_csv(text);
  const auto tag = meta_tag(doc);
  const auto h = meta_step(doc);
  double eps = 0.0;
  if (const auto it = doc.meta.find("merge_eps"); it != doc.meta.end()) eps = parse_number(it->second);
  std::vector<StatePoint> pts;
  for (const auto& row : doc.rows) pts.push_back(make_point(row, tag, h));
  if (pts.empty()) return CompactSetSample();
  return CompactSetSample(std::move(pts), eps);
}

std::string trajectory_to_csv(const TrajectorySample& tr) {
  tr.validate();
  std::ostringstream os;
  os << "# branch=" << tr.branch.to_string() << '\n';
  write_point_meta(os, tr.states[0].norm_tag(), tr.states[0].step());
  write_columns(os, tr.states[0].size(), true);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    os << format_number(tr.times[k]) << ',';
    write_values(os, tr.states[k].values());
    os << '\n';
  }
  return os.str();
}

TrajectorySample trajectory_from_csv(std::string_view text) {
  const auto doc = parse_csv(text);
  if (doc.columns.empty() || doc.columns[0] != "t") throw ContractViolation("trajectory csv: first column must be t");
  const auto tag = meta_tag(doc);
  const auto h = meta_step(doc);
  TrajectorySample tr;
  if (const auto it = doc.meta.find("branch"); it != doc.meta.end()) tr.branch = BranchLabel::parse(it->second);
  for (const auto& row : doc.rows) {
    tr.times.push_back(row[0]);
    tr.states.push_back(make_point({row.begin() + 1, row.end()}, tag, h));
  }
  tr.validate();
  return tr;
}

std::vector<std::pair<double, double>> table_from_csv(std::string_view text) {
  std::vector<std::pair<double, double>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto cells = split(l, ',');
    if (cells.size() != 2) throw ContractViolation("table csv: two columns expected");
    try {
      out.emplace_back(parse_number(cells[0]), parse_number(cells[1]));
    } catch (const ContractViolation&) {
      if (!out.empty()) throw;  // only the first row may be a header
    }
  }
  if (out.empty()) throw ContractViolation("table csv: no rows");
  return out;
}

std::string report_to_json(const VerifierReport& rep) { return report_json(rep).dump(2) + "\n"; }

VerifierReport report_from_json(std::string_view text) {
  try {
    return report_from(json::parse(text));
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("report json: ") + e.what());
  }
}

std::string curve_to_csv(const VerifierReport& rep) {
  std::ostringstream os;
  os << "# check_id=" << rep.check_id << "\nparam,value\n";
  for (const auto& c : rep.curve) os << format_number(c.param) << ',' << format_number(c.value) << '\n';
  return os.str();
}

std::string limit_to_json(const LimitSetResult& res, const std::string& points_csv_path) {
  json ev = json::object();
  if (res.min_max_defect) ev["min_max_defect"] = number(*res.min_max_defect);
  const auto hull = res.set.empty() || res.set.norm_tag() != NormTag::abs
                        ? json(nullptr)
                        : json::array({number(interval_hull(res.set).lo), number(interval_hull(res.set).hi)});
  json j{{"kind", std::string(to_string(res.kind))},
         {"window", json::array({number(res.window_lo), number(res.window_hi)})},
         {"eps", number(res.eps)},
         {"residual", number(res.residual)},
         {"points_csv_path", points_csv_path},
         {"empty", res.set.empty()},
         {"points", res.set.size()},
         {"hull", hull},
         {"evidence", ev},
         {"notes", res.notes}};
  return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractViolation("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << '.' << counter++;
  const auto tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ContractViolation("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ContractViolation("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_family(const SetFamily& family, const std::filesystem::path& dir) {
  json sections = json::array();
  for (std::size_t k = 0; k < family.size(); ++k) {
    std::ostringstream name;
    name << "section_" << std::string(4 - std::min<std::size_t>(4, std::to_string(k).size()), '0') << k << ".csv";
    write_atomic(dir / name.str(), set_to_csv(family.sections()[k]));
    sections.push_back({{"time", number(family.times()[k])}, {"path", name.str()}});
  }
  const json index{{"source", family.source()}, {"sections", sections}};
  write_atomic(dir / "family.json", index.dump(2) + "\n");
}

SetFamily read_family(const std::filesystem::path& dir) {
  json index;
  try {
    index = json::parse(read_file(dir / "family.json"));
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("family.json: ") + e.what());
  }
  std::vector<double> times;
  std::vector<CompactSetSample> sections;
  for (const auto& s : index.at("sections")) {
    times.push_back(from_number(s.at("time")));
    sections.push_back(set_from_csv(read_file(dir / s.at("path").get<std::string>())));
  }
  return SetFamily(std::move(times), std::move(sections), index.value("source", std::string()));
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

FieldCache::FieldCache(std::filesystem::path dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {}

std::filesystem::path FieldCache::path_for(std::string_view key) const {
  std::ostringstream name;
  name << std::hex << fnv1a(key) << ".csv";
  return dir_ / name.str();
}

std::optional<StatePoint> FieldCache::load(std::string_view key) const {
  if (!enabled_) return std::nullopt;
  const auto p = path_for(key);
  if (!std::filesystem::exists(p)) return std::nullopt;
  const auto text = read_file(p);
  const auto doc = parse_csv(text);
  // the key is stored alongside to rule out hash collisions
  const auto it = doc.meta.find("key");
  if (it == doc.meta.end() || it->second != key) return std::nullopt;
  const auto set = set_from_csv(text);
  if (set.size() != 1) return std::nullopt;
  return set[0];
}

void FieldCache::store(std::string_view key, const StatePoint& field) const {
  if (!enabled_) return;
  write_atomic(path_for(key), "# key=" + std::string(key) + "\n" + set_to_csv(CompactSetSample({field})));
}

}  // namespace attlab::io
