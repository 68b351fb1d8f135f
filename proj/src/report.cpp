#include "cfinsler/harness/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "cfinsler/profiles/descriptor_json.hpp"

namespace cfinsler {

using nlohmann::json;

namespace {

json complex_json(cplx x) { return json::array({x.real(), x.imag()}); }

json vector_json(const cvec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_json(v[i]));
  return a;
}

template <typename T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

json aggregate_json(const Aggregate& a) {
  return {{"count", a.count}, {"min", a.min}, {"max", a.max}, {"mean", a.mean}, {"stddev", a.stddev}};
}

json config_json(const SuiteConfig& c) {
  json criteria = json::array();
  for (Criterion k : c.criteria) criteria.push_back(std::string(criterion_name(k)));
  return {
      {"profile", to_json(c.profile)},
      {"sample",
       {{"n", c.sample.n},
        {"count", c.sample.count},
        {"seed", c.sample.seed},
        {"t_range", {c.sample.t_range.lo, c.sample.t_range.hi}},
        {"s_fraction_range", {c.sample.s_fraction_range.lo, c.sample.s_fraction_range.hi}}}},
      {"fd",
       {{"step", c.fd.step},
        {"richardson_levels", c.fd.richardson_levels},
        {"tol_herm", c.fd.tol_herm},
        {"tol_pd", c.fd.tol_pd}}},
      {"criteria", criteria},
      {"expect",
       {{"curvature", optional_json(c.expect.curvature)},
        {"weakly_kahler", optional_json(c.expect.weakly_kahler)},
        {"kahler", optional_json(c.expect.kahler)},
        {"pseudoconvex", optional_json(c.expect.pseudoconvex)}}},
  };
}

json record_json(const SampleRecord& r) {
  json j = {{"index", r.index},   {"z", vector_json(r.z)}, {"v", vector_json(r.v)},
            {"r", r.r},           {"t", r.t},              {"s", r.s},
            {"pairing", complex_json(r.pairing)}, {"phi", r.phi}, {"metrics", r.metrics}};
  if (r.curvature)
    j["curvature"] = {{"kf_direct", r.curvature->kf_direct},
                      {"kf_closed", r.curvature->kf_closed},
                      {"kf_wk", optional_json(r.curvature->kf_wk)},
                      {"pairwise_dev", r.curvature->pairwise_dev}};
  if (r.kahler)
    j["kahler"] = {{"strong_residual", r.kahler->strong_residual},
                   {"kahler_residual", r.kahler->kahler_residual},
                   {"weakly_residual", r.kahler->weakly_residual}};
  if (r.pseudoconvexity)
    j["pseudoconvexity"] = {{"cond1", r.pseudoconvexity->cond1},
                            {"cond2", r.pseudoconvexity->cond2},
                            {"ok", r.pseudoconvexity->ok},
                            {"levi_positive_definite", optional_json(r.levi_positive_definite)}};
  return j;
}

std::string g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// CSV comment lines must stay on one line.
std::string one_line(std::string s) {
  for (char& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

}  // namespace

ReportFormat parse_report_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::ConfigError, "format: expected json or csv, got '" + name + "'");
}

json report_to_json(const SuiteReport& report) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  if (!report.generated_at.empty()) j["generated_at"] = report.generated_at;
  j["config"] = config_json(report.config);
  json records = json::array();
  for (const auto& r : report.records) records.push_back(record_json(r));
  j["records"] = std::move(records);
  json rejections = json::array();
  for (const auto& r : report.rejections) rejections.push_back({{"index", r.index}, {"reason", r.reason}});
  j["rejections"] = std::move(rejections);
  j["numerical_failures"] = report.numerical_failures;
  json aggregates = json::object();
  for (const auto& [name, a] : report.aggregates) aggregates[name] = aggregate_json(a);
  j["aggregates"] = std::move(aggregates);
  json criteria = json::array();
  for (const auto& c : report.criteria)
    criteria.push_back({{"name", c.name},
                        {"kind", c.kind},
                        {"tolerance", c.tolerance},
                        {"status", std::string(to_string(c.status))},
                        {"detail", c.detail}});
  j["criteria"] = std::move(criteria);
  const Verdicts& v = report.verdicts;
  j["verdicts"] = {{"strongly_pseudoconvex", optional_json(v.strongly_pseudoconvex)},
                   {"weakly_kahler", optional_json(v.weakly_kahler)},
                   {"kahler", optional_json(v.kahler)},
                   {"not_kahler", optional_json(v.not_kahler)},
                   {"constant_curvature", optional_json(v.constant_curvature)},
                   {"summary", v.summary}};
  j["passed"] = report.passed;
  return j;
}

std::map<std::string, Aggregate> aggregates_from_json(const json& j) {
  std::map<std::string, Aggregate> out;
  for (const auto& [name, a] : j.at("aggregates").items())
    out[name] = Aggregate{a.at("count").get<int>(), a.at("min").get<double>(), a.at("max").get<double>(),
                          a.at("mean").get<double>(), a.at("stddev").get<double>()};
  return out;
}

std::vector<std::string> csv_columns(const SuiteReport& report) {
  std::vector<std::string> cols{"index", "n", "t", "s", "r", "pairing_re", "pairing_im", "phi"};
  for (Criterion c : report.config.criteria) cols.emplace_back(criterion_name(c));
  return cols;
}

void write_json(const SuiteReport& report, std::ostream& os) { os << report_to_json(report).dump(2) << '\n'; }

void write_csv(const SuiteReport& report, std::ostream& os) {
  const auto cols = csv_columns(report);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : report.records) {
    os << r.index << ',' << r.z.size() << ',' << g17(r.t) << ',' << g17(r.s) << ',' << g17(r.r) << ','
       << g17(r.pairing.real()) << ',' << g17(r.pairing.imag()) << ',' << g17(r.phi);
    for (Criterion c : report.config.criteria) {
      os << ',';
      auto it = r.metrics.find(std::string(criterion_name(c)));
      if (it != r.metrics.end()) os << g17(it->second);
    }
    os << '\n';
  }
  os << "# schema_version " << kReportSchemaVersion << '\n';
  os << "# profile " << one_line(to_json(report.config.profile).dump()) << '\n';
  for (const auto& [name, a] : report.aggregates)
    os << "# aggregate " << name << " count=" << a.count << " min=" << g17(a.min) << " max=" << g17(a.max)
       << " mean=" << g17(a.mean) << " stddev=" << g17(a.stddev) << '\n';
  for (const auto& c : report.criteria)
    os << "# criterion " << c.name << ' ' << to_string(c.status) << ' ' << one_line(c.detail) << '\n';
  for (const auto& r : report.rejections) os << "# rejected " << r.index << ' ' << one_line(r.reason) << '\n';
  os << "# verdict " << report.verdicts.summary << '\n';
  os << "# passed " << (report.passed ? "true" : "false") << '\n';
}

void emit_report(const SuiteReport& report, ReportFormat format, const std::string& destination) {
  auto write = [&](std::ostream& os) {
    if (format == ReportFormat::Json) write_json(report, os);
    else write_csv(report, os);
    os.flush();
  };
  if (destination.empty() || destination == "-") {
    write(std::cout);
    if (!std::cout) throw Error(ErrorCode::IoError, "failed writing to standard output");
    return;
  }
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + destination + "' for writing");
  write(out);
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + destination + "'");
}

}  // namespace cfinsler
