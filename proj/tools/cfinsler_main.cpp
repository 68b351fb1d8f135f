// cfinsler: command-line front end for the verification suite.
//
// Exit codes: 0 all criteria pass, 1 criterion failure, 2 configuration
// error, 3 numerical error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfinsler/harness/report.hpp"
#include "cfinsler/profiles/descriptor_json.hpp"

using namespace cfinsler;
using nlohmann::json;

namespace {

struct Options {
  std::string profile_file;
  std::string model;
  double c = 1.0;
  int n = 2;
  int samples = 200;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out = "-";
  std::optional<double> fd_step;
  int threads = 1;
  bool timestamp = false;
  std::string criteria;
  bool quiet = false;
};

int model_k(const std::string& tag) {
  if (tag == "k4") return 4;
  if (tag == "k0") return 0;
  if (tag == "km4") return -4;
  throw Error(ErrorCode::ConfigError, "--model: expected k4, k0 or km4, got '" + tag + "'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "--profile: cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, "--profile: '" + path + "' is not valid JSON: " + e.what());
  }
}

std::optional<bool> optional_bool(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_boolean()) throw Error(ErrorCode::ConfigError, path + "." + key + ": expected a boolean");
  return j[key].get<bool>();
}

Interval interval_field(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::ConfigError, path + ": expected [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Criterion> parse_criteria_list(const std::string& list, const std::string& path) {
  std::vector<Criterion> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto c = parse_criterion(item);
    if (!c) throw Error(ErrorCode::ConfigError, path + ": unknown criterion '" + item + "'");
    out.push_back(*c);
  }
  return out;
}

// A config file is either a bare profile descriptor or
// {"profile": ..., "expect": ..., "sample": ..., "criteria": [...]}.
void apply_config_file(const json& j, SuiteConfig& cfg, bool& t_range_given) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config: expected a JSON object");
  if (!j.contains("profile")) {
    cfg.profile = descriptor_from_json(j, "profile");
    return;
  }
  cfg.profile = descriptor_from_json(j["profile"], "profile");
  if (j.contains("expect")) {
    const json& e = j["expect"];
    if (!e.is_object()) throw Error(ErrorCode::ConfigError, "expect: expected an object");
    cfg.expect.weakly_kahler = optional_bool(e, "weakly_kahler", "expect");
    cfg.expect.kahler = optional_bool(e, "kahler", "expect");
    cfg.expect.pseudoconvex = optional_bool(e, "pseudoconvex", "expect");
    if (e.contains("curvature") && !e["curvature"].is_null()) {
      if (!e["curvature"].is_number()) throw Error(ErrorCode::ConfigError, "expect.curvature: expected a number");
      cfg.expect.curvature = e["curvature"].get<double>();
    }
  }
  if (j.contains("sample")) {
    const json& s = j["sample"];
    if (!s.is_object()) throw Error(ErrorCode::ConfigError, "sample: expected an object");
    if (s.contains("t_range")) {
      cfg.sample.t_range = interval_field(s["t_range"], "sample.t_range");
      t_range_given = true;
    }
    if (s.contains("s_fraction_range"))
      cfg.sample.s_fraction_range = interval_field(s["s_fraction_range"], "sample.s_fraction_range");
  }
  if (j.contains("criteria")) {
    if (!j["criteria"].is_array()) throw Error(ErrorCode::ConfigError, "criteria: expected an array of names");
    cfg.criteria.clear();
    for (const auto& c : j["criteria"]) {
      if (!c.is_string()) throw Error(ErrorCode::ConfigError, "criteria: expected an array of names");
      auto k = parse_criterion(c.get<std::string>());
      if (!k) throw Error(ErrorCode::ConfigError, "criteria: unknown criterion '" + c.get<std::string>() + "'");
      cfg.criteria.push_back(*k);
    }
  }
}

SuiteConfig build_config(const Options& o, std::vector<Criterion> criteria) {
  SuiteConfig cfg;
  cfg.criteria = std::move(criteria);
  bool t_range_given = false;
  if (!o.profile_file.empty() && !o.model.empty())
    throw Error(ErrorCode::ConfigError, "--profile and --model are mutually exclusive");
  if (!o.profile_file.empty()) {
    apply_config_file(read_json_file(o.profile_file), cfg, t_range_given);
  } else if (!o.model.empty()) {
    cfg.profile.family = ProfileFamily::Model;
    cfg.profile.k = model_k(o.model);
    cfg.profile.c = o.c;
  } else {
    throw Error(ErrorCode::ConfigError, "one of --profile or --model is required");
  }
  if (cfg.expect.empty()) cfg.expect = default_expectations(cfg.profile);
  if (!o.criteria.empty()) cfg.criteria = parse_criteria_list(o.criteria, "--criteria");
  cfg.sample.n = o.n;
  cfg.sample.count = o.samples;
  cfg.sample.seed = o.seed;
  if (!t_range_given) cfg.sample.t_range = default_t_range(cfg.profile);
  if (o.fd_step) cfg.fd.step = *o.fd_step;
  cfg.threads = o.threads;
  cfg.timestamp = o.timestamp;
  return cfg;
}

void print_summary(const SuiteReport& r, const std::string& label) {
  if (!label.empty()) std::cerr << "== " << label << '\n';
  for (const auto& c : r.criteria) std::cerr << c.name << ": " << to_string(c.status) << " (" << c.detail << ")\n";
  if (r.numerical_failures > 0) std::cerr << "numerical failures: " << r.numerical_failures << '\n';
  std::cerr << "records: " << r.records.size() << ", rejected: " << r.rejections.size() << '\n';
  std::cerr << "verdict: " << r.verdicts.summary << '\n';
  std::cerr << (r.passed ? "PASS" : "FAIL") << '\n';
}

int run_single(const Options& o, std::vector<Criterion> criteria) {
  const SuiteConfig cfg = build_config(o, std::move(criteria));
  const SuiteReport report = run_suite(cfg);
  emit_report(report, parse_report_format(o.format), o.out);
  if (!o.quiet) print_summary(report, "");
  return exit_code(report);
}

int run_models(const Options& o) {
  if (!o.profile_file.empty() || !o.model.empty())
    throw Error(ErrorCode::ConfigError, "models: --profile and --model do not apply");
  const ReportFormat format = parse_report_format(o.format);
  std::vector<SuiteReport> reports;
  for (const char* tag : {"k4", "k0", "km4"}) {
    Options m = o;
    m.model = tag;
    std::vector<Criterion> criteria{Criterion::Curvature, Criterion::Eq1, Criterion::Eq2};
    reports.push_back(run_suite(build_config(m, criteria)));
    if (!o.quiet) print_summary(reports.back(), std::string("model ") + tag);
  }
  int code = 0;
  for (const auto& r : reports) code = std::max(code, exit_code(r));

  std::ostringstream buf;
  if (format == ReportFormat::Json) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["models"] = json::array();
    for (const auto& r : reports) j["models"].push_back(report_to_json(r));
    j["passed"] = code == 0;
    buf << j.dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) buf << '\n';
      write_csv(reports[i], buf);
    }
  }
  if (o.out.empty() || o.out == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open '" + o.out + "' for writing");
    out << buf.str();
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + o.out + "'");
  }
  return code;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--profile", o.profile_file, "Profile descriptor or suite config (JSON)");
  app->add_option("--model", o.model, "Uniformization model: k4, k0 or km4");
  app->add_option("--c", o.c, "Model parameter c > 0");
  app->add_option("--n", o.n, "Complex dimension (>= 2)");
  app->add_option("--samples", o.samples, "Number of sample draws");
  app->add_option("--seed", o.seed, "64-bit sampling seed");
  app->add_option("--format", o.format, "Report format: json or csv");
  app->add_option("--out", o.out, "Report destination ('-' for standard output)");
  app->add_option("--fd-step", o.fd_step, "Base finite-difference step");
  app->add_option("--threads", o.threads, "Worker threads for sample evaluation");
  app->add_option("--criteria", o.criteria, "Comma-separated criterion names (overrides the subcommand default)");
  app->add_flag("--timestamp", o.timestamp, "Include a generation timestamp in the report");
  app->add_flag("-q,--quiet", o.quiet, "Do not print the summary to standard error");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suite for unitary-invariant complex Finsler metrics"};
  app.require_subcommand(1);
  Options o;
  struct Sub {
    const char* name;
    const char* help;
    std::vector<Criterion> criteria;
  };
  const std::vector<Sub> subs{
      {"verify", "Run every criterion", all_criteria()},
      {"curvature", "Three-way holomorphic curvature at each sample", {Criterion::Curvature}},
      {"residual", "Weakly Kahler residuals and the integrability lemma", {Criterion::Eq1, Criterion::Eq2, Criterion::Lemma}},
      {"classify", "Kahler ladder: strong, Kahler and weakly Kahler torsion residuals", {Criterion::WeaklyKahler, Criterion::Kahler}},
  };
  std::vector<CLI::App*> apps;
  for (const auto& s : subs) {
    apps.push_back(app.add_subcommand(s.name, s.help));
    add_common(apps.back(), o);
  }
  CLI::App* models = app.add_subcommand("models", "Run the three constant-curvature models");
  add_common(models, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (models->parsed()) return run_models(o);
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (apps[i]->parsed()) return run_single(o, subs[i].criteria);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? 3 : 2;
  }
  return 2;
}
