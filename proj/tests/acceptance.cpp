// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.
//
// Usage: cfinsler_acceptance <path-to-cfinsler-cli> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cfinsler/harness/suite.hpp"

using namespace cfinsler;
using SF = ScalarFunction1D;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

struct NamedProfile {
  std::string name;
  ProfileDescriptor desc;
};

ProfileDescriptor hermitian(SF f) {
  ProfileDescriptor d;
  d.family = ProfileFamily::Hermitian;
  d.f = std::move(f);
  return d;
}

ProfileDescriptor wk(SF f, double h_scale = 1.0) {
  ProfileDescriptor d;
  d.family = ProfileFamily::WkRanders;
  d.f = std::move(f);
  d.h_scale = h_scale;
  return d;
}

ProfileDescriptor model(int k, double c) {
  ProfileDescriptor d;
  d.family = ProfileFamily::Model;
  d.k = k;
  d.c = c;
  return d;
}

const std::vector<std::pair<std::string, SF>>& classification_fs() {
  static const std::vector<std::pair<std::string, SF>> fs{
      {"t", SF::linear(1)}, {"t^2", SF::power(1, 2)}, {"e^t", SF::exponential(1, 1)}, {"t/(1+t^2)", SF::rational(1, 1)}};
  return fs;
}

std::vector<NamedProfile> catalog() {
  std::vector<NamedProfile> out;
  out.push_back({"euclidean", hermitian(SF::constant(1))});
  for (const auto& [name, f] : classification_fs()) {
    out.push_back({"hermitian " + name, hermitian(f)});
    out.push_back({"wk-randers " + name, wk(f)});
    out.push_back({"wk-randers " + name + " h*1.1", wk(f, 1.1)});
  }
  ProfileDescriptor r;
  r.family = ProfileFamily::Randers;
  r.f = SF::constant(1) + SF::linear(1);
  r.g = SF::constant(0.5);
  r.h = SF::constant(1);
  out.push_back({"randers 1+t, 0.5, 1", r});
  out.push_back({"model k=4", model(4, 1)});
  out.push_back({"model k=0", model(0, 1)});
  out.push_back({"model k=-4", model(-4, 1)});
  return out;
}

SuiteReport run(const ProfileDescriptor& d, std::vector<Criterion> criteria, int n, int count,
                Interval t_range = {0, 0}) {
  SuiteConfig cfg;
  cfg.profile = d;
  cfg.criteria = std::move(criteria);
  cfg.sample.n = n;
  cfg.sample.count = count;
  cfg.sample.seed = 42;
  cfg.sample.t_range = t_range.hi > 0 ? t_range : default_t_range(d);
  return run_suite(cfg);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double fraction_above(const SuiteReport& r, const std::string& metric, double threshold) {
  if (r.records.empty()) return 0.0;
  int hits = 0;
  for (const auto& rec : r.records) hits += rec.metrics.at(metric) > threshold;
  return static_cast<double>(hits) / static_cast<double>(r.records.size());
}

void require_clean(Outcome& o, const SuiteReport& r, const std::string& label) {
  if (r.records.empty()) o.fail(label + ": no records");
  if (r.numerical_failures > 0) o.fail(label + ": " + std::to_string(r.numerical_failures) + " numerical failures");
}

Outcome uniformization() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst_closed = 0, worst_wk = 0, worst_direct = 0, worst_sd = 0;
  for (int k : {4, 0, -4})
    for (double c : {0.5, 1.0, 2.0})
      for (int n : {2, 3}) {
        const SuiteReport r = run(model(k, c), {Criterion::Curvature}, n, 200);
        const std::string label = "k=" + std::to_string(k) + " c=" + sci(c) + " n=" + std::to_string(n);
        require_clean(o, r, label);
        for (const auto& rec : r.records) {
          worst_closed = std::max(worst_closed, std::abs(rec.curvature->kf_closed - k));
          worst_direct = std::max(worst_direct, std::abs(rec.curvature->kf_direct - k));
          if (!rec.curvature->kf_wk) o.fail(label + ": wk curvature unavailable at sample " + std::to_string(rec.index));
          else worst_wk = std::max(worst_wk, std::abs(*rec.curvature->kf_wk - k));
        }
        worst_sd = std::max(worst_sd, r.aggregates.at("kf_closed").stddev);
      }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!(worst_closed < 1e-6)) o.fail("max|kf_closed-k| " + sci(worst_closed));
  if (!(worst_wk < 1e-6)) o.fail("max|kf_wk-k| " + sci(worst_wk));
  if (!(worst_direct < 1e-4)) o.fail("max|kf_direct-k| " + sci(worst_direct));
  if (!(worst_sd < 1e-8)) o.fail("max stddev(kf_closed) " + sci(worst_sd));
  if (!(seconds < 10.0)) o.fail("runtime " + sci(seconds) + " s");
  if (o.pass)
    o.detail = "18 runs x 200 samples; max|closed-k| " + sci(worst_closed) + ", max|wk-k| " + sci(worst_wk) +
               ", max|direct-k| " + sci(worst_direct) + ", max stddev " + sci(worst_sd) + ", " + sci(seconds) + " s";
  return o;
}

Outcome classification() {
  Outcome o;
  double worst = 0, min_fraction = 1;
  for (const auto& [name, f] : classification_fs()) {
    const SuiteReport r = run(wk(f), {Criterion::Eq1, Criterion::Eq2}, 2, 200);
    require_clean(o, r, "wk-randers " + name);
    for (const char* m : {"eq1", "eq2"}) worst = std::max(worst, r.aggregates.at(m).max);
    const SuiteReport p = run(wk(f, 1.1), {Criterion::Eq1, Criterion::Eq2}, 2, 200);
    require_clean(o, p, "perturbed " + name);
    for (const char* m : {"eq1", "eq2"}) {
      const double fr = fraction_above(p, m, 1e-3);
      min_fraction = std::min(min_fraction, fr);
      if (fr < 0.9) o.fail("perturbed " + name + ": " + m + " > 1e-3 at only " + sci(100 * fr) + "% of samples");
    }
  }
  if (!(worst < 1e-8)) o.fail("max weakly Kahler residual " + sci(worst));
  if (o.pass)
    o.detail = "max |eq1|,|eq2| on the family " + sci(worst) + "; perturbed variants above 1e-3 at >= " +
               sci(100 * min_fraction) + "% of samples";
  return o;
}

Outcome witness() {
  Outcome o;
  const SuiteReport r = run(wk(SF::exponential(1, 1)), {Criterion::WeaklyKahler, Criterion::Kahler}, 2, 200);
  require_clean(o, r, "wk-randers e^t");
  const double weakly = r.aggregates.at("weakly_kahler").max;
  const double fr = fraction_above(r, "kahler", 1e-3);
  if (!(weakly < 1e-6)) o.fail("max weakly_residual " + sci(weakly));
  if (fr < 0.9) o.fail("kahler_residual > 1e-3 at only " + sci(100 * fr) + "% of samples");
  if (r.verdicts.summary != "weakly Kähler but not Kähler") o.fail("verdict '" + r.verdicts.summary + "'");
  if (o.pass)
    o.detail = "verdict \"" + r.verdicts.summary + "\"; max weakly_residual " + sci(weakly) +
               ", kahler_residual > 1e-3 at " + sci(100 * fr) + "% of samples";
  return o;
}

// All listed identity criteria must pass on every catalog profile.
Outcome identities(const std::vector<Criterion>& criteria, const std::vector<int>& dims, int count) {
  Outcome o;
  std::map<std::string, double> worst;
  int runs = 0;
  for (const auto& [name, desc] : catalog())
    for (int n : dims) {
      const SuiteReport r = run(desc, criteria, n, count);
      ++runs;
      require_clean(o, r, name);
      for (const auto& c : r.criteria) {
        worst[c.name] = std::max(worst[c.name], r.aggregates.at(c.name).max);
        if (c.status != CriterionStatus::Pass)
          o.fail(name + " n=" + std::to_string(n) + ": " + c.name + " " + std::string(to_string(c.status)) + " (" + c.detail + ")");
      }
    }
  if (o.pass) {
    o.detail = std::to_string(runs) + " runs x " + std::to_string(count) + " samples; max";
    for (const auto& [name, v] : worst) o.detail += " " + name + " " + sci(v);
  }
  return o;
}

Outcome pseudoconvexity() {
  Outcome o;
  std::vector<std::pair<std::string, SF>> fs{{"t", SF::linear(1)},
                                              {"t^2", SF::power(1, 2)},
                                              {"e^t", SF::exponential(1, 1)},
                                              {"1+t", SF::constant(1) + SF::linear(1)},
                                              {"t/(1+t^2) on t<1", SF::rational(1, 1)}};
  int runs = 0, samples = 0;
  for (const auto& [name, f] : fs) {
    const Interval t_range = name.find("t<1") != std::string::npos ? Interval{0.05, 0.95} : Interval{0.2, 2.0};
    for (const auto& desc : {wk(f), hermitian(f)})
      for (int n : {2, 3}) {
        const SuiteReport r = run(desc, {Criterion::Pseudoconvex}, n, 200, t_range);
        ++runs;
        const std::string label = desc.describe() + " n=" + std::to_string(n);
        require_clean(o, r, label);
        samples += static_cast<int>(r.records.size());
        if (r.verdicts.strongly_pseudoconvex != true) o.fail(label + ": " + r.criteria.front().detail);
        for (const auto& rec : r.records)
          if (!(rec.pseudoconvexity->cond1 > 0 && rec.pseudoconvexity->cond2 > 0 && *rec.levi_positive_definite)) {
            o.fail(label + ": sample " + std::to_string(rec.index));
            break;
          }
      }
  }
  if (o.pass)
    o.detail = std::to_string(runs) + " runs, " + std::to_string(samples) +
               " samples: both conditions positive and Levi matrix positive definite everywhere";
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome determinism(const std::string& cli, const std::string& scratch) {
  Outcome o;
  if (cli.empty()) {
    o.fail("no CLI path given");
    return o;
  }
  std::vector<std::string> outputs;
  for (int i = 0; i < 2; ++i) {
    const std::string out = scratch + "/determinism_" + std::to_string(i) + ".json";
    const std::string cmd = "\"" + cli + "\" verify --model k4 --seed 42 --quiet --out \"" + out + "\"";
    const int status = std::system(cmd.c_str());
    if (status != 0) o.fail("run " + std::to_string(i + 1) + " exited with status " + std::to_string(status));
    outputs.push_back(slurp(out));
  }
  if (outputs[0].empty()) o.fail("empty report");
  if (outputs[0] != outputs[1]) o.fail("reports differ");
  if (o.pass) o.detail = "two runs of `verify --model k4 --seed 42`: " + std::to_string(outputs[0].size()) + " identical bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::string scratch = argc > 2 ? argv[2] : ".";
  struct Item {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Item> items{
      {1, "uniformization models", uniformization},
      {2, "weakly Kahler Randers classification", classification},
      {3, "weakly Kahler but not Kahler witness", witness},
      {4, "oracle equivalence",
       [] { return identities({Criterion::LeviOracle, Criterion::Determinant, Criterion::NconnOracle}, {2, 3}, 100); }},
      {5, "universal identities", [] { return identities({Criterion::Lemma, Criterion::K2K3}, {2}, 200); }},
      {6, "Euler identity and unitary invariance",
       [] { return identities({Criterion::Euler, Criterion::Unitary}, {2, 3}, 100); }},
      {7, "strong pseudo-convexity", pseudoconvexity},
      {8, "determinism", [&] { return determinism(cli, scratch); }},
  };
  int failures = 0;
  for (const auto& item : items) {
    Outcome o;
    try {
      o = item.check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << item.id << " (" << item.name << "): " << o.detail
              << std::endl;
  }
  std::cout << (failures == 0 ? "all 8 acceptance criteria pass" : std::to_string(failures) + " acceptance criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
