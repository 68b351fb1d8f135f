#include "cfinsler/harness/suite.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace cfinsler {

namespace {

constexpr std::array<std::pair<Criterion, std::string_view>, 14> kNames{{
    {Criterion::LeviOracle, "levi_oracle"},
    {Criterion::Determinant, "determinant"},
    {Criterion::NconnOracle, "nconn_oracle"},
    {Criterion::Spray, "spray"},
    {Criterion::Euler, "euler"},
    {Criterion::Unitary, "unitary"},
    {Criterion::Pseudoconvex, "pseudoconvex"},
    {Criterion::Eq1, "eq1"},
    {Criterion::Eq2, "eq2"},
    {Criterion::Lemma, "lemma"},
    {Criterion::K2K3, "k2k3"},
    {Criterion::Curvature, "curvature"},
    {Criterion::WeaklyKahler, "weakly_kahler"},
    {Criterion::Kahler, "kahler"},
}};

// Stream offset for the unitary maps, so they never share a stream with the sampler.
constexpr std::uint64_t kUnitaryStreamSalt = 0xD1B54A32D192ED03ULL;

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

double max_abs(const cmat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const cvec& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

struct UnitaryScalars {
  double G, det, k1, k2, k3, cond1, cond2, kf_closed;
  cvec spray;
};

UnitaryScalars unitary_scalars(const MetricProfile& profile, const PointVector& pv, const FDConfigd& cfg) {
  const LeviData ld = levi_closed(profile, pv, cfg);
  const SprayData sd = spray_coefficients(profile, pv, cfg);
  const PseudoConvexity pc = pseudoconvexity_check(profile, pv.t(), pv.s());
  return {ld.G, ld.det, sd.k1, sd.k2, sd.k3, pc.cond1, pc.cond2, holomorphic_curvature_closed(profile, pv), sd.spray};
}

double unitary_metric(const MetricProfile& profile, const PointVector& pv, const cmat& u, const FDConfigd& cfg) {
  const UnitaryScalars a = unitary_scalars(profile, pv, cfg);
  const UnitaryScalars b = unitary_scalars(profile, PointVector(u * pv.z(), u * pv.v()), cfg);
  double m = std::max({rel(a.G, b.G), rel(a.det, b.det), rel(a.k1, b.k1), rel(a.k2, b.k2), rel(a.k3, b.k3),
                       rel(a.cond1, b.cond1), rel(a.cond2, b.cond2), rel(a.kf_closed, b.kf_closed)});
  // The spray is equivariant: spray(Uz, Uv) = U spray(z, v).
  const cvec rotated = u * a.spray;
  m = std::max(m, max_abs(cvec(rotated - b.spray)) / std::max(max_abs(rotated), 1.0));
  return m;
}

SampleRecord evaluate(const MetricProfile& profile, const IndexedSample& sample, const SuiteConfig& config,
                      const std::set<Criterion>& selected) {
  const PointVector& pv = sample.pv;
  const FDConfigd& cfg = config.fd;
  const double t = pv.t(), s = pv.s();
  SampleRecord rec;
  rec.index = sample.index;
  rec.z = pv.z();
  rec.v = pv.v();
  rec.r = pv.r();
  rec.t = t;
  rec.s = s;
  rec.pairing = pv.pairing();
  rec.phi = profile.value(t, s);
  auto has = [&](Criterion c) { return selected.count(c) > 0; };
  auto put = [&](Criterion c, double value) { rec.metrics[std::string(criterion_name(c))] = value; };

  std::optional<LeviData> ld;
  auto levi = [&]() -> const LeviData& {
    if (!ld) ld = levi_closed(profile, pv, cfg);
    return *ld;
  };

  if (has(Criterion::LeviOracle)) {
    const HermitianMatrix<double> fd = levi_oracle(profile, pv, cfg);
    put(Criterion::LeviOracle, max_abs(cmat(levi().levi - fd)) / max_abs(levi().levi));
  }
  if (has(Criterion::Determinant)) {
    const double closed = det_closed(profile, t, s, static_cast<int>(pv.n()));
    put(Criterion::Determinant, std::abs(closed - levi().det) / std::abs(levi().det));
  }
  if (has(Criterion::NconnOracle)) {
    const cmat closed = nconn_closed(profile, pv.z(), pv.v());
    const cmat fd = nconn_oracle(profile, pv, cfg);
    put(Criterion::NconnOracle, max_abs(cmat(closed - fd)) / std::max(max_abs(closed), 1.0));
  }
  if (has(Criterion::Spray)) {
    const SprayData sd = spray_coefficients(profile, pv, cfg);
    const cvec nv = sd.nconn * pv.v();
    put(Criterion::Spray, max_abs(cvec(nv - sd.spray)) / std::max(max_abs(sd.spray), 1.0));
  }
  if (has(Criterion::Euler)) {
    const LeviData& l = levi();
    const cplx first = l.g_alpha.transpose() * pv.v();
    const cplx second = (pv.v().transpose() * l.levi * pv.v().conjugate())(0, 0);
    put(Criterion::Euler, std::max(std::abs(first - l.G), std::abs(second - l.G)) / l.G);
  }
  if (has(Criterion::Unitary)) {
    SplitMix64 rng = SplitMix64::stream(config.sample.seed ^ kUnitaryStreamSalt, static_cast<std::uint64_t>(sample.index));
    put(Criterion::Unitary, unitary_metric(profile, pv, random_unitary(static_cast<int>(pv.n()), rng), cfg));
  }
  if (has(Criterion::Pseudoconvex)) {
    const PseudoConvexity pc = pseudoconvexity_check(profile, t, s);
    rec.pseudoconvexity = pc;
    rec.levi_positive_definite = positive_definite(HermitianMatrix<double>(levi_matrix_closed(profile, pv.z(), pv.v())), cfg);
    put(Criterion::Pseudoconvex, std::min(pc.cond1 / rec.phi, pc.cond2 / (rec.phi * rec.phi)));
  }
  if (has(Criterion::Eq1)) put(Criterion::Eq1, std::abs(wk_residual_phi(profile, t, s)));
  if (has(Criterion::Eq2)) put(Criterion::Eq2, std::abs(wk_residual_uw(profile, t, s)));
  if (has(Criterion::Lemma)) put(Criterion::Lemma, std::abs(lemma_integrability_residual(profile, t, s)));
  if (has(Criterion::K2K3)) put(Criterion::K2K3, std::abs(k2_k3_identity_residual(profile, t, s)));
  if (has(Criterion::Curvature)) {
    rec.curvature = curvature_report(profile, pv, cfg);
    put(Criterion::Curvature, rec.curvature->pairwise_dev);
  }
  if (has(Criterion::WeaklyKahler) || has(Criterion::Kahler)) {
    rec.kahler = kahler_classify(profile, pv, cfg);
    if (has(Criterion::WeaklyKahler)) put(Criterion::WeaklyKahler, rec.kahler->weakly_residual);
    if (has(Criterion::Kahler)) put(Criterion::Kahler, rec.kahler->kahler_residual);
  }
  return rec;
}

struct Outcome {
  std::optional<SampleRecord> record;
  std::optional<Rejection> failure;
};

std::vector<Outcome> evaluate_all(const MetricProfile& profile, const std::vector<IndexedSample>& samples,
                                  const SuiteConfig& config, const std::set<Criterion>& selected) {
  std::vector<Outcome> out(samples.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < samples.size(); i += stride) {
      try {
        out[i].record = evaluate(profile, samples[i], config, selected);
      } catch (const Error& e) {
        if (!is_numerical(e.code())) throw;
        out[i].failure = Rejection{samples[i].index, std::string("numerical error: ") + e.what()};
      }
    }
  };
  const std::size_t threads = static_cast<std::size_t>(std::max(1, config.threads));
  if (threads == 1) {
    work(0, 1);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      try {
        work(w, threads);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Values of one metric across all records that carry it.
std::vector<double> column(const std::vector<SampleRecord>& records, const std::function<std::optional<double>(const SampleRecord&)>& get) {
  std::vector<double> out;
  for (const auto& r : records)
    if (auto v = get(r)) out.push_back(*v);
  return out;
}

std::optional<double> metric_of(const SampleRecord& r, Criterion c) {
  auto it = r.metrics.find(std::string(criterion_name(c)));
  if (it == r.metrics.end()) return std::nullopt;
  return it->second;
}

bool all_below(const std::vector<double>& v, double tol) {
  return std::all_of(v.begin(), v.end(), [tol](double x) { return x < tol; });
}

bool mostly_above(const std::vector<double>& v, double threshold) {
  if (v.empty()) return false;
  const auto hits = std::count_if(v.begin(), v.end(), [threshold](double x) { return x > threshold; });
  return static_cast<double>(hits) >= Tolerances::witness_fraction * static_cast<double>(v.size());
}

struct Signals {
  // Each selected weakly Kahler signal: values and the tolerance for "vanishes".
  std::vector<std::pair<std::vector<double>, double>> wk;
  std::vector<double> kahler;
  bool has_kahler = false;
};

}  // namespace

std::string_view criterion_name(Criterion c) {
  for (const auto& [k, name] : kNames)
    if (k == c) return name;
  return "unknown";
}

std::optional<Criterion> parse_criterion(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

std::vector<Criterion> all_criteria() {
  std::vector<Criterion> out;
  for (const auto& [k, name] : kNames) out.push_back(k);
  return out;
}

std::string_view to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::Pass: return "pass";
    case CriterionStatus::Fail: return "fail";
    case CriterionStatus::Skipped: return "skipped";
    case CriterionStatus::Info: return "info";
  }
  return "info";
}

Expectations default_expectations(const ProfileDescriptor& profile) {
  Expectations e;
  if (profile.family == ProfileFamily::Model) {
    e.curvature = static_cast<double>(profile.k);
    e.weakly_kahler = true;
  }
  return e;
}

Aggregate aggregate(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) return a;
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  a.count = static_cast<int>(v.size());
  a.min = v.front();
  a.max = v.back();
  a.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0;
    for (double x : v) ss += (x - a.mean) * (x - a.mean);
    a.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return a;
}

SuiteReport run_suite(const SuiteConfig& config) {
  config.fd.validate();
  if (config.criteria.empty()) throw Error(ErrorCode::ConfigError, "criteria: at least one criterion must be selected");
  if (config.threads < 1) throw Error(ErrorCode::ConfigError, "threads: must be positive");
  const MetricProfile profile = make_profile(config.profile);
  config.sample.validate(config.profile);

  SuiteReport report;
  report.config = config;
  std::vector<Criterion> ordered;
  std::set<Criterion> selected;
  for (Criterion c : all_criteria())
    if (std::find(config.criteria.begin(), config.criteria.end(), c) != config.criteria.end()) {
      ordered.push_back(c);
      selected.insert(c);
    }
  report.config.criteria = ordered;
  auto has = [&](Criterion c) { return selected.count(c) > 0; };

  if (config.timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    report.generated_at = buf;
  }

  SampleSet set = sample_domain(config.sample, profile);
  report.rejections = std::move(set.rejections);
  for (auto& o : evaluate_all(profile, set.samples, config, selected)) {
    if (o.record) report.records.push_back(std::move(*o.record));
    if (o.failure) {
      report.rejections.push_back(std::move(*o.failure));
      ++report.numerical_failures;
    }
  }
  std::sort(report.rejections.begin(), report.rejections.end(),
            [](const Rejection& a, const Rejection& b) { return a.index < b.index; });
  const auto& records = report.records;

  for (Criterion c : ordered)
    report.aggregates[std::string(criterion_name(c))] = aggregate(column(records, [c](const SampleRecord& r) { return metric_of(r, c); }));
  std::vector<double> kf_closed;
  if (has(Criterion::Curvature)) {
    kf_closed = column(records, [](const SampleRecord& r) { return std::optional(r.curvature->kf_closed); });
    report.aggregates["kf_closed"] = aggregate(kf_closed);
    report.aggregates["kf_direct"] = aggregate(column(records, [](const SampleRecord& r) { return std::optional(r.curvature->kf_direct); }));
    report.aggregates["kf_wk"] = aggregate(column(records, [](const SampleRecord& r) { return r.curvature->kf_wk; }));
  }
  if (has(Criterion::WeaklyKahler) || has(Criterion::Kahler))
    report.aggregates["strong_residual"] = aggregate(column(records, [](const SampleRecord& r) { return std::optional(r.kahler->strong_residual); }));

  auto values = [&](Criterion c) { return column(records, [c](const SampleRecord& r) { return metric_of(r, c); }); };
  auto add = [&](std::string name, std::string kind, double tol, CriterionStatus status, std::string detail) {
    report.criteria.push_back({std::move(name), std::move(kind), tol, status, std::move(detail)});
  };
  auto pass_if = [](bool ok) { return ok ? CriterionStatus::Pass : CriterionStatus::Fail; };
  const std::string no_records = "no records to aggregate";

  // Identity criteria: every sample's metric below tolerance.
  auto identity = [&](Criterion c, double tol) {
    const auto v = values(c);
    const std::string name(criterion_name(c));
    if (v.empty()) {
      add(name, "identity", tol, CriterionStatus::Fail, no_records);
      return;
    }
    add(name, "identity", tol, pass_if(all_below(v, tol)), "max " + format_double(report.aggregates[name].max));
  };

  for (Criterion c : ordered) {
    const std::string name(criterion_name(c));
    switch (c) {
      case Criterion::LeviOracle: identity(c, Tolerances::single_fd); break;
      case Criterion::Determinant: identity(c, Tolerances::jet_identity); break;
      case Criterion::NconnOracle: identity(c, Tolerances::single_fd); break;
      case Criterion::Spray: identity(c, Tolerances::single_fd); break;
      case Criterion::Euler: identity(c, Tolerances::jet_identity); break;
      case Criterion::Unitary: identity(c, Tolerances::jet_identity); break;
      case Criterion::Lemma: identity(c, Tolerances::jet_identity); break;
      case Criterion::K2K3: identity(c, Tolerances::k2k3); break;
      case Criterion::Curvature: {
        if (records.empty()) {
          add(name, "identity", Tolerances::double_fd, CriterionStatus::Fail, no_records);
          break;
        }
        bool ok = all_below(values(c), Tolerances::double_fd);
        double closed_wk = 0;
        for (const auto& r : records)
          if (r.curvature->kf_wk) closed_wk = std::max(closed_wk, std::abs(r.curvature->kf_closed - *r.curvature->kf_wk));
        ok = ok && closed_wk < Tolerances::single_fd;
        add(name, "identity", Tolerances::double_fd, pass_if(ok),
            "max pairwise " + format_double(report.aggregates[name].max) + ", max closed-vs-wk " + format_double(closed_wk));
        break;
      }
      case Criterion::Eq1:
      case Criterion::Eq2: {
        // The two forms must vanish together: one below 1e-8 with the other above 1e-6 is a failure.
        const Criterion other = c == Criterion::Eq1 ? Criterion::Eq2 : Criterion::Eq1;
        if (!has(other)) {
          add(name, "property", Tolerances::jet_identity, CriterionStatus::Info,
              "max " + format_double(report.aggregates[name].max));
          break;
        }
        int disagree = 0;
        for (const auto& r : records) {
          const double a = *metric_of(r, c), b = *metric_of(r, other);
          if ((a < Tolerances::jet_identity && b > Tolerances::single_fd) ||
              (b < Tolerances::jet_identity && a > Tolerances::single_fd))
            ++disagree;
        }
        add(name, "property", Tolerances::jet_identity, pass_if(disagree == 0),
            std::to_string(disagree) + " samples where exactly one form vanishes; max " + format_double(report.aggregates[name].max));
        break;
      }
      case Criterion::Pseudoconvex: {
        int bad = 0;
        for (const auto& r : records)
          if (!(r.pseudoconvexity->ok && *r.levi_positive_definite)) ++bad;
        add(name, "property", 0.0, CriterionStatus::Info,
            std::to_string(bad) + " of " + std::to_string(records.size()) + " samples not strongly pseudo-convex");
        break;
      }
      case Criterion::WeaklyKahler:
      case Criterion::Kahler:
        add(name, "property", Tolerances::single_fd, CriterionStatus::Info,
            "max " + format_double(report.aggregates[name].max));
        break;
    }
  }

  // Verdicts.
  Verdicts& vd = report.verdicts;
  if (has(Criterion::Pseudoconvex) && !records.empty())
    vd.strongly_pseudoconvex = std::all_of(records.begin(), records.end(), [](const SampleRecord& r) {
      return r.pseudoconvexity->ok && *r.levi_positive_definite;
    });
  Signals sig;
  if (has(Criterion::Eq1)) sig.wk.push_back({values(Criterion::Eq1), Tolerances::jet_identity});
  if (has(Criterion::Eq2)) sig.wk.push_back({values(Criterion::Eq2), Tolerances::jet_identity});
  if (has(Criterion::WeaklyKahler)) sig.wk.push_back({values(Criterion::WeaklyKahler), Tolerances::single_fd});
  if (!sig.wk.empty() && !records.empty()) {
    const bool vanish = std::all_of(sig.wk.begin(), sig.wk.end(), [](const auto& p) { return all_below(p.first, p.second); });
    const bool away = std::all_of(sig.wk.begin(), sig.wk.end(), [](const auto& p) { return mostly_above(p.first, Tolerances::nonzero); });
    if (vanish) vd.weakly_kahler = true;
    else if (away) vd.weakly_kahler = false;
  }
  if (has(Criterion::Kahler) && !records.empty()) {
    const auto k = values(Criterion::Kahler);
    vd.kahler = all_below(k, Tolerances::single_fd);
    vd.not_kahler = mostly_above(k, Tolerances::nonzero);
  }
  if (has(Criterion::Curvature) && !kf_closed.empty()) {
    const Aggregate& a = report.aggregates["kf_closed"];
    if (a.stddev < Tolerances::constancy_stddev) vd.constant_curvature = a.mean;
  }
  if (vd.weakly_kahler == true && vd.not_kahler == true) vd.summary = "weakly Kähler but not Kähler";
  else if (vd.kahler == true) vd.summary = "Kähler";
  else if (vd.weakly_kahler == true) vd.summary = "weakly Kähler";
  else if (vd.weakly_kahler == false) vd.summary = "not weakly Kähler";
  else vd.summary = "undetermined";

  // Expectations.
  const Expectations& ex = config.expect;
  auto skipped = [&](const std::string& name, std::string_view needs) {
    add(name, "expectation", 0.0, CriterionStatus::Skipped, "requires criterion " + std::string(needs));
  };
  if (ex.curvature) {
    const std::string name = "expect.curvature";
    const double k = *ex.curvature;
    if (!has(Criterion::Curvature)) {
      skipped(name, "curvature");
    } else if (records.empty()) {
      add(name, "expectation", Tolerances::single_fd, CriterionStatus::Fail, no_records);
    } else {
      double dc = 0, dw = 0, dd = 0;
      bool wk_everywhere = true;
      for (const auto& r : records) {
        dc = std::max(dc, std::abs(r.curvature->kf_closed - k));
        dd = std::max(dd, std::abs(r.curvature->kf_direct - k));
        if (r.curvature->kf_wk) dw = std::max(dw, std::abs(*r.curvature->kf_wk - k));
        else wk_everywhere = false;
      }
      const double sd = report.aggregates["kf_closed"].stddev;
      const bool ok = dc < Tolerances::single_fd && wk_everywhere && dw < Tolerances::single_fd &&
                      dd < Tolerances::double_fd && sd < Tolerances::constancy_stddev;
      add(name, "expectation", Tolerances::single_fd, pass_if(ok),
          "K = " + format_double(k) + ": max|closed-K| " + format_double(dc) + ", max|wk-K| " +
              (wk_everywhere ? format_double(dw) : std::string("n/a (off weakly Kähler locus)")) + ", max|direct-K| " +
              format_double(dd) + ", stddev(closed) " + format_double(sd));
    }
  }
  if (ex.weakly_kahler) {
    const std::string name = "expect.weakly_kahler";
    if (sig.wk.empty()) skipped(name, "eq1, eq2 or weakly_kahler");
    else if (records.empty()) add(name, "expectation", Tolerances::jet_identity, CriterionStatus::Fail, no_records);
    else
      add(name, "expectation", *ex.weakly_kahler ? Tolerances::jet_identity : Tolerances::nonzero,
          pass_if(vd.weakly_kahler == *ex.weakly_kahler),
          std::string("expected ") + (*ex.weakly_kahler ? "weakly Kähler" : "not weakly Kähler") + ", verdict " + vd.summary);
  }
  if (ex.kahler) {
    const std::string name = "expect.kahler";
    if (!has(Criterion::Kahler)) skipped(name, "kahler");
    else if (records.empty()) add(name, "expectation", Tolerances::single_fd, CriterionStatus::Fail, no_records);
    else {
      const bool ok = *ex.kahler ? *vd.kahler : *vd.not_kahler;
      add(name, "expectation", *ex.kahler ? Tolerances::single_fd : Tolerances::nonzero, pass_if(ok),
          std::string("expected ") + (*ex.kahler ? "Kähler" : "not Kähler") + ", max kahler_residual " +
              format_double(report.aggregates["kahler"].max));
    }
  }
  if (ex.pseudoconvex) {
    const std::string name = "expect.pseudoconvex";
    if (!has(Criterion::Pseudoconvex)) skipped(name, "pseudoconvex");
    else if (records.empty()) add(name, "expectation", 0.0, CriterionStatus::Fail, no_records);
    else
      add(name, "expectation", 0.0, pass_if(*vd.strongly_pseudoconvex == *ex.pseudoconvex),
          std::string("expected ") + (*ex.pseudoconvex ? "" : "not ") + "strongly pseudo-convex");
  }

  report.passed = report.numerical_failures == 0 &&
                  std::none_of(report.criteria.begin(), report.criteria.end(),
                               [](const CriterionResult& c) { return c.status == CriterionStatus::Fail; });
  return report;
}

int exit_code(const SuiteReport& report) {
  if (report.numerical_failures > 0) return 3;
  return report.passed ? 0 : 1;
}

}  // namespace cfinsler
