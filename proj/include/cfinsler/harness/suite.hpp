#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfinsler/curvature.hpp"
#include "cfinsler/harness/sampling.hpp"

namespace cfinsler {

/// Per-sample checks. Each produces exactly one scalar metric per sample
/// (the CSV column), plus optional detail in the JSON record.
enum class Criterion {
  LeviOracle,    // max |levi_closed - levi_oracle| / max |levi_closed|
  Determinant,   // |det_closed - det(levi)| / |det(levi)|
  NconnOracle,   // max |N_closed - N_fd| / max(max |N_closed|, 1)
  Spray,         // max |N v - 2G| / max(max |2G|, 1)
  Euler,         // max(|G_a v^a - G|, |G_{a bbar} v^a conj(v^b) - G|) / G
  Unitary,       // max relative change of scalar outputs under a seeded unitary map
  Pseudoconvex,  // min(cond1 / phi, cond2 / phi^2); property
  Eq1,           // |phi-form weakly Kahler residual|; property
  Eq2,           // |U/W-form weakly Kahler residual|; property
  Lemma,         // |s(U_t+U_s) - s^2(t-s)W_s - U|
  K2K3,          // |dk2/ds + U dk3/ds|
  Curvature,     // max pairwise deviation of the available K_F values
  WeaklyKahler,  // classifier weakly_residual; property
  Kahler,        // classifier kahler_residual; property
};

std::string_view criterion_name(Criterion c);
std::optional<Criterion> parse_criterion(std::string_view name);
std::vector<Criterion> all_criteria();

/// Tolerance ladder.
struct Tolerances {
  static constexpr double jet_identity = 1e-8;
  static constexpr double single_fd = 1e-6;
  static constexpr double double_fd = 1e-4;
  static constexpr double k2k3 = 1e-7;
  static constexpr double nonzero = 1e-3;       // "bounded away from zero"
  static constexpr double witness_fraction = 0.9;
  static constexpr double constancy_stddev = 1e-8;
};

/// Claims about the profile that become pass/fail criteria.
struct Expectations {
  std::optional<bool> weakly_kahler;
  std::optional<bool> kahler;
  std::optional<bool> pseudoconvex;
  std::optional<double> curvature;  // constant holomorphic curvature

  bool empty() const { return !weakly_kahler && !kahler && !pseudoconvex && !curvature; }
};

/// Models expect their curvature k and the weakly Kahler property.
Expectations default_expectations(const ProfileDescriptor& profile);

struct SuiteConfig {
  ProfileDescriptor profile;
  SampleSpec sample;
  FDConfigd fd;
  std::vector<Criterion> criteria = all_criteria();
  Expectations expect;
  bool timestamp = false;
  int threads = 1;
};

struct SampleRecord {
  int index = 0;
  cvec z, v;
  double r = 0, t = 0, s = 0, phi = 0;
  cplx pairing;
  std::map<std::string, double> metrics;  // criterion name -> metric
  std::optional<CurvatureReport> curvature;
  std::optional<KahlerReport> kahler;
  std::optional<PseudoConvexity> pseudoconvexity;
  std::optional<bool> levi_positive_definite;
};

struct Aggregate {
  int count = 0;
  double min = 0, max = 0, mean = 0, stddev = 0;
};

enum class CriterionStatus { Pass, Fail, Skipped, Info };
std::string_view to_string(CriterionStatus s);

struct CriterionResult {
  std::string name;
  std::string kind;  // "identity", "property" or "expectation"
  double tolerance = 0;
  CriterionStatus status = CriterionStatus::Info;
  std::string detail;
};

struct Verdicts {
  std::optional<bool> strongly_pseudoconvex;
  std::optional<bool> weakly_kahler;
  std::optional<bool> kahler;
  std::optional<bool> not_kahler;  // kahler_residual > 1e-3 at >= 90% of samples
  std::optional<double> constant_curvature;
  std::string summary;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<SampleRecord> records;
  std::vector<Rejection> rejections;
  int numerical_failures = 0;
  std::map<std::string, Aggregate> aggregates;
  std::vector<CriterionResult> criteria;
  Verdicts verdicts;
  bool passed = false;
  std::string generated_at;
};

/// Samples the domain, evaluates every selected criterion per sample and
/// aggregates. Samples that hit a numerical error are moved to the rejection
/// log and counted in numerical_failures.
SuiteReport run_suite(const SuiteConfig& config);

/// 0 = every criterion passes, 1 = a criterion failed, 3 = numerical errors.
int exit_code(const SuiteReport& report);

Aggregate aggregate(const std::vector<double>& values);

}  // namespace cfinsler
