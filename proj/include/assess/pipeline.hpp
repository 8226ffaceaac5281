#pragma once

#include <optional>
#include <string>
#include <vector>

#include "assess/problem.hpp"

namespace assess {

inline constexpr const char* kEngineVersion = "assess 0.1.0";

enum class Method { qpt, tbm, both };

template <typename T>
using Grid = std::vector<std::vector<T>>;  // [criterion][expert]

/// Intermediate tables of the qualitative pipeline.
struct QptTrace {
  Grid<PossibilityDistribution> discounted;  // after self-confidence discounting
  Grid<Level> weights;                       // gamma (x) alpha
  std::vector<PossibilityDistribution> merged;
  std::vector<PossibilityDistribution> normalized;
};

struct QptResult {
  PossibilityDistribution final;
  Level match_certainty;
  Level match_possibility;
  QptTrace trace;
};

/// Intermediate tables of the belief-function pipeline.
struct TbmTrace {
  Grid<std::vector<double>> contours;  // plausibility of each score from the data
  Grid<MassFunction> evidence;         // consonant bba per opinion
  Grid<double> discount_factors;
  Grid<MassFunction> discounted;
  std::vector<MassFunction> combined;     // per criterion, over experts
  std::vector<MassFunction> transferred;  // per criterion, on the goodness frame
};

struct TbmResult {
  MassFunction final;  // as combined, in the configured mode
  std::vector<double> betp;
  double expected_score;
  TbmTrace trace;

  /// Focal masses with conflict removed.
  MassFunction normalized() const;
  int betp_argmax() const;
};

struct CandidateReport {
  std::string candidate;
  std::optional<QptResult> qpt;
  std::optional<TbmResult> tbm;
};

struct AssessmentReport {
  std::vector<CandidateReport> candidates;
};

QptResult run_qpt(const AssessmentProblem& problem, int candidate);
TbmResult run_tbm(const AssessmentProblem& problem, int candidate);

/// Evaluates every candidate (or just `only`), candidates in parallel.
AssessmentReport assess(const AssessmentProblem& problem, Method method,
                        std::optional<int> only = std::nullopt);

/// Per-criterion distributions before the final aggregation, in the
/// configured fusion mode.
std::vector<PossibilityDistribution> fused_criteria(const AssessmentProblem& problem,
                                                    int candidate, QptTrace* trace = nullptr);

struct RankingEntry {
  std::string candidate;
  // tbm
  std::optional<double> expected_score;
  std::optional<double> top_betp;
  // qpt: worst-case dominance over every other candidate
  std::optional<Level> necessity;
  std::optional<Level> possibility;
  std::optional<Level> match_certainty;
  std::optional<Level> match_possibility;
};

/// Best first. `method` must be qpt or tbm.
std::vector<RankingEntry> rank_candidates(const AssessmentProblem& problem, Method method);

/// A single parameter of a problem: gamma:<criterion>:<expert>,
/// alpha:<expert>, beta:<criterion>, lo:<criterion>:<expert> or
/// hi:<criterion>:<expert>. Interval coordinates also address the
/// candidate being assessed.
struct Coordinate {
  enum class Kind { gamma, alpha, beta, lo, hi };
  Kind kind;
  int criterion = -1;
  int expert = -1;

  static Coordinate parse(const AssessmentProblem& problem, const std::string& text);
  std::string str(const AssessmentProblem& problem) const;
};

/// Label currently held at the coordinate; a blank reads as the full score range.
std::string current_value(const AssessmentProblem& problem, int candidate, const Coordinate& at);

/// Copy of the problem with one parameter replaced. The input is untouched.
AssessmentProblem with_override(const AssessmentProblem& problem, int candidate,
                                const Coordinate& at, const std::string& value);

struct SensitivitySpec {
  Coordinate target;
  std::vector<std::string> sweep;
};

struct SensitivityPoint {
  std::string value;
  CandidateReport report;
  bool qpt_final_changed = false;
  bool tbm_argmax_changed = false;
  std::optional<double> expected_score_delta;
  std::vector<double> betp_delta;
  std::vector<std::string> changed_traces;
};

struct SensitivityTable {
  std::string candidate;
  std::string target;
  std::string current;
  CandidateReport base;
  std::vector<SensitivityPoint> points;
  /// Sweep values where the decision-relevant output moves.
  std::vector<std::string> informative;
};

SensitivityTable sensitivity(const AssessmentProblem& problem, int candidate,
                             const SensitivitySpec& spec, Method method);

/// Names of trace tables whose contents differ between two reports.
std::vector<std::string> changed_trace_tables(const CandidateReport& a, const CandidateReport& b);

struct Diagnostic {
  enum class Severity { error, warning, note };
  Severity severity;
  std::string where;
  std::string message;
};

std::vector<Diagnostic> validate(const AssessmentProblem& problem);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace assess
