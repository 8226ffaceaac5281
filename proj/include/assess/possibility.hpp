#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "assess/scales.hpp"

namespace assess {

class PossibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Qualitative possibility distribution: one codomain level per domain level.
class PossibilityDistribution {
 public:
  PossibilityDistribution(ScalePtr domain, ScalePtr codomain, std::vector<int> values);

  static PossibilityDistribution vacuous(const ScalePtr& domain, const ScalePtr& codomain);
  static PossibilityDistribution from_labels(const ScalePtr& domain, const ScalePtr& codomain,
                                             const std::vector<std::string>& labels);

  const ScalePtr& domain() const { return domain_; }
  const ScalePtr& codomain() const { return codomain_; }
  const std::vector<int>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  Level at(int score_index) const { return Level(codomain_, values_.at(score_index)); }
  int index_at(int score_index) const { return values_[score_index]; }
  bool normalized() const;
  std::vector<std::string> labels() const;
  /// Compact rendering, one label per score, e.g. "b111b" or "0a0a0".
  std::string str() const;

  friend bool operator==(const PossibilityDistribution& a, const PossibilityDistribution& b) {
    return same_scale(a.domain_, b.domain_) && same_scale(a.codomain_, b.codomain_) &&
           a.values_ == b.values_;
  }

 private:
  ScalePtr domain_;
  ScalePtr codomain_;
  std::vector<int> values_;
};

/// Score levels that are non-decreasing in the score; lives on the score scale.
struct SatisfactionProfile {
  ScalePtr domain;
  std::vector<int> values;
};

struct WeightedSource {
  PossibilityDistribution distribution;
  Level weight;  // on the distribution's codomain
};

enum class NormalizationMode { shift, preserve_bottom };
enum class AggregationVariant { lift, threshold };

/// Crisp distribution: top on [lo, hi], bottom elsewhere.
PossibilityDistribution from_interval(const Level& lo, const Level& hi, const ScalePtr& codomain);

/// pi(s) = pi~(s) \/ not(gamma), with not(gamma) carried onto the
/// possibility scale by `confidence_to_possibility`.
PossibilityDistribution discount_self_confidence(const PossibilityDistribution& pi,
                                                 const Level& gamma,
                                                 const ScaleMap& confidence_to_possibility);

Level source_weight(const ConnectiveTable& otimes_table, const Level& gamma, const Level& alpha);

/// pi'(s) = \/_j [w_j /\ pi_j(s)].
PossibilityDistribution fuse_disjunctive(std::span<const WeightedSource> sources);

/// pi'(s) = /\_j [not(w_j) \/ pi_j(s)].
PossibilityDistribution fuse_conjunctive_min(std::span<const WeightedSource> sources);

Level height(const PossibilityDistribution& pi);

/// Shift mode adds not(h) to every degree (saturating); preserve_bottom does
/// the same but leaves impossible scores impossible.
PossibilityDistribution normalize(const PossibilityDistribution& pi, NormalizationMode mode);

/// Everything the weighted-min criteria aggregation needs besides the scores.
struct AggregationRule {
  ConnectiveTable vtilde;       // rows: score, cols: importance
  ScaleMap importance_to_score;
  AggregationVariant variant = AggregationVariant::lift;
};

/// Per-criterion transformed score before the min: lift gives (not b) V~ c,
/// threshold gives top when c reaches rank(b) and c otherwise.
int transformed_score(const AggregationRule& rule, const Level& importance, int score_index);

Level aggregate_crisp(const AggregationRule& rule, std::span<const Level> scores,
                      std::span<const Level> importances);

/// Sup-min extension of `f` over every tuple of domain indices. The output
/// lives on `result_domain` and the shared codomain of the inputs.
PossibilityDistribution extension_principle(std::span<const PossibilityDistribution> inputs,
                                            const ScalePtr& result_domain,
                                            const std::function<int(std::span<const int>)>& f);

/// Fuzzy global score by exhaustive enumeration of all score tuples.
PossibilityDistribution aggregate_extension(const AggregationRule& rule,
                                            std::span<const PossibilityDistribution> pis,
                                            std::span<const Level> importances);

/// mu(s) = s \/ map(not beta).
SatisfactionProfile build_profile(const Level& importance, const ScaleMap& importance_to_score);

/// /\_i /\_s (mu_i(s) \/ not pi_i(s)), evaluated on the possibility scale.
/// Every pi_i must be normalized.
Level match_certainty(std::span<const SatisfactionProfile> profiles,
                      std::span<const PossibilityDistribution> pis,
                      const ScaleMap& score_to_possibility);

/// /\_i \/_s (mu_i(s) /\ pi_i(s)).
Level match_possibility(std::span<const SatisfactionProfile> profiles,
                        std::span<const PossibilityDistribution> pis,
                        const ScaleMap& score_to_possibility);

/// Possibility and necessity that the first score is at least the second.
struct Dominance {
  Level possibility;
  Level necessity;
};

Dominance rank(const PossibilityDistribution& first, const PossibilityDistribution& second);

}  // namespace assess
