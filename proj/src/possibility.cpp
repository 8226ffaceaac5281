#include "assess/possibility.hpp"

#include <algorithm>

namespace assess {

namespace {

void require_compatible(const PossibilityDistribution& a, const PossibilityDistribution& b,
                        const char* op) {
  if (!same_scale(a.domain(), b.domain()) || !same_scale(a.codomain(), b.codomain())) {
    throw ScaleError(std::string(op) + ": distributions on different scales");
  }
}

void require_sources(std::span<const WeightedSource> sources, const char* op) {
  if (sources.empty()) throw PossibilityError(std::string(op) + ": no sources");
  for (const auto& src : sources) {
    require_compatible(src.distribution, sources.front().distribution, op);
    if (!same_scale(src.weight.scale(), src.distribution.codomain())) {
      throw ScaleError(std::string(op) + ": weight on '" + src.weight.scale()->name() +
                       "' must be mapped onto '" + src.distribution.codomain()->name() + "'");
    }
  }
}

}  // namespace

PossibilityDistribution::PossibilityDistribution(ScalePtr domain, ScalePtr codomain,
                                                 std::vector<int> values)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != domain_->size()) {
    throw PossibilityError("distribution needs one value per level of '" + domain_->name() + "'");
  }
  for (int v : values_) {
    if (v < 0 || v >= codomain_->size()) {
      throw PossibilityError("distribution value outside '" + codomain_->name() + "'");
    }
  }
}

PossibilityDistribution PossibilityDistribution::vacuous(const ScalePtr& domain,
                                                         const ScalePtr& codomain) {
  return PossibilityDistribution(domain, codomain,
                                 std::vector<int>(domain->size(), codomain->top_index()));
}

PossibilityDistribution PossibilityDistribution::from_labels(
    const ScalePtr& domain, const ScalePtr& codomain, const std::vector<std::string>& labels) {
  std::vector<int> v;
  v.reserve(labels.size());
  for (const auto& l : labels) v.push_back(Level::of(codomain, l).index());
  return PossibilityDistribution(domain, codomain, std::move(v));
}

bool PossibilityDistribution::normalized() const {
  return *std::max_element(values_.begin(), values_.end()) == codomain_->top_index();
}

std::vector<std::string> PossibilityDistribution::labels() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (int v : values_) out.push_back(codomain_->label(v));
  return out;
}

std::string PossibilityDistribution::str() const {
  std::string out;
  for (int v : values_) out += codomain_->label(v);
  return out;
}

PossibilityDistribution from_interval(const Level& lo, const Level& hi, const ScalePtr& codomain) {
  require_same_scale(lo, hi, "from_interval");
  if (lo.index() > hi.index()) {
    throw PossibilityError("interval [" + lo.label() + "," + hi.label() + "] is reversed");
  }
  std::vector<int> v(lo.scale()->size(), 0);
  for (int s = lo.index(); s <= hi.index(); ++s) v[s] = codomain->top_index();
  return PossibilityDistribution(lo.scale(), codomain, std::move(v));
}

PossibilityDistribution discount_self_confidence(const PossibilityDistribution& pi,
                                                 const Level& gamma,
                                                 const ScaleMap& confidence_to_possibility) {
  const Level floor = confidence_to_possibility.apply(neg(gamma));
  if (!same_scale(floor.scale(), pi.codomain())) {
    throw ScaleError("confidence map does not target the distribution's codomain");
  }
  std::vector<int> v = pi.values();
  for (int& x : v) x = std::max(x, floor.index());
  return PossibilityDistribution(pi.domain(), pi.codomain(), std::move(v));
}

Level source_weight(const ConnectiveTable& otimes_table, const Level& gamma, const Level& alpha) {
  return otimes(otimes_table, gamma, alpha);
}

PossibilityDistribution fuse_disjunctive(std::span<const WeightedSource> sources) {
  require_sources(sources, "fuse_disjunctive");
  const auto& first = sources.front().distribution;
  std::vector<int> v(first.size(), 0);
  for (const auto& src : sources) {
    for (int s = 0; s < first.size(); ++s) {
      v[s] = std::max(v[s], std::min(src.weight.index(), src.distribution.index_at(s)));
    }
  }
  return PossibilityDistribution(first.domain(), first.codomain(), std::move(v));
}

PossibilityDistribution fuse_conjunctive_min(std::span<const WeightedSource> sources) {
  require_sources(sources, "fuse_conjunctive_min");
  const auto& first = sources.front().distribution;
  const int top = first.codomain()->top_index();
  std::vector<int> v(first.size(), top);
  for (const auto& src : sources) {
    const int floor = neg(src.weight).index();
    for (int s = 0; s < first.size(); ++s) {
      v[s] = std::min(v[s], std::max(floor, src.distribution.index_at(s)));
    }
  }
  return PossibilityDistribution(first.domain(), first.codomain(), std::move(v));
}

Level height(const PossibilityDistribution& pi) {
  return Level(pi.codomain(), *std::max_element(pi.values().begin(), pi.values().end()));
}

PossibilityDistribution normalize(const PossibilityDistribution& pi, NormalizationMode mode) {
  const Level h = height(pi);
  if (mode == NormalizationMode::preserve_bottom && h.is_bottom()) {
    throw PossibilityError("normalize: every score is impossible");
  }
  const Level shift = neg(h);
  std::vector<int> v = pi.values();
  for (int& x : v) {
    if (mode == NormalizationMode::preserve_bottom && x == 0) continue;
    x = bounded_add(Level(pi.codomain(), x), shift).index();
  }
  return PossibilityDistribution(pi.domain(), pi.codomain(), std::move(v));
}

int transformed_score(const AggregationRule& rule, const Level& importance, int score_index) {
  const ScalePtr& score = rule.vtilde.rows();
  if (rule.variant == AggregationVariant::lift) {
    return rule.vtilde.at(Level(score, score_index), neg(importance)).index();
  }
  const int threshold = rule.importance_to_score.apply(importance).index();
  return score_index >= threshold ? score->top_index() : score_index;
}

Level aggregate_crisp(const AggregationRule& rule, std::span<const Level> scores,
                      std::span<const Level> importances) {
  if (scores.empty()) throw PossibilityError("aggregate: no criteria");
  if (scores.size() != importances.size()) {
    throw PossibilityError("aggregate: scores and importances differ in length");
  }
  const ScalePtr& score = rule.vtilde.rows();
  int result = score->top_index();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!same_scale(scores[i].scale(), score)) {
      throw ScaleError("aggregate: score not on '" + score->name() + "'");
    }
    result = std::min(result, transformed_score(rule, importances[i], scores[i].index()));
  }
  return Level(score, result);
}

PossibilityDistribution extension_principle(std::span<const PossibilityDistribution> inputs,
                                            const ScalePtr& result_domain,
                                            const std::function<int(std::span<const int>)>& f) {
  if (inputs.empty()) throw PossibilityError("extension principle: no arguments");
  const ScalePtr& codomain = inputs.front().codomain();
  for (const auto& in : inputs) {
    if (!same_scale(in.codomain(), codomain)) {
      throw ScaleError("extension principle: arguments on different possibility scales");
    }
  }
  const std::size_t m = inputs.size();
  std::vector<int> result(result_domain->size(), 0);
  std::vector<int> tuple(m, 0);
  // Odometer over every tuple in the product of the input domains.
  while (true) {
    int degree = codomain->top_index();
    for (std::size_t i = 0; i < m && degree > 0; ++i) {
      degree = std::min(degree, inputs[i].index_at(tuple[i]));
    }
    if (degree > 0) {
      const int s = f(tuple);
      result.at(s) = std::max(result[s], degree);
    }
    std::size_t k = 0;
    while (k < m && ++tuple[k] == inputs[k].size()) tuple[k++] = 0;
    if (k == m) break;
  }
  return PossibilityDistribution(result_domain, codomain, std::move(result));
}

PossibilityDistribution aggregate_extension(const AggregationRule& rule,
                                            std::span<const PossibilityDistribution> pis,
                                            std::span<const Level> importances) {
  if (pis.empty()) throw PossibilityError("aggregate: no criteria");
  if (pis.size() != importances.size()) {
    throw PossibilityError("aggregate: distributions and importances differ in length");
  }
  const ScalePtr& score = rule.vtilde.rows();
  for (const auto& pi : pis) {
    if (!same_scale(pi.domain(), score)) {
      throw ScaleError("aggregate: distribution not over '" + score->name() + "'");
    }
  }
  // Transformed score of every (criterion, score) pair, looked up per tuple.
  std::vector<std::vector<int>> lifted(pis.size());
  for (std::size_t i = 0; i < pis.size(); ++i) {
    for (int s = 0; s < score->size(); ++s) {
      lifted[i].push_back(transformed_score(rule, importances[i], s));
    }
  }
  return extension_principle(pis, score, [&](std::span<const int> tuple) {
    int result = score->top_index();
    for (std::size_t i = 0; i < tuple.size(); ++i) result = std::min(result, lifted[i][tuple[i]]);
    return result;
  });
}

SatisfactionProfile build_profile(const Level& importance, const ScaleMap& importance_to_score) {
  const Level floor = importance_to_score.apply(neg(importance));
  SatisfactionProfile p{floor.scale(), {}};
  for (int s = 0; s < floor.scale()->size(); ++s) p.values.push_back(std::max(s, floor.index()));
  return p;
}

namespace {

void require_matchable(std::span<const SatisfactionProfile> profiles,
                       std::span<const PossibilityDistribution> pis, const ScaleMap& map) {
  if (profiles.size() != pis.size()) {
    throw PossibilityError("match: one profile per criterion distribution required");
  }
  for (std::size_t i = 0; i < pis.size(); ++i) {
    if (!same_scale(profiles[i].domain, pis[i].domain()) ||
        !same_scale(map.from(), profiles[i].domain) || !same_scale(map.to(), pis[i].codomain())) {
      throw ScaleError("match: profile and distribution scales are not commensurate via the map");
    }
  }
}

}  // namespace

Level match_certainty(std::span<const SatisfactionProfile> profiles,
                      std::span<const PossibilityDistribution> pis,
                      const ScaleMap& score_to_possibility) {
  require_matchable(profiles, pis, score_to_possibility);
  const ScalePtr& target = score_to_possibility.to();
  int result = target->top_index();
  for (std::size_t i = 0; i < pis.size(); ++i) {
    if (!pis[i].normalized()) {
      throw PossibilityError("match_certainty: criterion distribution " + std::to_string(i) +
                             " is not normalized");
    }
    for (int s = 0; s < pis[i].size(); ++s) {
      const int mu = score_to_possibility.apply_index(profiles[i].values[s]);
      result = std::min(result, std::max(mu, target->top_index() - pis[i].index_at(s)));
    }
  }
  return Level(target, result);
}

Level match_possibility(std::span<const SatisfactionProfile> profiles,
                        std::span<const PossibilityDistribution> pis,
                        const ScaleMap& score_to_possibility) {
  require_matchable(profiles, pis, score_to_possibility);
  const ScalePtr& target = score_to_possibility.to();
  int result = target->top_index();
  for (std::size_t i = 0; i < pis.size(); ++i) {
    int best = 0;
    for (int s = 0; s < pis[i].size(); ++s) {
      const int mu = score_to_possibility.apply_index(profiles[i].values[s]);
      best = std::max(best, std::min(mu, pis[i].index_at(s)));
    }
    result = std::min(result, best);
  }
  return Level(target, result);
}

Dominance rank(const PossibilityDistribution& first, const PossibilityDistribution& second) {
  require_compatible(first, second, "rank");
  int at_least = 0;
  int below = 0;
  for (int s1 = 0; s1 < first.size(); ++s1) {
    for (int s2 = 0; s2 < second.size(); ++s2) {
      const int joint = std::min(first.index_at(s1), second.index_at(s2));
      if (s1 >= s2) {
        at_least = std::max(at_least, joint);
      } else {
        below = std::max(below, joint);
      }
    }
  }
  const ScalePtr& c = first.codomain();
  return {Level(c, at_least), neg(Level(c, below))};
}

}  // namespace assess
