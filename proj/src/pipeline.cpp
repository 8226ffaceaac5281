#include "assess/pipeline.hpp"

#include <algorithm>
#include <future>
#include <tuple>

namespace assess {

namespace {

std::string cell_coordinate(const AssessmentProblem& p, int candidate, int i, int j) {
  return "candidate " + p.candidates[candidate].name + ", criterion " + p.criteria[i].name +
         ", expert " + p.experts[j].name;
}

std::string criterion_coordinate(const AssessmentProblem& p, int candidate, int i) {
  return "candidate " + p.candidates[candidate].name + ", criterion " + p.criteria[i].name;
}

void require_candidate(const AssessmentProblem& p, int candidate) {
  if (candidate < 0 || candidate >= static_cast<int>(p.candidates.size())) {
    throw AssessmentError("assess", "candidate #" + std::to_string(candidate), "no such candidate");
  }
}

template <typename F>
auto at_coordinate(const std::string& op, const std::string& where, F&& f) {
  try {
    return f();
  } catch (const AssessmentError&) {
    throw;
  } catch (const std::exception& e) {
    throw AssessmentError(op, where, e.what());
  }
}

std::vector<Level> importances(const AssessmentProblem& p) {
  std::vector<Level> out;
  for (const auto& c : p.criteria) out.push_back(c.importance);
  return out;
}

AggregationRule aggregation_rule(const AssessmentProblem& p) {
  return {p.connectives.vtilde, p.maps.importance_to_score, p.options.aggregation};
}

}  // namespace

std::vector<PossibilityDistribution> fused_criteria(const AssessmentProblem& p, int candidate,
                                                    QptTrace* trace) {
  require_candidate(p, candidate);
  const Candidate& cand = p.candidates[candidate];
  std::vector<PossibilityDistribution> out;
  for (std::size_t i = 0; i < p.criteria.size(); ++i) {
    std::vector<WeightedSource> sources;
    std::vector<PossibilityDistribution> discounted_row;
    std::vector<Level> weight_row;
    for (std::size_t j = 0; j < p.experts.size(); ++j) {
      const Opinion& o = cand.grid.at(i).at(j);
      at_coordinate("discount", cell_coordinate(p, candidate, i, j), [&] {
        const auto raw = o.interval ? from_interval(o.interval->lo, o.interval->hi,
                                                    p.roles.possibility)
                                    : PossibilityDistribution::vacuous(p.roles.score,
                                                                       p.roles.possibility);
        auto discounted =
            discount_self_confidence(raw, o.confidence, p.maps.confidence_to_possibility);
        const Level w = source_weight(p.connectives.otimes, o.confidence,
                                      p.experts[j].reliability);
        sources.push_back({discounted, p.maps.confidence_to_possibility.apply(w)});
        discounted_row.push_back(std::move(discounted));
        weight_row.push_back(w);
        return 0;
      });
    }
    const auto where = criterion_coordinate(p, candidate, i);
    auto merged = at_coordinate("fuse", where, [&] {
      return p.options.fusion == FusionMode::disjunctive ? fuse_disjunctive(sources)
                                                         : fuse_conjunctive_min(sources);
    });
    auto normalized =
        at_coordinate("normalize", where, [&] { return normalize(merged, p.options.normalization); });
    if (trace) {
      trace->discounted.push_back(std::move(discounted_row));
      trace->weights.push_back(std::move(weight_row));
      trace->merged.push_back(std::move(merged));
      trace->normalized.push_back(normalized);
    }
    out.push_back(std::move(normalized));
  }
  return out;
}

QptResult run_qpt(const AssessmentProblem& p, int candidate) {
  QptTrace trace;
  auto criteria = fused_criteria(p, candidate, &trace);
  const auto where = "candidate " + p.candidates[candidate].name;
  const auto betas = importances(p);
  auto final = at_coordinate("aggregate", where, [&] {
    return aggregate_extension(aggregation_rule(p), criteria, betas);
  });
  std::vector<SatisfactionProfile> profiles;
  for (const auto& b : betas) profiles.push_back(build_profile(b, p.maps.importance_to_score));
  auto certainty = at_coordinate("match_certainty", where, [&] {
    return match_certainty(profiles, criteria, p.maps.score_to_possibility);
  });
  auto possibility = at_coordinate("match_possibility", where, [&] {
    return match_possibility(profiles, criteria, p.maps.score_to_possibility);
  });
  return {std::move(final), std::move(certainty), std::move(possibility), std::move(trace)};
}

MassFunction TbmResult::normalized() const { return final.normalized(); }

int TbmResult::betp_argmax() const {
  return static_cast<int>(std::max_element(betp.begin(), betp.end()) - betp.begin());
}

TbmResult run_tbm(const AssessmentProblem& p, int candidate) {
  require_candidate(p, candidate);
  const Candidate& cand = p.candidates[candidate];
  const Frame frame(p.roles.score->size());
  const CombinationMode mode = p.options.combination;
  TbmTrace trace;
  MassFunction global = MassFunction::vacuous(frame);
  std::string combined_so_far;

  for (std::size_t i = 0; i < p.criteria.size(); ++i) {
    std::vector<std::vector<double>> contour_row;
    std::vector<MassFunction> evidence_row;
    std::vector<double> factor_row;
    std::vector<MassFunction> discounted_row;
    MassFunction criterion = MassFunction::vacuous(frame);
    for (std::size_t j = 0; j < p.experts.size(); ++j) {
      const Opinion& o = cand.grid.at(i).at(j);
      at_coordinate("tbm", cell_coordinate(p, candidate, i, j), [&] {
        const int lo = o.interval ? o.interval->lo.index() : 0;
        const int hi = o.interval ? o.interval->hi.index() : frame.size() - 1;
        auto pi = kernel_possibility(lo, hi, frame, p.options.kernel);
        auto bba = consonant_bba(pi);
        auto g = p.options.confidence_rescale.find(o.confidence.label());
        if (g == p.options.confidence_rescale.end()) {
          throw BeliefError("no rescaling for confidence '" + o.confidence.label() + "'");
        }
        std::optional<int> s;
        if (auto it = p.options.reliability_rescale.find(p.experts[j].reliability.label());
            it != p.options.reliability_rescale.end()) {
          s = it->second;
        }
        const double d = discount_factor(g->second, s, p.options.discount);
        auto discounted = discount(bba, d);
        criterion = combine_conjunctive(criterion, discounted, mode);
        contour_row.push_back(std::move(pi));
        evidence_row.push_back(std::move(bba));
        factor_row.push_back(d);
        discounted_row.push_back(std::move(discounted));
        return 0;
      });
    }
    const auto where = criterion_coordinate(p, candidate, i);
    const auto& beta = p.criteria[i].importance;
    auto row = p.connectives.goodness.find(beta.label());
    if (row == p.connectives.goodness.end()) {
      throw AssessmentError("goodness_transfer", where,
                            "no goodness row for importance '" + beta.label() + "'");
    }
    auto transferred = at_coordinate("goodness_transfer", where, [&] {
      return goodness_transfer(criterion, row->second, frame, p.options.goodness_image);
    });
    combined_so_far += (combined_so_far.empty() ? "" : "+") + p.criteria[i].name;
    global = at_coordinate("combine", "candidate " + cand.name + ", criteria " + combined_so_far,
                           [&] { return combine_conjunctive(global, transferred, mode); });

    trace.contours.push_back(std::move(contour_row));
    trace.evidence.push_back(std::move(evidence_row));
    trace.discount_factors.push_back(std::move(factor_row));
    trace.discounted.push_back(std::move(discounted_row));
    trace.combined.push_back(std::move(criterion));
    trace.transferred.push_back(std::move(transferred));
  }
  auto betp = at_coordinate("pignistic", "candidate " + cand.name, [&] { return pignistic(global); });
  const double e = expected_score(betp);
  return {std::move(global), std::move(betp), e, std::move(trace)};
}

AssessmentReport assess(const AssessmentProblem& p, Method method, std::optional<int> only) {
  std::vector<int> which;
  if (only) {
    require_candidate(p, *only);
    which.push_back(*only);
  } else {
    for (int c = 0; c < static_cast<int>(p.candidates.size()); ++c) which.push_back(c);
  }
  std::vector<std::future<CandidateReport>> jobs;
  for (int c : which) {
    jobs.push_back(std::async(std::launch::async, [&p, method, c] {
      CandidateReport r{p.candidates[c].name, std::nullopt, std::nullopt};
      if (method != Method::tbm) r.qpt = run_qpt(p, c);
      if (method != Method::qpt) r.tbm = run_tbm(p, c);
      return r;
    }));
  }
  AssessmentReport report;
  for (auto& j : jobs) report.candidates.push_back(j.get());
  return report;
}

std::vector<RankingEntry> rank_candidates(const AssessmentProblem& p, Method method) {
  if (method == Method::both) {
    throw AssessmentError("rank", "method", "ranking needs a single method");
  }
  const auto report = assess(p, method);
  std::vector<RankingEntry> entries;
  for (const auto& r : report.candidates) entries.push_back({r.candidate});

  if (method == Method::tbm) {
    for (std::size_t c = 0; c < entries.size(); ++c) {
      const auto& t = *report.candidates[c].tbm;
      entries[c].expected_score = t.expected_score;
      entries[c].top_betp = t.betp.back();
    }
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return std::tie(*b.expected_score, *b.top_betp, a.candidate) <
             std::tie(*a.expected_score, *a.top_betp, b.candidate);
    });
    return entries;
  }

  for (std::size_t c = 0; c < entries.size(); ++c) {
    const auto& q = *report.candidates[c].qpt;
    const ScalePtr& scale = q.final.codomain();
    int nec = scale->top_index();
    int pos = scale->top_index();
    for (std::size_t o = 0; o < entries.size(); ++o) {
      if (o == c) continue;
      const auto d = rank(q.final, report.candidates[o].qpt->final);
      nec = std::min(nec, d.necessity.index());
      pos = std::min(pos, d.possibility.index());
    }
    entries[c].necessity = Level(scale, nec);
    entries[c].possibility = Level(scale, pos);
    entries[c].match_certainty = q.match_certainty;
    entries[c].match_possibility = q.match_possibility;
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tuple(b.necessity->index(), b.possibility->index(), a.candidate) <
           std::tuple(a.necessity->index(), a.possibility->index(), b.candidate);
  });
  return entries;
}

}  // namespace assess
