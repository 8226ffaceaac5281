#include "assess/problem.hpp"

#include <algorithm>

namespace assess {

namespace {

template <typename T>
int find_named(const std::vector<T>& items, const std::string& name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? -1 : static_cast<int>(it - items.begin());
}

}  // namespace

int AssessmentProblem::criterion_index(const std::string& name) const {
  return find_named(criteria, name);
}

int AssessmentProblem::expert_index(const std::string& name) const {
  return find_named(experts, name);
}

int AssessmentProblem::candidate_index(const std::string& name) const {
  return find_named(candidates, name);
}

ScalePtr AssessmentProblem::scale_named(const std::string& name) const {
  for (const auto& s : scales) {
    if (s->name() == name) return s;
  }
  return nullptr;
}

AssessmentProblem standard_problem() {
  namespace st = standard;
  const ScalePtr score = st::score();
  const ScalePtr conf = st::confidence();

  AssessmentProblem p{
      .scales = {st::score(), st::possibility(), st::confidence(), st::reliability(),
                 st::importance()},
      .roles = {st::score(), st::possibility(), st::confidence(), st::reliability(),
                st::importance()},
      .maps = {st::confidence_to_possibility(), st::reliability_to_confidence(),
               st::importance_to_score(), st::score_to_possibility()},
      .connectives = {st::otimes_table(), st::vtilde_table(),
                      {{"e", {0, 2, 3, 4, 4}},
                       {"f", {0, 1, 3, 4, 4}},
                       {"g", {0, 1, 2, 4, 4}},
                       {"1", {0, 1, 2, 3, 4}}}},
      .criteria = {},
      .experts = {},
      .candidates = {},
      .options = {},
      .annotations = {},
  };
  p.options.confidence_rescale = {{"0", 0}, {"a", 1}, {"b", 2}, {"1", 3}};
  p.options.reliability_rescale = {{"r", 1}, {"s", 2}, {"1", 3}};

  const auto beta = [](const char* l) { return Level::of(st::importance(), l); };
  p.criteria = {{"Ana", beta("g")}, {"Lear", beta("e")}, {"Exp", beta("e")},
                {"Com", beta("1")}, {"Dec", beta("g")},  {"Crea", beta("1")}};
  const auto alpha = [](const char* l) { return Level::of(st::reliability(), l); };
  p.experts = {{"Mkt", alpha("1")}, {"Fin", alpha("r")}, {"Prod", alpha("r")}, {"HR", alpha("s")}};

  struct Cell {
    int lo, hi;  // 1-based scores; 0 for a blank
    const char* gamma;
  };
  const Cell cells[6][4] = {
      {{0, 0, "0"}, {4, 4, "1"}, {2, 2, "1"}, {0, 0, "0"}},  // Ana
      {{2, 3, "b"}, {1, 5, "a"}, {4, 4, "b"}, {2, 4, "1"}},  // Lear
      {{4, 4, "1"}, {0, 0, "0"}, {0, 0, "0"}, {0, 0, "0"}},  // Exp
      {{4, 4, "1"}, {0, 0, "0"}, {0, 0, "0"}, {4, 4, "1"}},  // Com
      {{1, 5, "a"}, {1, 5, "a"}, {1, 2, "a"}, {3, 3, "a"}},  // Dec
      {{5, 5, "1"}, {0, 0, "0"}, {0, 0, "0"}, {1, 1, "1"}},  // Crea
  };
  Candidate k{"K", {}};
  for (const auto& row : cells) {
    std::vector<Opinion> opinions;
    for (const auto& c : row) {
      Opinion o{std::nullopt, Level::of(conf, c.gamma)};
      if (c.lo > 0) o.interval = Interval{Level(score, c.lo - 1), Level(score, c.hi - 1)};
      opinions.push_back(o);
    }
    k.grid.push_back(std::move(opinions));
  }
  p.candidates.push_back(std::move(k));

  p.annotations.push_back(
      {"K", "Lear", "Mkt",
       "interval kept as reported, [2,3]; a second transcription of this opinion gives the "
       "discounted distribution a111a, which corresponds to [2,4]. Qualitative fused and "
       "final results agree under either reading; belief-function results do not."});
  return p;
}

}  // namespace assess
