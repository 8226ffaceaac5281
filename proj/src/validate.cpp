#include <algorithm>

#include "assess/pipeline.hpp"

namespace assess {

namespace {

using Severity = Diagnostic::Severity;

class Collector {
 public:
  void error(std::string where, std::string message) {
    out_.push_back({Severity::error, std::move(where), std::move(message)});
  }
  void warning(std::string where, std::string message) {
    out_.push_back({Severity::warning, std::move(where), std::move(message)});
  }
  void note(std::string where, std::string message) {
    out_.push_back({Severity::note, std::move(where), std::move(message)});
  }
  bool any_error() const { return has_errors(out_); }
  std::vector<Diagnostic> take() { return std::move(out_); }

 private:
  std::vector<Diagnostic> out_;
};

void check_map(Collector& c, const char* name, const ScaleMap& m, const ScalePtr& from,
               const ScalePtr& to) {
  if (!same_scale(m.from(), from) || !same_scale(m.to(), to)) {
    c.error(std::string("maps.") + name,
            "must map '" + from->name() + "' onto '" + to->name() + "'");
  }
}

bool on(const Level& l, const ScalePtr& s) { return same_scale(l.scale(), s); }

}  // namespace

std::vector<Diagnostic> validate(const AssessmentProblem& p) {
  Collector c;
  const auto& r = p.roles;

  check_map(c, "confidence_to_possibility", p.maps.confidence_to_possibility, r.confidence,
            r.possibility);
  check_map(c, "reliability_to_confidence", p.maps.reliability_to_confidence, r.reliability,
            r.confidence);
  check_map(c, "importance_to_score", p.maps.importance_to_score, r.importance, r.score);
  check_map(c, "score_to_possibility", p.maps.score_to_possibility, r.score, r.possibility);

  const auto& otimes = p.connectives.otimes;
  const auto& vt = p.connectives.vtilde;
  if (!same_scale(otimes.rows(), r.confidence) || !same_scale(otimes.cols(), r.reliability) ||
      !same_scale(otimes.result(), r.confidence)) {
    c.error("connectives.otimes", "must be confidence x reliability -> confidence");
  } else {
    bool closed = true;
    for (int g = 0; g < r.confidence->size(); ++g) {
      for (int a = 0; a < r.reliability->size(); ++a) {
        const Level expect = otimes_closed_form(p.maps.reliability_to_confidence,
                                                Level(r.confidence, g), Level(r.reliability, a));
        closed = closed && otimes.at_index(g, a) == expect.index();
      }
    }
    if (!closed) {
      c.note("connectives.otimes", "table departs from confidence /\\ map(reliability)");
    }
  }
  if (!same_scale(vt.rows(), r.score) || !same_scale(vt.cols(), r.importance) ||
      !same_scale(vt.result(), r.score)) {
    c.error("connectives.vtilde", "must be score x importance -> score");
  }
  for (const auto& [label, row] : p.connectives.goodness) {
    const std::string where = "connectives.goodness." + label;
    if (!r.importance->index_of(label)) c.error(where, "'" + label + "' is not an importance level");
    if (static_cast<int>(row.size()) != r.score->size()) {
      c.error(where, "needs one goodness value per score");
    } else if (std::any_of(row.begin(), row.end(),
                           [&](int g) { return g < 0 || g >= r.score->size(); })) {
      c.error(where, "goodness value outside the score scale");
    }
  }

  try {
    p.options.kernel.validate();
  } catch (const std::exception& e) {
    c.error("options.kernel", e.what());
  }
  if (!(p.options.discount.span > 0.0)) {
    c.error("options.discount", "span must be positive");
  } else {
    for (int g = 0; g <= 3; ++g) {
      for (int s = 1; s <= 3; ++s) {
        const double d = discount_factor(g, s, p.options.discount);
        if (!(d >= 0.0 && d <= 1.0)) {
          c.error("options.discount", "coefficients give a discount factor outside [0,1]");
          g = 4;
          break;
        }
      }
    }
  }
  for (const auto& l : r.confidence->labels()) {
    auto it = p.options.confidence_rescale.find(l);
    if (it == p.options.confidence_rescale.end()) {
      c.error("options.confidence_rescale", "no value for confidence '" + l + "'");
    } else if (it->second < 0 || it->second > 3) {
      c.error("options.confidence_rescale", "value for '" + l + "' outside 0..3");
    }
  }
  for (const auto& [l, s] : p.options.reliability_rescale) {
    if (!r.reliability->index_of(l)) {
      c.error("options.reliability_rescale", "'" + l + "' is not a reliability level");
    } else if (s < 1 || s > 3) {
      c.error("options.reliability_rescale", "value for '" + l + "' outside 1..3");
    }
  }

  if (p.criteria.empty()) c.error("criteria", "no criteria");
  if (p.experts.empty()) c.error("experts", "no experts");
  if (p.candidates.empty()) c.error("candidates", "no candidates");
  for (const auto& cr : p.criteria) {
    const auto where = "criteria." + cr.name;
    if (!on(cr.importance, r.importance)) {
      c.error(where, "importance not on '" + r.importance->name() + "'");
    } else if (!p.connectives.goodness.count(cr.importance.label())) {
      c.warning(where, "no goodness row for importance '" + cr.importance.label() +
                           "'; the belief-function method will reject this problem");
    }
  }
  for (const auto& ex : p.experts) {
    if (!on(ex.reliability, r.reliability)) {
      c.error("experts." + ex.name, "reliability not on '" + r.reliability->name() + "'");
    }
  }

  bool structurally_sound = !p.criteria.empty() && !p.experts.empty();
  for (const auto& cand : p.candidates) {
    const auto where = "candidates." + cand.name;
    if (cand.grid.size() != p.criteria.size()) {
      c.error(where, "opinion grid has " + std::to_string(cand.grid.size()) + " rows for " +
                         std::to_string(p.criteria.size()) + " criteria");
      structurally_sound = false;
      continue;
    }
    for (std::size_t i = 0; i < cand.grid.size(); ++i) {
      if (cand.grid[i].size() != p.experts.size()) {
        c.error(where + "." + p.criteria[i].name,
                "row has " + std::to_string(cand.grid[i].size()) + " cells for " +
                    std::to_string(p.experts.size()) + " experts");
        structurally_sound = false;
        continue;
      }
      for (std::size_t j = 0; j < cand.grid[i].size(); ++j) {
        const auto& o = cand.grid[i][j];
        const auto cell = where + "." + p.criteria[i].name + "." + p.experts[j].name;
        if (!on(o.confidence, r.confidence)) {
          c.error(cell, "confidence not on '" + r.confidence->name() + "'");
          structurally_sound = false;
        }
        if (!o.interval) continue;
        if (!on(o.interval->lo, r.score) || !on(o.interval->hi, r.score)) {
          c.error(cell, "interval not on '" + r.score->name() + "'");
          structurally_sound = false;
        } else if (o.interval->lo.index() > o.interval->hi.index()) {
          c.error(cell, "interval [" + o.interval->lo.label() + "," + o.interval->hi.label() +
                            "] is reversed");
          structurally_sound = false;
        }
      }
    }
  }

  for (const auto& a : p.annotations) {
    const auto where = "candidates." + a.candidate + "." + a.criterion + "." + a.expert;
    if (p.candidate_index(a.candidate) < 0 || p.criterion_index(a.criterion) < 0 ||
        p.expert_index(a.expert) < 0) {
      c.error("annotations", "annotation refers to unknown cell " + where);
    } else {
      c.note(where, a.note);
    }
  }

  // Fusion deficits are only meaningful once the structure is clean.
  if (structurally_sound && !c.any_error()) {
    for (int k = 0; k < static_cast<int>(p.candidates.size()); ++k) {
      try {
        QptTrace trace;
        fused_criteria(p, k, &trace);
        for (std::size_t i = 0; i < trace.merged.size(); ++i) {
          if (!trace.merged[i].normalized()) {
            c.warning("candidates." + p.candidates[k].name + "." + p.criteria[i].name,
                      "fused distribution " + trace.merged[i].str() + " has height " +
                          height(trace.merged[i]).label() + " before normalization");
          }
        }
      } catch (const std::exception& e) {
        c.error("candidates." + p.candidates[k].name, e.what());
      }
    }
  }
  return c.take();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

}  // namespace assess
