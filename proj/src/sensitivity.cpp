#include <sstream>

#include "assess/pipeline.hpp"

namespace assess {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, sep);) parts.push_back(part);
  return parts;
}

Opinion& cell(AssessmentProblem& p, int candidate, const Coordinate& at) {
  return p.candidates.at(candidate).grid.at(at.criterion).at(at.expert);
}

const Opinion& cell(const AssessmentProblem& p, int candidate, const Coordinate& at) {
  return p.candidates.at(candidate).grid.at(at.criterion).at(at.expert);
}

}  // namespace

Coordinate Coordinate::parse(const AssessmentProblem& p, const std::string& text) {
  const auto parts = split(text, ':');
  const auto fail = [&](const std::string& why) {
    return AssessmentError("coordinate", "'" + text + "'", why);
  };
  if (parts.empty()) throw fail("empty coordinate");
  const auto& kind = parts[0];
  const auto criterion = [&](const std::string& name) {
    const int i = p.criterion_index(name);
    if (i < 0) throw fail("unknown criterion '" + name + "'");
    return i;
  };
  const auto expert = [&](const std::string& name) {
    const int j = p.expert_index(name);
    if (j < 0) throw fail("unknown expert '" + name + "'");
    return j;
  };
  if (kind == "alpha" && parts.size() == 2) return {Kind::alpha, -1, expert(parts[1])};
  if (kind == "beta" && parts.size() == 2) return {Kind::beta, criterion(parts[1]), -1};
  if (parts.size() == 3) {
    if (kind == "gamma") return {Kind::gamma, criterion(parts[1]), expert(parts[2])};
    if (kind == "lo") return {Kind::lo, criterion(parts[1]), expert(parts[2])};
    if (kind == "hi") return {Kind::hi, criterion(parts[1]), expert(parts[2])};
  }
  throw fail("expected gamma:C:E, alpha:E, beta:C, lo:C:E or hi:C:E");
}

std::string Coordinate::str(const AssessmentProblem& p) const {
  switch (kind) {
    case Kind::alpha:
      return "alpha:" + p.experts[expert].name;
    case Kind::beta:
      return "beta:" + p.criteria[criterion].name;
    case Kind::gamma:
      return "gamma:" + p.criteria[criterion].name + ":" + p.experts[expert].name;
    case Kind::lo:
      return "lo:" + p.criteria[criterion].name + ":" + p.experts[expert].name;
    case Kind::hi:
      return "hi:" + p.criteria[criterion].name + ":" + p.experts[expert].name;
  }
  return {};
}

std::string current_value(const AssessmentProblem& p, int candidate, const Coordinate& at) {
  switch (at.kind) {
    case Coordinate::Kind::alpha:
      return p.experts[at.expert].reliability.label();
    case Coordinate::Kind::beta:
      return p.criteria[at.criterion].importance.label();
    case Coordinate::Kind::gamma:
      return cell(p, candidate, at).confidence.label();
    case Coordinate::Kind::lo:
    case Coordinate::Kind::hi: {
      // A blank reads as the whole score range.
      const auto& o = cell(p, candidate, at);
      const bool lo = at.kind == Coordinate::Kind::lo;
      if (!o.interval) return lo ? p.roles.score->labels().front() : p.roles.score->labels().back();
      return lo ? o.interval->lo.label() : o.interval->hi.label();
    }
  }
  return {};
}

AssessmentProblem with_override(const AssessmentProblem& problem, int candidate,
                                const Coordinate& at, const std::string& value) {
  AssessmentProblem p = problem;
  const auto level = [&](const ScalePtr& scale) {
    auto idx = scale->index_of(value);
    if (!idx) {
      throw AssessmentError("override", at.str(problem),
                            "'" + value + "' is not a level of '" + scale->name() + "'");
    }
    return Level(scale, *idx);
  };
  switch (at.kind) {
    case Coordinate::Kind::alpha:
      p.experts[at.expert].reliability = level(p.roles.reliability);
      break;
    case Coordinate::Kind::beta:
      p.criteria[at.criterion].importance = level(p.roles.importance);
      break;
    case Coordinate::Kind::gamma:
      cell(p, candidate, at).confidence = level(p.roles.confidence);
      break;
    case Coordinate::Kind::lo:
    case Coordinate::Kind::hi: {
      auto& o = cell(p, candidate, at);
      if (!o.interval) {
        o.interval = Interval{Level::bottom(p.roles.score), Level::top(p.roles.score)};
      }
      (at.kind == Coordinate::Kind::lo ? o.interval->lo : o.interval->hi) = level(p.roles.score);
      if (o.interval->lo.index() > o.interval->hi.index()) {
        throw AssessmentError("override", at.str(problem),
                              "interval [" + o.interval->lo.label() + "," +
                                  o.interval->hi.label() + "] is reversed");
      }
      break;
    }
  }
  return p;
}

std::vector<std::string> changed_trace_tables(const CandidateReport& a, const CandidateReport& b) {
  std::vector<std::string> out;
  const auto check = [&](const char* name, const auto& x, const auto& y) {
    if (!(x == y)) out.emplace_back(name);
  };
  if (a.qpt && b.qpt) {
    check("qpt.discounted", a.qpt->trace.discounted, b.qpt->trace.discounted);
    check("qpt.weights", a.qpt->trace.weights, b.qpt->trace.weights);
    check("qpt.merged", a.qpt->trace.merged, b.qpt->trace.merged);
    check("qpt.normalized", a.qpt->trace.normalized, b.qpt->trace.normalized);
  }
  if (a.tbm && b.tbm) {
    check("tbm.contours", a.tbm->trace.contours, b.tbm->trace.contours);
    check("tbm.evidence", a.tbm->trace.evidence, b.tbm->trace.evidence);
    check("tbm.discount_factors", a.tbm->trace.discount_factors, b.tbm->trace.discount_factors);
    check("tbm.discounted", a.tbm->trace.discounted, b.tbm->trace.discounted);
    check("tbm.combined", a.tbm->trace.combined, b.tbm->trace.combined);
    check("tbm.transferred", a.tbm->trace.transferred, b.tbm->trace.transferred);
  }
  return out;
}

SensitivityTable sensitivity(const AssessmentProblem& problem, int candidate,
                             const SensitivitySpec& spec, Method method) {
  SensitivityTable table;
  table.candidate = problem.candidates.at(candidate).name;
  table.target = spec.target.str(problem);
  table.current = current_value(problem, candidate, spec.target);
  table.base = assess(problem, method, candidate).candidates.front();

  for (const auto& value : spec.sweep) {
    const AssessmentProblem variant = with_override(problem, candidate, spec.target, value);
    SensitivityPoint point{value, assess(variant, method, candidate).candidates.front()};
    const auto& base = table.base;
    const auto& now = point.report;
    if (base.qpt) point.qpt_final_changed = !(base.qpt->final == now.qpt->final);
    if (base.tbm) {
      point.tbm_argmax_changed = base.tbm->betp_argmax() != now.tbm->betp_argmax();
      point.expected_score_delta = now.tbm->expected_score - base.tbm->expected_score;
      for (std::size_t k = 0; k < base.tbm->betp.size(); ++k) {
        point.betp_delta.push_back(now.tbm->betp[k] - base.tbm->betp[k]);
      }
    }
    point.changed_traces = changed_trace_tables(base, now);
    if (point.qpt_final_changed || point.tbm_argmax_changed) table.informative.push_back(value);
    table.points.push_back(std::move(point));
  }
  return table;
}

}  // namespace assess
