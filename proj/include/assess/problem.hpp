#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "assess/belief.hpp"
#include "assess/possibility.hpp"
#include "assess/scales.hpp"

namespace assess {

/// The scales every problem binds to a role.
struct ScaleRoles {
  ScalePtr score;        // criterion scores, also the goodness frame
  ScalePtr possibility;  // degrees of possibility distributions
  ScalePtr confidence;   // expert self-confidence gamma
  ScalePtr reliability;  // DM confidence in an expert, alpha
  ScalePtr importance;   // criterion importance beta
};

/// Commensurateness hypotheses, all explicit.
struct ScaleMaps {
  ScaleMap confidence_to_possibility;
  ScaleMap reliability_to_confidence;
  ScaleMap importance_to_score;
  ScaleMap score_to_possibility;
};

struct Connectives {
  ConnectiveTable otimes;  // confidence x reliability -> confidence
  ConnectiveTable vtilde;  // score x importance -> score
  /// Goodness level (0-based score index) of every score, keyed by
  /// importance label.
  std::map<std::string, std::vector<int>> goodness;
};

enum class FusionMode { disjunctive, weighted_min };

struct Options {
  FusionMode fusion = FusionMode::disjunctive;
  NormalizationMode normalization = NormalizationMode::shift;
  AggregationVariant aggregation = AggregationVariant::lift;
  CombinationMode combination = CombinationMode::unnormalized;
  ImageMode goodness_image = ImageMode::interval_hull;
  ObservationKernel kernel;
  DiscountCoefficients discount;
  /// Confidence label -> g in 0..3.
  std::map<std::string, int> confidence_rescale;
  /// Reliability label -> s in 1..3; labels left out are fully discounted.
  std::map<std::string, int> reliability_rescale;
};

struct Criterion {
  std::string name;
  Level importance;
};

struct Expert {
  std::string name;
  Level reliability;
};

struct Interval {
  Level lo;
  Level hi;
};

/// One expert's opinion on one criterion. No interval means a blank.
struct Opinion {
  std::optional<Interval> interval;
  Level confidence;
};

struct Candidate {
  std::string name;
  std::vector<std::vector<Opinion>> grid;  // [criterion][expert]
};

/// Free-text note pinned to an opinion cell, surfaced by validation.
struct Annotation {
  std::string candidate;
  std::string criterion;
  std::string expert;
  std::string note;
};

struct AssessmentProblem {
  std::vector<ScalePtr> scales;  // declaration order
  ScaleRoles roles;
  ScaleMaps maps;
  Connectives connectives;
  std::vector<Criterion> criteria;
  std::vector<Expert> experts;
  std::vector<Candidate> candidates;
  Options options;
  std::vector<Annotation> annotations;

  int criterion_index(const std::string& name) const;
  int expert_index(const std::string& name) const;
  int candidate_index(const std::string& name) const;
  ScalePtr scale_named(const std::string& name) const;
};

/// Error raised while evaluating a problem, carrying where it happened.
class AssessmentError : public std::runtime_error {
 public:
  AssessmentError(std::string operation, std::string coordinate, const std::string& what)
      : std::runtime_error(operation + " at " + coordinate + ": " + what),
        operation_(std::move(operation)),
        coordinate_(std::move(coordinate)) {}

  const std::string& operation() const { return operation_; }
  const std::string& coordinate() const { return coordinate_; }

 private:
  std::string operation_;
  std::string coordinate_;
};

/// Builds the six-criterion, four-expert hiring example (candidate "K").
AssessmentProblem standard_problem();

}  // namespace assess
