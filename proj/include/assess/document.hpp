#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "assess/pipeline.hpp"

namespace assess {

using Json = nlohmann::json;

inline constexpr const char* kProblemFormat = "assess-problem/1";

/// Malformed or unresolvable problem document; `path` is a JSON pointer.
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string path, const std::string& message)
      : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + message),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

AssessmentProblem parse_problem(std::string_view text);
AssessmentProblem problem_from_json(const Json& doc);

Json problem_to_json(const AssessmentProblem& problem);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string canonical_text(const AssessmentProblem& problem);

/// Hex SHA-256 of the canonical text.
std::string snapshot_hash(const AssessmentProblem& problem);
std::string sha256_hex(std::string_view data);

std::string method_name(Method method);
Method parse_method(std::string_view name);

/// Reports round numbers to 6 significant digits.
double report_number(double value);

Json report_to_json(const AssessmentReport& report, const AssessmentProblem& problem,
                    Method method, bool with_trace);
Json candidate_to_json(const CandidateReport& report, const AssessmentProblem& problem,
                       bool with_trace);
/// One named trace table, or nullopt when the report has no such table.
std::optional<Json> trace_table(const CandidateReport& report, const AssessmentProblem& problem,
                                std::string_view name);
Json ranking_to_json(const std::vector<RankingEntry>& ranking, const AssessmentProblem& problem,
                     Method method);
Json sensitivity_to_json(const SensitivityTable& table, const AssessmentProblem& problem,
                         Method method);
Json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics);

/// Serialized form used for files and HTTP bodies.
std::string dump(const Json& doc);

}  // namespace assess
