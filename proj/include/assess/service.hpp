#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "assess/document.hpp"

namespace httplib {
class Server;
}

namespace assess {

/// Problem documents kept as canonical files, one per id, in a directory.
class ProblemStore {
 public:
  explicit ProblemStore(std::filesystem::path root);

  static bool valid_id(const std::string& id);

  std::vector<std::string> ids() const;
  std::optional<AssessmentProblem> get(const std::string& id) const;
  /// Writes atomically (temp file, then rename). Returns the snapshot hash.
  std::string put(const std::string& id, const AssessmentProblem& problem);

 private:
  std::filesystem::path file(const std::string& id) const;

  std::filesystem::path root_;
  mutable std::mutex mutex_;
};

struct Request {
  std::string method;  // GET, PUT, POST
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  Json body;
};

/// The HTTP API without the transport; every route lives under /v1.
class Service {
 public:
  explicit Service(ProblemStore& store) : store_(store) {}

  Response handle(const Request& request) const;

 private:
  Response list() const;
  Response get(const std::string& id) const;
  Response put(const std::string& id, const std::string& body) const;
  Response run_assess(const std::string& id, const Json& body) const;
  Response run_sensitivity(const std::string& id, const Json& body) const;
  Response run_whatif(const std::string& id, const Json& body) const;
  Response trace(const std::string& id, const std::string& name,
                 const std::map<std::string, std::string>& query) const;

  AssessmentProblem load(const std::string& id) const;

  ProblemStore& store_;
};

/// Routes every /v1 request of `server` through `service`.
void bind(httplib::Server& server, const Service& service);

}  // namespace assess
