#include "assess/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace assess {

namespace fs = std::filesystem;

namespace {

struct HttpError : std::runtime_error {
  HttpError(int status, std::string code, const std::string& message, std::string path = {})
      : std::runtime_error(message), status(status), code(std::move(code)), path(std::move(path)) {}

  int status;
  std::string code;
  std::string path;
};

Json envelope(Json body) {
  body["engine_version"] = kEngineVersion;
  return body;
}

Response error_response(const HttpError& e) {
  Json err = {{"code", e.code}, {"message", e.what()}};
  if (!e.path.empty()) err["path"] = e.path;
  return {e.status, envelope({{"error", err}})};
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) throw HttpError(400, "bad_request", "request body must be an object");
    return j;
  } catch (const Json::parse_error& e) {
    throw HttpError(400, "bad_request", "malformed JSON at byte " + std::to_string(e.byte));
  }
}

void only_fields(const Json& body, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : body.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      throw HttpError(400, "bad_request", "unknown field", "/" + key);
    }
  }
}

std::string string_field(const Json& body, const char* key, std::string fallback) {
  if (!body.contains(key)) return fallback;
  if (!body.at(key).is_string()) {
    throw HttpError(400, "bad_request", "expected a string", std::string("/") + key);
  }
  return body.at(key).get<std::string>();
}

Method method_field(const Json& body) {
  try {
    return parse_method(string_field(body, "method", "both"));
  } catch (const std::invalid_argument& e) {
    throw HttpError(400, "bad_request", e.what(), "/method");
  }
}

std::optional<int> candidate_field(const AssessmentProblem& p, const std::string& name) {
  if (name.empty()) return std::nullopt;
  const int k = p.candidate_index(name);
  if (k < 0) throw HttpError(404, "unknown_candidate", "no candidate '" + name + "'");
  return k;
}

}  // namespace

ProblemStore::ProblemStore(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

bool ProblemStore::valid_id(const std::string& id) {
  static const std::regex pattern("[A-Za-z0-9_-]{1,64}");
  return std::regex_match(id, pattern);
}

fs::path ProblemStore::file(const std::string& id) const { return root_ / (id + ".json"); }

std::vector<std::string> ProblemStore::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(root_)) {
    const auto& path = entry.path();
    if (path.extension() == ".json" && valid_id(path.stem().string())) {
      out.push_back(path.stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<AssessmentProblem> ProblemStore::get(const std::string& id) const {
  if (!valid_id(id)) return std::nullopt;
  std::string text;
  {
    std::lock_guard lock(mutex_);
    std::ifstream in(file(id), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_problem(text);
}

std::string ProblemStore::put(const std::string& id, const AssessmentProblem& problem) {
  if (!valid_id(id)) throw std::invalid_argument("invalid problem id '" + id + "'");
  const auto text = canonical_text(problem);
  std::lock_guard lock(mutex_);
  const auto target = file(id);
  auto temp = target;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) throw std::runtime_error("cannot write " + temp.string());
  }
  fs::rename(temp, target);
  return sha256_hex(text);
}

AssessmentProblem Service::load(const std::string& id) const {
  if (!ProblemStore::valid_id(id)) throw HttpError(400, "bad_request", "invalid problem id");
  auto p = store_.get(id);
  if (!p) throw HttpError(404, "unknown_problem", "no problem '" + id + "'");
  return std::move(*p);
}

Response Service::handle(const Request& request) const {
  static const std::regex item(R"(/v1/problems/([^/]+))");
  static const std::regex action(R"(/v1/problems/([^/]+)/(assess|sensitivity|whatif))");
  static const std::regex trace_route(R"(/v1/problems/([^/]+)/trace/([^/]+))");
  try {
    std::smatch m;
    const auto& path = request.path;
    const auto& verb = request.method;
    const auto wrong_method = [] {
      return HttpError(405, "method_not_allowed", "method not allowed on this path");
    };
    if (path == "/v1/problems") {
      if (verb != "GET") throw wrong_method();
      return list();
    }
    if (std::regex_match(path, m, item)) {
      if (verb == "GET") return get(m[1]);
      if (verb == "PUT") return put(m[1], request.body);
      throw wrong_method();
    }
    if (std::regex_match(path, m, action)) {
      if (verb != "POST") throw wrong_method();
      const Json body = parse_body(request.body);
      if (m[2] == "assess") return run_assess(m[1], body);
      if (m[2] == "sensitivity") return run_sensitivity(m[1], body);
      return run_whatif(m[1], body);
    }
    if (std::regex_match(path, m, trace_route)) {
      if (verb != "GET") throw wrong_method();
      return trace(m[1], m[2], request.query);
    }
    throw HttpError(404, "not_found", "no route for " + path);
  } catch (const HttpError& e) {
    return error_response(e);
  } catch (const DocumentError& e) {
    return error_response(HttpError(422, "invalid_document", e.what(), e.path()));
  } catch (const AssessmentError& e) {
    return error_response(HttpError(422, "assessment_failed", e.what(), e.coordinate()));
  } catch (const std::exception& e) {
    return error_response(HttpError(422, "invalid_request", e.what()));
  }
}

Response Service::list() const {
  Json items = Json::array();
  for (const auto& id : store_.ids()) {
    if (auto p = store_.get(id)) items.push_back({{"id", id}, {"problem_hash", snapshot_hash(*p)}});
  }
  return {200, envelope({{"problems", items}})};
}

Response Service::get(const std::string& id) const {
  const auto p = load(id);
  return {200, envelope({{"id", id}, {"problem_hash", snapshot_hash(p)}, {"problem", problem_to_json(p)}})};
}

Response Service::put(const std::string& id, const std::string& body) const {
  if (!ProblemStore::valid_id(id)) throw HttpError(400, "bad_request", "invalid problem id");
  const auto p = parse_problem(body);
  const auto diagnostics = validate(p);
  if (has_errors(diagnostics)) {
    Response r = error_response(HttpError(422, "invalid_problem", "problem has errors"));
    r.body["diagnostics"] = diagnostics_to_json(diagnostics);
    return r;
  }
  const auto hash = store_.put(id, p);
  return {200, envelope({{"id", id},
                         {"problem_hash", hash},
                         {"diagnostics", diagnostics_to_json(diagnostics)}})};
}

Response Service::run_assess(const std::string& id, const Json& body) const {
  only_fields(body, {"method", "candidate", "trace"});
  const auto p = load(id);
  const auto method = method_field(body);
  const auto only = candidate_field(p, string_field(body, "candidate", ""));
  const bool with_trace = body.value("trace", false);
  return {200, envelope(report_to_json(assess(p, method, only), p, method, with_trace))};
}

Response Service::run_sensitivity(const std::string& id, const Json& body) const {
  only_fields(body, {"method", "candidate", "target", "values"});
  const auto p = load(id);
  const auto method = method_field(body);
  const int k = candidate_field(p, string_field(body, "candidate", "")).value_or(0);
  if (p.candidates.empty()) throw HttpError(422, "invalid_problem", "problem has no candidates");
  if (!body.contains("target")) throw HttpError(400, "bad_request", "missing field 'target'");
  SensitivitySpec spec{Coordinate::parse(p, string_field(body, "target", "")), {}};
  if (!body.contains("values") || !body.at("values").is_array()) {
    throw HttpError(400, "bad_request", "'values' must be an array of labels", "/values");
  }
  for (const auto& v : body.at("values")) {
    if (!v.is_string()) throw HttpError(400, "bad_request", "expected a string", "/values");
    spec.sweep.push_back(v.get<std::string>());
  }
  return {200, envelope(sensitivity_to_json(sensitivity(p, k, spec, method), p, method))};
}

Response Service::run_whatif(const std::string& id, const Json& body) const {
  only_fields(body, {"method", "candidate", "overrides"});
  const auto base = load(id);
  const auto method = method_field(body);
  const auto only = candidate_field(base, string_field(body, "candidate", ""));
  const int k = only.value_or(0);
  if (base.candidates.empty()) throw HttpError(422, "invalid_problem", "problem has no candidates");

  AssessmentProblem overlay = base;
  const Json overrides = body.value("overrides", Json::array());
  if (!overrides.is_array()) throw HttpError(400, "bad_request", "expected an array", "/overrides");
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto& o = overrides[i];
    const auto where = "/overrides/" + std::to_string(i);
    if (!o.is_object() || !o.contains("target") || !o.contains("value") ||
        !o.at("target").is_string() || !o.at("value").is_string() || o.size() != 2) {
      throw HttpError(400, "bad_request", "expected {\"target\", \"value\"}", where);
    }
    const auto at = Coordinate::parse(overlay, o.at("target").get<std::string>());
    overlay = with_override(overlay, k, at, o.at("value").get<std::string>());
  }

  const Json before = report_to_json(assess(base, method, only), base, method, false);
  const Json after = report_to_json(assess(overlay, method, only), overlay, method, false);
  Json out = after;
  out["base_hash"] = before.at("problem_hash");
  out["delta"] = Json::diff(before.at("candidates"), after.at("candidates"));
  return {200, envelope(out)};
}

Response Service::trace(const std::string& id, const std::string& name,
                        const std::map<std::string, std::string>& query) const {
  const auto p = load(id);
  const auto it = query.find("candidate");
  const int k = candidate_field(p, it == query.end() ? "" : it->second).value_or(0);
  if (p.candidates.empty()) throw HttpError(422, "invalid_problem", "problem has no candidates");
  const Method method = name.rfind("qpt.", 0) == 0   ? Method::qpt
                        : name.rfind("tbm.", 0) == 0 ? Method::tbm
                                                     : throw HttpError(404, "unknown_trace",
                                                                       "no trace table '" + name + "'");
  const auto report = assess(p, method, k).candidates.front();
  auto table = trace_table(report, p, name);
  if (!table) throw HttpError(404, "unknown_trace", "no trace table '" + name + "'");
  return {200, envelope({{"problem_hash", snapshot_hash(p)},
                         {"candidate", report.candidate},
                         {"table", *table}})};
}

void bind(httplib::Server& server, const Service& service) {
  const auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    Request r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const Response out = service.handle(r);
    res.status = out.status;
    res.set_content(dump(out.body), "application/json");
  };
  server.Get(R"(/v1/.*)", route);
  server.Put(R"(/v1/.*)", route);
  server.Post(R"(/v1/.*)", route);
}

}  // namespace assess
