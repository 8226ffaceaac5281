#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <thread>

#include "assess/service.hpp"

using namespace assess;
namespace fs = std::filesystem;

namespace {

struct Fixture {
  Fixture() : root(fs::temp_directory_path() / ("assess-store-" + std::to_string(::getpid()) + "-" +
                                                std::to_string(counter++))),
              store((fs::remove_all(root), root)),
              service(store) {}
  ~Fixture() { fs::remove_all(root); }

  Response call(std::string method, std::string path, std::string body = {},
                std::map<std::string, std::string> query = {}) {
    return service.handle({std::move(method), std::move(path), std::move(query), std::move(body)});
  }

  Response put_fixture(const std::string& id = "k") {
    return call("PUT", "/v1/problems/" + id, canonical_text(standard_problem()));
  }

  static inline int counter = 0;
  fs::path root;
  ProblemStore store;
  Service service;
};

}  // namespace

TEST_CASE("store") {
  Fixture f;
  CHECK(f.store.ids().empty());
  CHECK_FALSE(f.store.get("k"));
  const auto hash = f.store.put("k", standard_problem());
  CHECK(hash == snapshot_hash(standard_problem()));
  CHECK(f.store.ids() == std::vector<std::string>{"k"});
  CHECK(canonical_text(*f.store.get("k")) == canonical_text(standard_problem()));
  CHECK_FALSE(ProblemStore::valid_id("../etc"));
  CHECK_FALSE(ProblemStore::valid_id(""));
  CHECK_THROWS(f.store.put("a/b", standard_problem()));
  for (const auto& e : fs::directory_iterator(f.root)) CHECK(e.path().extension() == ".json");
}

TEST_CASE("problem collection and items") {
  Fixture f;
  auto r = f.put_fixture();
  CHECK(r.status == 200);
  CHECK(r.body["engine_version"] == kEngineVersion);
  CHECK(r.body["problem_hash"] == snapshot_hash(standard_problem()));

  r = f.call("GET", "/v1/problems");
  CHECK(r.status == 200);
  CHECK(r.body["problems"].size() == 1);
  CHECK(r.body["problems"][0]["id"] == "k");

  r = f.call("GET", "/v1/problems/k");
  CHECK(r.status == 200);
  CHECK(r.body["problem"] == problem_to_json(standard_problem()));

  r = f.call("GET", "/v1/problems/missing");
  CHECK(r.status == 404);
  CHECK(r.body["error"]["code"] == "unknown_problem");
  CHECK(r.body["engine_version"] == kEngineVersion);

  r = f.call("PUT", "/v1/problems/bad", "{\"format\": \"assess-problem/1\", \"oops\": 1}");
  CHECK(r.status == 422);
  CHECK(r.body["error"]["path"] == "/oops");

  r = f.call("PUT", "/v1/problems/bad", "not json");
  CHECK(r.status == 422);

  auto doc = problem_to_json(standard_problem());
  doc["candidates"][0]["opinions"]["Dec"]["Prod"]["interval"] = {"5", "2"};
  r = f.call("PUT", "/v1/problems/rev", dump(doc));
  CHECK(r.status == 422);
  CHECK(r.body["error"]["code"] == "invalid_problem");
  CHECK(r.body["diagnostics"].dump().find("candidates.K.Dec.Prod") != std::string::npos);
  CHECK_FALSE(f.store.get("rev"));

  CHECK(f.call("DELETE", "/v1/problems/k").status == 405);
  CHECK(f.call("GET", "/v2/anything").status == 404);
}

TEST_CASE("assessment over the service matches the library") {
  Fixture f;
  f.put_fixture();
  const auto r = f.call("POST", "/v1/problems/k/assess", R"({"method": "both"})");
  REQUIRE(r.status == 200);
  const auto p = standard_problem();
  auto expected = report_to_json(assess::assess(p, Method::both), p, Method::both, false);
  expected["engine_version"] = kEngineVersion;
  CHECK(r.body == expected);

  const auto traced = f.call("POST", "/v1/problems/k/assess", R"({"method": "qpt", "trace": true, "candidate": "K"})");
  CHECK(traced.body["candidates"][0]["trace"].size() == 4);
  CHECK(f.call("POST", "/v1/problems/k/assess", R"({"method": "fast"})").status == 400);
  CHECK(f.call("POST", "/v1/problems/k/assess", R"({"candidate": "Z"})").status == 404);
  CHECK(f.call("POST", "/v1/problems/k/assess", R"({"speed": 1})").body["error"]["path"] == "/speed");
  CHECK(f.call("POST", "/v1/problems/k/assess", "[1,").status == 400);
}

TEST_CASE("sensitivity endpoint") {
  Fixture f;
  f.put_fixture();
  auto r = f.call("POST", "/v1/problems/k/sensitivity",
                  R"({"target": "gamma:Dec:HR", "values": ["a", "1"], "method": "qpt"})");
  REQUIRE(r.status == 200);
  CHECK(r.body["current"] == "a");
  CHECK(r.body["informative"] == Json({"1"}));
  CHECK(r.body["points"][1]["report"]["qpt"]["final"] == Json({"b", "1", "1", "b", "0"}));
  CHECK(r.body["problem_hash"] == snapshot_hash(standard_problem()));

  r = f.call("POST", "/v1/problems/k/sensitivity", R"({"target": "gamma:Nope:HR", "values": ["a"]})");
  CHECK(r.status == 422);
  CHECK(r.body["error"]["code"] == "assessment_failed");
  r = f.call("POST", "/v1/problems/k/sensitivity", R"({"target": "beta:Com", "values": ["0"], "method": "tbm"})");
  CHECK(r.status == 422);
  CHECK(r.body["error"]["path"] == "candidate K, criterion Com");
  CHECK(f.call("POST", "/v1/problems/k/sensitivity", R"({"values": ["a"]})").status == 400);
}

TEST_CASE("what-if overlays") {
  Fixture f;
  f.put_fixture();
  const auto before = f.call("GET", "/v1/problems/k").body;

  auto r = f.call("POST", "/v1/problems/k/whatif", R"({"overrides": []})");
  REQUIRE(r.status == 200);
  CHECK(r.body["delta"] == Json::array());
  CHECK(r.body["base_hash"] == r.body["problem_hash"]);

  r = f.call("POST", "/v1/problems/k/whatif", R"({"overrides": [{"target": "beta:Com", "value": "e"}]})");
  REQUIRE(r.status == 200);
  CHECK(r.body["base_hash"] != r.body["problem_hash"]);
  CHECK(r.body["candidates"][0]["qpt"]["final"] == Json({"b", "1", "1", "1", "0"}));
  std::vector<std::string> paths;
  for (const auto& op : r.body["delta"]) paths.push_back(op["path"]);
  CHECK(std::find(paths.begin(), paths.end(), "/0/tbm/expected_score") != paths.end());
  CHECK(std::none_of(paths.begin(), paths.end(),
                     [](const std::string& s) { return s.rfind("/0/qpt/final", 0) == 0; }));

  r = f.call("POST", "/v1/problems/k/whatif",
             R"({"method": "qpt", "overrides": [{"target": "gamma:Dec:HR", "value": "1"}]})");
  REQUIRE(r.status == 200);
  CHECK(r.body["delta"] == Json::parse(R"([{"op": "replace", "path": "/0/qpt/final/3", "value": "b"}])"));

  r = f.call("POST", "/v1/problems/k/whatif",
             R"({"overrides": [{"target": "lo:Lear:HR", "value": "5"}]})");
  CHECK(r.status == 422);
  r = f.call("POST", "/v1/problems/k/whatif", R"({"overrides": [{"target": "alpha:HR"}]})");
  CHECK(r.status == 400);
  CHECK(r.body["error"]["path"] == "/overrides/0");

  CHECK(f.call("GET", "/v1/problems/k").body == before);
}

TEST_CASE("trace endpoint") {
  Fixture f;
  f.put_fixture();
  auto r = f.call("GET", "/v1/problems/k/trace/qpt.weights", {}, {{"candidate", "K"}});
  REQUIRE(r.status == 200);
  CHECK(r.body["table"]["cells"][1] == Json({"b", "a", "a", "b"}));
  r = f.call("GET", "/v1/problems/k/trace/tbm.discount_factors");
  REQUIRE(r.status == 200);
  CHECK(r.body["table"]["cells"][0][0] == 1.0);
  CHECK(f.call("GET", "/v1/problems/k/trace/qpt.bogus").status == 404);
  CHECK(f.call("GET", "/v1/problems/k/trace/other").status == 404);
}

TEST_CASE("http transport") {
  Fixture f;
  f.put_fixture();
  httplib::Server server;
  bind(server, f.service);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/v1/problems/k/assess", R"({"method": "both"})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Content-Type") == "application/json");
  const auto direct = f.call("POST", "/v1/problems/k/assess", R"({"method": "both"})");
  CHECK(res->body == dump(direct.body));

  res = client.Get("/v1/problems/k/trace/qpt.merged?candidate=K");
  REQUIRE(res);
  CHECK(Json::parse(res->body)["table"]["cells"][4] == Json({"a", "a", "a", "a", "a"}));

  res = client.Put("/v1/problems/k2", canonical_text(standard_problem()), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  res = client.Get("/v1/problems/none");
  REQUIRE(res);
  CHECK(res->status == 404);

  std::vector<std::thread> workers;
  std::atomic<int> ok = 0;
  for (int i = 0; i < 4; ++i) {
    workers.emplace_back([&] {
      httplib::Client c("127.0.0.1", port);
      auto r = c.Post("/v1/problems/k/whatif",
                      R"({"overrides": [{"target": "alpha:Fin", "value": "1"}]})", "application/json");
      if (r && r->status == 200) ++ok;
    });
  }
  for (auto& w : workers) w.join();
  CHECK(ok == 4);

  server.stop();
  thread.join();
}
