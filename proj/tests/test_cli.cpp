#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "assess/document.hpp"

using namespace assess;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("assess-cli-" + std::to_string(::getpid()) + "-" + name);
}

Run run(const std::string& args) {
  const auto err = scratch("stderr");
  const std::string command = std::string(ASSESS_CLI) + " " + args + " 2>" + err.string();
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int raw = ::pclose(pipe);
  Run r{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out, slurp(err)};
  fs::remove(err);
  return r;
}

const std::string fixture = std::string(ASSESS_DATA) + "/candidate_k.json";

std::string write_doc(const std::string& name, const Json& doc) {
  const auto path = scratch(name);
  std::ofstream(path) << dump(doc);
  return path.string();
}

}  // namespace

TEST_CASE("shipped example is the canonical fixture") {
  const auto text = slurp(fixture);
  CHECK(text == canonical_text(standard_problem()));
  CHECK(sha256_hex(text) == snapshot_hash(parse_problem(text)));
  CHECK(run("example").out == text);
}

TEST_CASE("assess") {
  const auto r = run("assess -i " + fixture);
  REQUIRE(r.status == 0);
  const auto j = Json::parse(r.out);
  const auto& k = j["candidates"][0];
  CHECK(k["qpt"]["final"] == Json({"b", "1", "1", "1", "0"}));
  CHECK(k["qpt"]["match_certainty"] == "a");
  CHECK(k["qpt"]["match_possibility"] == "b");
  CHECK(k["tbm"]["expected_score"].get<double>() == doctest::Approx(4.59519).epsilon(1e-6));
  CHECK(j["problem_hash"] == snapshot_hash(standard_problem()));

  const auto p = standard_problem();
  CHECK(r.out == dump(report_to_json(assess::assess(p, Method::both), p, Method::both, false)));
}

TEST_CASE("output is byte-identical across runs") {
  const auto a = run("assess --trace -i " + fixture);
  const auto b = run("assess --trace -i " + fixture);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  const auto file = scratch("report.json");
  CHECK(run("assess --trace -i " + fixture + " -o " + file.string()).status == 0);
  CHECK(slurp(file) == a.out);
  fs::remove(file);
}

TEST_CASE("trace tables") {
  const auto r = run("assess --trace -m qpt -i " + fixture);
  REQUIRE(r.status == 0);
  const auto trace = Json::parse(r.out)["candidates"][0]["trace"];
  const auto it = std::find_if(trace.begin(), trace.end(),
                               [](const Json& t) { return t["name"] == "qpt.weights"; });
  REQUIRE(it != trace.end());
  CHECK((*it)["cells"][0] == Json({"0", "a", "a", "0"}));
}

TEST_CASE("rank and sensitivity") {
  auto r = run("rank -i " + fixture);
  REQUIRE(r.status == 0);
  auto j = Json::parse(r.out);
  CHECK(j.contains("qpt"));
  CHECK(j.contains("tbm"));

  r = run("sensitivity -m qpt -i " + fixture + " --target gamma:Dec:HR --values a,1");
  REQUIRE(r.status == 0);
  j = Json::parse(r.out);
  CHECK(j["points"].size() == 2);
  CHECK(j["points"][1]["report"]["qpt"]["final"] == Json({"b", "1", "1", "b", "0"}));
}

TEST_CASE("validation failures") {
  auto doc = problem_to_json(standard_problem());
  doc["candidates"][0]["opinions"]["Dec"]["Prod"]["interval"] = {"5", "2"};
  const auto reversed = write_doc("reversed.json", doc);

  auto r = run("validate -i " + reversed);
  CHECK(r.status == 1);
  CHECK(r.out.find("error: candidates.K.Dec.Prod") != std::string::npos);
  r = run("assess -i " + reversed);
  CHECK(r.status != 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("candidates.K.Dec.Prod") != std::string::npos);

  r = run("validate -i " + fixture);
  CHECK(r.status == 0);
  CHECK(r.out.find("ok " + snapshot_hash(standard_problem())) != std::string::npos);
  CHECK(r.out.find("note: candidates.K.Lear.Mkt") != std::string::npos);

  r = run("sensitivity -i " + fixture + " --target gamma:Nobody:HR --values a");
  CHECK(r.status == 2);
  CHECK(r.err.find("Nobody") != std::string::npos);

  doc = problem_to_json(standard_problem());
  doc["surplus"] = true;
  const auto extra = write_doc("extra.json", doc);
  r = run("assess -i " + extra);
  CHECK(r.status == 2);
  CHECK(r.err.find("/surplus") != std::string::npos);

  CHECK(run("assess -i " + fixture + " --candidate Z").status == 2);
  fs::remove(reversed);
  fs::remove(extra);
}
