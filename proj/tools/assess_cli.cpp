#include <CLI11.hpp>
#include <httplib.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "assess/document.hpp"
#include "assess/service.hpp"

using namespace assess;

namespace {

struct Failure {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics, std::ostream& out) {
  for (const auto& d : diagnostics) {
    const char* sev = d.severity == Diagnostic::Severity::error     ? "error"
                      : d.severity == Diagnostic::Severity::warning ? "warning"
                                                                    : "note";
    out << sev << ": " << d.where << ": " << d.message << "\n";
  }
}

AssessmentProblem load_checked(const std::string& path) {
  auto p = parse_problem(read_file(path));
  const auto diagnostics = validate(p);
  if (has_errors(diagnostics)) {
    print_diagnostics(diagnostics, std::cerr);
    throw Failure{1};
  }
  return p;
}

void emit(const Json& doc, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << dump(doc);
    return;
  }
  std::ofstream out(output, std::ios::binary | std::ios::trunc);
  out << dump(doc);
  if (!out.flush()) throw std::runtime_error("cannot write " + output);
}

std::optional<int> pick_candidate(const AssessmentProblem& p, const std::string& name) {
  if (name.empty()) return std::nullopt;
  const int k = p.candidate_index(name);
  if (k < 0) throw std::runtime_error("no candidate '" + name + "'");
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-criteria candidate assessment from imprecise expert opinions"};
  app.set_version_flag("--version", kEngineVersion);
  app.require_subcommand(1);

  std::string input, output, method_text = "both", candidate, target, store = "problems",
                             host = "127.0.0.1";
  std::vector<std::string> values, seeds;
  bool trace = false;
  int port = 8080;

  const auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "Problem document")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--output", output, "Write the result here instead of stdout");
  };
  const auto add_method = [&](CLI::App* cmd) {
    cmd->add_option("-m,--method", method_text, "qpt, tbm or both")
        ->check(CLI::IsMember({"qpt", "tbm", "both"}));
  };

  auto* assess_cmd = app.add_subcommand("assess", "Evaluate candidates");
  add_io(assess_cmd);
  add_method(assess_cmd);
  assess_cmd->add_flag("--trace", trace, "Include intermediate tables");
  assess_cmd->add_option("--candidate", candidate, "Only this candidate");

  auto* rank_cmd = app.add_subcommand("rank", "Order candidates");
  add_io(rank_cmd);
  add_method(rank_cmd);

  auto* sens_cmd = app.add_subcommand("sensitivity", "Sweep one parameter");
  add_io(sens_cmd);
  add_method(sens_cmd);
  sens_cmd->add_option("--candidate", candidate, "Candidate (default: the first)");
  sens_cmd->add_option("--target", target, "gamma:C:E, alpha:E, beta:C, lo:C:E or hi:C:E")
      ->required();
  sens_cmd->add_option("--values", values, "Labels to try")->required()->delimiter(',');

  auto* validate_cmd = app.add_subcommand("validate", "Check a problem document");
  validate_cmd->add_option("-i,--input", input, "Problem document")
      ->required()
      ->check(CLI::ExistingFile);

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--store", store, "Directory of problem documents");
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("-p,--port", port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--seed", seeds, "Problem files to load, stored under their file stem");

  auto* example_cmd = app.add_subcommand("example", "Print the bundled hiring example");
  example_cmd->add_option("-o,--output", output, "Write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*assess_cmd) {
      const auto p = load_checked(input);
      const auto method = parse_method(method_text);
      emit(report_to_json(assess::assess(p, method, pick_candidate(p, candidate)), p, method, trace), output);
    } else if (*rank_cmd) {
      const auto p = load_checked(input);
      const auto method = parse_method(method_text);
      if (method == Method::both) {
        emit({{"qpt", ranking_to_json(rank_candidates(p, Method::qpt), p, Method::qpt)},
              {"tbm", ranking_to_json(rank_candidates(p, Method::tbm), p, Method::tbm)}},
             output);
      } else {
        emit(ranking_to_json(rank_candidates(p, method), p, method), output);
      }
    } else if (*sens_cmd) {
      const auto p = load_checked(input);
      const auto method = parse_method(method_text);
      const int k = pick_candidate(p, candidate).value_or(0);
      const SensitivitySpec spec{Coordinate::parse(p, target), values};
      emit(sensitivity_to_json(sensitivity(p, k, spec, method), p, method), output);
    } else if (*validate_cmd) {
      const auto p = parse_problem(read_file(input));
      const auto diagnostics = validate(p);
      print_diagnostics(diagnostics, std::cout);
      if (has_errors(diagnostics)) return 1;
      std::cout << "ok " << snapshot_hash(p) << "\n";
    } else if (*serve_cmd) {
      ProblemStore problems(store);
      for (const auto& path : seeds) {
        const auto p = load_checked(path);
        problems.put(std::filesystem::path(path).stem().string(), p);
      }
      Service service(problems);
      httplib::Server server;
      bind(server, service);
      std::cerr << "listening on " << host << ":" << port << "\n";
      if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 2;
      }
    } else if (*example_cmd) {
      const auto text = canonical_text(standard_problem());
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream(output, std::ios::binary | std::ios::trunc) << text;
      }
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
