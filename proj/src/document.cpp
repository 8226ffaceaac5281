#include "assess/document.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <initializer_list>
#include <set>

namespace assess {

namespace {

/// Walks a JSON object, tracking the pointer path and rejecting unknown keys.
class Reader {
 public:
  Reader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const Json& node() const { return node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& message) const { throw DocumentError(path_, message); }

  void expect_object(std::initializer_list<const char*> allowed) const {
    if (!node_.is_object()) fail("expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : node_.items()) {
      if (!ok.count(key)) throw DocumentError(child_path(key), "unknown field");
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  Reader at(const std::string& key) const {
    if (!node_.is_object() || !node_.contains(key)) {
      throw DocumentError(path_, "missing field '" + key + "'");
    }
    return Reader(node_.at(key), child_path(key));
  }

  Reader at(std::size_t index) const { return Reader(node_.at(index), path_ + "/" + std::to_string(index)); }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    return node_.get<double>();
  }

  int integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<int>();
  }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  std::string child_path(const std::string& key) const {
    std::string escaped;
    for (char ch : key) {
      if (ch == '~') {
        escaped += "~0";
      } else if (ch == '/') {
        escaped += "~1";
      } else {
        escaped += ch;
      }
    }
    return path_ + "/" + escaped;
  }

 private:
  const Json& node_;
  std::string path_;
};

ScalePtr resolve_scale(const AssessmentProblem& p, const Reader& r) {
  const auto name = r.string();
  auto s = p.scale_named(name);
  if (!s) r.fail("unknown scale '" + name + "'");
  return s;
}

Level resolve_level(const ScalePtr& scale, const Reader& r) {
  const auto label = r.string();
  auto idx = scale->index_of(label);
  if (!idx) r.fail("'" + label + "' is not a level of scale '" + scale->name() + "'");
  return Level(scale, *idx);
}

template <typename T>
T wrap(const Reader& r, const auto& build) {
  try {
    return build();
  } catch (const DocumentError&) {
    throw;
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
}

ScaleMap read_map(const AssessmentProblem& p, const Reader& r) {
  r.expect_object({"from", "to", "table"});
  const auto from = resolve_scale(p, r.at("from"));
  const auto to = resolve_scale(p, r.at("to"));
  const Reader table = r.at("table");
  if (!table.node().is_object()) table.fail("expected an object");
  for (const auto& [label, _] : table.node().items()) {
    if (!from->index_of(label)) throw DocumentError(table.child_path(label), "not a level of '" + from->name() + "'");
  }
  std::vector<std::string> targets;
  for (const auto& label : from->labels()) {
    if (!table.has(label.c_str())) table.fail("no entry for '" + label + "'");
    targets.push_back(resolve_level(to, table.at(label)).label());
  }
  return wrap<ScaleMap>(r, [&] { return ScaleMap::from_labels(from, to, targets); });
}

ConnectiveTable read_table(const AssessmentProblem& p, const Reader& r) {
  r.expect_object({"rows", "cols", "result", "cells"});
  const auto rows = resolve_scale(p, r.at("rows"));
  const auto cols = resolve_scale(p, r.at("cols"));
  const auto result = resolve_scale(p, r.at("result"));
  const Reader cells = r.at("cells");
  if (static_cast<int>(cells.array_size()) != rows->size()) {
    cells.fail("needs one row per level of '" + rows->name() + "'");
  }
  std::vector<int> flat;
  for (std::size_t i = 0; i < cells.array_size(); ++i) {
    const Reader row = cells.at(i);
    if (static_cast<int>(row.array_size()) != cols->size()) {
      row.fail("needs one cell per level of '" + cols->name() + "'");
    }
    for (std::size_t j = 0; j < row.array_size(); ++j) {
      flat.push_back(resolve_level(result, row.at(j)).index());
    }
  }
  return wrap<ConnectiveTable>(r, [&] { return ConnectiveTable(rows, cols, result, flat); });
}

constexpr std::pair<const char*, FusionMode> kFusion[] = {{"disjunctive", FusionMode::disjunctive},
                                                         {"weighted_min", FusionMode::weighted_min}};
constexpr std::pair<const char*, NormalizationMode> kNormalization[] = {
    {"shift", NormalizationMode::shift}, {"preserve_bottom", NormalizationMode::preserve_bottom}};
constexpr std::pair<const char*, AggregationVariant> kAggregation[] = {
    {"lift", AggregationVariant::lift}, {"threshold", AggregationVariant::threshold}};
constexpr std::pair<const char*, CombinationMode> kCombination[] = {
    {"unnormalized", CombinationMode::unnormalized}, {"dempster", CombinationMode::dempster}};
constexpr std::pair<const char*, ImageMode> kImage[] = {{"interval_hull", ImageMode::interval_hull},
                                                       {"elementwise", ImageMode::elementwise}};

template <typename E, std::size_t N>
E read_choice(const Reader& r, const std::pair<const char*, E> (&choices)[N]) {
  const auto s = r.string();
  for (const auto& [name, value] : choices) {
    if (s == name) return value;
  }
  r.fail("unknown value '" + s + "'");
}

template <typename E, std::size_t N>
const char* choice_name(E value, const std::pair<const char*, E> (&choices)[N]) {
  for (const auto& [name, v] : choices) {
    if (v == value) return name;
  }
  return "?";
}

Options read_options(const AssessmentProblem& p, const Reader& r) {
  r.expect_object({"fusion", "normalization", "aggregation", "combination", "goodness_image",
                   "kernel", "discount", "confidence_rescale", "reliability_rescale"});
  Options o;
  if (r.has("fusion")) o.fusion = read_choice(r.at("fusion"), kFusion);
  if (r.has("normalization")) o.normalization = read_choice(r.at("normalization"), kNormalization);
  if (r.has("aggregation")) o.aggregation = read_choice(r.at("aggregation"), kAggregation);
  if (r.has("combination")) o.combination = read_choice(r.at("combination"), kCombination);
  if (r.has("goodness_image")) o.goodness_image = read_choice(r.at("goodness_image"), kImage);
  if (r.has("kernel")) {
    const Reader k = r.at("kernel");
    o.kernel.weights.clear();
    for (std::size_t d = 0; d < k.array_size(); ++d) o.kernel.weights.push_back(k.at(d).number());
  }
  if (r.has("discount")) {
    const Reader d = r.at("discount");
    d.expect_object({"scale", "base", "slope", "span"});
    if (d.has("scale")) o.discount.scale = d.at("scale").number();
    if (d.has("base")) o.discount.base = d.at("base").number();
    if (d.has("slope")) o.discount.slope = d.at("slope").number();
    if (d.has("span")) o.discount.span = d.at("span").number();
  }
  const auto read_rescale = [](const Reader& m, const ScalePtr& scale) {
    if (!m.node().is_object()) m.fail("expected an object");
    std::map<std::string, int> out;
    for (const auto& [label, _] : m.node().items()) {
      if (!scale->index_of(label)) {
        throw DocumentError(m.child_path(label), "not a level of '" + scale->name() + "'");
      }
      out[label] = m.at(label).integer();
    }
    return out;
  };
  if (r.has("confidence_rescale")) {
    o.confidence_rescale = read_rescale(r.at("confidence_rescale"), p.roles.confidence);
  }
  if (r.has("reliability_rescale")) {
    o.reliability_rescale = read_rescale(r.at("reliability_rescale"), p.roles.reliability);
  }
  return o;
}

Json map_to_json(const ScaleMap& m) {
  Json table = Json::object();
  for (int i = 0; i < m.from()->size(); ++i) {
    table[m.from()->label(i)] = m.to()->label(m.apply_index(i));
  }
  return {{"from", m.from()->name()}, {"to", m.to()->name()}, {"table", table}};
}

Json table_to_json(const ConnectiveTable& t) {
  Json cells = Json::array();
  for (int i = 0; i < t.rows()->size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < t.cols()->size(); ++j) row.push_back(t.result()->label(t.at_index(i, j)));
    cells.push_back(row);
  }
  return {{"rows", t.rows()->name()},
          {"cols", t.cols()->name()},
          {"result", t.result()->name()},
          {"cells", cells}};
}

Json subset_to_json(Subset a, const ScalePtr& scale) {
  Json out = Json::array();
  for (int x = 0; x < scale->size(); ++x) {
    if (a & Frame::singleton(x)) out.push_back(scale->label(x));
  }
  return out;
}

Json mass_to_json(const MassFunction& m, const ScalePtr& scale) {
  Json out = Json::array();
  for (const auto& [a, v] : m.focal()) {
    out.push_back({{"set", subset_to_json(a, scale)}, {"mass", report_number(v)}});
  }
  return out;
}

Json numbers_to_json(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(report_number(x));
  return out;
}

Json labels_json(const PossibilityDistribution& pi) { return pi.labels(); }

template <typename T, typename F>
Json grid_table(const char* name, const AssessmentProblem& p, const Grid<T>& grid, F&& cell) {
  Json rows = Json::array();
  Json cols = Json::array();
  for (const auto& c : p.criteria) rows.push_back(c.name);
  for (const auto& e : p.experts) cols.push_back(e.name);
  Json cells = Json::array();
  for (const auto& row : grid) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(cell(x));
    cells.push_back(r);
  }
  return {{"name", name}, {"rows", rows}, {"columns", cols}, {"cells", cells}};
}

template <typename T, typename F>
Json column_table(const char* name, const AssessmentProblem& p, const std::vector<T>& column,
                  F&& cell) {
  Json rows = Json::array();
  for (const auto& c : p.criteria) rows.push_back(c.name);
  Json cells = Json::array();
  for (const auto& x : column) cells.push_back(cell(x));
  return {{"name", name}, {"rows", rows}, {"cells", cells}};
}

std::vector<Json> trace_tables(const CandidateReport& r, const AssessmentProblem& p) {
  std::vector<Json> out;
  if (r.qpt) {
    const auto& t = r.qpt->trace;
    out.push_back(grid_table("qpt.discounted", p, t.discounted, labels_json));
    out.push_back(grid_table("qpt.weights", p, t.weights, [](const Level& l) { return l.label(); }));
    out.push_back(column_table("qpt.merged", p, t.merged, labels_json));
    out.push_back(column_table("qpt.normalized", p, t.normalized, labels_json));
  }
  if (r.tbm) {
    const auto& t = r.tbm->trace;
    const auto& s = p.roles.score;
    const auto masses = [&](const MassFunction& m) { return mass_to_json(m, s); };
    out.push_back(grid_table("tbm.contours", p, t.contours, numbers_to_json));
    out.push_back(grid_table("tbm.evidence", p, t.evidence, masses));
    out.push_back(grid_table("tbm.discount_factors", p, t.discount_factors,
                             [](double d) { return Json(report_number(d)); }));
    out.push_back(grid_table("tbm.discounted", p, t.discounted, masses));
    out.push_back(column_table("tbm.combined", p, t.combined, masses));
    out.push_back(column_table("tbm.transferred", p, t.transferred, masses));
  }
  return out;
}

}  // namespace

AssessmentProblem parse_problem(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError("", "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return problem_from_json(doc);
}

AssessmentProblem problem_from_json(const Json& doc) {
  const Reader root(doc, "");
  root.expect_object({"format", "scales", "roles", "maps", "connectives", "criteria", "experts",
                      "candidates", "options", "annotations"});
  if (root.at("format").string() != kProblemFormat) {
    root.at("format").fail(std::string("expected '") + kProblemFormat + "'");
  }

  AssessmentProblem p{.scales = {},
                      .roles = {},
                      .maps = {standard::confidence_to_possibility(),
                               standard::reliability_to_confidence(),
                               standard::importance_to_score(), standard::score_to_possibility()},
                      .connectives = {standard::otimes_table(), standard::vtilde_table(), {}},
                      .criteria = {},
                      .experts = {},
                      .candidates = {},
                      .options = {},
                      .annotations = {}};

  const Reader scales = root.at("scales");
  for (std::size_t i = 0; i < scales.array_size(); ++i) {
    const Reader s = scales.at(i);
    s.expect_object({"name", "labels"});
    const auto name = s.at("name").string();
    if (p.scale_named(name)) s.at("name").fail("duplicate scale '" + name + "'");
    std::vector<std::string> labels;
    const Reader ls = s.at("labels");
    for (std::size_t k = 0; k < ls.array_size(); ++k) labels.push_back(ls.at(k).string());
    p.scales.push_back(wrap<ScalePtr>(s, [&] { return make_scale(name, labels); }));
  }

  const Reader roles = root.at("roles");
  roles.expect_object({"score", "possibility", "confidence", "reliability", "importance"});
  p.roles.score = resolve_scale(p, roles.at("score"));
  p.roles.possibility = resolve_scale(p, roles.at("possibility"));
  p.roles.confidence = resolve_scale(p, roles.at("confidence"));
  p.roles.reliability = resolve_scale(p, roles.at("reliability"));
  p.roles.importance = resolve_scale(p, roles.at("importance"));

  const Reader maps = root.at("maps");
  maps.expect_object({"confidence_to_possibility", "reliability_to_confidence",
                      "importance_to_score", "score_to_possibility"});
  p.maps.confidence_to_possibility = read_map(p, maps.at("confidence_to_possibility"));
  p.maps.reliability_to_confidence = read_map(p, maps.at("reliability_to_confidence"));
  p.maps.importance_to_score = read_map(p, maps.at("importance_to_score"));
  p.maps.score_to_possibility = read_map(p, maps.at("score_to_possibility"));

  const Reader conn = root.at("connectives");
  conn.expect_object({"otimes", "vtilde", "goodness"});
  p.connectives.otimes = read_table(p, conn.at("otimes"));
  p.connectives.vtilde = read_table(p, conn.at("vtilde"));
  const Reader goodness = conn.at("goodness");
  if (!goodness.node().is_object()) goodness.fail("expected an object");
  for (const auto& [label, _] : goodness.node().items()) {
    const Reader row = goodness.at(label);
    if (!p.roles.importance->index_of(label)) row.fail("not a level of the importance scale");
    if (static_cast<int>(row.array_size()) != p.roles.score->size()) {
      row.fail("needs one goodness score per score level");
    }
    std::vector<int> f;
    for (std::size_t k = 0; k < row.array_size(); ++k) {
      f.push_back(resolve_level(p.roles.score, row.at(k)).index());
    }
    p.connectives.goodness[label] = std::move(f);
  }

  const Reader criteria = root.at("criteria");
  for (std::size_t i = 0; i < criteria.array_size(); ++i) {
    const Reader c = criteria.at(i);
    c.expect_object({"name", "importance"});
    const auto name = c.at("name").string();
    if (p.criterion_index(name) >= 0) c.at("name").fail("duplicate criterion '" + name + "'");
    p.criteria.push_back({name, resolve_level(p.roles.importance, c.at("importance"))});
  }
  const Reader experts = root.at("experts");
  for (std::size_t j = 0; j < experts.array_size(); ++j) {
    const Reader e = experts.at(j);
    e.expect_object({"name", "reliability"});
    const auto name = e.at("name").string();
    if (p.expert_index(name) >= 0) e.at("name").fail("duplicate expert '" + name + "'");
    p.experts.push_back({name, resolve_level(p.roles.reliability, e.at("reliability"))});
  }

  const Reader candidates = root.at("candidates");
  for (std::size_t k = 0; k < candidates.array_size(); ++k) {
    const Reader c = candidates.at(k);
    c.expect_object({"name", "opinions"});
    Candidate cand{c.at("name").string(), {}};
    if (p.candidate_index(cand.name) >= 0) c.at("name").fail("duplicate candidate '" + cand.name + "'");
    const Reader opinions = c.at("opinions");
    if (!opinions.node().is_object()) opinions.fail("expected an object");
    for (const auto& [crit, _] : opinions.node().items()) {
      if (p.criterion_index(crit) < 0) {
        throw DocumentError(opinions.child_path(crit), "unknown criterion");
      }
    }
    for (const auto& crit : p.criteria) {
      const Reader row = opinions.at(crit.name);
      if (!row.node().is_object()) row.fail("expected an object");
      for (const auto& [ex, _] : row.node().items()) {
        if (p.expert_index(ex) < 0) throw DocumentError(row.child_path(ex), "unknown expert");
      }
      std::vector<Opinion> cells;
      for (const auto& ex : p.experts) {
        const Reader o = row.at(ex.name);
        o.expect_object({"interval", "confidence"});
        Opinion op{std::nullopt, resolve_level(p.roles.confidence, o.at("confidence"))};
        if (o.has("interval")) {
          const Reader iv = o.at("interval");
          if (iv.array_size() != 2) iv.fail("expected [lo, hi]");
          op.interval = Interval{resolve_level(p.roles.score, iv.at(0)),
                                 resolve_level(p.roles.score, iv.at(1))};
        }
        cells.push_back(std::move(op));
      }
      cand.grid.push_back(std::move(cells));
    }
    p.candidates.push_back(std::move(cand));
  }

  if (root.has("options")) p.options = read_options(p, root.at("options"));

  if (root.has("annotations")) {
    const Reader notes = root.at("annotations");
    for (std::size_t k = 0; k < notes.array_size(); ++k) {
      const Reader a = notes.at(k);
      a.expect_object({"candidate", "criterion", "expert", "note"});
      p.annotations.push_back({a.at("candidate").string(), a.at("criterion").string(),
                               a.at("expert").string(), a.at("note").string()});
    }
  }
  return p;
}

Json problem_to_json(const AssessmentProblem& p) {
  Json scales = Json::array();
  for (const auto& s : p.scales) scales.push_back({{"name", s->name()}, {"labels", s->labels()}});

  Json goodness = Json::object();
  for (const auto& [label, f] : p.connectives.goodness) {
    Json row = Json::array();
    for (int g : f) row.push_back(p.roles.score->label(g));
    goodness[label] = row;
  }

  Json criteria = Json::array();
  for (const auto& c : p.criteria) {
    criteria.push_back({{"name", c.name}, {"importance", c.importance.label()}});
  }
  Json experts = Json::array();
  for (const auto& e : p.experts) {
    experts.push_back({{"name", e.name}, {"reliability", e.reliability.label()}});
  }
  Json candidates = Json::array();
  for (const auto& cand : p.candidates) {
    Json opinions = Json::object();
    for (std::size_t i = 0; i < cand.grid.size(); ++i) {
      Json row = Json::object();
      for (std::size_t j = 0; j < cand.grid[i].size(); ++j) {
        const auto& o = cand.grid[i][j];
        Json cell = {{"confidence", o.confidence.label()}};
        if (o.interval) cell["interval"] = {o.interval->lo.label(), o.interval->hi.label()};
        row[p.experts.at(j).name] = cell;
      }
      opinions[p.criteria.at(i).name] = row;
    }
    candidates.push_back({{"name", cand.name}, {"opinions", opinions}});
  }

  const auto& o = p.options;
  Json options = {
      {"fusion", choice_name(o.fusion, kFusion)},
      {"normalization", choice_name(o.normalization, kNormalization)},
      {"aggregation", choice_name(o.aggregation, kAggregation)},
      {"combination", choice_name(o.combination, kCombination)},
      {"goodness_image", choice_name(o.goodness_image, kImage)},
      {"kernel", o.kernel.weights},
      {"discount",
       {{"scale", o.discount.scale},
        {"base", o.discount.base},
        {"slope", o.discount.slope},
        {"span", o.discount.span}}},
      {"confidence_rescale", o.confidence_rescale},
      {"reliability_rescale", o.reliability_rescale},
  };

  Json annotations = Json::array();
  for (const auto& a : p.annotations) {
    annotations.push_back({{"candidate", a.candidate},
                           {"criterion", a.criterion},
                           {"expert", a.expert},
                           {"note", a.note}});
  }

  return {{"format", kProblemFormat},
          {"scales", scales},
          {"roles",
           {{"score", p.roles.score->name()},
            {"possibility", p.roles.possibility->name()},
            {"confidence", p.roles.confidence->name()},
            {"reliability", p.roles.reliability->name()},
            {"importance", p.roles.importance->name()}}},
          {"maps",
           {{"confidence_to_possibility", map_to_json(p.maps.confidence_to_possibility)},
            {"reliability_to_confidence", map_to_json(p.maps.reliability_to_confidence)},
            {"importance_to_score", map_to_json(p.maps.importance_to_score)},
            {"score_to_possibility", map_to_json(p.maps.score_to_possibility)}}},
          {"connectives",
           {{"otimes", table_to_json(p.connectives.otimes)},
            {"vtilde", table_to_json(p.connectives.vtilde)},
            {"goodness", goodness}}},
          {"criteria", criteria},
          {"experts", experts},
          {"candidates", candidates},
          {"options", options},
          {"annotations", annotations}};
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string canonical_text(const AssessmentProblem& problem) { return dump(problem_to_json(problem)); }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string snapshot_hash(const AssessmentProblem& problem) {
  return sha256_hex(canonical_text(problem));
}

std::string method_name(Method method) {
  switch (method) {
    case Method::qpt:
      return "qpt";
    case Method::tbm:
      return "tbm";
    case Method::both:
      return "both";
  }
  return "both";
}

Method parse_method(std::string_view name) {
  if (name == "qpt") return Method::qpt;
  if (name == "tbm") return Method::tbm;
  if (name == "both") return Method::both;
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (qpt, tbm or both)");
}

double report_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return std::strtod(buf, nullptr);
}

Json candidate_to_json(const CandidateReport& r, const AssessmentProblem& p, bool with_trace) {
  Json out = {{"name", r.candidate}};
  if (r.qpt) {
    out["qpt"] = {{"final", r.qpt->final.labels()},
                  {"match_certainty", r.qpt->match_certainty.label()},
                  {"match_possibility", r.qpt->match_possibility.label()}};
  }
  if (r.tbm) {
    const auto& s = p.roles.score;
    out["tbm"] = {{"conflict", report_number(r.tbm->final.conflict())},
                  {"masses", mass_to_json(r.tbm->normalized(), s)},
                  {"betp", numbers_to_json(r.tbm->betp)},
                  {"betp_argmax", s->label(r.tbm->betp_argmax())},
                  {"expected_score", report_number(r.tbm->expected_score)}};
  }
  if (with_trace) out["trace"] = trace_tables(r, p);
  return out;
}

Json report_to_json(const AssessmentReport& report, const AssessmentProblem& p, Method method,
                    bool with_trace) {
  Json candidates = Json::array();
  for (const auto& c : report.candidates) candidates.push_back(candidate_to_json(c, p, with_trace));
  return {{"engine", kEngineVersion},
          {"problem_hash", snapshot_hash(p)},
          {"method", method_name(method)},
          {"scores", p.roles.score->labels()},
          {"candidates", candidates}};
}

std::optional<Json> trace_table(const CandidateReport& r, const AssessmentProblem& p,
                                std::string_view name) {
  for (auto& t : trace_tables(r, p)) {
    if (t.at("name") == name) return t;
  }
  return std::nullopt;
}

Json ranking_to_json(const std::vector<RankingEntry>& ranking, const AssessmentProblem& p,
                     Method method) {
  Json entries = Json::array();
  int position = 1;
  for (const auto& e : ranking) {
    Json j = {{"rank", position++}, {"name", e.candidate}};
    if (e.expected_score) j["expected_score"] = report_number(*e.expected_score);
    if (e.top_betp) j["top_betp"] = report_number(*e.top_betp);
    if (e.necessity) j["necessity"] = e.necessity->label();
    if (e.possibility) j["possibility"] = e.possibility->label();
    if (e.match_certainty) j["match_certainty"] = e.match_certainty->label();
    if (e.match_possibility) j["match_possibility"] = e.match_possibility->label();
    entries.push_back(j);
  }
  return {{"engine", kEngineVersion},
          {"problem_hash", snapshot_hash(p)},
          {"method", method_name(method)},
          {"ranking", entries}};
}

Json sensitivity_to_json(const SensitivityTable& t, const AssessmentProblem& p, Method method) {
  Json points = Json::array();
  for (const auto& pt : t.points) {
    Json j = {{"value", pt.value},
              {"report", candidate_to_json(pt.report, p, false)},
              {"changed_traces", pt.changed_traces}};
    if (pt.report.qpt) j["qpt_final_changed"] = pt.qpt_final_changed;
    if (pt.report.tbm) {
      j["tbm_argmax_changed"] = pt.tbm_argmax_changed;
      j["expected_score_delta"] = report_number(*pt.expected_score_delta);
      j["betp_delta"] = numbers_to_json(pt.betp_delta);
    }
    points.push_back(j);
  }
  return {{"engine", kEngineVersion},
          {"problem_hash", snapshot_hash(p)},
          {"method", method_name(method)},
          {"candidate", t.candidate},
          {"target", t.target},
          {"current", t.current},
          {"base", candidate_to_json(t.base, p, false)},
          {"points", points},
          {"informative", t.informative}};
}

Json diagnostics_to_json(const std::vector<Diagnostic>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    const char* sev = d.severity == Diagnostic::Severity::error     ? "error"
                      : d.severity == Diagnostic::Severity::warning ? "warning"
                                                                    : "note";
    out.push_back({{"severity", sev}, {"where", d.where}, {"message", d.message}});
  }
  return out;
}

}  // namespace assess
