#include "assess/scales.hpp"

#include <algorithm>
#include <set>

namespace assess {

OrdinalScale::OrdinalScale(std::string name, std::vector<std::string> labels)
    : name_(std::move(name)), labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw ScaleError("scale '" + name_ + "' needs at least 2 labels");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) {
      throw ScaleError("scale '" + name_ + "' repeats label '" + l + "'");
    }
  }
}

const std::string& OrdinalScale::label(int index) const {
  if (index < 0 || index >= size()) {
    throw ScaleError("index " + std::to_string(index) + " out of range for scale '" + name_ + "'");
  }
  return labels_[index];
}

std::optional<int> OrdinalScale::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<int>(it - labels_.begin());
}

ScalePtr make_scale(std::string name, std::vector<std::string> labels) {
  return std::make_shared<const OrdinalScale>(std::move(name), std::move(labels));
}

bool same_scale(const ScalePtr& a, const ScalePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Level::Level(ScalePtr scale, int index) : scale_(std::move(scale)), index_(index) {
  if (!scale_) throw ScaleError("level without a scale");
  if (index_ < 0 || index_ >= scale_->size()) {
    throw ScaleError("index " + std::to_string(index_) + " out of range for scale '" +
                     scale_->name() + "'");
  }
}

Level Level::of(const ScalePtr& scale, std::string_view label) {
  auto idx = scale->index_of(label);
  if (!idx) {
    throw ScaleError("label '" + std::string(label) + "' not on scale '" + scale->name() + "'");
  }
  return Level(scale, *idx);
}

std::strong_ordering operator<=>(const Level& a, const Level& b) {
  require_same_scale(a, b, "compare");
  return a.index_ <=> b.index_;
}

void require_same_scale(const Level& a, const Level& b, std::string_view op) {
  if (!same_scale(a.scale(), b.scale())) {
    throw ScaleError(std::string(op) + ": levels on '" + a.scale()->name() + "' and '" +
                     b.scale()->name() + "' need an explicit ScaleMap");
  }
}

Level neg(const Level& x) { return Level(x.scale(), x.scale()->top_index() - x.index()); }

Level join(const Level& x, const Level& y) {
  require_same_scale(x, y, "join");
  return x.index() >= y.index() ? x : y;
}

Level meet(const Level& x, const Level& y) {
  require_same_scale(x, y, "meet");
  return x.index() <= y.index() ? x : y;
}

Level bounded_add(const Level& x, const Level& y) {
  require_same_scale(x, y, "bounded_add");
  return Level(x.scale(), std::min(x.scale()->top_index(), x.index() + y.index()));
}

ScaleMap::ScaleMap(ScalePtr from, ScalePtr to, std::vector<int> table)
    : from_(std::move(from)), to_(std::move(to)), table_(std::move(table)) {
  const std::string what = "map " + from_->name() + "->" + to_->name();
  if (static_cast<int>(table_.size()) != from_->size()) {
    throw ScaleError(what + " is not total over its source scale");
  }
  for (int v : table_) {
    if (v < 0 || v >= to_->size()) throw ScaleError(what + " targets an unknown level");
  }
  if (!std::is_sorted(table_.begin(), table_.end())) {
    throw ScaleError(what + " is not monotone");
  }
  if (table_.front() != 0 || table_.back() != to_->top_index()) {
    throw ScaleError(what + " does not preserve bottom and top");
  }
}

ScaleMap ScaleMap::identity(const ScalePtr& scale) {
  std::vector<int> t(scale->size());
  for (int i = 0; i < scale->size(); ++i) t[i] = i;
  return ScaleMap(scale, scale, std::move(t));
}

ScaleMap ScaleMap::by_label(const ScalePtr& from, const ScalePtr& to) {
  return from_labels(from, to, from->labels());
}

ScaleMap ScaleMap::from_labels(const ScalePtr& from, const ScalePtr& to,
                               const std::vector<std::string>& target_labels) {
  std::vector<int> t;
  t.reserve(target_labels.size());
  for (const auto& l : target_labels) t.push_back(Level::of(to, l).index());
  return ScaleMap(from, to, std::move(t));
}

Level ScaleMap::apply(const Level& x) const {
  if (!same_scale(x.scale(), from_)) {
    throw ScaleError("map " + from_->name() + "->" + to_->name() + " applied to a level on '" +
                     x.scale()->name() + "'");
  }
  return Level(to_, table_[x.index()]);
}

ConnectiveTable::ConnectiveTable(ScalePtr rows, ScalePtr cols, ScalePtr result,
                                 std::vector<int> cells)
    : rows_(std::move(rows)), cols_(std::move(cols)), result_(std::move(result)),
      cells_(std::move(cells)) {
  if (static_cast<int>(cells_.size()) != rows_->size() * cols_->size()) {
    throw ScaleError("connective table over " + rows_->name() + "x" + cols_->name() +
                     " has the wrong number of cells");
  }
  for (int v : cells_) {
    if (v < 0 || v >= result_->size()) {
      throw ScaleError("connective table cell outside scale '" + result_->name() + "'");
    }
  }
}

ConnectiveTable ConnectiveTable::from_labels(const ScalePtr& rows, const ScalePtr& cols,
                                             const ScalePtr& result,
                                             const std::vector<std::vector<std::string>>& cells) {
  if (static_cast<int>(cells.size()) != rows->size()) {
    throw ScaleError("connective table needs one row per level of '" + rows->name() + "'");
  }
  std::vector<int> flat;
  for (const auto& row : cells) {
    if (static_cast<int>(row.size()) != cols->size()) {
      throw ScaleError("connective table needs one column per level of '" + cols->name() + "'");
    }
    for (const auto& l : row) flat.push_back(Level::of(result, l).index());
  }
  return ConnectiveTable(rows, cols, result, std::move(flat));
}

Level ConnectiveTable::at(const Level& row, const Level& col) const {
  if (!same_scale(row.scale(), rows_) || !same_scale(col.scale(), cols_)) {
    throw ScaleError("connective table over " + rows_->name() + "x" + cols_->name() +
                     " queried with " + row.scale()->name() + "x" + col.scale()->name());
  }
  return Level(result_, at_index(row.index(), col.index()));
}

Level otimes(const ConnectiveTable& table, const Level& gamma, const Level& alpha) {
  return table.at(gamma, alpha);
}

Level vtilde(const ConnectiveTable& table, const Level& negbeta, const Level& c) {
  return table.at(c, negbeta);
}

Level otimes_closed_form(const ScaleMap& reliability_to_confidence, const Level& gamma,
                         const Level& alpha) {
  return meet(gamma, reliability_to_confidence.apply(alpha));
}

Level vtilde_closed_form(const ScaleMap& importance_to_score, const Level& negbeta,
                         const Level& c) {
  return join(c, importance_to_score.apply(negbeta));
}

namespace standard {

ScalePtr score() {
  static const ScalePtr s = make_scale("score", {"1", "2", "3", "4", "5"});
  return s;
}
ScalePtr possibility() {
  static const ScalePtr s = make_scale("possibility", {"0", "a", "b", "1"});
  return s;
}
ScalePtr confidence() {
  static const ScalePtr s = make_scale("confidence", {"0", "a", "b", "1"});
  return s;
}
ScalePtr reliability() {
  static const ScalePtr s = make_scale("reliability", {"0", "r", "s", "1"});
  return s;
}
ScalePtr importance() {
  static const ScalePtr s = make_scale("importance", {"0", "e", "f", "g", "1"});
  return s;
}

ScaleMap confidence_to_possibility() { return ScaleMap::by_label(confidence(), possibility()); }

ScaleMap reliability_to_confidence() {
  return ScaleMap::from_labels(reliability(), confidence(), {"0", "a", "b", "1"});
}

ScaleMap importance_to_score() {
  return ScaleMap::from_labels(importance(), score(), {"1", "2", "3", "4", "5"});
}

ScaleMap score_to_possibility() {
  return ScaleMap::from_labels(score(), possibility(), {"0", "a", "a", "b", "1"});
}

ConnectiveTable otimes_table() {
  return ConnectiveTable::from_labels(confidence(), reliability(), confidence(),
                                      {{"0", "0", "0", "0"},
                                       {"0", "a", "a", "a"},
                                       {"0", "a", "b", "b"},
                                       {"0", "a", "b", "1"}});
}

ConnectiveTable vtilde_table() {
  return ConnectiveTable::from_labels(score(), importance(), score(),
                                      {{"1", "2", "3", "4", "5"},
                                       {"2", "2", "3", "4", "5"},
                                       {"3", "3", "3", "4", "5"},
                                       {"4", "4", "4", "4", "5"},
                                       {"5", "5", "5", "5", "5"}});
}

}  // namespace standard

}  // namespace assess
