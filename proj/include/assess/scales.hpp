#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assess {

/// Raised when two levels from different scales are combined without an
/// explicit ScaleMap, or when a scale/map/table is malformed.
class ScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite, linearly ordered set of labels. Index 0 is the bottom.
class OrdinalScale {
 public:
  OrdinalScale(std::string name, std::vector<std::string> labels);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int size() const { return static_cast<int>(labels_.size()); }
  int top_index() const { return size() - 1; }
  const std::string& label(int index) const;
  std::optional<int> index_of(std::string_view label) const;

  friend bool operator==(const OrdinalScale&, const OrdinalScale&) = default;

 private:
  std::string name_;
  std::vector<std::string> labels_;
};

using ScalePtr = std::shared_ptr<const OrdinalScale>;

ScalePtr make_scale(std::string name, std::vector<std::string> labels);

/// True when both pointers denote the same scale (identity or equal value).
bool same_scale(const ScalePtr& a, const ScalePtr& b);

/// A position on an OrdinalScale.
class Level {
 public:
  Level(ScalePtr scale, int index);

  static Level of(const ScalePtr& scale, std::string_view label);
  static Level bottom(const ScalePtr& scale) { return Level(scale, 0); }
  static Level top(const ScalePtr& scale) { return Level(scale, scale->top_index()); }

  const ScalePtr& scale() const { return scale_; }
  int index() const { return index_; }
  const std::string& label() const { return scale_->label(index_); }
  bool is_bottom() const { return index_ == 0; }
  bool is_top() const { return index_ == scale_->top_index(); }

  friend bool operator==(const Level& a, const Level& b) {
    return a.index_ == b.index_ && same_scale(a.scale_, b.scale_);
  }
  // Ordering across scales is a ScaleError.
  friend std::strong_ordering operator<=>(const Level& a, const Level& b);

 private:
  ScalePtr scale_;
  int index_;
};

void require_same_scale(const Level& a, const Level& b, std::string_view op);

/// Order-reversing involution: index -> (size - 1) - index.
Level neg(const Level& x);
Level join(const Level& x, const Level& y);
Level meet(const Level& x, const Level& y);
/// Saturating addition of indices: min(top, i + j).
Level bounded_add(const Level& x, const Level& y);

/// Explicit commensurateness map between two scales. Total, monotone
/// non-decreasing, bottom to bottom and top to top.
class ScaleMap {
 public:
  ScaleMap(ScalePtr from, ScalePtr to, std::vector<int> table);

  static ScaleMap identity(const ScalePtr& scale);
  /// Maps each label of `from` to the identically written label of `to`.
  static ScaleMap by_label(const ScalePtr& from, const ScalePtr& to);
  static ScaleMap from_labels(const ScalePtr& from, const ScalePtr& to,
                              const std::vector<std::string>& target_labels);

  const ScalePtr& from() const { return from_; }
  const ScalePtr& to() const { return to_; }
  const std::vector<int>& table() const { return table_; }

  Level apply(const Level& x) const;
  int apply_index(int from_index) const { return table_.at(from_index); }

  friend bool operator==(const ScaleMap& a, const ScaleMap& b) {
    return same_scale(a.from_, b.from_) && same_scale(a.to_, b.to_) && a.table_ == b.table_;
  }

 private:
  ScalePtr from_;
  ScalePtr to_;
  std::vector<int> table_;
};

inline Level apply_map(const ScaleMap& m, const Level& x) { return m.apply(x); }

/// A binary connective stored as an explicit table: rows x cols -> result.
class ConnectiveTable {
 public:
  ConnectiveTable(ScalePtr rows, ScalePtr cols, ScalePtr result, std::vector<int> cells);

  static ConnectiveTable from_labels(const ScalePtr& rows, const ScalePtr& cols,
                                     const ScalePtr& result,
                                     const std::vector<std::vector<std::string>>& cells);

  const ScalePtr& rows() const { return rows_; }
  const ScalePtr& cols() const { return cols_; }
  const ScalePtr& result() const { return result_; }
  const std::vector<int>& cells() const { return cells_; }

  Level at(const Level& row, const Level& col) const;
  int at_index(int row, int col) const { return cells_[row * cols_->size() + col]; }

  friend bool operator==(const ConnectiveTable& a, const ConnectiveTable& b) {
    return same_scale(a.rows_, b.rows_) && same_scale(a.cols_, b.cols_) &&
           same_scale(a.result_, b.result_) && a.cells_ == b.cells_;
  }

 private:
  ScalePtr rows_;
  ScalePtr cols_;
  ScalePtr result_;
  std::vector<int> cells_;
};

/// gamma (x) alpha from the table (rows: confidence, cols: reliability).
Level otimes(const ConnectiveTable& table, const Level& gamma, const Level& alpha);

/// (not beta) V~ c from the table (rows: score, cols: importance label of not-beta).
Level vtilde(const ConnectiveTable& table, const Level& negbeta, const Level& c);

/// Closed form gamma /\ map(alpha); the table is expected to agree with it.
Level otimes_closed_form(const ScaleMap& reliability_to_confidence, const Level& gamma,
                         const Level& alpha);

/// Closed form c \/ map(negbeta).
Level vtilde_closed_form(const ScaleMap& importance_to_score, const Level& negbeta,
                         const Level& c);

/// The five scales and connective tables of the worked hiring example.
namespace standard {

ScalePtr score();        // 1..5
ScalePtr possibility();  // 0 a b 1
ScalePtr confidence();   // 0 a b 1 (possibility reversed in meaning)
ScalePtr reliability();  // 0 r s 1
ScalePtr importance();   // 0 e f g 1

ScaleMap confidence_to_possibility();
ScaleMap reliability_to_confidence();
ScaleMap importance_to_score();
ScaleMap score_to_possibility();

ConnectiveTable otimes_table();
ConnectiveTable vtilde_table();

}  // namespace standard

}  // namespace assess
