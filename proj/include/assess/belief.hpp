#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace assess {

class BeliefError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset of the frame as a bitmask; bit k is the (k+1)-th level.
using Subset = std::uint32_t;

/// Frame of discernment {1..size}; small enough to enumerate every subset.
class Frame {
 public:
  static constexpr int kMaxSize = 16;

  explicit Frame(int size);

  int size() const { return size_; }
  Subset full() const { return (Subset{1} << size_) - 1; }
  static Subset singleton(int index) { return Subset{1} << index; }
  /// Contiguous run [lo, hi] of 0-based indices.
  static Subset interval(int lo, int hi);

  friend bool operator==(Frame, Frame) = default;

 private:
  int size_;
};

int cardinality(Subset a);

/// Basic belief assignment. Only focal sets are stored. The empty set may
/// carry mass (conflict) in the unnormalized convention.
class MassFunction {
 public:
  static constexpr double kSumTolerance = 1e-9;

  MassFunction(Frame frame, std::map<Subset, double> masses);

  static MassFunction vacuous(Frame frame);

  Frame frame() const { return frame_; }
  const std::map<Subset, double>& focal() const { return masses_; }
  double mass(Subset a) const;
  double conflict() const { return mass(0); }
  bool is_vacuous() const;

  /// Conflict removed and the rest rescaled. Throws on total conflict.
  MassFunction normalized() const;

  friend bool operator==(const MassFunction&, const MassFunction&) = default;

 private:
  Frame frame_;
  std::map<Subset, double> masses_;
};

/// Possibility of reporting a value at distance d from the truth; weights[d],
/// zero beyond the list.
struct ObservationKernel {
  std::vector<double> weights{1.0, 0.5};

  double at(int distance) const;
  void validate() const;
};

/// pi(x) = max over reported a in [lo, hi] of kernel(|a - x|).
std::vector<double> kernel_possibility(int lo, int hi, Frame frame, const ObservationKernel& kernel);

/// Nested level cuts of a normalized possibility contour.
MassFunction consonant_bba(std::span<const double> contour);

/// pl({x}) for every x.
std::vector<double> contour(const MassFunction& m);

struct DiscountCoefficients {
  double scale = 0.95;
  double base = 0.75;
  double slope = 0.25;
  double span = 3.0;

  friend bool operator==(const DiscountCoefficients&, const DiscountCoefficients&) = default;
};

/// d = 1 - scale * (g/3) * (base + slope * (s - 1)/span), with g in 0..3 the
/// rescaled self-confidence and s in 1..3 the rescaled expert reliability.
/// A missing s (reliability at bottom) is total discounting.
double discount_factor(int g, std::optional<int> s, const DiscountCoefficients& k = {});

/// Moves a fraction d of every focal mass onto the whole frame.
MassFunction discount(const MassFunction& m, double d);

enum class CombinationMode { unnormalized, dempster };

MassFunction combine_conjunctive(const MassFunction& a, const MassFunction& b,
                                 CombinationMode mode = CombinationMode::unnormalized);

/// How a focal set is carried through the goodness function f.
enum class ImageMode {
  interval_hull,  // [min f(A), max f(A)]
  elementwise,    // {f(x) : x in A}
};

/// f[k] is the 0-based goodness level of score k.
MassFunction goodness_transfer(const MassFunction& m, std::span<const int> f, Frame goodness,
                               ImageMode mode = ImageMode::interval_hull);

double bel(const MassFunction& m, Subset a);
double pl(const MassFunction& m, Subset a);

std::vector<double> pignistic(const MassFunction& m);

/// Sum of (k + 1) * p[k].
double expected_score(std::span<const double> betp);

}  // namespace assess
