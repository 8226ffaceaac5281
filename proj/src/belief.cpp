#include "assess/belief.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace assess {

Frame::Frame(int size) : size_(size) {
  if (size < 2 || size > kMaxSize) {
    throw BeliefError("frame size " + std::to_string(size) + " outside [2, 16]");
  }
}

Subset Frame::interval(int lo, int hi) {
  if (lo > hi) return 0;
  return ((Subset{1} << (hi + 1)) - 1) & ~((Subset{1} << lo) - 1);
}

int cardinality(Subset a) { return std::popcount(a); }

MassFunction::MassFunction(Frame frame, std::map<Subset, double> masses)
    : frame_(frame), masses_(std::move(masses)) {
  double total = 0.0;
  for (auto it = masses_.begin(); it != masses_.end();) {
    if (it->first & ~frame_.full()) throw BeliefError("focal set outside the frame");
    if (it->second < 0.0 || std::isnan(it->second)) throw BeliefError("negative mass");
    total += it->second;
    it = it->second == 0.0 ? masses_.erase(it) : std::next(it);
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw BeliefError("masses sum to " + std::to_string(total) + ", not 1");
  }
}

MassFunction MassFunction::vacuous(Frame frame) { return MassFunction(frame, {{frame.full(), 1.0}}); }

double MassFunction::mass(Subset a) const {
  auto it = masses_.find(a);
  return it == masses_.end() ? 0.0 : it->second;
}

bool MassFunction::is_vacuous() const {
  return masses_.size() == 1 && masses_.begin()->first == frame_.full();
}

MassFunction MassFunction::normalized() const {
  const double k = conflict();
  if (k >= 1.0 - kSumTolerance) throw BeliefError("total conflict: nothing left to normalize");
  std::map<Subset, double> out;
  for (const auto& [a, v] : masses_) {
    if (a != 0) out[a] = v / (1.0 - k);
  }
  return MassFunction(frame_, std::move(out));
}

double ObservationKernel::at(int distance) const {
  return distance < static_cast<int>(weights.size()) ? weights[distance] : 0.0;
}

void ObservationKernel::validate() const {
  if (weights.empty() || weights.front() != 1.0) {
    throw BeliefError("observation kernel must start at 1");
  }
  for (std::size_t d = 0; d < weights.size(); ++d) {
    if (weights[d] < 0.0 || weights[d] > 1.0) throw BeliefError("kernel weight outside [0,1]");
    if (d > 0 && weights[d] > weights[d - 1]) throw BeliefError("kernel weights must not increase");
  }
}

std::vector<double> kernel_possibility(int lo, int hi, Frame frame, const ObservationKernel& kernel) {
  if (lo > hi || lo < 0 || hi >= frame.size()) {
    throw BeliefError("observation interval is empty or outside the frame");
  }
  std::vector<double> pi(frame.size());
  for (int x = 0; x < frame.size(); ++x) {
    const int distance = x < lo ? lo - x : (x > hi ? x - hi : 0);
    pi[x] = kernel.at(distance);
  }
  return pi;
}

MassFunction consonant_bba(std::span<const double> contour) {
  const Frame frame(static_cast<int>(contour.size()));
  std::vector<double> levels;
  for (double v : contour) {
    if (v < 0.0 || v > 1.0) throw BeliefError("possibility degree outside [0,1]");
    if (v > 0.0) levels.push_back(v);
  }
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  if (levels.empty() || levels.front() != 1.0) {
    throw BeliefError("consonant bba needs a normalized possibility contour");
  }
  std::map<Subset, double> m;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    Subset cut = 0;
    for (std::size_t x = 0; x < contour.size(); ++x) {
      if (contour[x] >= levels[k]) cut |= Frame::singleton(static_cast<int>(x));
    }
    const double next = k + 1 < levels.size() ? levels[k + 1] : 0.0;
    m[cut] = levels[k] - next;
  }
  return MassFunction(frame, std::move(m));
}

std::vector<double> contour(const MassFunction& m) {
  std::vector<double> out(m.frame().size());
  for (int x = 0; x < m.frame().size(); ++x) out[x] = pl(m, Frame::singleton(x));
  return out;
}

double discount_factor(int g, std::optional<int> s, const DiscountCoefficients& k) {
  if (g < 0 || g > 3) throw BeliefError("rescaled confidence must be 0..3");
  if (!s) return 1.0;
  if (*s < 1 || *s > 3) throw BeliefError("rescaled reliability must be 1..3");
  return 1.0 - k.scale * (g / 3.0) * (k.base + k.slope * (*s - 1) / k.span);
}

MassFunction discount(const MassFunction& m, double d) {
  if (d < 0.0 || d > 1.0) throw BeliefError("discount factor outside [0,1]");
  std::map<Subset, double> out;
  for (const auto& [a, v] : m.focal()) out[a] += (1.0 - d) * v;
  out[m.frame().full()] += d;
  return MassFunction(m.frame(), std::move(out));
}

MassFunction combine_conjunctive(const MassFunction& a, const MassFunction& b,
                                 CombinationMode mode) {
  if (!(a.frame() == b.frame())) throw BeliefError("combination over different frames");
  std::map<Subset, double> out;
  for (const auto& [sa, va] : a.focal()) {
    for (const auto& [sb, vb] : b.focal()) out[sa & sb] += va * vb;
  }
  MassFunction joint(a.frame(), std::move(out));
  if (mode == CombinationMode::dempster) return joint.normalized();
  return joint;
}

MassFunction goodness_transfer(const MassFunction& m, std::span<const int> f, Frame goodness,
                               ImageMode mode) {
  if (static_cast<int>(f.size()) != m.frame().size()) {
    throw BeliefError("goodness function needs one value per score");
  }
  for (int g : f) {
    if (g < 0 || g >= goodness.size()) throw BeliefError("goodness value outside its frame");
  }
  std::map<Subset, double> out;
  for (const auto& [a, v] : m.focal()) {
    Subset image = 0;
    int lo = goodness.size();
    int hi = -1;
    for (int x = 0; x < m.frame().size(); ++x) {
      if (!(a & Frame::singleton(x))) continue;
      image |= Frame::singleton(f[x]);
      lo = std::min(lo, f[x]);
      hi = std::max(hi, f[x]);
    }
    if (mode == ImageMode::interval_hull) image = Frame::interval(lo, hi);
    out[image] += v;
  }
  return MassFunction(goodness, std::move(out));
}

double bel(const MassFunction& m, Subset a) {
  double total = 0.0;
  for (const auto& [b, v] : m.focal()) {
    if (b != 0 && (b & ~a) == 0) total += v;
  }
  return total;
}

double pl(const MassFunction& m, Subset a) {
  double total = 0.0;
  for (const auto& [b, v] : m.focal()) {
    if (b & a) total += v;
  }
  return total;
}

std::vector<double> pignistic(const MassFunction& m) {
  const double k = m.conflict();
  if (k >= 1.0 - MassFunction::kSumTolerance) {
    throw BeliefError("pignistic transformation undefined under total conflict");
  }
  std::vector<double> p(m.frame().size(), 0.0);
  for (const auto& [a, v] : m.focal()) {
    if (a == 0) continue;
    const double share = v / (cardinality(a) * (1.0 - k));
    for (int x = 0; x < m.frame().size(); ++x) {
      if (a & Frame::singleton(x)) p[x] += share;
    }
  }
  return p;
}

double expected_score(std::span<const double> betp) {
  double e = 0.0;
  for (std::size_t k = 0; k < betp.size(); ++k) e += static_cast<double>(k + 1) * betp[k];
  return e;
}

}  // namespace assess
