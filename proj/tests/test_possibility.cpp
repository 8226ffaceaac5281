#include <doctest.h>

#include <vector>

#include "assess/possibility.hpp"

using namespace assess;

namespace {

const ScalePtr& Ls() {
  static const ScalePtr s = standard::score();
  return s;
}
const ScalePtr& Lp() {
  static const ScalePtr s = standard::possibility();
  return s;
}

PossibilityDistribution D(const std::string& compact) {
  std::vector<std::string> labels;
  for (char c : compact) labels.emplace_back(1, c);
  return PossibilityDistribution::from_labels(Ls(), Lp(), labels);
}

Level P(const char* l) { return Level::of(Lp(), l); }
Level G(const char* l) { return Level::of(standard::confidence(), l); }
Level A(const char* l) { return Level::of(standard::reliability(), l); }
Level B(const char* l) { return Level::of(standard::importance(), l); }
Level S(int score) { return Level(Ls(), score - 1); }

AggregationRule rule(AggregationVariant v = AggregationVariant::lift) {
  return {standard::vtilde_table(), standard::importance_to_score(), v};
}

}  // namespace

TEST_CASE("from_interval") {
  CHECK(from_interval(S(2), S(4), Lp()).str() == "01110");
  CHECK(from_interval(S(1), S(5), Lp()).str() == "11111");
  CHECK(from_interval(S(4), S(4), Lp()).str() == "00010");
  CHECK_THROWS_AS(from_interval(S(5), S(2), Lp()), PossibilityError);
}

TEST_CASE("self-confidence discounting") {
  const auto c2p = standard::confidence_to_possibility();
  CHECK(discount_self_confidence(D("00010"), G("b"), c2p).str() == "aaa1a");
  CHECK(discount_self_confidence(D("01110"), G("1"), c2p).str() == "01110");
  CHECK(discount_self_confidence(D("0a010"), G("1"), c2p).str() == "0a010");
  CHECK(discount_self_confidence(D("00010"), G("0"), c2p).str() == "11111");
  CHECK(discount_self_confidence(D("01100"), G("a"), c2p).str() == "b11bb");
}

TEST_CASE("source weights") {
  const auto t = standard::otimes_table();
  CHECK(source_weight(t, G("1"), A("s")).label() == "b");
  CHECK(source_weight(t, G("1"), A("1")).label() == "1");
  CHECK(source_weight(t, G("0"), A("1")).label() == "0");
}

TEST_CASE("disjunctive fusion") {
  const std::vector<WeightedSource> lear = {
      {D("a111a"), P("b")}, {D("11111"), P("a")}, {D("aaa1a"), P("a")}, {D("01110"), P("b")}};
  CHECK(fuse_disjunctive(lear).str() == "abbba");
  const std::vector<WeightedSource> exp = {
      {D("00010"), P("1")}, {D("11111"), P("0")}, {D("11111"), P("0")}, {D("11111"), P("0")}};
  CHECK(fuse_disjunctive(exp).str() == "00010");
  const std::vector<WeightedSource> one = {{D("0ab1a"), P("1")}};
  CHECK(fuse_disjunctive(one).str() == "0ab1a");
  CHECK_THROWS_AS(fuse_disjunctive(std::span<const WeightedSource>{}), PossibilityError);
}

TEST_CASE("weighted-min fusion") {
  const std::vector<WeightedSource> both = {{D("0111a"), P("1")}, {D("1b10a"), P("1")}};
  CHECK(fuse_conjunctive_min(both).str() == "0b10a");
  const std::vector<WeightedSource> one = {{D("0ab1a"), P("1")}};
  CHECK(fuse_conjunctive_min(one).str() == "0ab1a");
  const std::vector<WeightedSource> disjoint = {{D("10000"), P("1")}, {D("00001"), P("1")}};
  CHECK(fuse_conjunctive_min(disjoint).str() == "00000");
  const std::vector<WeightedSource> weak = {{D("10000"), P("a")}, {D("00001"), P("1")}};
  CHECK(fuse_conjunctive_min(weak).str() == "0000b");
}

TEST_CASE("height and normalization") {
  CHECK(height(D("01110")).label() == "1");
  CHECK(height(D("aaaaa")).label() == "a");
  CHECK(height(D("00000")).label() == "0");
  CHECK(normalize(D("abbba"), NormalizationMode::shift).str() == "b111b");
  CHECK(normalize(D("0a0a0"), NormalizationMode::shift).str() == "b1b1b");
  CHECK(normalize(D("aaaaa"), NormalizationMode::shift).str() == "11111");
  CHECK(normalize(D("b0001"), NormalizationMode::shift).str() == "b0001");
  CHECK(normalize(D("0a0a0"), NormalizationMode::preserve_bottom).str() == "01010");
  CHECK(normalize(D("00000"), NormalizationMode::shift).str() == "11111");
  CHECK_THROWS_AS(normalize(D("00000"), NormalizationMode::preserve_bottom), PossibilityError);
}

TEST_CASE("crisp aggregation") {
  const std::vector<Level> beta = {B("g"), B("e"), B("e"), B("1"), B("g"), B("1")};
  std::vector<Level> fours(6, S(4));
  CHECK(aggregate_crisp(rule(), fours, beta) == S(4));
  std::vector<Level> ones(6, S(1));
  std::vector<Level> full(6, B("1"));
  CHECK(aggregate_crisp(rule(), ones, full) == S(1));

  const std::vector<Level> g = {B("g")};
  const std::vector<Level> four = {S(4)};
  const std::vector<Level> three = {S(3)};
  CHECK(aggregate_crisp(rule(AggregationVariant::threshold), four, g) == S(5));
  CHECK(aggregate_crisp(rule(AggregationVariant::threshold), three, g) == S(3));
  CHECK(aggregate_crisp(rule(), three, g) == S(3));
  CHECK(aggregate_crisp(rule(), std::vector<Level>{S(1)}, g) == S(2));
  CHECK_THROWS_AS(aggregate_crisp(rule(), std::span<const Level>{}, std::span<const Level>{}),
                  PossibilityError);
}

TEST_CASE("extension aggregation") {
  const std::vector<PossibilityDistribution> two = {D("01000"), D("00a10")};
  const std::vector<Level> full = {B("1"), B("1")};
  CHECK(aggregate_extension(rule(), two, full).str() == "01000");

  const std::vector<PossibilityDistribution> points = {D("00010"), D("01000"), D("00001")};
  const std::vector<Level> beta = {B("g"), B("e"), B("1")};
  const std::vector<Level> scores = {S(4), S(2), S(5)};
  const int expect = aggregate_crisp(rule(), scores, beta).index();
  const auto out = aggregate_extension(rule(), points, beta);
  for (int s = 0; s < 5; ++s) CHECK(out.index_at(s) == (s == expect ? 3 : 0));
}

TEST_CASE("extension of the hiring example") {
  const std::vector<PossibilityDistribution> pis = {D("b1b1b"), D("b111b"), D("00010"),
                                                    D("00010"), D("11111"), D("b0001")};
  const std::vector<Level> beta = {B("g"), B("e"), B("e"), B("1"), B("g"), B("1")};
  CHECK(aggregate_extension(rule(), pis, beta).str() == "b1110");
}

TEST_CASE("profiles") {
  const auto m = standard::importance_to_score();
  CHECK(build_profile(B("1"), m).values == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(build_profile(B("g"), m).values == std::vector<int>{1, 1, 2, 3, 4});
  CHECK(build_profile(B("0"), m).values == std::vector<int>{4, 4, 4, 4, 4});
}

TEST_CASE("profile matching") {
  const auto m = standard::importance_to_score();
  const auto s2p = standard::score_to_possibility();
  const std::vector<SatisfactionProfile> top = {build_profile(B("0"), m), build_profile(B("0"), m)};
  const std::vector<PossibilityDistribution> any = {D("b111b"), D("0a1a0")};
  CHECK(match_certainty(top, any, s2p).label() == "1");
  CHECK(match_possibility(top, any, s2p).label() == "1");

  const std::vector<SatisfactionProfile> prof = {build_profile(B("1"), m), build_profile(B("g"), m)};
  const std::vector<PossibilityDistribution> crisp = {D("00010"), D("10000")};
  // mu_1(4) = 4 -> b, mu_2(1) = 2 -> a
  CHECK(match_certainty(prof, crisp, s2p).label() == "a");
  CHECK(match_possibility(prof, crisp, s2p).label() == "a");

  const std::vector<PossibilityDistribution> bad = {D("0a0a0"), D("10000")};
  CHECK_THROWS_AS(match_certainty(prof, bad, s2p), PossibilityError);
}

TEST_CASE("fuzzy ranking") {
  const auto r = rank(D("b111b"), D("b111b"));
  CHECK(r.possibility.label() == "1");
  const auto hi = rank(D("00001"), D("00100"));
  CHECK(hi.possibility.label() == "1");
  CHECK(hi.necessity.label() == "1");
  const auto lo = rank(D("00100"), D("00001"));
  CHECK(lo.possibility.label() == "0");
  CHECK(lo.necessity.label() == "0");
  const auto mixed = rank(D("0a100"), D("00100"));
  CHECK(mixed.possibility.label() == "1");
  CHECK(mixed.necessity.label() == "b");
}
