#include <doctest.h>

#include "assess/scales.hpp"

using namespace assess;

namespace {

Level P(const char* l) { return Level::of(standard::possibility(), l); }
Level S(const char* l) { return Level::of(standard::score(), l); }

// Weights as printed in the hiring example, rows gamma (0 a b 1), columns alpha (0 r s 1).
const char* kOtimes[4][4] = {
    {"0", "0", "0", "0"},
    {"0", "a", "a", "a"},
    {"0", "a", "b", "b"},
    {"0", "a", "b", "1"},
};

// Rows score 1..5, columns importance label of not-beta (0 e f g 1).
const char* kVtilde[5][5] = {
    {"1", "2", "3", "4", "5"},
    {"2", "2", "3", "4", "5"},
    {"3", "3", "3", "4", "5"},
    {"4", "4", "4", "4", "5"},
    {"5", "5", "5", "5", "5"},
};

}  // namespace

TEST_CASE("scale construction") {
  CHECK_THROWS_AS(OrdinalScale("x", {"only"}), ScaleError);
  CHECK_THROWS_AS(OrdinalScale("x", {"a", "b", "a"}), ScaleError);
  const OrdinalScale s("x", {"lo", "mid", "hi"});
  CHECK(s.top_index() == 2);
  CHECK(s.index_of("mid") == 1);
  CHECK_FALSE(s.index_of("nope"));
  CHECK_THROWS_AS(Level(make_scale("y", {"0", "1"}), 2), ScaleError);
  CHECK_THROWS_AS(Level::of(standard::possibility(), "r"), ScaleError);
}

TEST_CASE("negation") {
  CHECK(neg(P("0")) == P("1"));
  CHECK(neg(P("b")) == P("a"));
  for (const auto& scale : {standard::possibility(), standard::importance(), standard::score()}) {
    for (int i = 0; i < scale->size(); ++i) {
      const Level x(scale, i);
      CHECK(neg(neg(x)) == x);
      for (int j = 0; j < scale->size(); ++j) {
        const Level y(scale, j);
        if (x <= y) CHECK(neg(y) <= neg(x));
      }
    }
  }
  CHECK(neg(Level::of(standard::importance(), "g")).label() == "e");
}

TEST_CASE("join and meet") {
  CHECK(join(P("a"), P("b")) == P("b"));
  CHECK(meet(P("a"), P("b")) == P("a"));
  for (int i = 0; i < 4; ++i) {
    const Level x(standard::possibility(), i);
    CHECK(meet(x, P("1")) == x);
    CHECK(join(x, x) == x);
  }
  CHECK_THROWS_AS(join(P("a"), S("2")), ScaleError);
  CHECK_THROWS_AS(meet(P("a"), Level::of(standard::confidence(), "a")), ScaleError);
  CHECK_THROWS_AS((void)(P("a") < S("2")), ScaleError);
}

TEST_CASE("bounded addition") {
  CHECK(bounded_add(P("a"), P("a")) == P("b"));
  CHECK(bounded_add(P("b"), P("b")) == P("1"));
  const auto scale = standard::importance();
  for (int i = 0; i < scale->size(); ++i) {
    const Level x(scale, i);
    CHECK(bounded_add(x, Level::bottom(scale)) == x);
    CHECK(bounded_add(x, Level::top(scale)) == Level::top(scale));
    for (int j = 0; j < scale->size(); ++j) {
      const Level y(scale, j);
      CHECK(bounded_add(x, y) == bounded_add(y, x));
      if (j + 1 < scale->size()) CHECK(bounded_add(x, y) <= bounded_add(x, Level(scale, j + 1)));
      for (int k = 0; k < scale->size(); ++k) {
        const Level z(scale, k);
        CHECK(bounded_add(bounded_add(x, y), z) == bounded_add(x, bounded_add(y, z)));
      }
    }
  }
  CHECK_THROWS_AS(bounded_add(P("a"), S("1")), ScaleError);
}

TEST_CASE("otimes table, all 16 cells") {
  const auto table = standard::otimes_table();
  const auto conf = standard::confidence();
  const auto rel = standard::reliability();
  for (int g = 0; g < 4; ++g) {
    for (int a = 0; a < 4; ++a) {
      const Level gamma(conf, g);
      const Level alpha(rel, a);
      CAPTURE(g);
      CAPTURE(a);
      CHECK(otimes(table, gamma, alpha).label() == kOtimes[g][a]);
      CHECK(otimes(table, gamma, alpha) ==
            otimes_closed_form(standard::reliability_to_confidence(), gamma, alpha));
    }
  }
  CHECK(otimes(table, Level::of(conf, "b"), Level::of(rel, "s")).label() == "b");
  CHECK(otimes(table, Level::of(conf, "1"), Level::of(rel, "r")).label() == "a");
}

TEST_CASE("vtilde table, all 25 cells") {
  const auto table = standard::vtilde_table();
  const auto imp = standard::importance();
  const auto score = standard::score();
  for (int c = 0; c < 5; ++c) {
    for (int n = 0; n < 5; ++n) {
      const Level negbeta(imp, n);
      const Level s(score, c);
      CAPTURE(c);
      CAPTURE(n);
      CHECK(vtilde(table, negbeta, s).label() == kVtilde[c][n]);
      CHECK(vtilde(table, negbeta, s) ==
            vtilde_closed_form(standard::importance_to_score(), negbeta, s));
    }
  }
  CHECK(vtilde(table, Level::of(imp, "e"), S("1")) == S("2"));
  CHECK(vtilde(table, Level::of(imp, "1"), S("3")) == S("5"));
}

TEST_CASE("scale maps") {
  const auto imp = standard::importance();
  CHECK(apply_map(ScaleMap::identity(imp), Level::of(imp, "f")) == Level::of(imp, "f"));
  CHECK(apply_map(standard::importance_to_score(), Level::of(imp, "g")) == S("4"));
  CHECK(apply_map(standard::reliability_to_confidence(), Level::of(standard::reliability(), "s"))
            .label() == "b");
  const auto g = make_scale("g", {"0", "1", "2", "3"});
  const auto rescale = ScaleMap::by_label(standard::confidence(), make_scale("c", {"0", "a", "b", "1"}));
  CHECK(rescale.apply_index(2) == 2);
  const auto to_g = ScaleMap(standard::confidence(), g, {0, 1, 2, 3});
  CHECK(to_g.apply(Level::of(standard::confidence(), "b")).label() == "2");

  CHECK_THROWS_AS(ScaleMap(g, g, {0, 2, 1, 3}), ScaleError);  // not monotone
  CHECK_THROWS_AS(ScaleMap(g, g, {1, 1, 2, 3}), ScaleError);  // bottom moved
  CHECK_THROWS_AS(ScaleMap(g, g, {0, 1, 2, 2}), ScaleError);  // top moved
  CHECK_THROWS_AS(ScaleMap(g, g, {0, 1, 3}), ScaleError);     // not total
  CHECK_THROWS_AS(apply_map(to_g, S("2")), ScaleError);
  for (const auto& m : {standard::confidence_to_possibility(), standard::reliability_to_confidence(),
                        standard::importance_to_score(), standard::score_to_possibility()}) {
    CHECK(m.apply_index(0) == 0);
    CHECK(m.apply_index(m.from()->top_index()) == m.to()->top_index());
  }
}
