#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "strictness/attrs.hpp"

using namespace strictness;

namespace {

const Attr kBase[] = {Attr::Strict, Attr::Lazy, Attr::Unknown};
const Attr kExt[] = {Attr::Strict, Attr::Lazy, Attr::Unknown, Attr::Unused};

std::vector<Attr> legal_attrs(Mode m) {
  if (m == Mode::Base) return {kBase, kBase + 3};
  return {kExt, kExt + 4};
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalar algebra, pinned as literal tables.

TEST_CASE("plus table, base mode") {
  struct Row {
    Attr a, b, out;
  };
  // S absorbs; L is the identity; ? beats L.
  const Row rows[] = {
      {Attr::Strict, Attr::Strict, Attr::Strict},
      {Attr::Strict, Attr::Lazy, Attr::Strict},
      {Attr::Strict, Attr::Unknown, Attr::Strict},
      {Attr::Lazy, Attr::Lazy, Attr::Lazy},
      {Attr::Lazy, Attr::Unknown, Attr::Unknown},
      {Attr::Unknown, Attr::Unknown, Attr::Unknown},
  };
  for (const Row& r : rows) {
    CHECK(attr_plus(r.a, r.b, Mode::Base) == r.out);
    CHECK(attr_plus(r.b, r.a, Mode::Base) == r.out);
  }
}

TEST_CASE("plus table, extended mode") {
  struct Row {
    Attr a, b, out;
  };
  // U is the identity; the three-attribute fragment is unchanged.
  const Row rows[] = {
      {Attr::Strict, Attr::Strict, Attr::Strict},
      {Attr::Strict, Attr::Lazy, Attr::Strict},
      {Attr::Strict, Attr::Unknown, Attr::Strict},
      {Attr::Strict, Attr::Unused, Attr::Strict},
      {Attr::Lazy, Attr::Lazy, Attr::Lazy},
      {Attr::Lazy, Attr::Unknown, Attr::Unknown},
      {Attr::Lazy, Attr::Unused, Attr::Lazy},
      {Attr::Unknown, Attr::Unknown, Attr::Unknown},
      {Attr::Unknown, Attr::Unused, Attr::Unknown},
      {Attr::Unused, Attr::Unused, Attr::Unused},
  };
  for (const Row& r : rows) {
    CHECK(attr_plus(r.a, r.b, Mode::Extended) == r.out);
    CHECK(attr_plus(r.b, r.a, Mode::Extended) == r.out);
  }
}

TEST_CASE("plus is a commutative idempotent monoid in both modes") {
  for (Mode m : {Mode::Base, Mode::Extended}) {
    auto attrs = legal_attrs(m);
    Attr id = mode_default(m);
    for (Attr a : attrs) {
      CHECK(attr_plus(a, id, m) == a);
      CHECK(attr_plus(id, a, m) == a);
      CHECK(attr_plus(a, a, m) == a);
      for (Attr b : attrs) {
        CHECK(attr_plus(a, b, m) == attr_plus(b, a, m));
        for (Attr c : attrs)
          CHECK(attr_plus(attr_plus(a, b, m), c, m) ==
                attr_plus(a, attr_plus(b, c, m), m));
      }
    }
  }
}

TEST_CASE("leq table, base mode") {
  // ? is the bottom; S and L are incomparable maxima.
  auto leq = [](Attr a, Attr b) { return attr_leq(a, b, Mode::Base); };
  CHECK(leq(Attr::Unknown, Attr::Unknown));
  CHECK(leq(Attr::Unknown, Attr::Strict));
  CHECK(leq(Attr::Unknown, Attr::Lazy));
  CHECK(leq(Attr::Strict, Attr::Strict));
  CHECK(leq(Attr::Lazy, Attr::Lazy));
  CHECK_FALSE(leq(Attr::Strict, Attr::Lazy));
  CHECK_FALSE(leq(Attr::Lazy, Attr::Strict));
  CHECK_FALSE(leq(Attr::Strict, Attr::Unknown));
  CHECK_FALSE(leq(Attr::Lazy, Attr::Unknown));
}

TEST_CASE("leq table, extended mode") {
  // Extended adds L below U; S stays incomparable with both L and U.
  auto leq = [](Attr a, Attr b) { return attr_leq(a, b, Mode::Extended); };
  CHECK(leq(Attr::Lazy, Attr::Unused));
  CHECK(leq(Attr::Unknown, Attr::Unused));
  CHECK(leq(Attr::Unused, Attr::Unused));
  CHECK_FALSE(leq(Attr::Unused, Attr::Lazy));
  CHECK_FALSE(leq(Attr::Unused, Attr::Unknown));
  CHECK_FALSE(leq(Attr::Unused, Attr::Strict));
  CHECK_FALSE(leq(Attr::Strict, Attr::Unused));
}

TEST_CASE("leq is a partial order in both modes") {
  for (Mode m : {Mode::Base, Mode::Extended}) {
    auto attrs = legal_attrs(m);
    for (Attr a : attrs) {
      CHECK(attr_leq(a, a, m));
      for (Attr b : attrs) {
        if (attr_leq(a, b, m) && attr_leq(b, a, m)) CHECK(a == b);
        for (Attr c : attrs)
          if (attr_leq(a, b, m) && attr_leq(b, c, m)) CHECK(attr_leq(a, c, m));
      }
    }
  }
}

TEST_CASE("meet is the greatest lower bound") {
  for (Mode m : {Mode::Base, Mode::Extended}) {
    auto attrs = legal_attrs(m);
    for (Attr a : attrs) {
      for (Attr b : attrs) {
        Attr g = attr_meet(a, b, m);
        CHECK(attr_leq(g, a, m));
        CHECK(attr_leq(g, b, m));
        CHECK(g == attr_meet(b, a, m));
        for (Attr c : attrs)
          if (attr_leq(c, a, m) && attr_leq(c, b, m)) CHECK(attr_leq(c, g, m));
      }
    }
  }
  CHECK(attr_meet(Attr::Strict, Attr::Lazy, Mode::Base) == Attr::Unknown);
  CHECK(attr_meet(Attr::Strict, Attr::Unused, Mode::Extended) == Attr::Unknown);
  CHECK(attr_meet(Attr::Lazy, Attr::Unused, Mode::Extended) == Attr::Lazy);
}

TEST_CASE("plus is monotone with respect to leq") {
  for (Mode m : {Mode::Base, Mode::Extended}) {
    auto attrs = legal_attrs(m);
    for (Attr a : attrs)
      for (Attr a2 : attrs)
        for (Attr b : attrs)
          for (Attr b2 : attrs)
            if (attr_leq(a, a2, m) && attr_leq(b, b2, m))
              CHECK(attr_leq(attr_plus(a, b, m), attr_plus(a2, b2, m), m));
  }
}

TEST_CASE("lazify table and idempotence") {
  CHECK(attr_lazify(Attr::Strict, Mode::Base) == Attr::Lazy);
  CHECK(attr_lazify(Attr::Lazy, Mode::Base) == Attr::Lazy);
  CHECK(attr_lazify(Attr::Unknown, Mode::Base) == Attr::Lazy);
  CHECK(attr_lazify(Attr::Strict, Mode::Extended) == Attr::Lazy);
  CHECK(attr_lazify(Attr::Lazy, Mode::Extended) == Attr::Lazy);
  CHECK(attr_lazify(Attr::Unknown, Mode::Extended) == Attr::Lazy);
  CHECK(attr_lazify(Attr::Unused, Mode::Extended) == Attr::Unused);
  for (Mode m : {Mode::Base, Mode::Extended})
    for (Attr a : legal_attrs(m))
      CHECK(attr_lazify(attr_lazify(a, m), m) == attr_lazify(a, m));
}

TEST_CASE("lazify distributes over plus") {
  for (Mode m : {Mode::Base, Mode::Extended})
    for (Attr a : legal_attrs(m))
      for (Attr b : legal_attrs(m))
        CHECK(attr_lazify(attr_plus(a, b, m), m) ==
              attr_plus(attr_lazify(a, m), attr_lazify(b, m), m));
}

TEST_CASE("legality and defaults") {
  CHECK_FALSE(attr_legal(Attr::Unused, Mode::Base));
  CHECK(attr_legal(Attr::Unused, Mode::Extended));
  for (Attr a : kBase)
    for (Mode m : {Mode::Base, Mode::Extended}) CHECK(attr_legal(a, m));
  CHECK(mode_default(Mode::Base) == Attr::Lazy);
  CHECK(mode_default(Mode::Extended) == Attr::Unused);
  CHECK_THROWS_AS(attr_plus(Attr::Unused, Attr::Lazy, Mode::Base), Error);
  CHECK_THROWS_AS(attr_leq(Attr::Unused, Attr::Unused, Mode::Base), Error);
}

TEST_CASE("names") {
  CHECK(std::string(attr_name(Attr::Strict)) == "S");
  CHECK(std::string(attr_name(Attr::Lazy)) == "L");
  CHECK(std::string(attr_name(Attr::Unknown)) == "?");
  CHECK(std::string(attr_name(Attr::Unused)) == "U");
  CHECK(std::string(mode_name(Mode::Base)) == "base");
  CHECK(std::string(mode_name(Mode::Extended)) == "extended");
}

// ---------------------------------------------------------------------------
// Vectors.

TEST_CASE("vector lookup defaults by mode and updates functionally") {
  AttrVec g = vec_default(Mode::Base, {"x", "y"});
  CHECK(g.get("x") == Attr::Lazy);
  AttrVec g2 = g.with("x", Attr::Strict);
  CHECK(g2.get("x") == Attr::Strict);
  CHECK(g.get("x") == Attr::Lazy);
  CHECK(g2.get("y") == Attr::Lazy);

  AttrVec e = vec_default(Mode::Extended, {"x"});
  CHECK(e.get("x") == Attr::Unused);
  CHECK_THROWS_AS(g.get("z"), Error);
  CHECK_THROWS_AS(g.with("z", Attr::Strict), Error);
  CHECK_THROWS_AS(e.with("x", Attr::Strict).extended("x"), Error);
}

TEST_CASE("vector equality is defaulted-lookup equality") {
  AttrVec a = vec_default(Mode::Base, {"x", "y"}).with("x", Attr::Lazy);
  AttrVec b = vec_default(Mode::Base, {"y", "x"});
  CHECK(a == b);  // explicit default entry normalizes away; order ignored
  CHECK_FALSE(a == b.with("x", Attr::Strict));
  CHECK_FALSE(vec_default(Mode::Base, {"x"}) == vec_default(Mode::Base, {"y"}));
  CHECK_FALSE(vec_default(Mode::Base, {"x"}) ==
              vec_default(Mode::Extended, {"x"}));
}

TEST_CASE("pointwise vector operations agree with the scalar tables") {
  for (Mode m : {Mode::Base, Mode::Extended}) {
    auto attrs = legal_attrs(m);
    for (Attr a : attrs) {
      for (Attr b : attrs) {
        AttrVec g1 = vec_default(m, {"x", "y"}).with("x", a);
        AttrVec g2 = vec_default(m, {"y", "x"}).with("x", b).with("y", a);
        AttrVec sum = vec_plus(g1, g2);
        CHECK(sum.get("x") == attr_plus(a, b, m));
        CHECK(sum.get("y") == attr_plus(mode_default(m), a, m));
        CHECK(vec_meet(g1, g2).get("x") == attr_meet(a, b, m));
        CHECK(vec_leq(g1, g2) ==
              (attr_leq(a, b, m) && attr_leq(mode_default(m), a, m)));
        CHECK(vec_lazify(g1).get("x") == attr_lazify(a, m));
      }
    }
  }
}

TEST_CASE("scope mismatches are rejected") {
  AttrVec g1 = vec_default(Mode::Base, {"x"});
  AttrVec g2 = vec_default(Mode::Base, {"x", "y"});
  CHECK_THROWS_AS(vec_plus(g1, g2), Error);
  CHECK_THROWS_AS(vec_leq(g1, g2), Error);
  CHECK_THROWS_AS(vec_meet(g1, g2), Error);
  CHECK_THROWS_AS(g2.extended_to({"x"}), Error);
  CHECK_THROWS_AS(vec_default(Mode::Base, {"x", "x"}), Error);
}

TEST_CASE("restrict, downshift, extend") {
  AttrVec g = vec_default(Mode::Base, {"x", "y", "z"})
                  .with("x", Attr::Strict)
                  .with("y", Attr::Unknown);
  AttrVec r = vec_restrict(g, {"y", "w"});
  CHECK(r.scope() == std::vector<VarId>{"y", "w"});
  CHECK(r.get("y") == Attr::Unknown);
  CHECK(r.get("w") == Attr::Lazy);  // outside the source scope: default

  AttrVec d = vec_downshift(g, "x");
  CHECK(d.scope() == std::vector<VarId>{"y", "z"});
  CHECK(d.get("y") == Attr::Unknown);
  CHECK(d.get("z") == Attr::Lazy);
  CHECK(vec_downshift(g, "w").scope() == g.scope());  // absent var: no-op

  AttrVec e = g.extended("w");
  CHECK(e.get("w") == Attr::Lazy);
  CHECK(e.scope() == std::vector<VarId>{"x", "y", "z", "w"});
  AttrVec e2 = g.extended_to({"z", "w", "y", "x"});
  CHECK(e2.get("x") == Attr::Strict);
  CHECK(e2.get("w") == Attr::Lazy);
}

TEST_CASE("renamed comparison") {
  AttrVec g1 = vec_default(Mode::Base, {"a", "k"}).with("a", Attr::Strict);
  AttrVec g2 = vec_default(Mode::Base, {"b", "k"}).with("b", Attr::Strict);
  CHECK(vec_equal_renamed(g1, g2, {{"b", "a"}}));
  CHECK_FALSE(vec_equal_renamed(g1, g2, {}));
  CHECK_FALSE(vec_equal_renamed(g1, g2.with("k", Attr::Unknown), {{"b", "a"}}));
}

TEST_CASE("rendering") {
  AttrVec g = vec_default(Mode::Base, {"x", "y", "z"})
                  .with("y", Attr::Unknown)
                  .with("x", Attr::Strict);
  CHECK(show_vec(g) == "{x:S, y:?}");  // scope order, defaults omitted
  CHECK(show_vec(vec_default(Mode::Base, {"x"})) == "{}");
  AttrVec e = vec_default(Mode::Extended, {"x", "y"}).with("y", Attr::Lazy);
  CHECK(show_vec(e) == "{y:L}");  // L is explicit in extended mode
}
