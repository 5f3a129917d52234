#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strictness/syntax.hpp"

using namespace strictness;

namespace {

AttrVec dv(Mode m, std::vector<VarId> s) { return vec_default(m, std::move(s)); }

void roundtrip_cbn_term(const std::string& src, Mode mode,
                        const std::vector<VarId>& scope) {
  CbnTermPtr t = parse_cbn_term(src, mode, scope);
  std::string printed = show_cbn_term(t);
  CbnTermPtr again = parse_cbn_term(printed, mode, scope);
  CHECK(show_cbn_term(again) == printed);
}

void roundtrip_cbpv_comp(const std::string& src, Mode mode,
                         const std::vector<VarId>& scope) {
  CompPtr m = parse_cbpv_comp(src, mode, scope);
  std::string printed = show_cbpv_comp(m);
  CompPtr again = parse_cbpv_comp(printed, mode, scope);
  CHECK(show_cbpv_comp(again) == printed);
}

}  // namespace

TEST_CASE("attribute vectors parse against the ambient scope") {
  AttrVec g = parse_vec("{x:S, y:?}", Mode::Base, {"x", "y"});
  CHECK(g.get("x") == Attr::Strict);
  CHECK(g.get("y") == Attr::Unknown);
  CHECK(parse_vec("{}", Mode::Base, {"x"}) == dv(Mode::Base, {"x"}));
  CHECK(parse_vec(" { x : L } ", Mode::Base, {"x"}) == dv(Mode::Base, {"x"}));
  CHECK(parse_vec("{x:U}", Mode::Extended, {"x"}).get("x") == Attr::Unused);

  for (const char* bad : {"{z:S}", "{x:S, x:L}", "{x:U}", "{x}", "{x:S"}) {
    try {
      parse_vec(bad, Mode::Base, {"x", "y"});
      FAIL("expected a parse error for ", bad);
    } catch (const Error& e) {
      CHECK(e.code == Errc::ParseError);
    }
  }
}

TEST_CASE("types round-trip through the printer") {
  for (const char* src : {
           "unit",
           "unit^{} * unit^{}",
           "unit^{x:S} + unit^{x:?}",
           "(unit^{} + unit^{})^{x:S} * unit^{}",
           "(y :S unit^{x:S}) -[{x:?}]-> unit",
           "(y :? unit^{}) -[{}]-> unit^{y:S} * unit^{}",
       }) {
    CbnTypePtr t = parse_cbn_type(src, Mode::Base, {"x"});
    CHECK(show_cbn_type(t) == src);
    CHECK(cbn_type_equal(parse_cbn_type(show_cbn_type(t), Mode::Base, {"x"}), t));
  }
  for (const char* src : {
           "unit",
           "U[{x:S}] F unit",
           "U[{}] (unit ^S -> F unit)",
           "unit * U[{}] F unit",
           "unit + unit",
       }) {
    ValTypePtr a = parse_cbpv_val_type(src, Mode::Base, {"x"});
    CHECK(show_cbpv_val_type(a) == src);
  }
  CompTypePtr b =
      parse_cbpv_comp_type("unit ^S -> U[{x:?}] F unit ^L -> F unit", Mode::Base, {"x"});
  CHECK(show_cbpv_comp_type(b) == "unit ^S -> U[{x:?}] F unit ^L -> F unit");
}

TEST_CASE("parsers accept sugar and extra parentheses") {
  CbnTypePtr boolish = parse_cbn_type("Bool", Mode::Base, {});
  CHECK(show_cbn_type(boolish) == "unit^{} + unit^{}");
  CbnTypePtr extra = parse_cbn_type("((unit))", Mode::Base, {});
  CHECK(cbn_type_equal(extra, cbn_unit()));

  // Omitted vectors default; omitted argument attribute defaults by position.
  CbnTypePtr t = parse_cbn_type("unit * unit", Mode::Base, {});
  CHECK(show_cbn_type(t) == "unit^{} * unit^{}");

  CbnTermPtr tru = parse_cbn_term("true", Mode::Base, {});
  CHECK(show_cbn_term(tru) == "inl[unit^{} + unit^{}] ()");
  CbnTermPtr fls = parse_cbn_term("false", Mode::Base, {});
  CHECK(show_cbn_term(fls) == "inr[unit^{} + unit^{}] ()");

  CbnTermPtr ite = parse_cbn_term("if true then () else ()", Mode::Base, {});
  REQUIRE(std::holds_alternative<CbnCase>(ite->node));
  CHECK_NOTHROW(cbn_synth({}, ite, Mode::Base));
}

TEST_CASE("cbn terms round-trip") {
  std::vector<VarId> scope{"x", "y"};
  for (const char* src : {
           "()",
           "x",
           "x ; ()",
           "(x, y)",
           "fn w : unit ^ {x:S} . w",
           "(fn w : unit ^ {} . w) ()",
           "let w = x in w ; ()",
           "split (a, b) = (x, y) in a ; b ; ()",
           "inl[unit^{x:S} + unit^{y:S}] (x ; ())",
           "case inl[unit^{} + unit^{}] () of inl a -> a | inr b -> b",
           "sub[{x:?, y:?}] (x ; y)",
           "if x then (sub[{x:S, y:?}] (y ; ())) else sub[{x:S, y:?}] ()",
       }) {
    roundtrip_cbn_term(src, Mode::Base, scope);
  }
}

TEST_CASE("cbpv terms round-trip") {
  std::vector<VarId> scope{"x", "y"};
  for (const char* src : {
           "ret ()",
           "force x",
           "ret thunk{force x}",
           "fn w : unit . w ; ret ()",
           "(fn w : unit . ret w) ()",
           "w <- ret () in ret thunk{w ; force y}",
           "split (a, b) = ((), ()) in ret (a, b)",
           "case inl[unit + unit] () of inl a -> ret a | inr b -> ret b",
           "sub[{x:?, y:L}] force x",
           "ret inr[U[{x:S}] F unit + unit] ()",
       }) {
    roundtrip_cbpv_comp(src, Mode::Base, scope);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_cbn_term("let w = () in\n  (w ;; ())", Mode::Base, {});
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::ParseError);
    CHECK(std::string(e.what()).find("2:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_cbn_term("", Mode::Base, {}), Error);
  CHECK_THROWS_AS(parse_cbn_term("x", Mode::Base, {}), Error);  // unknown variable
  CHECK_THROWS_AS(parse_cbpv_comp("ret (x", Mode::Base, {"x"}), Error);
  CHECK_THROWS_AS(parse_cbn_term("() )", Mode::Base, {}), Error);  // trailing input
}

TEST_CASE("keywords cannot be binders") {
  CHECK_THROWS_AS(parse_cbn_term("fn case : unit ^ {} . ()", Mode::Base, {}), Error);
  CHECK_THROWS_AS(parse_cbn_term("let main = () in ()", Mode::Base, {}), Error);
  // Soft keywords stay usable as names.
  CHECK_NOTHROW(parse_cbn_term("let base = () in base", Mode::Base, {}));
  CHECK_NOTHROW(parse_cbpv_comp("cbn <- ret () in ret cbn", Mode::Base, {}));
}

TEST_CASE("program files parse, print, and round-trip") {
  const std::string src =
      "# a tiny program\n"
      "language cbn\n"
      "mode base\n"
      "\n"
      "var x : unit = ()\n"
      "var y : unit = x ; ()\n"
      "main = (x, y)\n";
  ProgramFile pf = parse_program(src, Mode::Base);
  CHECK(pf.language == Language::Cbn);
  CHECK(pf.mode == Mode::Base);
  REQUIRE(pf.cbn_decls.size() == 2);
  CHECK(pf.cbn_decls[1].name == "y");
  REQUIRE(pf.cbn_main != nullptr);

  std::string printed = show_program(pf);
  ProgramFile again = parse_program(printed, Mode::Base);
  CHECK(show_program(again) == printed);

  const std::string cbpv_src =
      "language cbpv\n"
      "mode extended\n"
      "var t : U[{}] F unit = thunk{ret ()}\n"
      "main = force t\n";
  ProgramFile pc = parse_program(cbpv_src, Mode::Base);
  CHECK(pc.language == Language::Cbpv);
  CHECK(pc.mode == Mode::Extended);
  REQUIRE(pc.cbpv_decls.size() == 1);
  std::string printed2 = show_program(pc);
  CHECK(show_program(parse_program(printed2, Mode::Base)) == printed2);
  CHECK(printed2.find("mode extended") != std::string::npos);
}

TEST_CASE("program files use the ambient default mode when unstated") {
  const std::string src = "language cbn\nmain = ()\n";
  CHECK(parse_program(src, Mode::Extended).mode == Mode::Extended);
  CHECK(parse_program(src, Mode::Base).mode == Mode::Base);
  // The printed form always states the mode explicitly.
  std::string printed = show_program(parse_program(src, Mode::Extended));
  CHECK(printed.find("mode extended") != std::string::npos);

  CHECK_THROWS_AS(parse_program("main = ()\n", Mode::Base), Error);
  CHECK_THROWS_AS(parse_program("language cbn\n", Mode::Base), Error);
  CHECK_THROWS_AS(parse_program("language cbn\nmode odd\nmain = ()\n", Mode::Base), Error);
  CHECK_THROWS_AS(
      parse_program("language cbn\nvar x : unit = ()\nvar x : unit = ()\nmain = x\n",
                    Mode::Base),
      Error);
}
