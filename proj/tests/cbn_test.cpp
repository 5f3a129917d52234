#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strictness/cbn.hpp"

using namespace strictness;

namespace {

CbnTermPtr u() { return cbn_mk(CbnTerm{CbnUnit{}}); }
CbnTermPtr v(VarId x) { return cbn_mk(CbnTerm{CbnVar{std::move(x)}}); }
CbnTermPtr lam(VarId x, CbnTypePtr t, AttrVec g, CbnTermPtr b) {
  return cbn_mk(CbnTerm{CbnLam{std::move(x), std::move(t), std::move(g), std::move(b)}});
}
CbnTermPtr app(CbnTermPtr f, CbnTermPtr a) {
  return cbn_mk(CbnTerm{CbnApp{std::move(f), std::move(a)}});
}
CbnTermPtr let(VarId x, CbnTermPtr b, CbnTermPtr body) {
  return cbn_mk(CbnTerm{CbnLet{std::move(x), std::move(b), std::move(body)}});
}
CbnTermPtr seq(CbnTermPtr a, CbnTermPtr b) {
  return cbn_mk(CbnTerm{CbnSeq{std::move(a), std::move(b)}});
}
CbnTermPtr pair(CbnTermPtr a, CbnTermPtr b) {
  return cbn_mk(CbnTerm{CbnPair{std::move(a), std::move(b)}});
}
CbnTermPtr split(VarId x1, VarId x2, CbnTermPtr s, CbnTermPtr b) {
  return cbn_mk(CbnTerm{CbnSplit{std::move(x1), std::move(x2), std::move(s), std::move(b)}});
}
CbnTermPtr inl(CbnTermPtr e, CbnTypePtr annot) {
  return cbn_mk(CbnTerm{CbnInl{std::move(e), std::move(annot)}});
}
CbnTermPtr inr(CbnTermPtr e, CbnTypePtr annot) {
  return cbn_mk(CbnTerm{CbnInr{std::move(e), std::move(annot)}});
}
CbnTermPtr cse(CbnTermPtr s, VarId x1, CbnTermPtr l, VarId x2, CbnTermPtr r) {
  return cbn_mk(CbnTerm{CbnCase{std::move(s), std::move(x1), std::move(l),
                                std::move(x2), std::move(r)}});
}
CbnTermPtr sub(AttrVec g, CbnTermPtr e) {
  return cbn_mk(CbnTerm{CbnSub{std::move(g), std::move(e)}});
}

AttrVec dv(Mode m, std::vector<VarId> s) { return vec_default(m, std::move(s)); }

// unit + unit with default component grades at the given scope.
CbnTypePtr bool_ty(Mode m, std::vector<VarId> s) {
  return cbn_sum(cbn_unit(), dv(m, s), cbn_unit(), dv(m, s));
}

}  // namespace

TEST_CASE("variable lookup is strict and imports the entry's latent vector") {
  CbnCtx ctx{{"x", cbn_unit(), dv(Mode::Base, {})}};
  CbnJudgment j = cbn_synth(ctx, v("x"), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"x"}).with("x", Attr::Strict));
  CHECK(cbn_type_equal(j.type, cbn_unit()));

  // A declared latent vector surfaces alongside the strict self-use.
  CbnCtx ctx2{{"y", bool_ty(Mode::Base, {}), dv(Mode::Base, {})},
              {"x", bool_ty(Mode::Base, {"y"}), dv(Mode::Base, {"y"}).with("y", Attr::Strict)}};
  CbnJudgment j2 = cbn_synth(ctx2, v("x"), Mode::Base);
  CHECK(j2.effect == dv(Mode::Base, {"y", "x"})
                         .with("y", Attr::Strict)
                         .with("x", Attr::Strict));
}

TEST_CASE("sequencing forces its left operand") {
  CbnCtx ctx{{"x", cbn_unit(), dv(Mode::Base, {})}};
  CbnJudgment j = cbn_synth(ctx, seq(v("x"), u()), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"x"}).with("x", Attr::Strict));
  CHECK(cbn_type_equal(j.type, cbn_unit()));
  CHECK(show_cbn_judgment(j) == ":^{x:S} unit");
}

TEST_CASE("pairs suspend their components but record them in the type") {
  CbnCtx ctx{{"z", bool_ty(Mode::Base, {}), dv(Mode::Base, {})}};
  CbnTypePtr b = bool_ty(Mode::Base, {"z"});
  CbnJudgment j = cbn_synth(ctx, pair(v("z"), inl(u(), b)), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"z"}));  // both components suspended
  CbnTypePtr expect =
      cbn_prod(b, dv(Mode::Base, {"z"}).with("z", Attr::Strict), b, dv(Mode::Base, {"z"}));
  CHECK(cbn_type_equal(j.type, expect));
}

TEST_CASE("lambda records the argument attribute and suspends the body effect") {
  CbnCtx ctx{{"y", bool_ty(Mode::Base, {}), dv(Mode::Base, {})}};
  AttrVec ys = dv(Mode::Base, {"y"}).with("y", Attr::Strict);
  CbnTermPtr id = lam("x", bool_ty(Mode::Base, {"y"}), ys, v("x"));
  CbnJudgment j = cbn_synth(ctx, id, Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"y"}));
  CbnTypePtr expect = cbn_arrow("x", Attr::Strict, bool_ty(Mode::Base, {"y"}), ys,
                                ys, bool_ty(Mode::Base, {"y", "x"}));
  CHECK(cbn_type_equal(j.type, expect));
  CHECK(show_cbn_type(j.type) ==
        "(x :S (unit^{} + unit^{})^{y:S}) -[{y:S}]-> unit^{} + unit^{}");
}

TEST_CASE("application releases latent effects and suspends the argument") {
  CbnCtx ctx{{"y", bool_ty(Mode::Base, {}), dv(Mode::Base, {})}};
  AttrVec ys = dv(Mode::Base, {"y"}).with("y", Attr::Strict);
  CbnTermPtr id = lam("x", bool_ty(Mode::Base, {"y"}), ys, v("x"));
  // The argument's synthesized effect must match the arrow's component grade.
  CbnJudgment j = cbn_synth(ctx, app(id, v("y")), Mode::Base);
  CHECK(j.effect == ys);
  CHECK(cbn_type_equal(j.type, bool_ty(Mode::Base, {"y"})));

  // Mismatched argument effect is rejected, not subsumed silently.
  CbnTermPtr id_lazy =
      lam("x", bool_ty(Mode::Base, {"y"}), dv(Mode::Base, {"y"}), v("x"));
  CHECK_THROWS_AS(cbn_synth(ctx, app(id_lazy, v("y")), Mode::Base), Error);
}

TEST_CASE("let is lazy in the bound term until the body forces it") {
  CbnCtx ctx{{"x", cbn_unit(), dv(Mode::Base, {})}};
  CbnJudgment used = cbn_synth(ctx, let("w", v("x"), seq(v("w"), u())), Mode::Base);
  CHECK(used.effect == dv(Mode::Base, {"x"}).with("x", Attr::Strict));
  CbnJudgment unused = cbn_synth(ctx, let("w", v("x"), u()), Mode::Base);
  CHECK(unused.effect == dv(Mode::Base, {"x"}));
}

TEST_CASE("split scrutinizes the pair and shifts component uses onto it") {
  CbnTypePtr p = cbn_prod(cbn_unit(), dv(Mode::Base, {}), cbn_unit(), dv(Mode::Base, {}));
  CbnCtx ctx{{"p", p, dv(Mode::Base, {})}};
  CbnJudgment j =
      cbn_synth(ctx, split("a", "b", v("p"), seq(v("a"), u())), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"p"}).with("p", Attr::Strict));
  CHECK(cbn_type_equal(j.type, cbn_unit()));
}

TEST_CASE("injections check the payload against the annotated component") {
  CbnCtx ctx{{"z", cbn_unit(), dv(Mode::Base, {})}};
  // Payload effect must equal the annotated component grade exactly.
  CbnTypePtr strict_left = cbn_sum(cbn_unit(), dv(Mode::Base, {"z"}).with("z", Attr::Strict),
                                   cbn_unit(), dv(Mode::Base, {"z"}));
  CbnJudgment j = cbn_synth(ctx, inl(seq(v("z"), u()), strict_left), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"z"}));  // suspended
  CHECK(cbn_type_equal(j.type, strict_left));
  CHECK_THROWS_AS(cbn_synth(ctx, inl(u(), strict_left), Mode::Base), Error);
  CHECK_THROWS_AS(cbn_synth(ctx, inr(seq(v("z"), u()), strict_left), Mode::Base), Error);
}

TEST_CASE("case forces the scrutinee and needs agreeing branches") {
  CbnCtx ctx{{"s", bool_ty(Mode::Base, {}), dv(Mode::Base, {})},
             {"x", cbn_unit(), dv(Mode::Base, {"s"})}};
  CbnTermPtr body = seq(v("x"), u());
  CbnJudgment j = cbn_synth(ctx, cse(v("s"), "a", body, "b", body), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"s", "x"})
                        .with("s", Attr::Strict)
                        .with("x", Attr::Strict));

  // Unequal branch effects are rejected without subsumption.
  CHECK_THROWS_AS(cbn_synth(ctx, cse(v("s"), "a", body, "b", u()), Mode::Base),
                  Error);
}

TEST_CASE("subsumption reconciles branches and yields the indeterminate attribute") {
  CbnCtx ctx{{"s", bool_ty(Mode::Base, {}), dv(Mode::Base, {})},
             {"x", cbn_unit(), dv(Mode::Base, {"s"})}};
  auto tgt = [&](VarId bound) {
    return dv(Mode::Base, {"s", "x", bound}).with("x", Attr::Unknown);
  };
  CbnTermPtr t = cse(v("s"), "a", sub(tgt("a"), seq(v("x"), u())), "b",
                     sub(tgt("b"), u()));
  CbnJudgment j = cbn_synth(ctx, t, Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"s", "x"})
                        .with("s", Attr::Strict)
                        .with("x", Attr::Unknown));

  // Subsumption only moves downward in the information order.
  AttrVec up = dv(Mode::Base, {"s", "x"}).with("x", Attr::Strict);
  CHECK_THROWS_AS(cbn_synth(ctx, sub(up, u()), Mode::Base), Error);
}

TEST_CASE("church booleans share one type via subsumption") {
  AttrVec none = dv(Mode::Base, {});
  AttrVec xl = dv(Mode::Base, {"x"});
  AttrVec both_unknown =
      dv(Mode::Base, {"x", "y"}).with("x", Attr::Unknown).with("y", Attr::Unknown);
  CbnTermPtr tru =
      lam("x", cbn_unit(), none, lam("y", cbn_unit(), xl, sub(both_unknown, v("x"))));
  CbnTermPtr fls =
      lam("x", cbn_unit(), none, lam("y", cbn_unit(), xl, sub(both_unknown, v("y"))));
  CbnJudgment jt = cbn_synth({}, tru, Mode::Base);
  CbnJudgment jf = cbn_synth({}, fls, Mode::Base);
  CHECK(jt.effect == dv(Mode::Base, {}));
  CHECK(jf.effect == dv(Mode::Base, {}));
  CHECK(cbn_type_equal(jt.type, jf.type));
  CbnTypePtr inner = cbn_arrow("y", Attr::Unknown, cbn_unit(), xl,
                               xl.with("x", Attr::Unknown), cbn_unit());
  CbnTypePtr expect = cbn_arrow("x", Attr::Lazy, cbn_unit(), none, none, inner);
  CHECK(cbn_type_equal(jt.type, expect));
}

TEST_CASE("extended mode distinguishes unused from lazy") {
  CbnCtx ctx{{"x", cbn_unit(), dv(Mode::Extended, {})},
             {"y", cbn_unit(), dv(Mode::Extended, {"x"})}};
  CbnJudgment j = cbn_synth(ctx, pair(v("x"), v("y")), Mode::Extended);
  CHECK(j.effect == dv(Mode::Extended, {"x", "y"})
                        .with("x", Attr::Lazy)
                        .with("y", Attr::Lazy));
  CbnTypePtr expect = cbn_prod(
      cbn_unit(), dv(Mode::Extended, {"x", "y"}).with("x", Attr::Strict),
      cbn_unit(), dv(Mode::Extended, {"x", "y"}).with("y", Attr::Strict));
  CHECK(cbn_type_equal(j.type, expect));
  CHECK(show_cbn_type(j.type) == "unit^{x:S} * unit^{y:S}");

  // The same term in base mode marks nothing unused: both sides default to L.
  CbnCtx bctx{{"x", cbn_unit(), dv(Mode::Base, {})},
              {"y", cbn_unit(), dv(Mode::Base, {"x"})}};
  CbnJudgment jb = cbn_synth(bctx, pair(v("x"), v("y")), Mode::Base);
  CHECK(jb.effect == dv(Mode::Base, {"x", "y"}));
}

TEST_CASE("extended mode checks argument types for well-formedness") {
  CbnCtx ctx{{"y", cbn_unit(), dv(Mode::Extended, {})}};
  std::vector<VarId> sc{"y"};
  CbnTypePtr t = cbn_prod(cbn_unit(), dv(Mode::Extended, sc).with("y", Attr::Strict),
                          cbn_unit(), dv(Mode::Extended, sc));
  // E(t) mentions y strictly, so a latent vector that drops y disagrees.
  CHECK(cbn_wf_type(dv(Mode::Extended, sc).with("y", Attr::Strict), t, Mode::Extended));
  CHECK(cbn_wf_type(dv(Mode::Extended, sc).with("y", Attr::Lazy), t, Mode::Extended));
  CHECK_FALSE(cbn_wf_type(dv(Mode::Extended, sc), t, Mode::Extended));
  CHECK(cbn_wf_type(dv(Mode::Extended, sc), t, Mode::Base));  // vacuous in base

  CbnTermPtr bad = lam("x", t, dv(Mode::Extended, sc), v("x"));
  CHECK_THROWS_AS(cbn_synth(ctx, bad, Mode::Extended), Error);
  CbnTermPtr good = lam("x", t, dv(Mode::Extended, sc).with("y", Attr::Lazy), v("x"));
  CHECK_NOTHROW(cbn_synth(ctx, good, Mode::Extended));
}

TEST_CASE("extended lambdas cannot claim latent uses their result type hides") {
  CbnCtx ctx{{"y", cbn_unit(), dv(Mode::Extended, {})}};
  AttrVec ys = dv(Mode::Extended, {"y"}).with("y", Attr::Strict);
  // unit result: the latent use of y would vanish from the type.
  CbnTermPtr hidden = lam("w", cbn_unit(), ys, seq(v("w"), u()));
  try {
    cbn_synth(ctx, hidden, Mode::Extended);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::IllFormedType);
  }
  // Surfacing the use of y in the result type restores honesty.
  CbnTermPtr honest = lam("w", cbn_unit(), ys, pair(seq(v("w"), v("y")), u()));
  CHECK_NOTHROW(cbn_synth(ctx, honest, Mode::Extended));
  // Base mode has no such condition.
  CbnCtx bctx{{"y", cbn_unit(), dv(Mode::Base, {})}};
  AttrVec bys = dv(Mode::Base, {"y"}).with("y", Attr::Strict);
  CHECK_NOTHROW(cbn_synth(bctx, lam("w", cbn_unit(), bys, seq(v("w"), u())), Mode::Base));
}

TEST_CASE("structural errors carry their codes") {
  CbnCtx ctx{{"x", cbn_unit(), dv(Mode::Base, {})}};
  try {
    cbn_synth(ctx, v("nope"), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::UnboundVariable);
  }
  try {
    cbn_synth(ctx, app(u(), u()), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotAFunction);
  }
  try {
    cbn_synth(ctx, lam("x", cbn_unit(), dv(Mode::Base, {"x"}), u()), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::ShadowedBinder);
  }
  try {
    cbn_synth(ctx, seq(pair(u(), u()), u()), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::TypeMismatch);
  }
}

TEST_CASE("downshift and weaken act on every vector inside a type") {
  AttrVec g = dv(Mode::Base, {"a", "b"}).with("a", Attr::Strict).with("b", Attr::Unknown);
  CbnTypePtr t = cbn_prod(cbn_unit(), g, cbn_unit(), g);
  CbnTypePtr down = cbn_type_downshift(t, "a");
  const auto& pr = std::get<CbnTyProd>(down->node);
  CHECK(pr.g1.scope() == std::vector<VarId>{"b"});
  CHECK(pr.g1.get("b") == Attr::Unknown);
  CbnTypePtr wide = cbn_type_weaken(t, {"a", "b", "c"});
  const auto& pw = std::get<CbnTyProd>(wide->node);
  CHECK(pw.g1.get("c") == Attr::Lazy);
  CHECK(pw.g1.get("a") == Attr::Strict);
}
