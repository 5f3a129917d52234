#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "strictness/cbpv.hpp"

using namespace strictness;

namespace {

ValuePtr vu() { return cbpv_val(Value{VUnit{}}); }
ValuePtr vv(VarId x) { return cbpv_val(Value{VVar{std::move(x)}}); }
ValuePtr vthunk(CompPtr m) { return cbpv_val(Value{VThunk{std::move(m), std::nullopt}}); }
ValuePtr vinl(ValuePtr v, ValTypePtr t) {
  return cbpv_val(Value{VInl{std::move(v), std::move(t)}});
}
CompPtr clam(VarId x, ValTypePtr t, CompPtr b) {
  return cbpv_comp(Comp{CLam{std::move(x), std::move(t), std::move(b), std::nullopt}});
}
CompPtr capp(CompPtr f, ValuePtr a) {
  return cbpv_comp(Comp{CApp{std::move(f), std::move(a)}});
}
CompPtr cforce(ValuePtr v) { return cbpv_comp(Comp{CForce{std::move(v)}}); }
CompPtr cret(ValuePtr v) { return cbpv_comp(Comp{CRet{std::move(v)}}); }
CompPtr clet(VarId x, CompPtr a, CompPtr b) {
  return cbpv_comp(Comp{CLet{std::move(x), std::move(a), std::move(b)}});
}
CompPtr cseq(ValuePtr v, CompPtr m) {
  return cbpv_comp(Comp{CSeq{std::move(v), std::move(m)}});
}
CompPtr csplit(VarId x1, VarId x2, ValuePtr v, CompPtr b) {
  return cbpv_comp(Comp{CSplit{std::move(x1), std::move(x2), std::move(v), std::move(b)}});
}
CompPtr ccase(ValuePtr v, VarId x1, CompPtr l, VarId x2, CompPtr r) {
  return cbpv_comp(Comp{CCase{std::move(v), std::move(x1), std::move(l),
                              std::move(x2), std::move(r)}});
}
CompPtr csub(AttrVec g, CompPtr m) {
  return cbpv_comp(Comp{CSub{std::move(g), std::move(m), std::nullopt}});
}

AttrVec dv(Mode m, std::vector<VarId> s) { return vec_default(m, std::move(s)); }

CompTypePtr funit() { return cbpv_f(cbpv_unit()); }

}  // namespace

TEST_CASE("variables are strict and their types weaken to the ambient scope") {
  CbpvCtx ctx{{"x", cbpv_thunk(dv(Mode::Base, {}), funit())}};
  CbpvValJudgment j = cbpv_synth_value(ctx, vv("x"), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"x"}).with("x", Attr::Strict));
  CHECK(cbpv_type_equal(j.type, cbpv_thunk(dv(Mode::Base, {"x"}), funit())));
}

TEST_CASE("thunks suspend and stamp the body effect into the type") {
  CbpvCtx ctx{{"x", cbpv_thunk(dv(Mode::Base, {}), funit())}};
  CbpvValJudgment j = cbpv_synth_value(ctx, vthunk(cforce(vv("x"))), Mode::Base);
  AttrVec xs = dv(Mode::Base, {"x"}).with("x", Attr::Strict);
  CHECK(j.effect == dv(Mode::Base, {"x"}));  // lazified
  CHECK(cbpv_type_equal(j.type, cbpv_thunk(xs, funit())));
  const auto& th = std::get<VThunk>(j.elab->node);
  REQUIRE(th.stamp.has_value());
  CHECK(*th.stamp == xs);
}

TEST_CASE("ret passes the value effect through") {
  CbpvCtx ctx{{"x", cbpv_unit()}};
  CbpvCompJudgment j = cbpv_synth_comp(ctx, cret(vv("x")), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"x"}).with("x", Attr::Strict));
  CHECK(cbpv_type_equal(j.type, funit()));
  CbpvValJudgment t = cbpv_synth_value(ctx, vthunk(cret(vv("x"))), Mode::Base);
  CHECK(t.effect == dv(Mode::Base, {"x"}));
  CHECK(cbpv_type_equal(
      t.type, cbpv_thunk(dv(Mode::Base, {"x"}).with("x", Attr::Strict), funit())));
}

TEST_CASE("lambdas do not suspend the body effect") {
  CbpvCtx ctx{{"y", cbpv_unit()}};
  CompPtr f = clam("x", cbpv_unit(), cseq(vv("x"), cret(vv("y"))));
  CbpvCompJudgment j = cbpv_synth_comp(ctx, f, Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"y"}).with("y", Attr::Strict));
  CHECK(cbpv_type_equal(j.type, cbpv_arrow(cbpv_unit(), Attr::Strict, funit())));
  const auto& l = std::get<CLam>(j.elab->node);
  REQUIRE(l.stamp.has_value());
  CHECK(*l.stamp == j.effect);
}

TEST_CASE("thunking under a lambda suspends and the binder leaves the type") {
  CbpvCtx ctx{{"y", cbpv_unit()}};
  CompPtr f = clam("x", cbpv_unit(), cret(vthunk(cseq(vv("x"), cret(vv("y"))))));
  CbpvCompJudgment j = cbpv_synth_comp(ctx, f, Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"y"}));
  // The thunk grade inside the result type saw {x:S, y:S}; downshifting the
  // dead binder leaves {y:S}.
  CompTypePtr expect = cbpv_arrow(
      cbpv_unit(), Attr::Lazy,
      cbpv_f(cbpv_thunk(dv(Mode::Base, {"y"}).with("y", Attr::Strict), funit())));
  CHECK(cbpv_type_equal(j.type, expect));
}

TEST_CASE("let releases the bound effect and downshifts the binder") {
  CbpvCtx ctx{{"y", cbpv_unit()}};
  CompPtr inner = clet("x", cret(vu()), cret(vthunk(cseq(vv("x"), cret(vv("y"))))));
  CbpvCompJudgment ji = cbpv_synth_comp(ctx, inner, Mode::Base);
  CHECK(ji.effect == dv(Mode::Base, {"y"}));
  CHECK(cbpv_type_equal(
      ji.type,
      cbpv_f(cbpv_thunk(dv(Mode::Base, {"y"}).with("y", Attr::Strict), funit()))));

  CompPtr whole = clet("z", inner, cforce(vv("z")));
  CbpvCompJudgment j = cbpv_synth_comp(ctx, whole, Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"y"}).with("y", Attr::Strict));
  CHECK(cbpv_type_equal(j.type, funit()));
}

TEST_CASE("application sums effects with no condition on the argument") {
  CbpvCtx ctx{{"y", cbpv_unit()}};
  CompPtr f = clam("x", cbpv_unit(), cret(vu()));
  CbpvCompJudgment j = cbpv_synth_comp(ctx, capp(f, vv("y")), Mode::Base);
  // The lambda ignores x (attr L), yet the argument value's own effect counts.
  CHECK(j.effect == dv(Mode::Base, {"y"}).with("y", Attr::Strict));
  CHECK(cbpv_type_equal(j.type, funit()));
}

TEST_CASE("nested lambdas expose the outer binder's strictness directly") {
  CompPtr f = clam("x", cbpv_unit(), clam("y", cbpv_unit(), cret(vv("x"))));
  CbpvCompJudgment j = cbpv_synth_comp({}, f, Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {}));
  // In call-by-push-value the inner body is not suspended, so x is strict in
  // the outer arrow even though it is used under the inner lambda.
  CompTypePtr expect = cbpv_arrow(
      cbpv_unit(), Attr::Strict,
      cbpv_arrow(cbpv_unit(), Attr::Lazy, funit()));
  CHECK(cbpv_type_equal(j.type, expect));
}

TEST_CASE("force replays the thunk grade") {
  AttrVec ys = dv(Mode::Base, {"y"}).with("y", Attr::Strict);
  CbpvCtx ctx{{"y", cbpv_unit()},
              {"z", cbpv_thunk(ys, funit())}};
  CbpvCompJudgment j = cbpv_synth_comp(ctx, cforce(vv("z")), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"y", "z"})
                        .with("y", Attr::Strict)
                        .with("z", Attr::Strict));
  try {
    cbpv_synth_comp(ctx, cforce(vv("y")), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotAThunk);
  }
}

TEST_CASE("subsumption moves down the information order and stamps the inferred effect") {
  CbpvCtx ctx{{"x", cbpv_thunk(dv(Mode::Base, {}), funit())}};
  AttrVec xq = dv(Mode::Base, {"x"}).with("x", Attr::Unknown);
  CbpvCompJudgment j = cbpv_synth_comp(ctx, csub(xq, cforce(vv("x"))), Mode::Base);
  CHECK(j.effect == xq);
  const auto& s = std::get<CSub>(j.elab->node);
  REQUIRE(s.inferred.has_value());
  CHECK(*s.inferred == dv(Mode::Base, {"x"}).with("x", Attr::Strict));

  try {
    cbpv_synth_comp(ctx, csub(dv(Mode::Base, {"x"}).with("x", Attr::Strict),
                              cret(vu())),
                    Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::SubsumptionNotBelow);
  }
}

TEST_CASE("split and case scrutinize the value") {
  CbpvCtx ctx{{"p", cbpv_prod(cbpv_unit(), cbpv_unit())}};
  CbpvCompJudgment j =
      cbpv_synth_comp(ctx, csplit("a", "b", vv("p"), cret(vv("a"))), Mode::Base);
  CHECK(j.effect == dv(Mode::Base, {"p"}).with("p", Attr::Strict));
  CHECK(cbpv_type_equal(j.type, funit()));

  CbpvCtx sctx{{"s", cbpv_sum(cbpv_unit(), cbpv_unit())}};
  CbpvCompJudgment jc = cbpv_synth_comp(
      sctx, ccase(vv("s"), "a", cret(vv("a")), "b", cret(vv("b"))), Mode::Base);
  CHECK(jc.effect == dv(Mode::Base, {"s"}).with("s", Attr::Strict));

  // Branch judgments must agree after their binders die.
  CompPtr bad = ccase(vv("s"), "a", cret(vv("a")), "b", cret(vu()));
  CbpvCompJudgment jb = cbpv_synth_comp(sctx, bad, Mode::Base);
  CHECK(jb.effect == dv(Mode::Base, {"s"}).with("s", Attr::Strict));  // same F unit
  CompPtr worse =
      ccase(vv("s"), "a", cret(vinl(vv("a"), cbpv_sum(cbpv_unit(), cbpv_unit()))),
            "b", cret(vu()));
  CHECK_THROWS_AS(cbpv_synth_comp(sctx, worse, Mode::Base), Error);
}

TEST_CASE("extended mode defaults untouched variables to unused") {
  CbpvCtx ctx{{"x", cbpv_unit()}, {"y", cbpv_unit()}};
  CbpvCompJudgment j = cbpv_synth_comp(ctx, cret(vv("x")), Mode::Extended);
  CHECK(j.effect.get("x") == Attr::Strict);
  CHECK(j.effect.get("y") == Attr::Unused);
  CbpvValJudgment t = cbpv_synth_value(ctx, vthunk(cret(vv("x"))), Mode::Extended);
  CHECK(t.effect.get("x") == Attr::Lazy);
  CHECK(t.effect.get("y") == Attr::Unused);  // lazify preserves unused
}

TEST_CASE("thunk types compare grades exactly") {
  AttrVec xs = dv(Mode::Base, {"x"}).with("x", Attr::Strict);
  AttrVec xl = dv(Mode::Base, {"x"});
  CHECK(cbpv_type_equal(cbpv_thunk(xs, funit()), cbpv_thunk(xs, funit())));
  CHECK_FALSE(cbpv_type_equal(cbpv_thunk(xs, funit()), cbpv_thunk(xl, funit())));
  CHECK_FALSE(cbpv_type_equal(cbpv_f(cbpv_unit()),
                              cbpv_arrow(cbpv_unit(), Attr::Lazy, funit())));
}

TEST_CASE("downshift and weaken rewrite grades everywhere in a type") {
  AttrVec g = dv(Mode::Base, {"a", "b"}).with("a", Attr::Strict).with("b", Attr::Unknown);
  ValTypePtr t = cbpv_thunk(g, cbpv_arrow(cbpv_thunk(g, funit()), Attr::Strict, funit()));
  ValTypePtr down = cbpv_type_downshift(t, "a");
  const auto& th = std::get<VtThunk>(down->node);
  CHECK(th.grade.scope() == std::vector<VarId>{"b"});
  const auto& ar = std::get<CtArrow>(th.body->node);
  CHECK(std::get<VtThunk>(ar.a->node).grade.get("b") == Attr::Unknown);
  ValTypePtr wide = cbpv_type_weaken(t, {"a", "b", "c"});
  CHECK(std::get<VtThunk>(wide->node).grade.get("c") == Attr::Lazy);
}

TEST_CASE("shadowing and arity errors carry their codes") {
  CbpvCtx ctx{{"x", cbpv_unit()}};
  try {
    cbpv_synth_comp(ctx, clam("x", cbpv_unit(), cret(vu())), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::ShadowedBinder);
  }
  try {
    cbpv_synth_comp(ctx, capp(cret(vu()), vu()), Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotAFunction);
  }
  try {
    cbpv_synth_comp(ctx, clet("w", clam("a", cbpv_unit(), cret(vu())), cret(vu())),
                    Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::NotAReturner);
  }
  try {
    cbpv_synth_comp(ctx, capp(clam("a", cbpv_thunk(dv(Mode::Base, {"x"}), funit()),
                                   cret(vu())),
                              vu()),
                    Mode::Base);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code == Errc::TypeMismatch);
  }
}
