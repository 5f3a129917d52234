#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <string>

#include "strictness/metatheory.hpp"
#include "strictness/syntax.hpp"

using namespace strictness;

namespace {

// Count occurrences of each syntax form so distribution checks can insist
// every form actually appears in a sample of generated programs.
using Counts = std::map<std::string, int>;

void count_cbn(const CbnTermPtr& e, Counts& c) {
  if (std::holds_alternative<CbnUnit>(e->node)) {
    c["unit"]++;
  } else if (std::holds_alternative<CbnVar>(e->node)) {
    c["var"]++;
  } else if (const auto* n = std::get_if<CbnLam>(&e->node)) {
    c["lam"]++;
    count_cbn(n->body, c);
  } else if (const auto* n = std::get_if<CbnApp>(&e->node)) {
    c["app"]++;
    count_cbn(n->fn, c);
    count_cbn(n->arg, c);
  } else if (const auto* n = std::get_if<CbnLet>(&e->node)) {
    c["let"]++;
    count_cbn(n->bound, c);
    count_cbn(n->body, c);
  } else if (const auto* n = std::get_if<CbnSeq>(&e->node)) {
    c["seq"]++;
    count_cbn(n->e1, c);
    count_cbn(n->e2, c);
  } else if (const auto* n = std::get_if<CbnPair>(&e->node)) {
    c["pair"]++;
    count_cbn(n->e1, c);
    count_cbn(n->e2, c);
  } else if (const auto* n = std::get_if<CbnSplit>(&e->node)) {
    c["split"]++;
    count_cbn(n->scrut, c);
    count_cbn(n->body, c);
  } else if (const auto* n = std::get_if<CbnInl>(&e->node)) {
    c["inj"]++;
    count_cbn(n->e, c);
  } else if (const auto* n = std::get_if<CbnInr>(&e->node)) {
    c["inj"]++;
    count_cbn(n->e, c);
  } else if (const auto* n = std::get_if<CbnCase>(&e->node)) {
    c["case"]++;
    count_cbn(n->scrut, c);
    count_cbn(n->left, c);
    count_cbn(n->right, c);
  } else {
    const auto& s = std::get<CbnSub>(e->node);
    c["sub"]++;
    count_cbn(s.e, c);
  }
}

void count_cbpv_comp(const CompPtr& m, Counts& c);

void count_cbpv_val(const ValuePtr& v, Counts& c) {
  if (std::holds_alternative<VUnit>(v->node)) {
    c["unit"]++;
  } else if (std::holds_alternative<VVar>(v->node)) {
    c["var"]++;
  } else if (const auto* n = std::get_if<VThunk>(&v->node)) {
    c["thunk"]++;
    count_cbpv_comp(n->body, c);
  } else if (const auto* n = std::get_if<VPair>(&v->node)) {
    c["pair"]++;
    count_cbpv_val(n->v1, c);
    count_cbpv_val(n->v2, c);
  } else if (const auto* n = std::get_if<VInl>(&v->node)) {
    c["inj"]++;
    count_cbpv_val(n->v, c);
  } else {
    const auto& s = std::get<VInr>(v->node);
    c["inj"]++;
    count_cbpv_val(s.v, c);
  }
}

void count_cbpv_comp(const CompPtr& m, Counts& c) {
  if (const auto* n = std::get_if<CLam>(&m->node)) {
    c["lam"]++;
    count_cbpv_comp(n->body, c);
  } else if (const auto* n = std::get_if<CApp>(&m->node)) {
    c["app"]++;
    count_cbpv_comp(n->fn, c);
    count_cbpv_val(n->arg, c);
  } else if (const auto* n = std::get_if<CForce>(&m->node)) {
    c["force"]++;
    count_cbpv_val(n->v, c);
  } else if (const auto* n = std::get_if<CRet>(&m->node)) {
    c["ret"]++;
    count_cbpv_val(n->v, c);
  } else if (const auto* n = std::get_if<CLet>(&m->node)) {
    c["let"]++;
    count_cbpv_comp(n->m1, c);
    count_cbpv_comp(n->m2, c);
  } else if (const auto* n = std::get_if<CSeq>(&m->node)) {
    c["seq"]++;
    count_cbpv_val(n->v, c);
    count_cbpv_comp(n->m, c);
  } else if (const auto* n = std::get_if<CSplit>(&m->node)) {
    c["split"]++;
    count_cbpv_val(n->v, c);
    count_cbpv_comp(n->body, c);
  } else if (const auto* n = std::get_if<CCase>(&m->node)) {
    c["case"]++;
    count_cbpv_val(n->v, c);
    count_cbpv_comp(n->m1, c);
    count_cbpv_comp(n->m2, c);
  } else {
    const auto& s = std::get<CSub>(m->node);
    c["sub"]++;
    count_cbpv_comp(s.m, c);
  }
}

std::string cbn_fingerprint(const GenCbn& g) {
  std::string out;
  for (const auto& e : g.ctx)
    out += e.x + " : " + show_cbn_type(e.type) + " @ " + show_vec(e.latent) + "\n";
  for (const auto& w : g.witnesses) out += "wit " + show_cbn_term(w) + "\n";
  out += show_cbn_term(g.term) + "\n";
  out += show_vec(g.judgment.effect) + " " + show_cbn_type(g.judgment.type);
  return out;
}

std::string cbpv_fingerprint(const GenCbpv& g) {
  std::string out;
  for (const auto& e : g.ctx) out += e.x + " : " + show_cbpv_val_type(e.type) + "\n";
  for (const auto& w : g.witnesses) out += "wit " + show_cbpv_value(w) + "\n";
  out += show_cbpv_comp(g.term) + "\n";
  out += show_vec(g.effect) + " " + show_cbpv_comp_type(g.type);
  return out;
}

}  // namespace

TEST_CASE("generation is a pure function of the configuration") {
  for (Mode mode : {Mode::Base, Mode::Extended}) {
    for (uint64_t seed : {1u, 7u, 42u}) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.max_depth = 6;
      cfg.mode = mode;
      CHECK(cbn_fingerprint(gen_cbn(cfg)) == cbn_fingerprint(gen_cbn(cfg)));
      CHECK(cbpv_fingerprint(gen_cbpv(cfg)) == cbpv_fingerprint(gen_cbpv(cfg)));
    }
  }
  // Different seeds should not all collapse onto one program.
  GenConfig a, b;
  a.seed = 1;
  b.seed = 2;
  a.max_depth = b.max_depth = 6;
  CHECK(cbn_fingerprint(gen_cbn(a)) != cbn_fingerprint(gen_cbn(b)));
  CHECK(cbpv_fingerprint(gen_cbpv(a)) != cbpv_fingerprint(gen_cbpv(b)));
}

TEST_CASE("generated programs re-check and witnesses close over prefixes") {
  for (Mode mode : {Mode::Base, Mode::Extended}) {
    for (uint64_t seed = 0; seed < 40; ++seed) {
      GenConfig cfg;
      cfg.seed = seed;
      cfg.max_depth = 5;
      cfg.mode = mode;

      GenCbn g = gen_cbn(cfg);
      CbnJudgment j = cbn_synth(g.ctx, g.term, mode);
      CHECK(j.effect == g.judgment.effect);
      CHECK(cbn_type_equal(j.type, g.judgment.type));
      REQUIRE(g.witnesses.size() == g.ctx.size());
      CbnCtx prefix;
      for (std::size_t i = 0; i < g.ctx.size(); ++i) {
        CHECK_NOTHROW(cbn_synth(prefix, g.witnesses[i], mode));
        prefix.push_back(g.ctx[i]);
      }
      if (g.sentinel)
        CHECK(g.judgment.effect.get(*g.sentinel) == mode_default(mode));

      GenCbpv h = gen_cbpv(cfg);
      CbpvCompJudgment jc = cbpv_synth_comp(h.ctx, h.term, mode);
      CHECK(jc.effect == h.effect);
      CHECK(cbpv_type_equal(jc.type, h.type));
      REQUIRE(h.witnesses.size() == h.ctx.size());
      CbpvCtx pre;
      for (std::size_t i = 0; i < h.ctx.size(); ++i) {
        CHECK_NOTHROW(cbpv_synth_value(pre, h.witnesses[i], mode));
        pre.push_back(h.ctx[i]);
      }
      if (h.sentinel) CHECK(h.effect.get(*h.sentinel) == mode_default(mode));
    }
  }
}

TEST_CASE("returner generation always lands on an F type") {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 5;
    GenCbpv g = gen_cbpv_returner(cfg);
    CHECK(std::holds_alternative<CtF>(g.type->node));
  }
}

TEST_CASE("every syntax form appears across a sample") {
  Counts cbn, cbpv;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = 6;
    count_cbn(gen_cbn(cfg).term, cbn);
    count_cbpv_comp(gen_cbpv(cfg).term, cbpv);
  }
  for (const char* form : {"unit", "var", "lam", "app", "let", "seq", "pair",
                           "split", "inj", "case", "sub"}) {
    INFO("cbn form ", form);
    CHECK(cbn[form] >= 1);
  }
  for (const char* form : {"unit", "var", "thunk", "pair", "inj", "lam", "app",
                           "force", "ret", "let", "seq", "split", "case", "sub"}) {
    INFO("cbpv form ", form);
    CHECK(cbpv[form] >= 1);
  }
}

TEST_CASE("zeroed weights remove forms") {
  GenConfig cfg;
  cfg.max_depth = 5;
  cfg.weights.case_ = 0.0;
  cfg.weights.app = 0.0;
  for (uint64_t seed = 0; seed < 60; ++seed) {
    cfg.seed = seed;
    Counts cbn, cbpv;
    count_cbn(gen_cbn(cfg).term, cbn);
    count_cbpv_comp(gen_cbpv(cfg).term, cbpv);
    CHECK(cbn["case"] == 0);
    CHECK(cbn["app"] == 0);
    CHECK(cbpv["case"] == 0);
    CHECK(cbpv["app"] == 0);
  }
}

TEST_CASE("bad configurations are rejected") {
  GenConfig cfg;
  cfg.max_depth = 0;
  CHECK_THROWS_AS(gen_cbn(cfg), Error);

  cfg = GenConfig{};
  cfg.weights = GenWeights{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  try {
    gen_cbpv(cfg);
    FAIL("expected a rejected configuration");
  } catch (const Error& e) {
    CHECK(e.code == Errc::Internal);
  }

  cfg = GenConfig{};
  cfg.weights.var = -1.0;
  CHECK_THROWS_AS(gen_cbn(cfg), Error);
}

TEST_CASE("an unsatisfiable goal exhausts generation") {
  GenConfig cfg;
  cfg.max_depth = 3;
  cfg.max_scope = 0;
  cfg.weights = GenWeights{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  cfg.weights.var = 1.0;  // no variables exist in an empty scope
  try {
    gen_cbn(cfg);
    FAIL("expected exhaustion");
  } catch (const Error& e) {
    CHECK(e.code == Errc::GenerationExhausted);
  }
}

TEST_CASE("theorem campaigns pass on small runs") {
  for (Mode mode : {Mode::Base, Mode::Extended}) {
    GenConfig cfg;
    cfg.seed = 11;
    cfg.max_depth = 5;
    cfg.mode = mode;
    for (Language lang : {Language::Cbn, Language::Cbpv}) {
      TheoremReport r = check_soundness(cfg, lang, 30);
      INFO(show_report(r));
      CHECK(r.trials == 30);
      CHECK(r.failures == 0);

      TheoremReport lr = check_lazy_soundness(cfg, lang, 20);
      INFO(show_report(lr));
      CHECK(lr.trials == 20);
      CHECK(lr.failures == 0);
    }
    TheoremReport sf = check_strict_failure(cfg, 20);
    INFO(show_report(sf));
    CHECK(sf.trials == 20);
    CHECK(sf.failures == 0);

    TheoremReport tr = check_translation(cfg, 20);
    INFO(show_report(tr));
    CHECK(tr.trials == 20);
    CHECK(tr.failures == 0);

    TheoremReport det = check_determinism(cfg, 10, 3);
    INFO(show_report(det));
    CHECK(det.trials == 10);
    CHECK(det.failures == 0);
  }
}

TEST_CASE("reports render trials, failures, and counterexamples") {
  TheoremReport clean{"soundness", 5, 0, ""};
  CHECK(show_report(clean) == "theorem soundness: 5 trials, 0 failures");
  TheoremReport dirty{"translation", 5, 1, "seed 3: effect mismatch"};
  CHECK(show_report(dirty) ==
        "theorem translation: 5 trials, 1 failures\n  counterexample: seed 3: "
        "effect mismatch");
}
