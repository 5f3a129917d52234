#include "strictness/program.hpp"

namespace strictness {

LoadedProgram load_program(const ProgramFile& pf) {
  LoadedProgram lp;
  lp.file = pf;
  if (pf.language == Language::Cbn) {
    CbnCtx ctx;
    for (const auto& d : pf.cbn_decls) {
      CbnJudgment j = cbn_synth(ctx, d.term, pf.mode);
      if (!cbn_type_equal(j.type, d.type))
        fail(Errc::TypeMismatch, "declaration " + d.name + ": declared " +
                                     show_cbn_type(d.type) + " but synthesized " +
                                     show_cbn_type(j.type));
      ctx.push_back(CbnCtxEntry{d.name, d.type, j.effect});
    }
    if (pf.mode == Mode::Extended && !cbn_wf_ctx(ctx, pf.mode))
      fail(Errc::IllFormedType, "declarations form an ill-formed context");
    lp.cbn = LoadedCbn{ctx, cbn_synth(ctx, pf.cbn_main, pf.mode)};
  } else {
    CbpvCtx ctx;
    std::vector<CbpvValJudgment> decls;
    for (const auto& d : pf.cbpv_decls) {
      CbpvValJudgment j = cbpv_synth_value(ctx, d.term, pf.mode);
      if (!cbpv_type_equal(j.type, d.type))
        fail(Errc::TypeMismatch, "declaration " + d.name + ": declared " +
                                     show_cbpv_val_type(d.type) + " but synthesized " +
                                     show_cbpv_val_type(j.type));
      decls.push_back(j);
      ctx.push_back(CbpvCtxEntry{d.name, d.type});
    }
    lp.cbpv = LoadedCbpv{ctx, std::move(decls),
                         cbpv_synth_comp(ctx, pf.cbpv_main, pf.mode)};
  }
  return lp;
}

ProgramFile translate_program(const ProgramFile& pf) {
  if (pf.language != Language::Cbn)
    fail(Errc::Internal, "only call-by-name programs can be translated");
  LoadedProgram lp = load_program(pf);
  const CbnCtx& ctx = lp.cbn->ctx;
  CbpvCtx tctx = translate_ctx(ctx, pf.mode);

  ProgramFile out;
  out.language = Language::Cbpv;
  out.mode = pf.mode;
  for (std::size_t i = 0; i < pf.cbn_decls.size(); ++i) {
    CbnCtx prefix(ctx.begin(), ctx.begin() + i);
    CompPtr m = translate_term(prefix, pf.cbn_decls[i].term, pf.mode);
    out.cbpv_decls.push_back(CbpvDecl{pf.cbn_decls[i].name, tctx[i].type,
                                      cbpv_val(Value{VThunk{m, std::nullopt}})});
  }
  out.cbpv_main = translate_term(ctx, pf.cbn_main, pf.mode);
  return out;
}

Runnable prepare_run(const LoadedProgram& lp) {
  const Mode mode = lp.file.mode;
  Env env;
  if (lp.file.language == Language::Cbn) {
    const CbnCtx& ctx = lp.cbn->ctx;
    CbpvCtx tctx = translate_ctx(ctx, mode);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      CbnCtx prefix(ctx.begin(), ctx.begin() + i);
      CbpvCtx tprefix(tctx.begin(), tctx.begin() + i);
      CompPtr m = translate_term(prefix, lp.file.cbn_decls[i].term, mode);
      CbpvCompJudgment j = cbpv_synth_comp(tprefix, m, mode);
      TermValPtr w = term_val(TerminalValue{TwThunk{j.effect, env, j.elab}});
      env.bindings.emplace(ctx[i].x, std::move(w));
      env.scope.push_back(ctx[i].x);
    }
    CompPtr m = translate_term(ctx, lp.file.cbn_main, mode);
    return Runnable{std::move(env), cbpv_synth_comp(tctx, m, mode).elab};
  }
  for (std::size_t i = 0; i < lp.cbpv->decls.size(); ++i) {
    Outcome o = eval_value(env.scope, env, lp.cbpv->decls[i].elab, mode);
    if (o.kind != OutcomeKind::Success)
      fail(Errc::Internal, "declaration evaluation failed: " + show_outcome(o));
    env.bindings.emplace(lp.cbpv->ctx[i].x, *o.value);
    env.scope.push_back(lp.cbpv->ctx[i].x);
  }
  return Runnable{std::move(env), lp.cbpv->main.elab};
}

const char* classification(Attr a) {
  switch (a) {
    case Attr::Strict: return "strict";
    case Attr::Lazy: return "lazy";
    case Attr::Unknown: return "indeterminate";
    case Attr::Unused: return "unused";
  }
  fail(Errc::Internal, "bad attr tag");
}

namespace {

// Walks a checked term mirroring the checker's context discipline, recording
// the argument attribute of every lambda's synthesized arrow type.
struct CbnLamWalk {
  Mode mode;
  std::vector<ReportEntry> out;
  int counter = 0;

  void walk(const CbnCtx& ctx, const CbnTermPtr& e) {
    if (const auto* l = std::get_if<CbnLam>(&e->node)) {
      int k = ++counter;
      CbnJudgment j = cbn_synth(ctx, e, mode);
      const auto& arrow = std::get<CbnTyArrow>(j.type->node);
      out.push_back(ReportEntry{"fn#" + std::to_string(k) + "(" + l->x + ")",
                                arrow.arg_attr});
      CbnCtx ctx2 = ctx;
      ctx2.push_back(CbnCtxEntry{l->x, l->arg_type, l->arg_latent});
      walk(ctx2, l->body);
      return;
    }
    if (const auto* a = std::get_if<CbnApp>(&e->node)) {
      walk(ctx, a->fn);
      walk(ctx, a->arg);
      return;
    }
    if (const auto* l = std::get_if<CbnLet>(&e->node)) {
      walk(ctx, l->bound);
      CbnJudgment bound = cbn_synth(ctx, l->bound, mode);
      CbnCtx ctx2 = ctx;
      ctx2.push_back(CbnCtxEntry{l->x, bound.type, bound.effect});
      walk(ctx2, l->body);
      return;
    }
    if (const auto* s = std::get_if<CbnSeq>(&e->node)) {
      walk(ctx, s->e1);
      walk(ctx, s->e2);
      return;
    }
    if (const auto* p = std::get_if<CbnPair>(&e->node)) {
      walk(ctx, p->e1);
      walk(ctx, p->e2);
      return;
    }
    if (const auto* s = std::get_if<CbnSplit>(&e->node)) {
      walk(ctx, s->scrut);
      CbnJudgment scrut = cbn_synth(ctx, s->scrut, mode);
      const auto& prod = std::get<CbnTyProd>(scrut.type->node);
      CbnCtx ctx2 = ctx;
      ctx2.push_back(CbnCtxEntry{s->x1, prod.t1, prod.g1});
      std::vector<VarId> inner = cbn_ctx_scope(ctx2);
      ctx2.push_back(CbnCtxEntry{s->x2, cbn_type_weaken(prod.t2, inner),
                                 prod.g2.extended_to(inner)});
      walk(ctx2, s->body);
      return;
    }
    if (const auto* i = std::get_if<CbnInl>(&e->node)) {
      walk(ctx, i->e);
      return;
    }
    if (const auto* i = std::get_if<CbnInr>(&e->node)) {
      walk(ctx, i->e);
      return;
    }
    if (const auto* c = std::get_if<CbnCase>(&e->node)) {
      walk(ctx, c->scrut);
      CbnJudgment scrut = cbn_synth(ctx, c->scrut, mode);
      const auto& sum = std::get<CbnTySum>(scrut.type->node);
      CbnCtx ctxL = ctx;
      ctxL.push_back(CbnCtxEntry{c->x1, sum.t1, sum.g1});
      walk(ctxL, c->left);
      CbnCtx ctxR = ctx;
      ctxR.push_back(CbnCtxEntry{c->x2, sum.t2, sum.g2});
      walk(ctxR, c->right);
      return;
    }
    if (const auto* s = std::get_if<CbnSub>(&e->node)) {
      walk(ctx, s->e);
      return;
    }
  }
};

struct CbpvLamWalk {
  Mode mode;
  std::vector<ReportEntry> out;
  int counter = 0;

  void walk_v(const CbpvCtx& ctx, const ValuePtr& v) {
    if (const auto* t = std::get_if<VThunk>(&v->node)) {
      walk_c(ctx, t->body);
      return;
    }
    if (const auto* p = std::get_if<VPair>(&v->node)) {
      walk_v(ctx, p->v1);
      walk_v(ctx, p->v2);
      return;
    }
    if (const auto* i = std::get_if<VInl>(&v->node)) {
      walk_v(ctx, i->v);
      return;
    }
    if (const auto* i = std::get_if<VInr>(&v->node)) {
      walk_v(ctx, i->v);
      return;
    }
  }

  void walk_c(const CbpvCtx& ctx, const CompPtr& m) {
    if (const auto* l = std::get_if<CLam>(&m->node)) {
      int k = ++counter;
      CbpvCompJudgment j = cbpv_synth_comp(ctx, m, mode);
      const auto& arrow = std::get<CtArrow>(j.type->node);
      out.push_back(
          ReportEntry{"fn#" + std::to_string(k) + "(" + l->x + ")", arrow.arg_attr});
      CbpvCtx ctx2 = ctx;
      ctx2.push_back(CbpvCtxEntry{l->x, l->arg_type});
      walk_c(ctx2, l->body);
      return;
    }
    if (const auto* a = std::get_if<CApp>(&m->node)) {
      walk_c(ctx, a->fn);
      walk_v(ctx, a->arg);
      return;
    }
    if (const auto* f = std::get_if<CForce>(&m->node)) return walk_v(ctx, f->v);
    if (const auto* r = std::get_if<CRet>(&m->node)) return walk_v(ctx, r->v);
    if (const auto* l = std::get_if<CLet>(&m->node)) {
      walk_c(ctx, l->m1);
      CbpvCompJudgment j1 = cbpv_synth_comp(ctx, l->m1, mode);
      const auto& f = std::get<CtF>(j1.type->node);
      CbpvCtx ctx2 = ctx;
      ctx2.push_back(CbpvCtxEntry{l->x, f.a});
      walk_c(ctx2, l->m2);
      return;
    }
    if (const auto* s = std::get_if<CSeq>(&m->node)) {
      walk_v(ctx, s->v);
      walk_c(ctx, s->m);
      return;
    }
    if (const auto* s = std::get_if<CSplit>(&m->node)) {
      walk_v(ctx, s->v);
      CbpvValJudgment j = cbpv_synth_value(ctx, s->v, mode);
      const auto& prod = std::get<VtProd>(j.type->node);
      CbpvCtx ctx2 = ctx;
      ctx2.push_back(CbpvCtxEntry{s->x1, prod.a1});
      ctx2.push_back(CbpvCtxEntry{s->x2, prod.a2});
      walk_c(ctx2, s->body);
      return;
    }
    if (const auto* c = std::get_if<CCase>(&m->node)) {
      walk_v(ctx, c->v);
      CbpvValJudgment j = cbpv_synth_value(ctx, c->v, mode);
      const auto& sum = std::get<VtSum>(j.type->node);
      CbpvCtx ctxL = ctx;
      ctxL.push_back(CbpvCtxEntry{c->x1, sum.a1});
      walk_c(ctxL, c->m1);
      CbpvCtx ctxR = ctx;
      ctxR.push_back(CbpvCtxEntry{c->x2, sum.a2});
      walk_c(ctxR, c->m2);
      return;
    }
    if (const auto* s = std::get_if<CSub>(&m->node)) {
      walk_c(ctx, s->m);
      return;
    }
  }
};

}  // namespace

StrictnessReport report_program(const LoadedProgram& lp) {
  StrictnessReport rep;
  if (lp.file.language == Language::Cbn) {
    for (const auto& d : lp.file.cbn_decls)
      rep.vars.push_back(ReportEntry{d.name, lp.cbn->main.effect.get(d.name)});
    CbnLamWalk w{lp.file.mode, {}, 0};
    w.walk(lp.cbn->ctx, lp.file.cbn_main);
    rep.lambdas = std::move(w.out);
  } else {
    for (const auto& d : lp.file.cbpv_decls)
      rep.vars.push_back(ReportEntry{d.name, lp.cbpv->main.effect.get(d.name)});
    CbpvLamWalk w{lp.file.mode, {}, 0};
    w.walk_c(lp.cbpv->ctx, lp.file.cbpv_main);
    rep.lambdas = std::move(w.out);
  }
  return rep;
}

}  // namespace strictness
