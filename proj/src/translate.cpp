#include "strictness/translate.hpp"

#include <set>
#include <string>

namespace strictness {

// ---------------------------------------------------------------------------
// Types and contexts

TypeTranslation translate_type(const CbnTypePtr& t, Mode mode,
                               const std::vector<VarId>& scope) {
  if (std::holds_alternative<CbnTyUnit>(t->node))
    return {cbpv_f(cbpv_unit()), vec_default(mode, scope)};

  if (const auto* p = std::get_if<CbnTyProd>(&t->node)) {
    TypeTranslation t1 = translate_type(p->t1, mode, scope);
    TypeTranslation t2 = translate_type(p->t2, mode, scope);
    AttrVec u1 = vec_plus(p->g1.extended_to(scope), t1.residual);
    AttrVec u2 = vec_plus(p->g2.extended_to(scope), t2.residual);
    CompTypePtr target =
        cbpv_f(cbpv_prod(cbpv_thunk(u1, t1.target), cbpv_thunk(u2, t2.target)));
    return {target, vec_lazify(vec_plus(u1, u2))};
  }

  if (const auto* s = std::get_if<CbnTySum>(&t->node)) {
    TypeTranslation t1 = translate_type(s->t1, mode, scope);
    TypeTranslation t2 = translate_type(s->t2, mode, scope);
    AttrVec u1 = vec_plus(s->g1.extended_to(scope), t1.residual);
    AttrVec u2 = vec_plus(s->g2.extended_to(scope), t2.residual);
    CompTypePtr target =
        cbpv_f(cbpv_sum(cbpv_thunk(u1, t1.target), cbpv_thunk(u2, t2.target)));
    return {target, vec_lazify(vec_plus(u1, u2))};
  }

  const auto& a = std::get<CbnTyArrow>(t->node);
  TypeTranslation t1 = translate_type(a.t1, mode, scope);
  std::vector<VarId> inner = scope;
  inner.push_back(a.x);
  TypeTranslation t2 = translate_type(a.t2, mode, inner);
  AttrVec u1 = vec_plus(a.g1.extended_to(scope), t1.residual);
  Attr arg = attr_plus(a.arg_attr, t2.residual.get(a.x), mode);
  CompTypePtr target = cbpv_arrow(cbpv_thunk(u1, t1.target), arg,
                                  cbpv_type_downshift(t2.target, a.x));
  AttrVec residual =
      vec_plus(a.latent.extended_to(scope), vec_downshift(t2.residual, a.x));
  return {target, residual};
}

CbpvCtx translate_ctx(const CbnCtx& ctx, Mode mode) {
  CbpvCtx out;
  std::vector<VarId> scope;
  for (const auto& e : ctx) {
    TypeTranslation tt = translate_type(e.type, mode, scope);
    AttrVec grade = vec_plus(e.latent.extended_to(scope), tt.residual);
    out.push_back(CbpvCtxEntry{e.x, cbpv_thunk(grade, tt.target)});
    scope.push_back(e.x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Terms

namespace {

void collect_term_names(const CbnTermPtr& e, std::set<VarId>& out) {
  if (std::holds_alternative<CbnUnit>(e->node)) return;
  if (const auto* v = std::get_if<CbnVar>(&e->node)) {
    out.insert(v->x);
    return;
  }
  if (const auto* l = std::get_if<CbnLam>(&e->node)) {
    out.insert(l->x);
    collect_term_names(l->body, out);
    return;
  }
  if (const auto* a = std::get_if<CbnApp>(&e->node)) {
    collect_term_names(a->fn, out);
    collect_term_names(a->arg, out);
    return;
  }
  if (const auto* l = std::get_if<CbnLet>(&e->node)) {
    out.insert(l->x);
    collect_term_names(l->bound, out);
    collect_term_names(l->body, out);
    return;
  }
  if (const auto* s = std::get_if<CbnSeq>(&e->node)) {
    collect_term_names(s->e1, out);
    collect_term_names(s->e2, out);
    return;
  }
  if (const auto* p = std::get_if<CbnPair>(&e->node)) {
    collect_term_names(p->e1, out);
    collect_term_names(p->e2, out);
    return;
  }
  if (const auto* s = std::get_if<CbnSplit>(&e->node)) {
    out.insert(s->x1);
    out.insert(s->x2);
    collect_term_names(s->scrut, out);
    collect_term_names(s->body, out);
    return;
  }
  if (const auto* i = std::get_if<CbnInl>(&e->node)) {
    collect_term_names(i->e, out);
    return;
  }
  if (const auto* i = std::get_if<CbnInr>(&e->node)) {
    collect_term_names(i->e, out);
    return;
  }
  if (const auto* c = std::get_if<CbnCase>(&e->node)) {
    out.insert(c->x1);
    out.insert(c->x2);
    collect_term_names(c->scrut, out);
    collect_term_names(c->left, out);
    collect_term_names(c->right, out);
    return;
  }
  const auto& s = std::get<CbnSub>(e->node);
  collect_term_names(s.e, out);
}

struct Translator {
  Mode mode;
  std::set<VarId> used;
  int counter = 0;

  VarId fresh() {
    for (;;) {
      VarId x = "t" + std::to_string(++counter);
      if (used.insert(x).second) return x;
    }
  }

  ValuePtr thunked(const CbnCtx& ctx, const CbnTermPtr& e) {
    return cbpv_val(Value{VThunk{go(ctx, e), std::nullopt}});
  }

  CompPtr go(const CbnCtx& ctx, const CbnTermPtr& e) {
    const std::vector<VarId> scope = cbn_ctx_scope(ctx);

    if (std::holds_alternative<CbnUnit>(e->node))
      return cbpv_comp(Comp{CRet{cbpv_val(Value{VUnit{}})}});

    if (const auto* v = std::get_if<CbnVar>(&e->node))
      return cbpv_comp(Comp{CForce{cbpv_val(Value{VVar{v->x}})}});

    if (const auto* l = std::get_if<CbnLam>(&e->node)) {
      TypeTranslation t1 = translate_type(l->arg_type, mode, scope);
      ValTypePtr arg =
          cbpv_thunk(vec_plus(l->arg_latent, t1.residual), t1.target);
      CbnCtx ctx2 = ctx;
      ctx2.push_back(CbnCtxEntry{l->x, l->arg_type, l->arg_latent});
      return cbpv_comp(Comp{CLam{l->x, arg, go(ctx2, l->body), std::nullopt}});
    }

    if (const auto* a = std::get_if<CbnApp>(&e->node))
      return cbpv_comp(Comp{CApp{go(ctx, a->fn), thunked(ctx, a->arg)}});

    if (const auto* l = std::get_if<CbnLet>(&e->node)) {
      CbnJudgment bound = cbn_synth(ctx, l->bound, mode);
      CompPtr rhs = cbpv_comp(Comp{CRet{thunked(ctx, l->bound)}});
      CbnCtx ctx2 = ctx;
      ctx2.push_back(CbnCtxEntry{l->x, bound.type, bound.effect});
      return cbpv_comp(Comp{CLet{l->x, rhs, go(ctx2, l->body)}});
    }

    if (const auto* s = std::get_if<CbnSeq>(&e->node)) {
      VarId x = fresh();
      CompPtr rest = cbpv_comp(Comp{CSeq{cbpv_val(Value{VVar{x}}), go(ctx, s->e2)}});
      return cbpv_comp(Comp{CLet{x, go(ctx, s->e1), rest}});
    }

    if (const auto* p = std::get_if<CbnPair>(&e->node)) {
      ValuePtr pair =
          cbpv_val(Value{VPair{thunked(ctx, p->e1), thunked(ctx, p->e2)}});
      return cbpv_comp(Comp{CRet{pair}});
    }

    if (const auto* s = std::get_if<CbnSplit>(&e->node)) {
      CbnJudgment scrut = cbn_synth(ctx, s->scrut, mode);
      const auto& prod = std::get<CbnTyProd>(scrut.type->node);
      CbnCtx ctx2 = ctx;
      ctx2.push_back(CbnCtxEntry{s->x1, prod.t1, prod.g1});
      std::vector<VarId> mid = scope;
      mid.push_back(s->x1);
      ctx2.push_back(CbnCtxEntry{s->x2, cbn_type_weaken(prod.t2, mid),
                                 prod.g2.extended_to(mid)});
      VarId x = fresh();
      CompPtr body = cbpv_comp(
          Comp{CSplit{s->x1, s->x2, cbpv_val(Value{VVar{x}}), go(ctx2, s->body)}});
      return cbpv_comp(Comp{CLet{x, go(ctx, s->scrut), body}});
    }

    if (const auto* i = std::get_if<CbnInl>(&e->node)) {
      ValTypePtr annot = sum_annot(i->annot, scope);
      ValuePtr v = cbpv_val(Value{VInl{thunked(ctx, i->e), annot}});
      return cbpv_comp(Comp{CRet{v}});
    }

    if (const auto* i = std::get_if<CbnInr>(&e->node)) {
      ValTypePtr annot = sum_annot(i->annot, scope);
      ValuePtr v = cbpv_val(Value{VInr{thunked(ctx, i->e), annot}});
      return cbpv_comp(Comp{CRet{v}});
    }

    if (const auto* c = std::get_if<CbnCase>(&e->node)) {
      CbnJudgment scrut = cbn_synth(ctx, c->scrut, mode);
      const auto& sum = std::get<CbnTySum>(scrut.type->node);
      CbnCtx ctxL = ctx;
      ctxL.push_back(CbnCtxEntry{c->x1, sum.t1, sum.g1});
      CbnCtx ctxR = ctx;
      ctxR.push_back(CbnCtxEntry{c->x2, sum.t2, sum.g2});
      VarId x = fresh();
      CompPtr body = cbpv_comp(Comp{CCase{cbpv_val(Value{VVar{x}}), c->x1,
                                          go(ctxL, c->left), c->x2,
                                          go(ctxR, c->right)}});
      return cbpv_comp(Comp{CLet{x, go(ctx, c->scrut), body}});
    }

    const auto& s = std::get<CbnSub>(e->node);
    CbnJudgment j = cbn_synth(ctx, s.e, mode);
    TypeTranslation tt = translate_type(j.type, mode, scope);
    AttrVec target = vec_plus(s.target, tt.residual);
    return cbpv_comp(Comp{CSub{target, go(ctx, s.e), std::nullopt}});
  }

  // The value-level sum type carried by translated inl/inr annotations: the
  // payload of the F in the translated sum type.
  ValTypePtr sum_annot(const CbnTypePtr& annot, const std::vector<VarId>& scope) {
    TypeTranslation tt = translate_type(annot, mode, scope);
    const auto& f = std::get<CtF>(tt.target->node);
    return f.a;
  }
};

}  // namespace

CompPtr translate_term(const CbnCtx& ctx, const CbnTermPtr& e, Mode mode) {
  Translator tr{mode, {}, 0};
  collect_term_names(e, tr.used);
  for (const auto& ent : ctx) tr.used.insert(ent.x);
  return tr.go(ctx, e);
}

}  // namespace strictness
