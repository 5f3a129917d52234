#include "strictness/cbn.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace strictness {

// ---------------------------------------------------------------------------
// Constructors

CbnTypePtr cbn_unit() {
  static const CbnTypePtr t = std::make_shared<const CbnType>(CbnType{CbnTyUnit{}});
  return t;
}

CbnTypePtr cbn_prod(CbnTypePtr t1, AttrVec g1, CbnTypePtr t2, AttrVec g2) {
  return std::make_shared<const CbnType>(CbnType{
      CbnTyProd{std::move(t1), std::move(g1), std::move(t2), std::move(g2)}});
}

CbnTypePtr cbn_sum(CbnTypePtr t1, AttrVec g1, CbnTypePtr t2, AttrVec g2) {
  return std::make_shared<const CbnType>(CbnType{
      CbnTySum{std::move(t1), std::move(g1), std::move(t2), std::move(g2)}});
}

CbnTypePtr cbn_arrow(VarId x, Attr arg_attr, CbnTypePtr t1, AttrVec g1,
                     AttrVec latent, CbnTypePtr t2) {
  return std::make_shared<const CbnType>(
      CbnType{CbnTyArrow{std::move(x), arg_attr, std::move(t1), std::move(g1),
                         std::move(latent), std::move(t2)}});
}

CbnTermPtr cbn_mk(CbnTerm t) { return std::make_shared<const CbnTerm>(std::move(t)); }

std::vector<VarId> cbn_ctx_scope(const CbnCtx& ctx) {
  std::vector<VarId> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(e.x);
  return out;
}

// ---------------------------------------------------------------------------
// Structural helpers

static void collect_type_names(const CbnTypePtr& t, std::set<VarId>& out) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return;
  if (const auto* p = std::get_if<CbnTyProd>(&t->node)) {
    for (const auto& v : p->g1.scope()) out.insert(v);
    for (const auto& v : p->g2.scope()) out.insert(v);
    collect_type_names(p->t1, out);
    collect_type_names(p->t2, out);
    return;
  }
  if (const auto* s = std::get_if<CbnTySum>(&t->node)) {
    for (const auto& v : s->g1.scope()) out.insert(v);
    for (const auto& v : s->g2.scope()) out.insert(v);
    collect_type_names(s->t1, out);
    collect_type_names(s->t2, out);
    return;
  }
  const auto& a = std::get<CbnTyArrow>(t->node);
  out.insert(a.x);
  for (const auto& v : a.g1.scope()) out.insert(v);
  for (const auto& v : a.latent.scope()) out.insert(v);
  collect_type_names(a.t1, out);
  collect_type_names(a.t2, out);
}

static AttrVec vec_rename(const AttrVec& g, const VarId& from, const VarId& to) {
  if (!g.in_scope(from)) return g;
  std::vector<VarId> scope;
  for (const auto& v : g.scope()) scope.push_back(v == from ? to : v);
  AttrVec out(g.mode(), scope);
  for (const auto& [x, a] : g.explicit_entries()) out = out.with(x == from ? to : x, a);
  return out;
}

static CbnTypePtr type_rename(const CbnTypePtr& t, const VarId& from, const VarId& to) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return t;
  if (const auto* p = std::get_if<CbnTyProd>(&t->node)) {
    return cbn_prod(type_rename(p->t1, from, to), vec_rename(p->g1, from, to),
                    type_rename(p->t2, from, to), vec_rename(p->g2, from, to));
  }
  if (const auto* s = std::get_if<CbnTySum>(&t->node)) {
    return cbn_sum(type_rename(s->t1, from, to), vec_rename(s->g1, from, to),
                   type_rename(s->t2, from, to), vec_rename(s->g2, from, to));
  }
  const auto& a = std::get<CbnTyArrow>(t->node);
  // The binder shadows `from` inside t2 (never happens for well-scoped types,
  // but renaming stays capture-correct regardless).
  CbnTypePtr t2 = a.x == from ? a.t2 : type_rename(a.t2, from, to);
  return cbn_arrow(a.x, a.arg_attr, type_rename(a.t1, from, to),
                   vec_rename(a.g1, from, to), vec_rename(a.latent, from, to), t2);
}

CbnTypePtr cbn_type_downshift(const CbnTypePtr& t, const VarId& x) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return t;
  if (const auto* p = std::get_if<CbnTyProd>(&t->node)) {
    return cbn_prod(cbn_type_downshift(p->t1, x), vec_downshift(p->g1, x),
                    cbn_type_downshift(p->t2, x), vec_downshift(p->g2, x));
  }
  if (const auto* s = std::get_if<CbnTySum>(&t->node)) {
    return cbn_sum(cbn_type_downshift(s->t1, x), vec_downshift(s->g1, x),
                   cbn_type_downshift(s->t2, x), vec_downshift(s->g2, x));
  }
  const auto& a = std::get<CbnTyArrow>(t->node);
  return cbn_arrow(a.x, a.arg_attr, cbn_type_downshift(a.t1, x),
                   vec_downshift(a.g1, x), vec_downshift(a.latent, x),
                   cbn_type_downshift(a.t2, x));
}

CbnTypePtr cbn_type_weaken(const CbnTypePtr& t, const std::vector<VarId>& scope) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return t;
  if (const auto* p = std::get_if<CbnTyProd>(&t->node)) {
    return cbn_prod(cbn_type_weaken(p->t1, scope), p->g1.extended_to(scope),
                    cbn_type_weaken(p->t2, scope), p->g2.extended_to(scope));
  }
  if (const auto* s = std::get_if<CbnTySum>(&t->node)) {
    return cbn_sum(cbn_type_weaken(s->t1, scope), s->g1.extended_to(scope),
                   cbn_type_weaken(s->t2, scope), s->g2.extended_to(scope));
  }
  const auto& a = std::get<CbnTyArrow>(t->node);
  VarId x = a.x;
  CbnTypePtr t2 = a.t2;
  if (std::find(scope.begin(), scope.end(), x) != scope.end()) {
    // The widened scope captures the binder name; alpha-rename it away.
    std::set<VarId> avoid(scope.begin(), scope.end());
    collect_type_names(t2, avoid);
    VarId fresh;
    for (int k = 1;; ++k) {
      fresh = x + "_" + std::to_string(k);
      if (!avoid.count(fresh)) break;
    }
    t2 = type_rename(t2, x, fresh);
    x = fresh;
  }
  std::vector<VarId> inner = scope;
  inner.push_back(x);
  return cbn_arrow(x, a.arg_attr, cbn_type_weaken(a.t1, scope),
                   a.g1.extended_to(scope), a.latent.extended_to(scope),
                   cbn_type_weaken(t2, inner));
}

static bool type_equal_ren(const CbnTypePtr& a, const CbnTypePtr& b,
                           std::map<VarId, VarId>& ren) {
  if (std::holds_alternative<CbnTyUnit>(a->node))
    return std::holds_alternative<CbnTyUnit>(b->node);
  if (const auto* pa = std::get_if<CbnTyProd>(&a->node)) {
    const auto* pb = std::get_if<CbnTyProd>(&b->node);
    return pb && vec_equal_renamed(pa->g1, pb->g1, ren) &&
           vec_equal_renamed(pa->g2, pb->g2, ren) &&
           type_equal_ren(pa->t1, pb->t1, ren) && type_equal_ren(pa->t2, pb->t2, ren);
  }
  if (const auto* sa = std::get_if<CbnTySum>(&a->node)) {
    const auto* sb = std::get_if<CbnTySum>(&b->node);
    return sb && vec_equal_renamed(sa->g1, sb->g1, ren) &&
           vec_equal_renamed(sa->g2, sb->g2, ren) &&
           type_equal_ren(sa->t1, sb->t1, ren) && type_equal_ren(sa->t2, sb->t2, ren);
  }
  const auto& aa = std::get<CbnTyArrow>(a->node);
  const auto* ab = std::get_if<CbnTyArrow>(&b->node);
  if (!ab || aa.arg_attr != ab->arg_attr) return false;
  if (!vec_equal_renamed(aa.g1, ab->g1, ren)) return false;
  if (!vec_equal_renamed(aa.latent, ab->latent, ren)) return false;
  if (!type_equal_ren(aa.t1, ab->t1, ren)) return false;
  auto old = ren.find(ab->x);
  std::optional<VarId> saved;
  if (old != ren.end()) saved = old->second;
  ren[ab->x] = aa.x;
  bool ok = type_equal_ren(aa.t2, ab->t2, ren);
  if (saved)
    ren[ab->x] = *saved;
  else
    ren.erase(ab->x);
  return ok;
}

bool cbn_type_equal(const CbnTypePtr& a, const CbnTypePtr& b) {
  std::map<VarId, VarId> ren;
  return type_equal_ren(a, b, ren);
}

// ---------------------------------------------------------------------------
// Well-formedness (the Extended-mode validity machinery)

AttrVec cbn_effects_of(const CbnTypePtr& t, Mode mode, const std::vector<VarId>& scope) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return vec_default(mode, scope);
  if (const auto* p = std::get_if<CbnTyProd>(&t->node)) {
    AttrVec acc = vec_plus(p->g1.extended_to(scope), p->g2.extended_to(scope));
    acc = vec_plus(acc, cbn_effects_of(p->t1, mode, scope));
    return vec_plus(acc, cbn_effects_of(p->t2, mode, scope));
  }
  if (const auto* s = std::get_if<CbnTySum>(&t->node)) {
    AttrVec acc = vec_plus(s->g1.extended_to(scope), s->g2.extended_to(scope));
    acc = vec_plus(acc, cbn_effects_of(s->t1, mode, scope));
    return vec_plus(acc, cbn_effects_of(s->t2, mode, scope));
  }
  const auto& a = std::get<CbnTyArrow>(t->node);
  AttrVec acc = vec_plus(a.latent.extended_to(scope), cbn_effects_of(a.t1, mode, scope));
  std::vector<VarId> inner = scope;
  inner.push_back(a.x);
  return vec_plus(acc, vec_downshift(cbn_effects_of(a.t2, mode, inner), a.x));
}

static bool wf_structural(const CbnTypePtr& t, Mode mode) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return true;
  if (const auto* p = std::get_if<CbnTyProd>(&t->node))
    return cbn_wf_type(p->g1, p->t1, mode) && cbn_wf_type(p->g2, p->t2, mode);
  if (const auto* s = std::get_if<CbnTySum>(&t->node))
    return cbn_wf_type(s->g1, s->t1, mode) && cbn_wf_type(s->g2, s->t2, mode);
  const auto& a = std::get<CbnTyArrow>(t->node);
  return cbn_wf_type(a.g1, a.t1, mode) &&
         cbn_wf_type(a.latent, cbn_type_downshift(a.t2, a.x), mode);
}

bool cbn_wf_type(const AttrVec& g, const CbnTypePtr& t, Mode mode) {
  if (mode == Mode::Base) return true;
  if (!wf_structural(t, mode)) return false;
  AttrVec e = cbn_effects_of(t, mode, g.scope());
  return vec_lazify(g) == vec_lazify(vec_plus(g, e));
}

bool cbn_wf_ctx(const CbnCtx& ctx, Mode mode) {
  for (const auto& e : ctx)
    if (!cbn_wf_type(e.latent, e.type, mode)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The checker

static const CbnCtxEntry* ctx_find(const CbnCtx& ctx, const VarId& x) {
  for (const auto& e : ctx)
    if (e.x == x) return &e;
  return nullptr;
}

static CbnCtx ctx_push(const CbnCtx& ctx, VarId x, CbnTypePtr t, AttrVec g) {
  if (ctx_find(ctx, x)) fail(Errc::ShadowedBinder, "binder shadows an in-scope variable: " + x);
  if (!g.same_scope(vec_default(g.mode(), cbn_ctx_scope(ctx))))
    fail(Errc::Internal, "context entry vector not scoped over the preceding entries: " + x);
  CbnCtx out = ctx;
  out.push_back(CbnCtxEntry{std::move(x), std::move(t), std::move(g)});
  return out;
}

namespace {

struct CbnSynth {
  Mode mode;

  CbnJudgment go(const CbnCtx& ctx, const CbnTermPtr& e) const {
    CbnJudgment j = dispatch(ctx, e);
    if (!j.effect.same_scope(vec_default(mode, cbn_ctx_scope(ctx))))
      fail(Errc::Internal, "scope escape: effect " + show_vec(j.effect));
    return j;
  }

  CbnJudgment dispatch(const CbnCtx& ctx, const CbnTermPtr& e) const {
    const std::vector<VarId> scope = cbn_ctx_scope(ctx);

    if (std::holds_alternative<CbnUnit>(e->node))
      return {vec_default(mode, scope), cbn_unit()};

    if (const auto* v = std::get_if<CbnVar>(&e->node)) {
      const CbnCtxEntry* ent = ctx_find(ctx, v->x);
      if (!ent) fail(Errc::UnboundVariable, "unbound variable: " + v->x);
      AttrVec eff = ent->latent.extended_to(scope).with(v->x, Attr::Strict);
      return {eff, cbn_type_weaken(ent->type, scope)};
    }

    if (const auto* l = std::get_if<CbnLam>(&e->node)) {
      if (!l->arg_latent.same_scope(vec_default(mode, scope)))
        fail(Errc::ScopeMismatch, "function annotation vector must be scoped over the context");
      CbnCtx ctx2 = ctx_push(ctx, l->x, l->arg_type, l->arg_latent);
      CbnJudgment body = go(ctx2, l->body);
      Attr alpha = body.effect.get(l->x);
      AttrVec latent = vec_downshift(body.effect, l->x);
      if (mode == Mode::Extended) {
        if (!cbn_wf_type(l->arg_latent, l->arg_type, mode))
          fail(Errc::IllFormedType, "argument type is not well formed against its latent vector");
        std::vector<VarId> inner = scope;
        inner.push_back(l->x);
        AttrVec et2 = vec_downshift(cbn_effects_of(body.type, mode, inner), l->x);
        if (!(vec_lazify(et2) == vec_lazify(vec_plus(l->arg_latent, et2))))
          fail(Errc::IllFormedType,
               "result type uses variables beyond the argument's latent vector");
      }
      return {vec_lazify(vec_plus(l->arg_latent, latent)),
              cbn_arrow(l->x, alpha, l->arg_type, l->arg_latent, latent, body.type)};
    }

    if (const auto* a = std::get_if<CbnApp>(&e->node)) {
      CbnJudgment fn = go(ctx, a->fn);
      const auto* arrow = std::get_if<CbnTyArrow>(&fn.type->node);
      if (!arrow) fail(Errc::NotAFunction, "application of a non-function: " + show_cbn_type(fn.type));
      CbnJudgment arg = go(ctx, a->arg);
      if (!cbn_type_equal(arg.type, arrow->t1))
        fail(Errc::TypeMismatch, "argument type mismatch: expected " +
                                     show_cbn_type(arrow->t1) + ", got " +
                                     show_cbn_type(arg.type));
      if (!(arg.effect == arrow->g1))
        fail(Errc::TypeMismatch, "argument effect must equal the declared vector: expected " +
                                     show_vec(arrow->g1) + ", got " + show_vec(arg.effect));
      AttrVec eff = vec_plus(vec_plus(fn.effect, arrow->latent), vec_lazify(arg.effect));
      return {eff, cbn_type_downshift(arrow->t2, arrow->x)};
    }

    if (const auto* l = std::get_if<CbnLet>(&e->node)) {
      CbnJudgment bound = go(ctx, l->bound);
      CbnCtx ctx2 = ctx_push(ctx, l->x, bound.type, bound.effect);
      CbnJudgment body = go(ctx2, l->body);
      AttrVec eff = vec_plus(vec_lazify(bound.effect), vec_downshift(body.effect, l->x));
      return {eff, cbn_type_downshift(body.type, l->x)};
    }

    if (const auto* s = std::get_if<CbnSeq>(&e->node)) {
      CbnJudgment j1 = go(ctx, s->e1);
      if (!std::holds_alternative<CbnTyUnit>(j1.type->node))
        fail(Errc::TypeMismatch, "sequencing requires a unit left operand, got " +
                                     show_cbn_type(j1.type));
      CbnJudgment j2 = go(ctx, s->e2);
      return {vec_plus(j1.effect, j2.effect), j2.type};
    }

    if (const auto* p = std::get_if<CbnPair>(&e->node)) {
      CbnJudgment j1 = go(ctx, p->e1);
      CbnJudgment j2 = go(ctx, p->e2);
      return {vec_lazify(vec_plus(j1.effect, j2.effect)),
              cbn_prod(j1.type, j1.effect, j2.type, j2.effect)};
    }

    if (const auto* s = std::get_if<CbnSplit>(&e->node)) {
      CbnJudgment scrut = go(ctx, s->scrut);
      const auto* prod = std::get_if<CbnTyProd>(&scrut.type->node);
      if (!prod) fail(Errc::TypeMismatch, "split of a non-product: " + show_cbn_type(scrut.type));
      CbnCtx ctx2 = ctx_push(ctx, s->x1, prod->t1, prod->g1);
      std::vector<VarId> inner = scope;
      inner.push_back(s->x1);
      CbnCtx ctx3 = ctx_push(ctx2, s->x2, cbn_type_weaken(prod->t2, inner),
                             prod->g2.extended_to(inner));
      CbnJudgment body = go(ctx3, s->body);
      AttrVec eff = vec_plus(
          scrut.effect, vec_downshift(vec_downshift(body.effect, s->x2), s->x1));
      return {eff, cbn_type_downshift(cbn_type_downshift(body.type, s->x2), s->x1)};
    }

    if (const auto* i = std::get_if<CbnInl>(&e->node)) {
      const auto* sum = std::get_if<CbnTySum>(&i->annot->node);
      if (!sum) fail(Errc::TypeMismatch, "inl annotation must be a sum type");
      CbnJudgment j = go(ctx, i->e);
      if (!cbn_type_equal(sum->t1, j.type))
        fail(Errc::TypeMismatch, "inl payload type mismatch: expected " +
                                     show_cbn_type(sum->t1) + ", got " + show_cbn_type(j.type));
      if (!(sum->g1 == j.effect))
        fail(Errc::TypeMismatch, "sum annotation left vector must equal the payload effect: " +
                                     show_vec(sum->g1) + " vs " + show_vec(j.effect));
      if (!(vec_lazify(sum->g1) == vec_lazify(sum->g2.extended_to(scope))))
        fail(Errc::IllFormedType, "sum component vectors must agree up to lazify");
      if (!cbn_wf_type(sum->g2, sum->t2, mode))
        fail(Errc::IllFormedType, "sum annotation right component is not well formed");
      AttrVec eff = vec_lazify(vec_plus(vec_plus(j.effect, sum->g2.extended_to(scope)),
                                        cbn_effects_of(sum->t2, mode, scope)));
      return {eff, i->annot};
    }

    if (const auto* i = std::get_if<CbnInr>(&e->node)) {
      const auto* sum = std::get_if<CbnTySum>(&i->annot->node);
      if (!sum) fail(Errc::TypeMismatch, "inr annotation must be a sum type");
      CbnJudgment j = go(ctx, i->e);
      if (!cbn_type_equal(sum->t2, j.type))
        fail(Errc::TypeMismatch, "inr payload type mismatch: expected " +
                                     show_cbn_type(sum->t2) + ", got " + show_cbn_type(j.type));
      if (!(sum->g2 == j.effect))
        fail(Errc::TypeMismatch, "sum annotation right vector must equal the payload effect: " +
                                     show_vec(sum->g2) + " vs " + show_vec(j.effect));
      if (!(vec_lazify(sum->g2) == vec_lazify(sum->g1.extended_to(scope))))
        fail(Errc::IllFormedType, "sum component vectors must agree up to lazify");
      if (!cbn_wf_type(sum->g1, sum->t1, mode))
        fail(Errc::IllFormedType, "sum annotation left component is not well formed");
      AttrVec eff = vec_lazify(vec_plus(vec_plus(j.effect, sum->g1.extended_to(scope)),
                                        cbn_effects_of(sum->t1, mode, scope)));
      return {eff, i->annot};
    }

    if (const auto* c = std::get_if<CbnCase>(&e->node)) {
      CbnJudgment scrut = go(ctx, c->scrut);
      const auto* sum = std::get_if<CbnTySum>(&scrut.type->node);
      if (!sum) fail(Errc::TypeMismatch, "case scrutinee must have a sum type, got " +
                                             show_cbn_type(scrut.type));
      CbnCtx ctxL = ctx_push(ctx, c->x1, sum->t1, sum->g1);
      CbnJudgment left = go(ctxL, c->left);
      CbnCtx ctxR = ctx_push(ctx, c->x2, sum->t2, sum->g2);
      CbnJudgment right = go(ctxR, c->right);
      AttrVec effL = vec_downshift(left.effect, c->x1);
      AttrVec effR = vec_downshift(right.effect, c->x2);
      if (!(effL == effR))
        fail(Errc::BranchTypeMismatch, "case branches have different effects: " +
                                           show_vec(effL) + " vs " + show_vec(effR));
      CbnTypePtr tyL = cbn_type_downshift(left.type, c->x1);
      CbnTypePtr tyR = cbn_type_downshift(right.type, c->x2);
      if (!cbn_type_equal(tyL, tyR))
        fail(Errc::BranchTypeMismatch, "case branches have different types: " +
                                           show_cbn_type(tyL) + " vs " + show_cbn_type(tyR));
      return {vec_plus(scrut.effect, effL), tyL};
    }

    const auto& s = std::get<CbnSub>(e->node);
    CbnJudgment j = go(ctx, s.e);
    if (!vec_leq(s.target, j.effect))
      fail(Errc::SubsumptionNotBelow, "subsumption target " + show_vec(s.target) +
                                          " is not below the synthesized effect " +
                                          show_vec(j.effect));
    return {s.target, j.type};
  }
};

}  // namespace

CbnJudgment cbn_synth(const CbnCtx& ctx, const CbnTermPtr& e, Mode mode) {
  std::set<VarId> seen;
  for (const auto& ent : ctx)
    if (!seen.insert(ent.x).second)
      fail(Errc::Internal, "duplicate context variable: " + ent.x);
  return CbnSynth{mode}.go(ctx, e);
}

// ---------------------------------------------------------------------------
// Printing (the canonical concrete syntax)

static std::string type_atom(const CbnTypePtr& t) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return "unit";
  return "(" + show_cbn_type(t) + ")";
}

std::string show_cbn_type(const CbnTypePtr& t) {
  if (std::holds_alternative<CbnTyUnit>(t->node)) return "unit";
  if (const auto* p = std::get_if<CbnTyProd>(&t->node))
    return type_atom(p->t1) + "^" + show_vec(p->g1) + " * " + type_atom(p->t2) + "^" +
           show_vec(p->g2);
  if (const auto* s = std::get_if<CbnTySum>(&t->node))
    return type_atom(s->t1) + "^" + show_vec(s->g1) + " + " + type_atom(s->t2) + "^" +
           show_vec(s->g2);
  const auto& a = std::get<CbnTyArrow>(t->node);
  return "(" + a.x + " :" + attr_name(a.arg_attr) + " " + type_atom(a.t1) + "^" +
         show_vec(a.g1) + ") -[" + show_vec(a.latent) + "]-> " + show_cbn_type(a.t2);
}

namespace {

// Precedence: 0 = binder/prefix forms, 1 = application, 2 = atoms.
int cbn_term_level(const CbnTerm& e) {
  if (std::holds_alternative<CbnUnit>(e.node) || std::holds_alternative<CbnVar>(e.node) ||
      std::holds_alternative<CbnPair>(e.node))
    return 2;
  if (std::holds_alternative<CbnApp>(e.node)) return 1;
  return 0;
}

std::string print_term(const CbnTermPtr& e, int need);

std::string raw_term(const CbnTermPtr& e) {
  if (std::holds_alternative<CbnUnit>(e->node)) return "()";
  if (const auto* v = std::get_if<CbnVar>(&e->node)) return v->x;
  if (const auto* l = std::get_if<CbnLam>(&e->node))
    return "fn " + l->x + " : " + type_atom(l->arg_type) + " ^ " +
           show_vec(l->arg_latent) + " . " + print_term(l->body, 0);
  if (const auto* a = std::get_if<CbnApp>(&e->node))
    return print_term(a->fn, 1) + " " + print_term(a->arg, 2);
  if (const auto* l = std::get_if<CbnLet>(&e->node))
    return "let " + l->x + " = " + print_term(l->bound, 0) + " in " +
           print_term(l->body, 0);
  if (const auto* s = std::get_if<CbnSeq>(&e->node))
    return print_term(s->e1, 1) + " ; " + print_term(s->e2, 0);
  if (const auto* p = std::get_if<CbnPair>(&e->node))
    return "(" + print_term(p->e1, 0) + ", " + print_term(p->e2, 0) + ")";
  if (const auto* s = std::get_if<CbnSplit>(&e->node))
    return "split (" + s->x1 + ", " + s->x2 + ") = " + print_term(s->scrut, 0) +
           " in " + print_term(s->body, 0);
  if (const auto* i = std::get_if<CbnInl>(&e->node))
    return "inl[" + show_cbn_type(i->annot) + "] " + print_term(i->e, 2);
  if (const auto* i = std::get_if<CbnInr>(&e->node))
    return "inr[" + show_cbn_type(i->annot) + "] " + print_term(i->e, 2);
  if (const auto* c = std::get_if<CbnCase>(&e->node))
    return "case " + print_term(c->scrut, 0) + " of inl " + c->x1 + " -> " +
           print_term(c->left, 1) + " | inr " + c->x2 + " -> " + print_term(c->right, 1);
  const auto& s = std::get<CbnSub>(e->node);
  return "sub[" + show_vec(s.target) + "] " + print_term(s.e, 2);
}

std::string print_term(const CbnTermPtr& e, int need) {
  std::string s = raw_term(e);
  if (cbn_term_level(*e) < need) return "(" + s + ")";
  return s;
}

}  // namespace

std::string show_cbn_term(const CbnTermPtr& e) { return print_term(e, 0); }

std::string show_cbn_judgment(const CbnJudgment& j) {
  return ":^" + show_vec(j.effect) + " " + show_cbn_type(j.type);
}

}  // namespace strictness
