#include "strictness/cbpv.hpp"

#include <set>

namespace strictness {

// ---------------------------------------------------------------------------
// Constructors

ValTypePtr cbpv_unit() {
  static const ValTypePtr t = std::make_shared<const ValType>(ValType{VtUnit{}});
  return t;
}

ValTypePtr cbpv_thunk(AttrVec grade, CompTypePtr body) {
  return std::make_shared<const ValType>(
      ValType{VtThunk{std::move(grade), std::move(body)}});
}

ValTypePtr cbpv_prod(ValTypePtr a1, ValTypePtr a2) {
  return std::make_shared<const ValType>(ValType{VtProd{std::move(a1), std::move(a2)}});
}

ValTypePtr cbpv_sum(ValTypePtr a1, ValTypePtr a2) {
  return std::make_shared<const ValType>(ValType{VtSum{std::move(a1), std::move(a2)}});
}

CompTypePtr cbpv_f(ValTypePtr a) {
  return std::make_shared<const CompType>(CompType{CtF{std::move(a)}});
}

CompTypePtr cbpv_arrow(ValTypePtr a, Attr arg_attr, CompTypePtr b) {
  return std::make_shared<const CompType>(
      CompType{CtArrow{std::move(a), arg_attr, std::move(b)}});
}

ValuePtr cbpv_val(Value v) { return std::make_shared<const Value>(std::move(v)); }
CompPtr cbpv_comp(Comp m) { return std::make_shared<const Comp>(std::move(m)); }

std::vector<VarId> cbpv_ctx_scope(const CbpvCtx& ctx) {
  std::vector<VarId> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(e.x);
  return out;
}

// ---------------------------------------------------------------------------
// Structural helpers

bool cbpv_type_equal(const ValTypePtr& a, const ValTypePtr& b) {
  if (std::holds_alternative<VtUnit>(a->node))
    return std::holds_alternative<VtUnit>(b->node);
  if (const auto* ta = std::get_if<VtThunk>(&a->node)) {
    const auto* tb = std::get_if<VtThunk>(&b->node);
    return tb && ta->grade == tb->grade && cbpv_type_equal(ta->body, tb->body);
  }
  if (const auto* pa = std::get_if<VtProd>(&a->node)) {
    const auto* pb = std::get_if<VtProd>(&b->node);
    return pb && cbpv_type_equal(pa->a1, pb->a1) && cbpv_type_equal(pa->a2, pb->a2);
  }
  const auto& sa = std::get<VtSum>(a->node);
  const auto* sb = std::get_if<VtSum>(&b->node);
  return sb && cbpv_type_equal(sa.a1, sb->a1) && cbpv_type_equal(sa.a2, sb->a2);
}

bool cbpv_type_equal(const CompTypePtr& a, const CompTypePtr& b) {
  if (const auto* fa = std::get_if<CtF>(&a->node)) {
    const auto* fb = std::get_if<CtF>(&b->node);
    return fb && cbpv_type_equal(fa->a, fb->a);
  }
  const auto& ra = std::get<CtArrow>(a->node);
  const auto* rb = std::get_if<CtArrow>(&b->node);
  return rb && ra.arg_attr == rb->arg_attr && cbpv_type_equal(ra.a, rb->a) &&
         cbpv_type_equal(ra.b, rb->b);
}

ValTypePtr cbpv_type_downshift(const ValTypePtr& a, const VarId& x) {
  if (std::holds_alternative<VtUnit>(a->node)) return a;
  if (const auto* t = std::get_if<VtThunk>(&a->node))
    return cbpv_thunk(vec_downshift(t->grade, x), cbpv_type_downshift(t->body, x));
  if (const auto* p = std::get_if<VtProd>(&a->node))
    return cbpv_prod(cbpv_type_downshift(p->a1, x), cbpv_type_downshift(p->a2, x));
  const auto& s = std::get<VtSum>(a->node);
  return cbpv_sum(cbpv_type_downshift(s.a1, x), cbpv_type_downshift(s.a2, x));
}

CompTypePtr cbpv_type_downshift(const CompTypePtr& b, const VarId& x) {
  if (const auto* f = std::get_if<CtF>(&b->node))
    return cbpv_f(cbpv_type_downshift(f->a, x));
  const auto& r = std::get<CtArrow>(b->node);
  return cbpv_arrow(cbpv_type_downshift(r.a, x), r.arg_attr,
                    cbpv_type_downshift(r.b, x));
}

ValTypePtr cbpv_type_weaken(const ValTypePtr& a, const std::vector<VarId>& scope) {
  if (std::holds_alternative<VtUnit>(a->node)) return a;
  if (const auto* t = std::get_if<VtThunk>(&a->node))
    return cbpv_thunk(t->grade.extended_to(scope), cbpv_type_weaken(t->body, scope));
  if (const auto* p = std::get_if<VtProd>(&a->node))
    return cbpv_prod(cbpv_type_weaken(p->a1, scope), cbpv_type_weaken(p->a2, scope));
  const auto& s = std::get<VtSum>(a->node);
  return cbpv_sum(cbpv_type_weaken(s.a1, scope), cbpv_type_weaken(s.a2, scope));
}

CompTypePtr cbpv_type_weaken(const CompTypePtr& b, const std::vector<VarId>& scope) {
  if (const auto* f = std::get_if<CtF>(&b->node))
    return cbpv_f(cbpv_type_weaken(f->a, scope));
  const auto& r = std::get<CtArrow>(b->node);
  return cbpv_arrow(cbpv_type_weaken(r.a, scope), r.arg_attr,
                    cbpv_type_weaken(r.b, scope));
}

// ---------------------------------------------------------------------------
// The checker

static const CbpvCtxEntry* ctx_find(const CbpvCtx& ctx, const VarId& x) {
  for (const auto& e : ctx)
    if (e.x == x) return &e;
  return nullptr;
}

static CbpvCtx ctx_push(const CbpvCtx& ctx, VarId x, ValTypePtr a) {
  if (ctx_find(ctx, x))
    fail(Errc::ShadowedBinder, "binder shadows an in-scope variable: " + x);
  CbpvCtx out = ctx;
  out.push_back(CbpvCtxEntry{std::move(x), std::move(a)});
  return out;
}

namespace {

struct CbpvSynth {
  Mode mode;

  CbpvValJudgment go_v(const CbpvCtx& ctx, const ValuePtr& v) const {
    CbpvValJudgment j = dispatch_v(ctx, v);
    if (!j.effect.same_scope(vec_default(mode, cbpv_ctx_scope(ctx))))
      fail(Errc::Internal, "scope escape: effect " + show_vec(j.effect));
    return j;
  }

  CbpvCompJudgment go_c(const CbpvCtx& ctx, const CompPtr& m) const {
    CbpvCompJudgment j = dispatch_c(ctx, m);
    if (!j.effect.same_scope(vec_default(mode, cbpv_ctx_scope(ctx))))
      fail(Errc::Internal, "scope escape: effect " + show_vec(j.effect));
    return j;
  }

  CbpvValJudgment dispatch_v(const CbpvCtx& ctx, const ValuePtr& v) const {
    const std::vector<VarId> scope = cbpv_ctx_scope(ctx);

    if (std::holds_alternative<VUnit>(v->node))
      return {vec_default(mode, scope), cbpv_unit(), v};

    if (const auto* w = std::get_if<VVar>(&v->node)) {
      const CbpvCtxEntry* ent = ctx_find(ctx, w->x);
      if (!ent) fail(Errc::UnboundVariable, "unbound variable: " + w->x);
      AttrVec eff = vec_default(mode, scope).with(w->x, Attr::Strict);
      return {eff, cbpv_type_weaken(ent->type, scope), v};
    }

    if (const auto* t = std::get_if<VThunk>(&v->node)) {
      CbpvCompJudgment body = go_c(ctx, t->body);
      ValuePtr elab = cbpv_val(Value{VThunk{body.elab, body.effect}});
      return {vec_lazify(body.effect), cbpv_thunk(body.effect, body.type), elab};
    }

    if (const auto* p = std::get_if<VPair>(&v->node)) {
      CbpvValJudgment j1 = go_v(ctx, p->v1);
      CbpvValJudgment j2 = go_v(ctx, p->v2);
      ValuePtr elab = cbpv_val(Value{VPair{j1.elab, j2.elab}});
      return {vec_plus(j1.effect, j2.effect), cbpv_prod(j1.type, j2.type), elab};
    }

    if (const auto* i = std::get_if<VInl>(&v->node)) {
      ValTypePtr annot = cbpv_type_weaken(i->annot, scope);
      const auto* sum = std::get_if<VtSum>(&annot->node);
      if (!sum) fail(Errc::TypeMismatch, "inl annotation must be a sum type");
      CbpvValJudgment j = go_v(ctx, i->v);
      if (!cbpv_type_equal(j.type, sum->a1))
        fail(Errc::TypeMismatch, "inl payload type mismatch: expected " +
                                     show_cbpv_val_type(sum->a1) + ", got " +
                                     show_cbpv_val_type(j.type));
      return {j.effect, annot, cbpv_val(Value{VInl{j.elab, annot}})};
    }

    const auto& i = std::get<VInr>(v->node);
    ValTypePtr annot = cbpv_type_weaken(i.annot, scope);
    const auto* sum = std::get_if<VtSum>(&annot->node);
    if (!sum) fail(Errc::TypeMismatch, "inr annotation must be a sum type");
    CbpvValJudgment j = go_v(ctx, i.v);
    if (!cbpv_type_equal(j.type, sum->a2))
      fail(Errc::TypeMismatch, "inr payload type mismatch: expected " +
                                   show_cbpv_val_type(sum->a2) + ", got " +
                                   show_cbpv_val_type(j.type));
    return {j.effect, annot, cbpv_val(Value{VInr{j.elab, annot}})};
  }

  CbpvCompJudgment dispatch_c(const CbpvCtx& ctx, const CompPtr& m) const {
    const std::vector<VarId> scope = cbpv_ctx_scope(ctx);

    if (const auto* l = std::get_if<CLam>(&m->node)) {
      // Annotations may be scoped over fewer binders than the ambient scope
      // (translation inserts fresh lets above them); weaken on consumption.
      ValTypePtr at = cbpv_type_weaken(l->arg_type, scope);
      CbpvCtx ctx2 = ctx_push(ctx, l->x, at);
      CbpvCompJudgment body = go_c(ctx2, l->body);
      Attr alpha = body.effect.get(l->x);
      AttrVec eff = vec_downshift(body.effect, l->x);
      CompPtr elab = cbpv_comp(Comp{CLam{l->x, at, body.elab, eff}});
      return {eff, cbpv_arrow(at, alpha, cbpv_type_downshift(body.type, l->x)), elab};
    }

    if (const auto* a = std::get_if<CApp>(&m->node)) {
      CbpvCompJudgment fn = go_c(ctx, a->fn);
      const auto* arrow = std::get_if<CtArrow>(&fn.type->node);
      if (!arrow)
        fail(Errc::NotAFunction,
             "application of a non-function: " + show_cbpv_comp_type(fn.type));
      CbpvValJudgment arg = go_v(ctx, a->arg);
      if (!cbpv_type_equal(arg.type, arrow->a))
        fail(Errc::TypeMismatch, "argument type mismatch: expected " +
                                     show_cbpv_val_type(arrow->a) + ", got " +
                                     show_cbpv_val_type(arg.type));
      CompPtr elab = cbpv_comp(Comp{CApp{fn.elab, arg.elab}});
      return {vec_plus(fn.effect, arg.effect), arrow->b, elab};
    }

    if (const auto* f = std::get_if<CForce>(&m->node)) {
      CbpvValJudgment j = go_v(ctx, f->v);
      const auto* thunk = std::get_if<VtThunk>(&j.type->node);
      if (!thunk)
        fail(Errc::NotAThunk, "force of a non-thunk: " + show_cbpv_val_type(j.type));
      CompPtr elab = cbpv_comp(Comp{CForce{j.elab}});
      return {vec_plus(j.effect, thunk->grade), thunk->body, elab};
    }

    if (const auto* r = std::get_if<CRet>(&m->node)) {
      CbpvValJudgment j = go_v(ctx, r->v);
      return {j.effect, cbpv_f(j.type), cbpv_comp(Comp{CRet{j.elab}})};
    }

    if (const auto* l = std::get_if<CLet>(&m->node)) {
      CbpvCompJudgment j1 = go_c(ctx, l->m1);
      const auto* ret = std::get_if<CtF>(&j1.type->node);
      if (!ret)
        fail(Errc::NotAReturner,
             "let binds the result of a returner, got " + show_cbpv_comp_type(j1.type));
      CbpvCtx ctx2 = ctx_push(ctx, l->x, ret->a);
      CbpvCompJudgment j2 = go_c(ctx2, l->m2);
      AttrVec eff = vec_plus(j1.effect, vec_downshift(j2.effect, l->x));
      CompPtr elab = cbpv_comp(Comp{CLet{l->x, j1.elab, j2.elab}});
      return {eff, cbpv_type_downshift(j2.type, l->x), elab};
    }

    if (const auto* s = std::get_if<CSeq>(&m->node)) {
      CbpvValJudgment j1 = go_v(ctx, s->v);
      if (!std::holds_alternative<VtUnit>(j1.type->node))
        fail(Errc::TypeMismatch, "sequencing requires a unit left operand, got " +
                                     show_cbpv_val_type(j1.type));
      CbpvCompJudgment j2 = go_c(ctx, s->m);
      CompPtr elab = cbpv_comp(Comp{CSeq{j1.elab, j2.elab}});
      return {vec_plus(j1.effect, j2.effect), j2.type, elab};
    }

    if (const auto* s = std::get_if<CSplit>(&m->node)) {
      CbpvValJudgment j1 = go_v(ctx, s->v);
      const auto* prod = std::get_if<VtProd>(&j1.type->node);
      if (!prod)
        fail(Errc::TypeMismatch,
             "split of a non-product: " + show_cbpv_val_type(j1.type));
      CbpvCtx ctx2 = ctx_push(ctx_push(ctx, s->x1, prod->a1), s->x2, prod->a2);
      CbpvCompJudgment j2 = go_c(ctx2, s->body);
      AttrVec eff = vec_plus(
          j1.effect, vec_downshift(vec_downshift(j2.effect, s->x2), s->x1));
      CompPtr elab = cbpv_comp(Comp{CSplit{s->x1, s->x2, j1.elab, j2.elab}});
      return {eff,
              cbpv_type_downshift(cbpv_type_downshift(j2.type, s->x2), s->x1), elab};
    }

    if (const auto* c = std::get_if<CCase>(&m->node)) {
      CbpvValJudgment j1 = go_v(ctx, c->v);
      const auto* sum = std::get_if<VtSum>(&j1.type->node);
      if (!sum)
        fail(Errc::TypeMismatch, "case scrutinee must have a sum type, got " +
                                     show_cbpv_val_type(j1.type));
      CbpvCompJudgment left = go_c(ctx_push(ctx, c->x1, sum->a1), c->m1);
      CbpvCompJudgment right = go_c(ctx_push(ctx, c->x2, sum->a2), c->m2);
      AttrVec effL = vec_downshift(left.effect, c->x1);
      AttrVec effR = vec_downshift(right.effect, c->x2);
      if (!(effL == effR))
        fail(Errc::BranchTypeMismatch, "case branches have different effects: " +
                                           show_vec(effL) + " vs " + show_vec(effR));
      CompTypePtr tyL = cbpv_type_downshift(left.type, c->x1);
      CompTypePtr tyR = cbpv_type_downshift(right.type, c->x2);
      if (!cbpv_type_equal(tyL, tyR))
        fail(Errc::BranchTypeMismatch, "case branches have different types: " +
                                           show_cbpv_comp_type(tyL) + " vs " +
                                           show_cbpv_comp_type(tyR));
      CompPtr elab =
          cbpv_comp(Comp{CCase{j1.elab, c->x1, left.elab, c->x2, right.elab}});
      return {vec_plus(j1.effect, effL), tyL, elab};
    }

    const auto& s = std::get<CSub>(m->node);
    CbpvCompJudgment j = go_c(ctx, s.m);
    AttrVec target = s.target.extended_to(scope);
    if (!vec_leq(target, j.effect))
      fail(Errc::SubsumptionNotBelow, "subsumption target " + show_vec(target) +
                                          " is not below the synthesized effect " +
                                          show_vec(j.effect));
    CompPtr elab = cbpv_comp(Comp{CSub{target, j.elab, j.effect}});
    return {target, j.type, elab};
  }
};

}  // namespace

CbpvValJudgment cbpv_synth_value(const CbpvCtx& ctx, const ValuePtr& v, Mode mode) {
  std::set<VarId> seen;
  for (const auto& ent : ctx)
    if (!seen.insert(ent.x).second)
      fail(Errc::Internal, "duplicate context variable: " + ent.x);
  return CbpvSynth{mode}.go_v(ctx, v);
}

CbpvCompJudgment cbpv_synth_comp(const CbpvCtx& ctx, const CompPtr& m, Mode mode) {
  std::set<VarId> seen;
  for (const auto& ent : ctx)
    if (!seen.insert(ent.x).second)
      fail(Errc::Internal, "duplicate context variable: " + ent.x);
  return CbpvSynth{mode}.go_c(ctx, m);
}

// ---------------------------------------------------------------------------
// Printing (the canonical concrete syntax)

static std::string val_type_atom(const ValTypePtr& a) {
  if (std::holds_alternative<VtUnit>(a->node)) return "unit";
  if (std::holds_alternative<VtThunk>(a->node)) return show_cbpv_val_type(a);
  return "(" + show_cbpv_val_type(a) + ")";
}

static std::string comp_type_atom(const CompTypePtr& b) {
  if (std::holds_alternative<CtF>(b->node)) return show_cbpv_comp_type(b);
  return "(" + show_cbpv_comp_type(b) + ")";
}

std::string show_cbpv_val_type(const ValTypePtr& a) {
  if (std::holds_alternative<VtUnit>(a->node)) return "unit";
  if (const auto* t = std::get_if<VtThunk>(&a->node))
    return "U[" + show_vec(t->grade) + "] " + comp_type_atom(t->body);
  if (const auto* p = std::get_if<VtProd>(&a->node))
    return val_type_atom(p->a1) + " * " + val_type_atom(p->a2);
  const auto& s = std::get<VtSum>(a->node);
  return val_type_atom(s.a1) + " + " + val_type_atom(s.a2);
}

std::string show_cbpv_comp_type(const CompTypePtr& b) {
  if (const auto* f = std::get_if<CtF>(&b->node)) return "F " + val_type_atom(f->a);
  const auto& r = std::get<CtArrow>(b->node);
  return val_type_atom(r.a) + " ^" + attr_name(r.arg_attr) + " -> " +
         show_cbpv_comp_type(r.b);
}

namespace {

// Precedence: 0 = binder/prefix forms, 1 = application, 2 = atoms.
int comp_level(const Comp& m) {
  if (std::holds_alternative<CForce>(m.node) || std::holds_alternative<CRet>(m.node))
    return 2;
  if (std::holds_alternative<CApp>(m.node)) return 1;
  return 0;
}

std::string print_comp(const CompPtr& m, int need);

std::string raw_comp(const CompPtr& m) {
  if (const auto* l = std::get_if<CLam>(&m->node))
    return "fn " + l->x + " : " + show_cbpv_val_type(l->arg_type) + " . " +
           print_comp(l->body, 0);
  if (const auto* a = std::get_if<CApp>(&m->node))
    return print_comp(a->fn, 1) + " " + show_cbpv_value(a->arg);
  if (const auto* f = std::get_if<CForce>(&m->node))
    return "force " + show_cbpv_value(f->v);
  if (const auto* r = std::get_if<CRet>(&m->node))
    return "ret " + show_cbpv_value(r->v);
  if (const auto* l = std::get_if<CLet>(&m->node))
    return l->x + " <- " + print_comp(l->m1, 1) + " in " + print_comp(l->m2, 0);
  if (const auto* s = std::get_if<CSeq>(&m->node))
    return show_cbpv_value(s->v) + " ; " + print_comp(s->m, 0);
  if (const auto* s = std::get_if<CSplit>(&m->node))
    return "split (" + s->x1 + ", " + s->x2 + ") = " + show_cbpv_value(s->v) +
           " in " + print_comp(s->body, 0);
  if (const auto* c = std::get_if<CCase>(&m->node))
    return "case " + show_cbpv_value(c->v) + " of inl " + c->x1 + " -> " +
           print_comp(c->m1, 1) + " | inr " + c->x2 + " -> " + print_comp(c->m2, 1);
  const auto& s = std::get<CSub>(m->node);
  return "sub[" + show_vec(s.target) + "] " + print_comp(s.m, 2);
}

std::string print_comp(const CompPtr& m, int need) {
  std::string s = raw_comp(m);
  if (comp_level(*m) < need) return "(" + s + ")";
  return s;
}

}  // namespace

std::string show_cbpv_value(const ValuePtr& v) {
  if (std::holds_alternative<VUnit>(v->node)) return "()";
  if (const auto* w = std::get_if<VVar>(&v->node)) return w->x;
  if (const auto* t = std::get_if<VThunk>(&v->node))
    return "thunk{" + print_comp(t->body, 0) + "}";
  if (const auto* p = std::get_if<VPair>(&v->node))
    return "(" + show_cbpv_value(p->v1) + ", " + show_cbpv_value(p->v2) + ")";
  if (const auto* i = std::get_if<VInl>(&v->node))
    return "inl[" + show_cbpv_val_type(i->annot) + "] " + show_cbpv_value(i->v);
  const auto& i = std::get<VInr>(v->node);
  return "inr[" + show_cbpv_val_type(i.annot) + "] " + show_cbpv_value(i.v);
}

std::string show_cbpv_comp(const CompPtr& m) { return print_comp(m, 0); }

std::string show_cbpv_val_judgment(const CbpvValJudgment& j) {
  return ":^" + show_vec(j.effect) + " " + show_cbpv_val_type(j.type);
}

std::string show_cbpv_comp_judgment(const CbpvCompJudgment& j) {
  return ":^" + show_vec(j.effect) + " " + show_cbpv_comp_type(j.type);
}

}  // namespace strictness
