#include "strictness/eval.hpp"

#include <algorithm>
#include <set>

namespace strictness {

TermValPtr term_val(TerminalValue w) {
  return std::make_shared<const TerminalValue>(std::move(w));
}
TermCompPtr term_comp(TerminalComp t) {
  return std::make_shared<const TerminalComp>(std::move(t));
}

// ---------------------------------------------------------------------------
// Outcome helpers

static Outcome ok_value(TermValPtr w, std::optional<AttrVec> eff) {
  return Outcome{OutcomeKind::Success, std::move(w), std::nullopt, std::move(eff),
                 "", ""};
}
static Outcome ok_comp(TermCompPtr t, std::optional<AttrVec> eff) {
  return Outcome{OutcomeKind::Success, std::nullopt, std::move(t), std::move(eff),
                 "", ""};
}
static Outcome fail_missing(VarId x) {
  return Outcome{OutcomeKind::FailMissing, std::nullopt, std::nullopt,
                 std::nullopt, std::move(x), ""};
}
static Outcome fail_stuck(std::string reason) {
  return Outcome{OutcomeKind::FailStuck, std::nullopt, std::nullopt, std::nullopt,
                 "", std::move(reason)};
}

// ---------------------------------------------------------------------------
// Size and depth bounds for the termination assertion

static long long comp_size(const CompPtr& m);

static long long value_size(const ValuePtr& v) {
  if (const auto* t = std::get_if<VThunk>(&v->node)) return 1 + comp_size(t->body);
  if (const auto* p = std::get_if<VPair>(&v->node))
    return 1 + value_size(p->v1) + value_size(p->v2);
  if (const auto* i = std::get_if<VInl>(&v->node)) return 1 + value_size(i->v);
  if (const auto* i = std::get_if<VInr>(&v->node)) return 1 + value_size(i->v);
  return 1;
}

static long long comp_size(const CompPtr& m) {
  if (const auto* l = std::get_if<CLam>(&m->node)) return 1 + comp_size(l->body);
  if (const auto* a = std::get_if<CApp>(&m->node))
    return 1 + comp_size(a->fn) + value_size(a->arg);
  if (const auto* f = std::get_if<CForce>(&m->node)) return 1 + value_size(f->v);
  if (const auto* r = std::get_if<CRet>(&m->node)) return 1 + value_size(r->v);
  if (const auto* l = std::get_if<CLet>(&m->node))
    return 1 + comp_size(l->m1) + comp_size(l->m2);
  if (const auto* s = std::get_if<CSeq>(&m->node))
    return 1 + value_size(s->v) + comp_size(s->m);
  if (const auto* s = std::get_if<CSplit>(&m->node))
    return 1 + value_size(s->v) + comp_size(s->body);
  if (const auto* c = std::get_if<CCase>(&m->node))
    return 1 + value_size(c->v) + comp_size(c->m1) + comp_size(c->m2);
  const auto& s = std::get<CSub>(m->node);
  return 1 + comp_size(s.m);
}

static long long comp_depth(const CompPtr& m);

static long long value_depth(const ValuePtr& v) {
  if (const auto* t = std::get_if<VThunk>(&v->node)) return 1 + comp_depth(t->body);
  if (const auto* p = std::get_if<VPair>(&v->node))
    return 1 + std::max(value_depth(p->v1), value_depth(p->v2));
  if (const auto* i = std::get_if<VInl>(&v->node)) return 1 + value_depth(i->v);
  if (const auto* i = std::get_if<VInr>(&v->node)) return 1 + value_depth(i->v);
  return 1;
}

static long long comp_depth(const CompPtr& m) {
  if (const auto* l = std::get_if<CLam>(&m->node)) return 1 + comp_depth(l->body);
  if (const auto* a = std::get_if<CApp>(&m->node))
    return 1 + std::max(comp_depth(a->fn), value_depth(a->arg));
  if (const auto* f = std::get_if<CForce>(&m->node)) return 1 + value_depth(f->v);
  if (const auto* r = std::get_if<CRet>(&m->node)) return 1 + value_depth(r->v);
  if (const auto* l = std::get_if<CLet>(&m->node))
    return 1 + std::max(comp_depth(l->m1), comp_depth(l->m2));
  if (const auto* s = std::get_if<CSeq>(&m->node))
    return 1 + std::max(value_depth(s->v), comp_depth(s->m));
  if (const auto* s = std::get_if<CSplit>(&m->node))
    return 1 + std::max(value_depth(s->v), comp_depth(s->body));
  if (const auto* c = std::get_if<CCase>(&m->node))
    return 1 + std::max({value_depth(c->v), comp_depth(c->m1), comp_depth(c->m2)});
  const auto& s = std::get<CSub>(m->node);
  return 1 + comp_depth(s.m);
}

static void env_measure(const Env& env, long long& size, long long& depth);

static void terminal_measure(const TermValPtr& w, long long& size, long long& depth) {
  if (const auto* p = std::get_if<TwPair>(&w->node)) {
    terminal_measure(p->w1, size, depth);
    terminal_measure(p->w2, size, depth);
    return;
  }
  if (const auto* i = std::get_if<TwInl>(&w->node)) {
    terminal_measure(i->w, size, depth);
    return;
  }
  if (const auto* i = std::get_if<TwInr>(&w->node)) {
    terminal_measure(i->w, size, depth);
    return;
  }
  if (const auto* t = std::get_if<TwThunk>(&w->node)) {
    size += comp_size(t->body);
    depth = std::max(depth, comp_depth(t->body));
    env_measure(t->env, size, depth);
  }
}

static void env_measure(const Env& env, long long& size, long long& depth) {
  for (const auto& [x, w] : env.bindings) terminal_measure(w, size, depth);
}

static long long fuel_budget(const Env& env, long long size, long long depth) {
  env_measure(env, size, depth);
  long long exponent = std::min<long long>(depth, 30);
  long long budget = size << exponent;
  return std::min(budget, 1LL << 42);
}

// ---------------------------------------------------------------------------
// The evaluators

static Env extend(const Env& env, const VarId& x, TermValPtr w) {
  if (std::find(env.scope.begin(), env.scope.end(), x) != env.scope.end())
    fail(Errc::Internal, "environment extension shadows " + x);
  Env out = env;
  out.scope.push_back(x);
  out.bindings.emplace(x, std::move(w));
  return out;
}

namespace {

struct Evaluator {
  Mode mode;
  bool instrumented;
  bool lenient;  // attribute-assertion failures become FailStuck
  long long fuel;

  AttrVec dflt(const Env& env) const { return vec_default(mode, env.scope); }

  std::optional<AttrVec> none() const { return std::nullopt; }

  bool spend() { return --fuel >= 0; }

  Outcome choice_mismatch(const std::string& what) const {
    if (lenient) return fail_stuck(what);
    fail(Errc::Internal, what);
  }

  const AttrVec& stamp_of(const std::optional<AttrVec>& s, const char* who) const {
    if (!s) fail(Errc::Internal, std::string("missing stamp on ") + who);
    return *s;
  }

  Outcome ev(const Env& env, const ValuePtr& v) {
    if (!spend()) fail(Errc::Internal, "fuel exhausted in a value derivation");

    if (std::holds_alternative<VUnit>(v->node))
      return ok_value(term_val(TerminalValue{TwUnit{}}),
                      instrumented ? std::optional(dflt(env)) : none());

    if (const auto* w = std::get_if<VVar>(&v->node)) {
      if (std::find(env.scope.begin(), env.scope.end(), w->x) == env.scope.end())
        return fail_stuck("variable not in scope: " + w->x);
      auto it = env.bindings.find(w->x);
      if (it == env.bindings.end()) return fail_missing(w->x);
      return ok_value(it->second, instrumented
                                      ? std::optional(dflt(env).with(w->x, Attr::Strict))
                                      : none());
    }

    if (const auto* t = std::get_if<VThunk>(&v->node)) {
      AttrVec grade = instrumented ? stamp_of(t->stamp, "thunk") : dflt(env);
      TermValPtr w = term_val(TerminalValue{TwThunk{grade, env, t->body}});
      return ok_value(std::move(w),
                      instrumented ? std::optional(vec_lazify(grade)) : none());
    }

    if (const auto* p = std::get_if<VPair>(&v->node)) {
      Outcome o1 = ev(env, p->v1);
      if (o1.kind != OutcomeKind::Success) return o1;
      Outcome o2 = ev(env, p->v2);
      if (o2.kind != OutcomeKind::Success) return o2;
      TermValPtr w = term_val(TerminalValue{TwPair{*o1.value, *o2.value}});
      return ok_value(std::move(w), instrumented
                                        ? std::optional(vec_plus(*o1.effect, *o2.effect))
                                        : none());
    }

    if (const auto* i = std::get_if<VInl>(&v->node)) {
      Outcome o = ev(env, i->v);
      if (o.kind != OutcomeKind::Success) return o;
      return ok_value(term_val(TerminalValue{TwInl{*o.value}}), std::move(o.effect));
    }

    const auto& i = std::get<VInr>(v->node);
    Outcome o = ev(env, i.v);
    if (o.kind != OutcomeKind::Success) return o;
    return ok_value(term_val(TerminalValue{TwInr{*o.value}}), std::move(o.effect));
  }

  Outcome ec(const Env& env, const CompPtr& m) {
    if (!spend()) fail(Errc::Internal, "fuel exhausted in a computation derivation");

    if (const auto* l = std::get_if<CLam>(&m->node)) {
      AttrVec grade = instrumented ? stamp_of(l->stamp, "lambda") : dflt(env);
      TermCompPtr t = term_comp(TerminalComp{TtLam{grade, env, l->x, l->body}});
      return ok_comp(std::move(t), instrumented ? std::optional(grade) : none());
    }

    if (const auto* a = std::get_if<CApp>(&m->node)) {
      Outcome fn = ec(env, a->fn);
      if (fn.kind != OutcomeKind::Success) return fn;
      const auto* lam = std::get_if<TtLam>(&(*fn.comp)->node);
      if (!lam) return fail_stuck("application of a non-closure terminal");
      Outcome arg = ev(env, a->arg);
      if (arg.kind != OutcomeKind::Success) return arg;
      Outcome body = ec(extend(lam->env, lam->x, *arg.value), lam->body);
      if (body.kind != OutcomeKind::Success) return body;
      if (instrumented) {
        if (!(vec_downshift(*body.effect, lam->x) == lam->grade))
          return choice_mismatch("closure vector does not match its body: " +
                                 show_vec(vec_downshift(*body.effect, lam->x)) +
                                 " vs " + show_vec(lam->grade));
        return ok_comp(*body.comp, vec_plus(*fn.effect, *arg.effect));
      }
      return ok_comp(*body.comp, none());
    }

    if (const auto* f = std::get_if<CForce>(&m->node)) {
      Outcome o = ev(env, f->v);
      if (o.kind != OutcomeKind::Success) return o;
      const auto* thunk = std::get_if<TwThunk>(&(*o.value)->node);
      if (!thunk) return fail_stuck("force of a non-thunk terminal");
      Outcome body = ec(thunk->env, thunk->body);
      if (body.kind != OutcomeKind::Success) return body;
      if (instrumented) {
        if (!(*body.effect == thunk->grade))
          return choice_mismatch("thunk vector does not match its body: " +
                                 show_vec(*body.effect) + " vs " +
                                 show_vec(thunk->grade));
        return ok_comp(*body.comp,
                       vec_plus(*o.effect, vec_restrict(thunk->grade, env.scope)));
      }
      return ok_comp(*body.comp, none());
    }

    if (const auto* r = std::get_if<CRet>(&m->node)) {
      Outcome o = ev(env, r->v);
      if (o.kind != OutcomeKind::Success) return o;
      return ok_comp(term_comp(TerminalComp{TtRet{*o.value}}), std::move(o.effect));
    }

    if (const auto* l = std::get_if<CLet>(&m->node)) {
      Outcome o1 = ec(env, l->m1);
      if (o1.kind != OutcomeKind::Success) return o1;
      const auto* ret = std::get_if<TtRet>(&(*o1.comp)->node);
      if (!ret) return fail_stuck("let bound a non-returner terminal");
      Outcome o2 = ec(extend(env, l->x, ret->w), l->m2);
      if (o2.kind != OutcomeKind::Success) return o2;
      return ok_comp(*o2.comp,
                     instrumented
                         ? std::optional(vec_plus(*o1.effect,
                                                  vec_downshift(*o2.effect, l->x)))
                         : none());
    }

    if (const auto* s = std::get_if<CSeq>(&m->node)) {
      Outcome o1 = ev(env, s->v);
      if (o1.kind != OutcomeKind::Success) return o1;
      if (!std::holds_alternative<TwUnit>((*o1.value)->node))
        return fail_stuck("sequencing a non-unit terminal");
      Outcome o2 = ec(env, s->m);
      if (o2.kind != OutcomeKind::Success) return o2;
      return ok_comp(*o2.comp, instrumented
                                   ? std::optional(vec_plus(*o1.effect, *o2.effect))
                                   : none());
    }

    if (const auto* s = std::get_if<CSplit>(&m->node)) {
      Outcome o1 = ev(env, s->v);
      if (o1.kind != OutcomeKind::Success) return o1;
      const auto* pair = std::get_if<TwPair>(&(*o1.value)->node);
      if (!pair) return fail_stuck("split of a non-pair terminal");
      Env env2 = extend(extend(env, s->x1, pair->w1), s->x2, pair->w2);
      Outcome o2 = ec(env2, s->body);
      if (o2.kind != OutcomeKind::Success) return o2;
      if (instrumented) {
        AttrVec eff = vec_plus(
            *o1.effect, vec_downshift(vec_downshift(*o2.effect, s->x2), s->x1));
        return ok_comp(*o2.comp, std::move(eff));
      }
      return ok_comp(*o2.comp, none());
    }

    if (const auto* c = std::get_if<CCase>(&m->node)) {
      Outcome o1 = ev(env, c->v);
      if (o1.kind != OutcomeKind::Success) return o1;
      const VarId* binder = nullptr;
      const CompPtr* branch = nullptr;
      const TermValPtr* payload = nullptr;
      if (const auto* i = std::get_if<TwInl>(&(*o1.value)->node)) {
        binder = &c->x1;
        branch = &c->m1;
        payload = &i->w;
      } else if (const auto* i = std::get_if<TwInr>(&(*o1.value)->node)) {
        binder = &c->x2;
        branch = &c->m2;
        payload = &i->w;
      } else {
        return fail_stuck("case of a non-injection terminal");
      }
      Outcome o2 = ec(extend(env, *binder, *payload), *branch);
      if (o2.kind != OutcomeKind::Success) return o2;
      return ok_comp(*o2.comp,
                     instrumented
                         ? std::optional(vec_plus(*o1.effect,
                                                  vec_downshift(*o2.effect, *binder)))
                         : none());
    }

    const auto& s = std::get<CSub>(m->node);
    Outcome o = ec(env, s.m);
    if (o.kind != OutcomeKind::Success) return o;
    if (instrumented) {
      if (!vec_leq(s.target, *o.effect))
        return choice_mismatch("subsumption target " + show_vec(s.target) +
                               " is not below the inner derivation's " +
                               show_vec(*o.effect));
      return ok_comp(*o.comp, s.target);
    }
    return ok_comp(*o.comp, none());
  }
};

}  // namespace

static void require_scope(const std::vector<VarId>& scope, const Env& env) {
  if (scope != env.scope)
    fail(Errc::Internal, "evaluation scope does not match the environment's");
}

Outcome eval_value(const std::vector<VarId>& scope, const Env& env,
                   const ValuePtr& v, Mode mode) {
  require_scope(scope, env);
  Evaluator e{mode, true, false, fuel_budget(env, value_size(v), value_depth(v))};
  return e.ev(env, v);
}

Outcome eval_comp(const std::vector<VarId>& scope, const Env& env,
                  const CompPtr& m, Mode mode) {
  require_scope(scope, env);
  Evaluator e{mode, true, false, fuel_budget(env, comp_size(m), comp_depth(m))};
  return e.ec(env, m);
}

Outcome eval_erased(const Env& env, const ValuePtr& v, Mode mode) {
  Evaluator e{mode, false, false, fuel_budget(env, value_size(v), value_depth(v))};
  return e.ev(env, v);
}

Outcome eval_erased(const Env& env, const CompPtr& m, Mode mode) {
  Evaluator e{mode, false, false, fuel_budget(env, comp_size(m), comp_depth(m))};
  return e.ec(env, m);
}

Outcome eval_comp_lenient(const Env& env, const CompPtr& m, Mode mode) {
  Evaluator e{mode, true, true, fuel_budget(env, comp_size(m), comp_depth(m))};
  return e.ec(env, m);
}

bool semantic_fails(const Env& env, const CompPtr& m, Mode mode) {
  return eval_erased(env, m, mode).kind != OutcomeKind::Success;
}

// ---------------------------------------------------------------------------
// Brute-force validation of the failure oracle

namespace {

// Collects the scope of every attribute-choice site (thunk stamps, lambda
// stamps, subsumption targets, and closure vectors in the environment) in a
// fixed traversal order shared with the rewriter below.
struct SiteCollector {
  std::vector<std::vector<VarId>> sites;

  void comp(const CompPtr& m, const std::vector<VarId>& scope) {
    if (const auto* l = std::get_if<CLam>(&m->node)) {
      sites.push_back(scope);
      std::vector<VarId> inner = scope;
      inner.push_back(l->x);
      comp(l->body, inner);
      return;
    }
    if (const auto* a = std::get_if<CApp>(&m->node)) {
      comp(a->fn, scope);
      value(a->arg, scope);
      return;
    }
    if (const auto* f = std::get_if<CForce>(&m->node)) return value(f->v, scope);
    if (const auto* r = std::get_if<CRet>(&m->node)) return value(r->v, scope);
    if (const auto* l = std::get_if<CLet>(&m->node)) {
      comp(l->m1, scope);
      std::vector<VarId> inner = scope;
      inner.push_back(l->x);
      comp(l->m2, inner);
      return;
    }
    if (const auto* s = std::get_if<CSeq>(&m->node)) {
      value(s->v, scope);
      comp(s->m, scope);
      return;
    }
    if (const auto* s = std::get_if<CSplit>(&m->node)) {
      value(s->v, scope);
      std::vector<VarId> inner = scope;
      inner.push_back(s->x1);
      inner.push_back(s->x2);
      comp(s->body, inner);
      return;
    }
    if (const auto* c = std::get_if<CCase>(&m->node)) {
      value(c->v, scope);
      std::vector<VarId> left = scope;
      left.push_back(c->x1);
      comp(c->m1, left);
      std::vector<VarId> right = scope;
      right.push_back(c->x2);
      comp(c->m2, right);
      return;
    }
    const auto& s = std::get<CSub>(m->node);
    sites.push_back(scope);
    comp(s.m, scope);
  }

  void value(const ValuePtr& v, const std::vector<VarId>& scope) {
    if (const auto* t = std::get_if<VThunk>(&v->node)) {
      sites.push_back(scope);
      comp(t->body, scope);
      return;
    }
    if (const auto* p = std::get_if<VPair>(&v->node)) {
      value(p->v1, scope);
      value(p->v2, scope);
      return;
    }
    if (const auto* i = std::get_if<VInl>(&v->node)) return value(i->v, scope);
    if (const auto* i = std::get_if<VInr>(&v->node)) return value(i->v, scope);
  }

  void terminal(const TermValPtr& w) {
    if (const auto* p = std::get_if<TwPair>(&w->node)) {
      terminal(p->w1);
      terminal(p->w2);
      return;
    }
    if (const auto* i = std::get_if<TwInl>(&w->node)) return terminal(i->w);
    if (const auto* i = std::get_if<TwInr>(&w->node)) return terminal(i->w);
    if (const auto* t = std::get_if<TwThunk>(&w->node)) {
      sites.push_back(t->env.scope);
      environment(t->env);
      comp(t->body, t->env.scope);
    }
  }

  void environment(const Env& env) {
    for (const auto& x : env.scope) {
      auto it = env.bindings.find(x);
      if (it != env.bindings.end()) terminal(it->second);
    }
  }
};

struct SiteRewriter {
  const std::vector<AttrVec>& assignment;
  std::size_t next = 0;

  AttrVec take() { return assignment.at(next++); }

  CompPtr comp(const CompPtr& m) {
    if (const auto* l = std::get_if<CLam>(&m->node)) {
      AttrVec g = take();
      return cbpv_comp(Comp{CLam{l->x, l->arg_type, comp(l->body), g}});
    }
    if (const auto* a = std::get_if<CApp>(&m->node)) {
      CompPtr fn = comp(a->fn);
      return cbpv_comp(Comp{CApp{fn, value(a->arg)}});
    }
    if (const auto* f = std::get_if<CForce>(&m->node))
      return cbpv_comp(Comp{CForce{value(f->v)}});
    if (const auto* r = std::get_if<CRet>(&m->node))
      return cbpv_comp(Comp{CRet{value(r->v)}});
    if (const auto* l = std::get_if<CLet>(&m->node)) {
      CompPtr m1 = comp(l->m1);
      return cbpv_comp(Comp{CLet{l->x, m1, comp(l->m2)}});
    }
    if (const auto* s = std::get_if<CSeq>(&m->node)) {
      ValuePtr v = value(s->v);
      return cbpv_comp(Comp{CSeq{v, comp(s->m)}});
    }
    if (const auto* s = std::get_if<CSplit>(&m->node)) {
      ValuePtr v = value(s->v);
      return cbpv_comp(Comp{CSplit{s->x1, s->x2, v, comp(s->body)}});
    }
    if (const auto* c = std::get_if<CCase>(&m->node)) {
      ValuePtr v = value(c->v);
      CompPtr m1 = comp(c->m1);
      return cbpv_comp(Comp{CCase{v, c->x1, m1, c->x2, comp(c->m2)}});
    }
    const auto& s = std::get<CSub>(m->node);
    AttrVec g = take();
    return cbpv_comp(Comp{CSub{g, comp(s.m), std::nullopt}});
  }

  ValuePtr value(const ValuePtr& v) {
    if (const auto* t = std::get_if<VThunk>(&v->node)) {
      AttrVec g = take();
      return cbpv_val(Value{VThunk{comp(t->body), g}});
    }
    if (const auto* p = std::get_if<VPair>(&v->node)) {
      ValuePtr v1 = value(p->v1);
      return cbpv_val(Value{VPair{v1, value(p->v2)}});
    }
    if (const auto* i = std::get_if<VInl>(&v->node))
      return cbpv_val(Value{VInl{value(i->v), i->annot}});
    if (const auto* i = std::get_if<VInr>(&v->node))
      return cbpv_val(Value{VInr{value(i->v), i->annot}});
    return v;
  }

  TermValPtr terminal(const TermValPtr& w) {
    if (const auto* p = std::get_if<TwPair>(&w->node)) {
      TermValPtr w1 = terminal(p->w1);
      return term_val(TerminalValue{TwPair{w1, terminal(p->w2)}});
    }
    if (const auto* i = std::get_if<TwInl>(&w->node))
      return term_val(TerminalValue{TwInl{terminal(i->w)}});
    if (const auto* i = std::get_if<TwInr>(&w->node))
      return term_val(TerminalValue{TwInr{terminal(i->w)}});
    if (const auto* t = std::get_if<TwThunk>(&w->node)) {
      AttrVec g = take();
      Env env = environment(t->env);
      return term_val(TerminalValue{TwThunk{g, env, comp(t->body)}});
    }
    return w;
  }

  Env environment(const Env& env) {
    Env out;
    out.scope = env.scope;
    for (const auto& x : env.scope) {
      auto it = env.bindings.find(x);
      if (it != env.bindings.end()) out.bindings.emplace(x, terminal(it->second));
    }
    return out;
  }
};

}  // namespace

FailureValidation validate_failure(const Env& env, const CompPtr& m, Mode mode,
                                   int max_sites) {
  FailureValidation out{false, 0, false, {}, false};

  SiteCollector collector;
  collector.environment(env);
  collector.comp(m, env.scope);
  const auto& sites = collector.sites;
  if (sites.size() > static_cast<std::size_t>(max_sites)) return out;

  const std::vector<Attr> attrs =
      mode == Mode::Base
          ? std::vector<Attr>{Attr::Strict, Attr::Lazy, Attr::Unknown}
          : std::vector<Attr>{Attr::Strict, Attr::Lazy, Attr::Unknown, Attr::Unused};

  // Every vector over a site's scope, by counting in base |attrs|.
  std::vector<std::vector<AttrVec>> options;
  std::size_t total = 1;
  for (const auto& scope : sites) {
    std::vector<AttrVec> opts;
    std::size_t count = 1;
    for (std::size_t i = 0; i < scope.size(); ++i) count *= attrs.size();
    for (std::size_t code = 0; code < count; ++code) {
      AttrVec g = vec_default(mode, scope);
      std::size_t rest = code;
      for (const auto& x : scope) {
        g = g.with(x, attrs[rest % attrs.size()]);
        rest /= attrs.size();
      }
      opts.push_back(std::move(g));
    }
    total *= opts.size();
    if (total > 200000) return out;
    options.push_back(std::move(opts));
  }

  out.enumerated = true;
  std::set<VarId> seen_sites;
  std::vector<std::size_t> odometer(sites.size(), 0);
  for (;;) {
    std::vector<AttrVec> assignment;
    assignment.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i)
      assignment.push_back(options[i][odometer[i]]);

    SiteRewriter rw{assignment, 0};
    Env env2 = rw.environment(env);
    CompPtr m2 = rw.comp(m);
    Evaluator e{mode, true, true,
                fuel_budget(env2, comp_size(m2), comp_depth(m2))};
    Outcome o = e.ec(env2, m2);
    ++out.derivations;
    if (o.kind == OutcomeKind::Success) out.any_success = true;
    if (o.kind == OutcomeKind::FailMissing && seen_sites.insert(o.missing).second)
      out.missing_sites.push_back(o.missing);

    std::size_t i = 0;
    for (; i < odometer.size(); ++i) {
      if (++odometer[i] < options[i].size()) break;
      odometer[i] = 0;
    }
    if (i == odometer.size()) break;
  }
  out.site_divergence = out.missing_sites.size() > 1;
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence modulo attributes

static bool type_eq_mod_gamma(const ValTypePtr& a, const ValTypePtr& b);

static bool type_eq_mod_gamma(const CompTypePtr& a, const CompTypePtr& b) {
  if (const auto* fa = std::get_if<CtF>(&a->node)) {
    const auto* fb = std::get_if<CtF>(&b->node);
    return fb && type_eq_mod_gamma(fa->a, fb->a);
  }
  const auto& ra = std::get<CtArrow>(a->node);
  const auto* rb = std::get_if<CtArrow>(&b->node);
  return rb && type_eq_mod_gamma(ra.a, rb->a) && type_eq_mod_gamma(ra.b, rb->b);
}

static bool type_eq_mod_gamma(const ValTypePtr& a, const ValTypePtr& b) {
  if (std::holds_alternative<VtUnit>(a->node))
    return std::holds_alternative<VtUnit>(b->node);
  if (const auto* ta = std::get_if<VtThunk>(&a->node)) {
    const auto* tb = std::get_if<VtThunk>(&b->node);
    return tb && type_eq_mod_gamma(ta->body, tb->body);
  }
  if (const auto* pa = std::get_if<VtProd>(&a->node)) {
    const auto* pb = std::get_if<VtProd>(&b->node);
    return pb && type_eq_mod_gamma(pa->a1, pb->a1) && type_eq_mod_gamma(pa->a2, pb->a2);
  }
  const auto& sa = std::get<VtSum>(a->node);
  const auto* sb = std::get_if<VtSum>(&b->node);
  return sb && type_eq_mod_gamma(sa.a1, sb->a1) && type_eq_mod_gamma(sa.a2, sb->a2);
}

static bool comp_eq_mod_gamma(const CompPtr& a, const CompPtr& b);

static bool value_eq_mod_gamma(const ValuePtr& a, const ValuePtr& b) {
  if (std::holds_alternative<VUnit>(a->node))
    return std::holds_alternative<VUnit>(b->node);
  if (const auto* va = std::get_if<VVar>(&a->node)) {
    const auto* vb = std::get_if<VVar>(&b->node);
    return vb && va->x == vb->x;
  }
  if (const auto* ta = std::get_if<VThunk>(&a->node)) {
    const auto* tb = std::get_if<VThunk>(&b->node);
    return tb && comp_eq_mod_gamma(ta->body, tb->body);
  }
  if (const auto* pa = std::get_if<VPair>(&a->node)) {
    const auto* pb = std::get_if<VPair>(&b->node);
    return pb && value_eq_mod_gamma(pa->v1, pb->v1) && value_eq_mod_gamma(pa->v2, pb->v2);
  }
  if (const auto* ia = std::get_if<VInl>(&a->node)) {
    const auto* ib = std::get_if<VInl>(&b->node);
    return ib && value_eq_mod_gamma(ia->v, ib->v) &&
           type_eq_mod_gamma(ia->annot, ib->annot);
  }
  const auto& ia = std::get<VInr>(a->node);
  const auto* ib = std::get_if<VInr>(&b->node);
  return ib && value_eq_mod_gamma(ia.v, ib->v) &&
         type_eq_mod_gamma(ia.annot, ib->annot);
}

static bool comp_eq_mod_gamma(const CompPtr& a, const CompPtr& b) {
  if (const auto* la = std::get_if<CLam>(&a->node)) {
    const auto* lb = std::get_if<CLam>(&b->node);
    return lb && la->x == lb->x && type_eq_mod_gamma(la->arg_type, lb->arg_type) &&
           comp_eq_mod_gamma(la->body, lb->body);
  }
  if (const auto* aa = std::get_if<CApp>(&a->node)) {
    const auto* ab = std::get_if<CApp>(&b->node);
    return ab && comp_eq_mod_gamma(aa->fn, ab->fn) && value_eq_mod_gamma(aa->arg, ab->arg);
  }
  if (const auto* fa = std::get_if<CForce>(&a->node)) {
    const auto* fb = std::get_if<CForce>(&b->node);
    return fb && value_eq_mod_gamma(fa->v, fb->v);
  }
  if (const auto* ra = std::get_if<CRet>(&a->node)) {
    const auto* rb = std::get_if<CRet>(&b->node);
    return rb && value_eq_mod_gamma(ra->v, rb->v);
  }
  if (const auto* la = std::get_if<CLet>(&a->node)) {
    const auto* lb = std::get_if<CLet>(&b->node);
    return lb && la->x == lb->x && comp_eq_mod_gamma(la->m1, lb->m1) &&
           comp_eq_mod_gamma(la->m2, lb->m2);
  }
  if (const auto* sa = std::get_if<CSeq>(&a->node)) {
    const auto* sb = std::get_if<CSeq>(&b->node);
    return sb && value_eq_mod_gamma(sa->v, sb->v) && comp_eq_mod_gamma(sa->m, sb->m);
  }
  if (const auto* sa = std::get_if<CSplit>(&a->node)) {
    const auto* sb = std::get_if<CSplit>(&b->node);
    return sb && sa->x1 == sb->x1 && sa->x2 == sb->x2 &&
           value_eq_mod_gamma(sa->v, sb->v) && comp_eq_mod_gamma(sa->body, sb->body);
  }
  if (const auto* ca = std::get_if<CCase>(&a->node)) {
    const auto* cb = std::get_if<CCase>(&b->node);
    return cb && ca->x1 == cb->x1 && ca->x2 == cb->x2 &&
           value_eq_mod_gamma(ca->v, cb->v) && comp_eq_mod_gamma(ca->m1, cb->m1) &&
           comp_eq_mod_gamma(ca->m2, cb->m2);
  }
  const auto& sa = std::get<CSub>(a->node);
  const auto* sb = std::get_if<CSub>(&b->node);
  return sb && comp_eq_mod_gamma(sa.m, sb->m);
}

bool eq_mod_gamma(const TermValPtr& a, const TermValPtr& b) {
  if (std::holds_alternative<TwUnit>(a->node))
    return std::holds_alternative<TwUnit>(b->node);
  if (const auto* pa = std::get_if<TwPair>(&a->node)) {
    const auto* pb = std::get_if<TwPair>(&b->node);
    return pb && eq_mod_gamma(pa->w1, pb->w1) && eq_mod_gamma(pa->w2, pb->w2);
  }
  if (const auto* ia = std::get_if<TwInl>(&a->node)) {
    const auto* ib = std::get_if<TwInl>(&b->node);
    return ib && eq_mod_gamma(ia->w, ib->w);
  }
  if (const auto* ia = std::get_if<TwInr>(&a->node)) {
    const auto* ib = std::get_if<TwInr>(&b->node);
    return ib && eq_mod_gamma(ia->w, ib->w);
  }
  const auto& ta = std::get<TwThunk>(a->node);
  const auto* tb = std::get_if<TwThunk>(&b->node);
  return tb && comp_eq_mod_gamma(ta.body, tb->body) && eq_mod_gamma(ta.env, tb->env);
}

bool eq_mod_gamma(const TermCompPtr& a, const TermCompPtr& b) {
  if (const auto* ra = std::get_if<TtRet>(&a->node)) {
    const auto* rb = std::get_if<TtRet>(&b->node);
    return rb && eq_mod_gamma(ra->w, rb->w);
  }
  const auto& la = std::get<TtLam>(a->node);
  const auto* lb = std::get_if<TtLam>(&b->node);
  return lb && la.x == lb->x && comp_eq_mod_gamma(la.body, lb->body) &&
         eq_mod_gamma(la.env, lb->env);
}

bool eq_mod_gamma(const Env& a, const Env& b) {
  if (a.scope != b.scope) return false;
  for (const auto& x : a.scope) {
    auto ia = a.bindings.find(x);
    auto ib = b.bindings.find(x);
    if ((ia == a.bindings.end()) != (ib == b.bindings.end())) return false;
    if (ia != a.bindings.end() && !eq_mod_gamma(ia->second, ib->second)) return false;
  }
  return true;
}

bool leq_mod_gamma(const TermValPtr& a, const TermValPtr& b) {
  if (std::holds_alternative<TwUnit>(a->node))
    return std::holds_alternative<TwUnit>(b->node);
  if (const auto* pa = std::get_if<TwPair>(&a->node)) {
    const auto* pb = std::get_if<TwPair>(&b->node);
    return pb && leq_mod_gamma(pa->w1, pb->w1) && leq_mod_gamma(pa->w2, pb->w2);
  }
  if (const auto* ia = std::get_if<TwInl>(&a->node)) {
    const auto* ib = std::get_if<TwInl>(&b->node);
    return ib && leq_mod_gamma(ia->w, ib->w);
  }
  if (const auto* ia = std::get_if<TwInr>(&a->node)) {
    const auto* ib = std::get_if<TwInr>(&b->node);
    return ib && leq_mod_gamma(ia->w, ib->w);
  }
  const auto& ta = std::get<TwThunk>(a->node);
  const auto* tb = std::get_if<TwThunk>(&b->node);
  return tb && comp_eq_mod_gamma(ta.body, tb->body) && leq_mod_gamma(ta.env, tb->env);
}

bool leq_mod_gamma(const TermCompPtr& a, const TermCompPtr& b) {
  if (const auto* ra = std::get_if<TtRet>(&a->node)) {
    const auto* rb = std::get_if<TtRet>(&b->node);
    return rb && leq_mod_gamma(ra->w, rb->w);
  }
  const auto& la = std::get<TtLam>(a->node);
  const auto* lb = std::get_if<TtLam>(&b->node);
  return lb && la.x == lb->x && comp_eq_mod_gamma(la.body, lb->body) &&
         leq_mod_gamma(la.env, lb->env);
}

bool leq_mod_gamma(const Env& a, const Env& b) {
  if (a.scope != b.scope) return false;
  for (const auto& x : a.scope) {
    auto ia = a.bindings.find(x);
    if (ia == a.bindings.end()) continue;  // left may have dropped the binding
    auto ib = b.bindings.find(x);
    if (ib == b.bindings.end()) return false;
    if (!leq_mod_gamma(ia->second, ib->second)) return false;
  }
  return true;
}

// A binding models one shared frame, so dropping it must also starve every
// closure that captured a copy of the environment.
static TermValPtr drop_in_terminal(const TermValPtr& w, const VarId& x);

static Env drop_everywhere(const Env& env, const VarId& x) {
  Env out;
  out.scope = env.scope;
  for (const auto& [y, w] : env.bindings)
    if (y != x) out.bindings.emplace(y, drop_in_terminal(w, x));
  return out;
}

static TermValPtr drop_in_terminal(const TermValPtr& w, const VarId& x) {
  if (const auto* p = std::get_if<TwPair>(&w->node))
    return term_val(TerminalValue{
        TwPair{drop_in_terminal(p->w1, x), drop_in_terminal(p->w2, x)}});
  if (const auto* i = std::get_if<TwInl>(&w->node))
    return term_val(TerminalValue{TwInl{drop_in_terminal(i->w, x)}});
  if (const auto* i = std::get_if<TwInr>(&w->node))
    return term_val(TerminalValue{TwInr{drop_in_terminal(i->w, x)}});
  if (const auto* t = std::get_if<TwThunk>(&w->node))
    return term_val(TerminalValue{
        TwThunk{t->grade, drop_everywhere(t->env, x), t->body}});
  return w;
}

Env drop_binding(const Env& env, const VarId& x) {
  if (std::find(env.scope.begin(), env.scope.end(), x) == env.scope.end())
    fail(Errc::UnknownVariable, "cannot drop a variable outside the scope: " + x);
  return drop_everywhere(env, x);
}

// ---------------------------------------------------------------------------
// Printing

static std::string show_env(const Env& env) {
  std::string out = "[";
  bool first = true;
  for (const auto& x : env.scope) {
    if (!first) out += ", ";
    first = false;
    auto it = env.bindings.find(x);
    out += x + " = " + (it == env.bindings.end() ? "_" : show_terminal(it->second));
  }
  return out + "]";
}

std::string show_terminal(const TermValPtr& w) {
  if (std::holds_alternative<TwUnit>(w->node)) return "()";
  if (const auto* p = std::get_if<TwPair>(&w->node))
    return "(" + show_terminal(p->w1) + ", " + show_terminal(p->w2) + ")";
  if (const auto* i = std::get_if<TwInl>(&w->node))
    return "inl " + show_terminal(i->w);
  if (const auto* i = std::get_if<TwInr>(&w->node))
    return "inr " + show_terminal(i->w);
  const auto& t = std::get<TwThunk>(w->node);
  return "{" + show_vec(t.grade) + ", " + show_env(t.env) + ", " +
         show_cbpv_comp(t.body) + "}";
}

std::string show_terminal(const TermCompPtr& t) {
  if (const auto* r = std::get_if<TtRet>(&t->node))
    return "ret " + show_terminal(r->w);
  const auto& l = std::get<TtLam>(t->node);
  return "<<" + show_vec(l.grade) + ", " + show_env(l.env) + ", fn " + l.x + " . " +
         show_cbpv_comp(l.body) + ">>";
}

std::string show_outcome(const Outcome& o) {
  switch (o.kind) {
    case OutcomeKind::Success: {
      std::string body = o.value ? show_terminal(*o.value) : show_terminal(*o.comp);
      if (o.effect) body += " :^" + show_vec(*o.effect);
      return "ok " + body;
    }
    case OutcomeKind::FailMissing:
      return "fail missing " + o.missing;
    case OutcomeKind::FailStuck:
      return "fail stuck: " + o.reason;
  }
  return "";
}

}  // namespace strictness
