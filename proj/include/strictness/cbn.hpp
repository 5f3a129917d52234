// The call-by-name calculus: dependent-arrow types carrying latent effect
// vectors, annotated terms, and the effect-synthesizing checker for both
// modes, including the extended-mode type well-formedness judgment.
#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "strictness/attrs.hpp"

namespace strictness {

struct CbnType;
using CbnTypePtr = std::shared_ptr<const CbnType>;

struct CbnTyUnit {};
struct CbnTyProd {
  CbnTypePtr t1;
  AttrVec g1;
  CbnTypePtr t2;
  AttrVec g2;
};
struct CbnTySum {
  CbnTypePtr t1;
  AttrVec g1;
  CbnTypePtr t2;
  AttrVec g2;
};
// Dependent arrow (x :^arg_attr t1^g1) -[latent]-> t2. The binder x scopes
// over t2's vectors only; g1 and latent are ambient-scoped, and the binder's
// own usage lives in arg_attr.
struct CbnTyArrow {
  VarId x;
  Attr arg_attr;
  CbnTypePtr t1;
  AttrVec g1;
  AttrVec latent;
  CbnTypePtr t2;
};

struct CbnType {
  std::variant<CbnTyUnit, CbnTyProd, CbnTySum, CbnTyArrow> node;
};

CbnTypePtr cbn_unit();
CbnTypePtr cbn_prod(CbnTypePtr t1, AttrVec g1, CbnTypePtr t2, AttrVec g2);
CbnTypePtr cbn_sum(CbnTypePtr t1, AttrVec g1, CbnTypePtr t2, AttrVec g2);
CbnTypePtr cbn_arrow(VarId x, Attr arg_attr, CbnTypePtr t1, AttrVec g1,
                     AttrVec latent, CbnTypePtr t2);

struct CbnTerm;
using CbnTermPtr = std::shared_ptr<const CbnTerm>;

struct CbnUnit {};
struct CbnVar {
  VarId x;
};
struct CbnLam {
  VarId x;
  CbnTypePtr arg_type;
  AttrVec arg_latent;
  CbnTermPtr body;
};
struct CbnApp {
  CbnTermPtr fn;
  CbnTermPtr arg;
};
struct CbnLet {
  VarId x;
  CbnTermPtr bound;
  CbnTermPtr body;
};
struct CbnSeq {
  CbnTermPtr e1;
  CbnTermPtr e2;
};
struct CbnPair {
  CbnTermPtr e1;
  CbnTermPtr e2;
};
struct CbnSplit {
  VarId x1;
  VarId x2;
  CbnTermPtr scrut;
  CbnTermPtr body;
};
struct CbnInl {
  CbnTermPtr e;
  CbnTypePtr annot;  // the full sum type
};
struct CbnInr {
  CbnTermPtr e;
  CbnTypePtr annot;
};
struct CbnCase {
  CbnTermPtr scrut;
  VarId x1;
  CbnTermPtr left;
  VarId x2;
  CbnTermPtr right;
};
struct CbnSub {
  AttrVec target;
  CbnTermPtr e;
};

struct CbnTerm {
  std::variant<CbnUnit, CbnVar, CbnLam, CbnApp, CbnLet, CbnSeq, CbnPair,
               CbnSplit, CbnInl, CbnInr, CbnCase, CbnSub>
      node;
};

CbnTermPtr cbn_mk(CbnTerm t);

struct CbnCtxEntry {
  VarId x;
  CbnTypePtr type;
  AttrVec latent;  // scoped over the preceding entries
};
using CbnCtx = std::vector<CbnCtxEntry>;

std::vector<VarId> cbn_ctx_scope(const CbnCtx& ctx);

struct CbnJudgment {
  AttrVec effect;
  CbnTypePtr type;
};

// Effect-and-type synthesis. Deterministic; throws Error on ill-typed input.
CbnJudgment cbn_synth(const CbnCtx& ctx, const CbnTermPtr& e, Mode mode);

// Structural equality with defaulted-vector equality; dependent arrows
// compare up to alpha-renaming of the bound argument.
bool cbn_type_equal(const CbnTypePtr& a, const CbnTypePtr& b);

// Remove x from every vector inside the type (applied when x's binder dies).
CbnTypePtr cbn_type_downshift(const CbnTypePtr& t, const VarId& x);

// Extend every vector's scope inside the type to the given superset scope.
CbnTypePtr cbn_type_weaken(const CbnTypePtr& t, const std::vector<VarId>& scope);

// E(t): collects the latent effects appearing in positive positions.
// Extended-mode machinery (callable in Base mode for uniformity).
AttrVec cbn_effects_of(const CbnTypePtr& t, Mode mode, const std::vector<VarId>& scope);

// g |-WF t: structural well-formedness plus lazify(g) = lazify(g + E(t)).
// Constantly true in Base mode.
bool cbn_wf_type(const AttrVec& g, const CbnTypePtr& t, Mode mode);
bool cbn_wf_ctx(const CbnCtx& ctx, Mode mode);

std::string show_cbn_type(const CbnTypePtr& t);
std::string show_cbn_term(const CbnTermPtr& e);
std::string show_cbn_judgment(const CbnJudgment& j);

}  // namespace strictness
