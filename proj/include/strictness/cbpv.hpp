// The call-by-push-value calculus: value and computation types with graded
// thunks, annotated terms, and the elaborating checker that stamps the
// attribute choices the semantics will later replay.
#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "strictness/attrs.hpp"

namespace strictness {

struct ValType;
struct CompType;
using ValTypePtr = std::shared_ptr<const ValType>;
using CompTypePtr = std::shared_ptr<const CompType>;

struct VtUnit {};
// U[grade] body: a suspended computation whose forcing replays `grade`.
struct VtThunk {
  AttrVec grade;
  CompTypePtr body;
};
struct VtProd {
  ValTypePtr a1;
  ValTypePtr a2;
};
struct VtSum {
  ValTypePtr a1;
  ValTypePtr a2;
};

struct ValType {
  std::variant<VtUnit, VtThunk, VtProd, VtSum> node;
};

// F a: a computation returning a value.
struct CtF {
  ValTypePtr a;
};
// a ^arg_attr -> b: no binder; the argument's usage is summarized in
// arg_attr and the body's other usages pass through the arrow.
struct CtArrow {
  ValTypePtr a;
  Attr arg_attr;
  CompTypePtr b;
};

struct CompType {
  std::variant<CtF, CtArrow> node;
};

ValTypePtr cbpv_unit();
ValTypePtr cbpv_thunk(AttrVec grade, CompTypePtr body);
ValTypePtr cbpv_prod(ValTypePtr a1, ValTypePtr a2);
ValTypePtr cbpv_sum(ValTypePtr a1, ValTypePtr a2);
CompTypePtr cbpv_f(ValTypePtr a);
CompTypePtr cbpv_arrow(ValTypePtr a, Attr arg_attr, CompTypePtr b);

struct Value;
struct Comp;
using ValuePtr = std::shared_ptr<const Value>;
using CompPtr = std::shared_ptr<const Comp>;

// Stamp fields start empty and are filled by the checker during
// elaboration; the instrumented evaluator requires them.
struct VUnit {};
struct VVar {
  VarId x;
};
struct VThunk {
  CompPtr body;
  std::optional<AttrVec> stamp;  // the body's synthesized effect
};
struct VPair {
  ValuePtr v1;
  ValuePtr v2;
};
struct VInl {
  ValuePtr v;
  ValTypePtr annot;  // the full sum type
};
struct VInr {
  ValuePtr v;
  ValTypePtr annot;
};

struct Value {
  std::variant<VUnit, VVar, VThunk, VPair, VInl, VInr> node;
};

struct CLam {
  VarId x;
  ValTypePtr arg_type;
  CompPtr body;
  std::optional<AttrVec> stamp;  // the lambda's own synthesized effect
};
struct CApp {
  CompPtr fn;
  ValuePtr arg;
};
struct CForce {
  ValuePtr v;
};
struct CRet {
  ValuePtr v;
};
struct CLet {
  VarId x;
  CompPtr m1;
  CompPtr m2;
};
struct CSeq {
  ValuePtr v;
  CompPtr m;
};
struct CSplit {
  VarId x1;
  VarId x2;
  ValuePtr v;
  CompPtr body;
};
struct CCase {
  ValuePtr v;
  VarId x1;
  CompPtr m1;
  VarId x2;
  CompPtr m2;
};
struct CSub {
  AttrVec target;
  CompPtr m;
  std::optional<AttrVec> inferred;  // the payload's synthesized effect
};

struct Comp {
  std::variant<CLam, CApp, CForce, CRet, CLet, CSeq, CSplit, CCase, CSub> node;
};

ValuePtr cbpv_val(Value v);
CompPtr cbpv_comp(Comp m);

struct CbpvCtxEntry {
  VarId x;
  ValTypePtr type;  // grades scoped over the preceding entries
};
using CbpvCtx = std::vector<CbpvCtxEntry>;

std::vector<VarId> cbpv_ctx_scope(const CbpvCtx& ctx);

struct CbpvValJudgment {
  AttrVec effect;
  ValTypePtr type;
  ValuePtr elab;
};
struct CbpvCompJudgment {
  AttrVec effect;
  CompTypePtr type;
  CompPtr elab;
};

// Effect-and-type synthesis fused with elaboration: the returned term is
// the input with every stamp filled. Throws Error on ill-typed input.
CbpvValJudgment cbpv_synth_value(const CbpvCtx& ctx, const ValuePtr& v, Mode mode);
CbpvCompJudgment cbpv_synth_comp(const CbpvCtx& ctx, const CompPtr& m, Mode mode);

// Structural equality with exact grade equality; there are no binders in
// these types, so no renaming is involved.
bool cbpv_type_equal(const ValTypePtr& a, const ValTypePtr& b);
bool cbpv_type_equal(const CompTypePtr& a, const CompTypePtr& b);

// Remove x from every grade inside the type (applied when x's binder dies).
ValTypePtr cbpv_type_downshift(const ValTypePtr& a, const VarId& x);
CompTypePtr cbpv_type_downshift(const CompTypePtr& b, const VarId& x);

// Extend every grade's scope inside the type to the given superset scope.
ValTypePtr cbpv_type_weaken(const ValTypePtr& a, const std::vector<VarId>& scope);
CompTypePtr cbpv_type_weaken(const CompTypePtr& b, const std::vector<VarId>& scope);

std::string show_cbpv_val_type(const ValTypePtr& a);
std::string show_cbpv_comp_type(const CompTypePtr& b);
std::string show_cbpv_value(const ValuePtr& v);
std::string show_cbpv_comp(const CompPtr& m);
std::string show_cbpv_val_judgment(const CbpvValJudgment& j);
std::string show_cbpv_comp_judgment(const CbpvCompJudgment& j);

}  // namespace strictness
