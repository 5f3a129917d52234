// Two big-step evaluators for the push-value calculus: an instrumented one
// that replays the checker's attribute choices and reports the judgment's
// effect vector, and an erased one over partial environments that acts as
// the semantic-failure oracle. Terminal equivalence ignores all vectors.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "strictness/cbpv.hpp"

namespace strictness {

struct TerminalValue;
struct TerminalComp;
using TermValPtr = std::shared_ptr<const TerminalValue>;
using TermCompPtr = std::shared_ptr<const TerminalComp>;

// scope \ bindings are the missing variables; a variable without a binding
// models one bound to a diverging computation.
struct Env {
  std::vector<VarId> scope;
  std::map<VarId, TermValPtr> bindings;
};

struct TwUnit {};
struct TwPair {
  TermValPtr w1;
  TermValPtr w2;
};
struct TwInl {
  TermValPtr w;
};
struct TwInr {
  TermValPtr w;
};
struct TwThunk {
  AttrVec grade;  // scoped over env.scope
  Env env;
  CompPtr body;
};

struct TerminalValue {
  std::variant<TwUnit, TwPair, TwInl, TwInr, TwThunk> node;
};

struct TtRet {
  TermValPtr w;
};
struct TtLam {
  AttrVec grade;  // scoped over env.scope
  Env env;
  VarId x;
  CompPtr body;
};

struct TerminalComp {
  std::variant<TtRet, TtLam> node;
};

TermValPtr term_val(TerminalValue w);
TermCompPtr term_comp(TerminalComp t);

enum class OutcomeKind : uint8_t { Success, FailMissing, FailStuck };

struct Outcome {
  OutcomeKind kind;
  std::optional<TermValPtr> value;   // Success of a value evaluation
  std::optional<TermCompPtr> comp;   // Success of a computation evaluation
  std::optional<AttrVec> effect;     // absent for erased evaluation
  VarId missing;                     // FailMissing site
  std::string reason;                // FailStuck diagnostic
};

// Instrumented evaluation of elaborated terms. The stamps resolve every
// nondeterministic attribute choice the way the checker did, so a stamp
// mismatch at a force/apply/sub assertion raises Error(Internal).
Outcome eval_value(const std::vector<VarId>& scope, const Env& env,
                   const ValuePtr& v, Mode mode);
Outcome eval_comp(const std::vector<VarId>& scope, const Env& env,
                  const CompPtr& m, Mode mode);

// Identical control flow with all vector bookkeeping skipped; works on
// unelaborated terms and partial environments.
Outcome eval_erased(const Env& env, const ValuePtr& v, Mode mode);
Outcome eval_erased(const Env& env, const CompPtr& m, Mode mode);

// Instrumented evaluation that reports an attribute-assertion mismatch as
// FailStuck instead of raising, so alternative stamp choices can be probed.
Outcome eval_comp_lenient(const Env& env, const CompPtr& m, Mode mode);

// True iff no choice of attributes admits a derivation; implemented as
// erased-evaluation failure.
bool semantic_fails(const Env& env, const CompPtr& m, Mode mode);

// Brute-force cross-check of semantic_fails: enumerate every attribute
// assignment for the term's and environment's choice sites and run the
// instrumented evaluator leniently under each. Skipped (enumerated=false)
// when the term has more than max_sites choice sites or the assignment
// space is too large.
struct FailureValidation {
  bool enumerated;
  std::size_t derivations;
  bool any_success;
  std::vector<VarId> missing_sites;  // distinct failure sites observed
  bool site_divergence;              // differing FailMissing sites across choices
};
FailureValidation validate_failure(const Env& env, const CompPtr& m, Mode mode,
                                   int max_sites = 3);

// Equivalence modulo attributes: structural equality ignoring every stored
// vector, recursing into closure environments pointwise. Missing bindings
// only match missing bindings.
bool eq_mod_gamma(const TermValPtr& a, const TermValPtr& b);
bool eq_mod_gamma(const TermCompPtr& a, const TermCompPtr& b);
bool eq_mod_gamma(const Env& a, const Env& b);

// One-sided variant: like eq_mod_gamma except closure environments on the
// left may lack bindings the right has (a run under a sub-environment
// produces a sub-result). Used to compare a dropped-binding run against the
// fully bound run.
bool leq_mod_gamma(const TermValPtr& a, const TermValPtr& b);
bool leq_mod_gamma(const TermCompPtr& a, const TermCompPtr& b);
bool leq_mod_gamma(const Env& a, const Env& b);

// Remove x's binding, here and inside every captured closure environment;
// x stays in scope as a missing variable.
Env drop_binding(const Env& env, const VarId& x);

std::string show_terminal(const TermValPtr& w);
std::string show_terminal(const TermCompPtr& t);
std::string show_outcome(const Outcome& o);

}  // namespace strictness
