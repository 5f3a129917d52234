// Type-directed random program generation for both calculi and the
// executable forms of the soundness, lazy-soundness, strict-failure,
// translation, and determinism theorems.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "strictness/eval.hpp"
#include "strictness/program.hpp"

namespace strictness {

// Relative weights for the syntax forms the generators choose among.
// Zeroing a weight removes the form; all-zero weight sets are rejected.
struct GenWeights {
  double unit = 1.0;
  double var = 2.0;
  double pair = 1.0;
  double lam = 1.5;
  double app = 1.0;
  double let = 1.5;
  double seq = 1.0;
  double split = 1.0;
  double inj = 1.0;
  double case_ = 1.0;
  double sub = 1.0;
  double thunk = 1.5;
  double force = 2.0;
  double ret = 2.5;
};

struct GenConfig {
  uint64_t seed = 0;
  int max_depth = 8;  // >= 1
  int max_scope = 4;  // context entries, not counting the unused sentinel
  Mode mode = Mode::Base;
  GenWeights weights;
};

// A generated program: the context, one closed-over-prefix witness term per
// context entry (evaluating the witnesses left to right realizes an
// environment for the context), the term, and its synthesized judgment.
// Every lambda ever generated records, keyed by its binder name, an argument
// term valid at the original context; these feed the application leg of the
// soundness check. An optional sentinel entry is never mentioned by the
// term, so its synthesized attribute must stay the mode default.
struct GenCbn {
  CbnCtx ctx;
  std::vector<CbnTermPtr> witnesses;
  CbnTermPtr term;
  CbnJudgment judgment;
  std::map<VarId, CbnTermPtr> lam_witnesses;
  std::optional<VarId> sentinel;
};
struct GenCbpv {
  CbpvCtx ctx;
  std::vector<ValuePtr> witnesses;
  CompPtr term;
  CompPtr elab;
  AttrVec effect;
  CompTypePtr type;
  std::map<VarId, ValuePtr> lam_witnesses;
  std::optional<VarId> sentinel;
};

// Deterministic in cfg: the same configuration yields the same program.
// Throws Error(GenerationExhausted) if the depth budget cannot be closed
// after bounded retries. Generated programs always re-check; the generators
// hard-assert this before returning.
GenCbn gen_cbn(const GenConfig& cfg);
GenCbpv gen_cbpv(const GenConfig& cfg);

// Variant whose term is constrained to a returner type, used by the
// strict-failure campaign.
GenCbpv gen_cbpv_returner(const GenConfig& cfg);

// Realize the environment a generation's witnesses describe. CBN witnesses
// are translated and thunked, mirroring how declarations are prepared.
Env gen_cbpv_env(const GenCbpv& g, Mode mode);
Env gen_cbn_env(const GenCbn& g, Mode mode);

struct TheoremReport {
  std::string theorem;
  int trials = 0;
  int failures = 0;
  std::string counterexample;  // first failure: program, environment, expected/actual
};

// Each campaign derives one sub-seed per trial from cfg.seed, so campaigns
// are reproducible and individual trials can be replayed.
TheoremReport check_soundness(const GenConfig& cfg, Language lang, int trials);
TheoremReport check_lazy_soundness(const GenConfig& cfg, Language lang, int trials);
TheoremReport check_strict_failure(const GenConfig& cfg, int trials);
TheoremReport check_translation(const GenConfig& cfg, int trials);
TheoremReport check_determinism(const GenConfig& cfg, int trials, int variants = 5);

std::string show_report(const TheoremReport& r);

}  // namespace strictness
