// Program-file semantics: checking declarations, building the typing context
// and the runtime environment they induce, whole-program translation, and the
// strictness report (a pure renaming of judgment attributes).
#pragma once

#include <optional>

#include "strictness/eval.hpp"
#include "strictness/syntax.hpp"
#include "strictness/translate.hpp"

namespace strictness {

// CBN declarations must synthesize exactly their declared type; the
// synthesized effect becomes the context entry's latent vector. CBPV
// declarations are value terms checked against their declared value types.
struct LoadedCbn {
  CbnCtx ctx;
  CbnJudgment main;
};
struct LoadedCbpv {
  CbpvCtx ctx;
  std::vector<CbpvValJudgment> decls;  // elaborated declaration values
  CbpvCompJudgment main;
};
struct LoadedProgram {
  ProgramFile file;
  std::optional<LoadedCbn> cbn;
  std::optional<LoadedCbpv> cbpv;
};

LoadedProgram load_program(const ProgramFile& pf);

// A CBN program becomes a CBPV program: each declaration is thunked at its
// translated thunk type, and main is translated under the full context.
ProgramFile translate_program(const ProgramFile& pf);

// Instrumented runnable form: the elaborated main computation plus an
// environment binding every declaration. CBN programs run through the
// translation; CBPV declarations evaluate left to right.
struct Runnable {
  Env env;
  CompPtr main;
};
Runnable prepare_run(const LoadedProgram& lp);

const char* classification(Attr a);  // strict / lazy / indeterminate / unused

struct ReportEntry {
  std::string name;  // declaration name, or "fn#k(x)" for the k-th lambda
  Attr attr;
};
struct StrictnessReport {
  std::vector<ReportEntry> vars;     // attribute in main's synthesized effect
  std::vector<ReportEntry> lambdas;  // argument attribute of each lambda in main
};
StrictnessReport report_program(const LoadedProgram& lp);

}  // namespace strictness
