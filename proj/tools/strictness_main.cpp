// Batch front end: check, translate, run, report, verify, and fuzz
// subcommands over .cbn/.cbpv program files, with JSON-lines output for
// scripting. Exit codes: 0 success / theorems pass, 1 type error or theorem
// failure, 2 usage error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "strictness/metatheory.hpp"

using njson = nlohmann::ordered_json;
using namespace strictness;

namespace {

struct UsageError {
  std::string msg;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Mode parse_mode_name(const std::string& s) {
  if (s == "base") return Mode::Base;
  if (s == "extended") return Mode::Extended;
  throw UsageError{"unknown mode '" + s + "' (expected base or extended)"};
}

// STRICTNESS_MODE picks the default mode for files without a mode line and
// for generator subcommands without --mode.
std::string default_mode_name() {
  const char* v = std::getenv("STRICTNESS_MODE");
  if (!v || !*v) return "base";
  std::string s(v);
  if (s != "base" && s != "extended")
    throw UsageError{"STRICTNESS_MODE must be 'base' or 'extended', not '" + s + "'"};
  return s;
}

ProgramFile read_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError{"cannot open file: " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  ProgramFile pf = parse_program(ss.str(), parse_mode_name(default_mode_name()));
  if (ends_with(path, ".cbn") && pf.language != Language::Cbn)
    throw UsageError{path + " declares language cbpv but has extension .cbn"};
  if (ends_with(path, ".cbpv") && pf.language != Language::Cbpv)
    throw UsageError{path + " declares language cbn but has extension .cbpv"};
  return pf;
}

void emit(const njson& j) { std::cout << j.dump() << "\n"; }

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::string& path, bool as_json) {
  ProgramFile pf = read_program(path);
  LoadedProgram lp = load_program(pf);
  if (lp.cbn) {
    for (std::size_t i = 0; i < pf.cbn_decls.size(); ++i) {
      const auto& e = lp.cbn->ctx[i];
      if (as_json)
        emit({{"kind", "decl"},
              {"name", e.x},
              {"type", show_cbn_type(e.type)},
              {"latent", show_vec(e.latent)}});
      else
        std::cout << "var " << e.x << " :^" << show_vec(e.latent) << " "
                  << show_cbn_type(e.type) << "\n";
    }
    const CbnJudgment& j = lp.cbn->main;
    if (as_json)
      emit({{"kind", "judgment"},
            {"language", language_name(pf.language)},
            {"mode", mode_name(pf.mode)},
            {"term", show_cbn_term(pf.cbn_main)},
            {"effect", show_vec(j.effect)},
            {"type", show_cbn_type(j.type)}});
    else
      std::cout << "|- " << show_cbn_term(pf.cbn_main) << " "
                << show_cbn_judgment(j) << "\n";
    return 0;
  }
  for (std::size_t i = 0; i < pf.cbpv_decls.size(); ++i) {
    const auto& d = lp.cbpv->decls[i];
    if (as_json)
      emit({{"kind", "decl"},
            {"name", pf.cbpv_decls[i].name},
            {"type", show_cbpv_val_type(d.type)},
            {"effect", show_vec(d.effect)}});
    else
      std::cout << "var " << pf.cbpv_decls[i].name << " :^" << show_vec(d.effect)
                << " " << show_cbpv_val_type(d.type) << "\n";
  }
  const CbpvCompJudgment& j = lp.cbpv->main;
  if (as_json)
    emit({{"kind", "judgment"},
          {"language", language_name(pf.language)},
          {"mode", mode_name(pf.mode)},
          {"term", show_cbpv_comp(pf.cbpv_main)},
          {"effect", show_vec(j.effect)},
          {"type", show_cbpv_comp_type(j.type)}});
  else
    std::cout << "|- " << show_cbpv_comp(pf.cbpv_main) << " "
              << show_cbpv_comp_judgment(j) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// translate

int cmd_translate(const std::string& path, bool as_json) {
  ProgramFile pf = read_program(path);
  if (pf.language != Language::Cbn)
    throw UsageError{"translate expects a call-by-name program"};
  ProgramFile out = translate_program(pf);
  std::string text = show_program(out);
  if (as_json)
    emit({{"kind", "translation"},
          {"language", language_name(out.language)},
          {"mode", mode_name(out.mode)},
          {"program", text}});
  else
    std::cout << text;
  return 0;
}

// ---------------------------------------------------------------------------
// run

int cmd_run(const std::string& path, const std::vector<std::string>& drops,
            bool as_json) {
  ProgramFile pf = read_program(path);
  LoadedProgram lp = load_program(pf);
  Runnable r = prepare_run(lp);
  Env env = r.env;
  for (const auto& x : drops) env = drop_binding(env, x);
  Outcome o = eval_comp(env.scope, env, r.main, pf.mode);
  if (as_json) {
    njson j{{"kind", "run"},
            {"outcome", o.kind == OutcomeKind::Success      ? "ok"
                        : o.kind == OutcomeKind::FailMissing ? "missing"
                                                             : "stuck"},
            {"terminal", o.comp ? show_terminal(*o.comp) : ""},
            {"effect", o.effect ? show_vec(*o.effect) : ""},
            {"missing", o.missing},
            {"reason", o.reason}};
    emit(j);
    return o.kind == OutcomeKind::Success ? 0 : 1;
  }
  switch (o.kind) {
    case OutcomeKind::Success:
      std::cout << show_outcome(o) << "\n";
      return 0;
    case OutcomeKind::FailMissing:
      std::cout << "missing binding: " << o.missing << "\n";
      return 1;
    default:
      std::cout << "stuck: " << o.reason << "\n";
      return 1;
  }
}

// ---------------------------------------------------------------------------
// report

int cmd_report(const std::string& path, bool as_json) {
  ProgramFile pf = read_program(path);
  LoadedProgram lp = load_program(pf);
  StrictnessReport rep = report_program(lp);
  for (const auto& e : rep.vars) {
    if (as_json)
      emit({{"kind", "report-var"},
            {"name", e.name},
            {"attribute", attr_name(e.attr)},
            {"classification", classification(e.attr)}});
    else
      std::cout << "var " << e.name << ": " << classification(e.attr) << "\n";
  }
  for (const auto& e : rep.lambdas) {
    if (as_json)
      emit({{"kind", "report-lambda"},
            {"name", e.name},
            {"attribute", attr_name(e.attr)},
            {"classification", classification(e.attr)}});
    else
      std::cout << e.name << ": " << classification(e.attr) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(uint64_t seed, int trials, int depth, int scope,
               const std::string& mode_opt, const std::string& lang_opt,
               const std::string& theorem, bool as_json) {
  std::vector<Mode> modes;
  if (mode_opt == "both")
    modes = {Mode::Base, Mode::Extended};
  else
    modes = {parse_mode_name(mode_opt)};
  std::vector<Language> langs;
  if (lang_opt == "both")
    langs = {Language::Cbn, Language::Cbpv};
  else
    langs = {lang_opt == "cbn" ? Language::Cbn : Language::Cbpv};

  bool failed = false;
  auto report = [&](Mode mode, const TheoremReport& r) {
    if (r.failures > 0) failed = true;
    if (as_json)
      emit({{"kind", "theorem"},
            {"mode", mode_name(mode)},
            {"theorem", r.theorem},
            {"trials", r.trials},
            {"failures", r.failures},
            {"counterexample", r.counterexample}});
    else
      std::cout << "[" << mode_name(mode) << "] " << show_report(r) << "\n";
  };

  for (Mode mode : modes) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_depth = depth;
    cfg.max_scope = scope;
    cfg.mode = mode;
    if (theorem == "all" || theorem == "soundness")
      for (Language lang : langs) report(mode, check_soundness(cfg, lang, trials));
    if (theorem == "all" || theorem == "lazy-soundness")
      for (Language lang : langs)
        report(mode, check_lazy_soundness(cfg, lang, trials));
    if (theorem == "all" || theorem == "strict-failure")
      report(mode, check_strict_failure(cfg, trials));
    if (theorem == "all" || theorem == "translation")
      report(mode, check_translation(cfg, trials));
    if (theorem == "all" || theorem == "determinism")
      report(mode, check_determinism(cfg, trials));
  }
  if (!as_json) std::cout << (failed ? "FAIL" : "PASS") << "\n";
  return failed ? 1 : 0;
}

// ---------------------------------------------------------------------------
// fuzz

ProgramFile program_of(const GenCbn& g, Mode mode) {
  ProgramFile pf;
  pf.language = Language::Cbn;
  pf.mode = mode;
  for (std::size_t i = 0; i < g.ctx.size(); ++i)
    pf.cbn_decls.push_back({g.ctx[i].x, g.ctx[i].type, g.witnesses[i]});
  pf.cbn_main = g.term;
  return pf;
}

ProgramFile program_of(const GenCbpv& g, Mode mode) {
  ProgramFile pf;
  pf.language = Language::Cbpv;
  pf.mode = mode;
  for (std::size_t i = 0; i < g.ctx.size(); ++i)
    pf.cbpv_decls.push_back({g.ctx[i].x, g.ctx[i].type, g.witnesses[i]});
  pf.cbpv_main = g.term;
  return pf;
}

int cmd_fuzz(uint64_t seed, int count, int depth, int scope,
             const std::string& mode_opt, const std::string& lang_opt,
             bool as_json) {
  Mode mode = parse_mode_name(mode_opt);
  Language lang = lang_opt == "cbn" ? Language::Cbn : Language::Cbpv;
  for (int i = 0; i < count; ++i) {
    GenConfig cfg;
    cfg.seed = seed + static_cast<uint64_t>(i);
    cfg.max_depth = depth;
    cfg.max_scope = scope;
    cfg.mode = mode;
    ProgramFile pf = lang == Language::Cbn ? program_of(gen_cbn(cfg), mode)
                                           : program_of(gen_cbpv(cfg), mode);
    std::string text = show_program(pf);
    if (as_json)
      emit({{"kind", "program"},
            {"language", language_name(lang)},
            {"mode", mode_name(mode)},
            {"seed", cfg.seed},
            {"text", text}});
    else
      std::cout << "# program " << i << " seed " << cfg.seed << "\n" << text << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strictness attribute typing toolkit"};
  app.require_subcommand(1);

  std::string file;
  bool json_check = false, json_translate = false, json_run = false,
       json_report = false, json_verify = false, json_fuzz = false;

  auto* check = app.add_subcommand("check", "typecheck a program file");
  check->add_option("file", file, "program file (.cbn or .cbpv)")->required();
  check->add_flag("--json", json_check, "JSON-lines output");

  auto* translate =
      app.add_subcommand("translate", "translate a call-by-name program");
  translate->add_option("file", file, "program file (.cbn)")->required();
  translate->add_flag("--json", json_translate, "JSON-lines output");

  std::vector<std::string> drops, drops_alias;
  auto* run = app.add_subcommand("run", "evaluate a program file");
  run->add_option("file", file, "program file (.cbn or .cbpv)")->required();
  run->add_option("--drop", drops, "drop these top-level bindings")->delimiter(',');
  run->add_option("--env-missing", drops_alias, "alias for --drop")->delimiter(',');
  run->add_flag("--json", json_run, "JSON-lines output");

  auto* report = app.add_subcommand("report", "print the strictness report");
  report->add_option("file", file, "program file (.cbn or .cbpv)")->required();
  report->add_flag("--json", json_report, "JSON-lines output");

  uint64_t seed = 0;
  int trials = 100, depth = 8, scope = 4, count = 1;
  std::string mode_opt = "default", lang_opt_verify = "both", lang_opt_fuzz = "cbn";
  std::string theorem = "all";

  auto* verify = app.add_subcommand("verify", "run the theorem campaigns");
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--trials", trials, "trials per theorem");
  verify->add_option("--depth", depth, "generator depth bound");
  verify->add_option("--scope", scope, "generator context-size bound");
  verify->add_option("--mode", mode_opt, "base | extended | both");
  verify->add_option("--language", lang_opt_verify, "cbn | cbpv | both")
      ->check(CLI::IsMember({"cbn", "cbpv", "both"}));
  verify
      ->add_option("--theorem", theorem,
                   "all | soundness | lazy-soundness | strict-failure | "
                   "translation | determinism")
      ->check(CLI::IsMember({"all", "soundness", "lazy-soundness", "strict-failure",
                             "translation", "determinism"}));
  verify->add_flag("--json", json_verify, "JSON-lines output");

  auto* fuzz = app.add_subcommand("fuzz", "emit random well-typed programs");
  fuzz->add_option("--seed", seed, "base seed");
  fuzz->add_option("--count", count, "number of programs");
  fuzz->add_option("--depth", depth, "generator depth bound");
  fuzz->add_option("--scope", scope, "generator context-size bound");
  fuzz->add_option("--mode", mode_opt, "base | extended");
  fuzz->add_option("--language", lang_opt_fuzz, "cbn | cbpv")
      ->check(CLI::IsMember({"cbn", "cbpv"}));
  fuzz->add_flag("--json", json_fuzz, "JSON-lines output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mode_opt == "default")
      mode_opt = app.got_subcommand(verify) ? "both" : default_mode_name();
    if (mode_opt == "both" && !app.got_subcommand(verify))
      throw UsageError{"--mode both is only meaningful for verify"};
    if (app.got_subcommand(check)) return cmd_check(file, json_check);
    if (app.got_subcommand(translate)) return cmd_translate(file, json_translate);
    if (app.got_subcommand(run)) {
      drops.insert(drops.end(), drops_alias.begin(), drops_alias.end());
      return cmd_run(file, drops, json_run);
    }
    if (app.got_subcommand(report)) return cmd_report(file, json_report);
    if (app.got_subcommand(verify))
      return cmd_verify(seed, trials, depth, scope, mode_opt, lang_opt_verify,
                        theorem, json_verify);
    if (app.got_subcommand(fuzz))
      return cmd_fuzz(seed, count, depth, scope, mode_opt, lang_opt_fuzz, json_fuzz);
    return 2;
  } catch (const UsageError& u) {
    std::cerr << "usage error: " << u.msg << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
