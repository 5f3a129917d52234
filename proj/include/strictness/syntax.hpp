// Concrete syntax: scope-aware parsers for both calculi and the program-file
// format. Parsers are liberal (extra parentheses, omitted default vectors,
// Bool/if sugar) while the printers in cbn.cpp/cbpv.cpp stay conservative, so
// parse(print(t)) == t.
#pragma once

#include <string>

#include "strictness/cbn.hpp"
#include "strictness/cbpv.hpp"

namespace strictness {

enum class Language : uint8_t { Cbn, Cbpv };

const char* language_name(Language lang);

// Attribute vectors are checked against the ambient scope at their source
// position; unknown variables and duplicate entries are parse errors.
AttrVec parse_vec(const std::string& src, Mode mode, const std::vector<VarId>& scope);

CbnTypePtr parse_cbn_type(const std::string& src, Mode mode,
                          const std::vector<VarId>& scope);
CbnTermPtr parse_cbn_term(const std::string& src, Mode mode,
                          const std::vector<VarId>& scope);

ValTypePtr parse_cbpv_val_type(const std::string& src, Mode mode,
                               const std::vector<VarId>& scope);
CompTypePtr parse_cbpv_comp_type(const std::string& src, Mode mode,
                                 const std::vector<VarId>& scope);
ValuePtr parse_cbpv_value(const std::string& src, Mode mode,
                          const std::vector<VarId>& scope);
CompPtr parse_cbpv_comp(const std::string& src, Mode mode,
                        const std::vector<VarId>& scope);

// Program files: a language line, an optional mode line, ordered variable
// declarations (each parsed in the scope of the earlier ones), and one main
// term. Parsed terms are unelaborated; checking lives in program.hpp.
struct CbnDecl {
  VarId name;
  CbnTypePtr type;
  CbnTermPtr term;
};
struct CbpvDecl {
  VarId name;
  ValTypePtr type;
  ValuePtr term;
};
struct ProgramFile {
  Language language = Language::Cbn;
  Mode mode = Mode::Base;
  std::vector<CbnDecl> cbn_decls;
  std::vector<CbpvDecl> cbpv_decls;
  CbnTermPtr cbn_main;
  CompPtr cbpv_main;
};

ProgramFile parse_program(const std::string& src, Mode default_mode);

std::string show_program(const ProgramFile& pf);

}  // namespace strictness
