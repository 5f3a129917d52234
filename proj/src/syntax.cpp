#include "strictness/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace strictness {

const char* language_name(Language lang) {
  return lang == Language::Cbn ? "cbn" : "cbpv";
}

namespace {

enum class Tok : uint8_t {
  End,
  Ident,
  Upper,  // S, L, U, F, Bool, ...
  KwUnit,
  KwThunk,
  KwForce,
  KwRet,
  KwLet,
  KwIn,
  KwSplit,
  KwCase,
  KwOf,
  KwInl,
  KwInr,
  KwSub,
  KwFn,
  KwTrue,
  KwFalse,
  KwIf,
  KwThen,
  KwElse,
  KwVar,
  KwMain,
  KwLanguage,
  KwMode,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semi,
  Colon,
  Caret,
  Dot,
  Star,
  Plus,
  Eq,
  Bar,
  Question,
  Arrow,      // ->
  BindArrow,  // <-
  LatentOpen,   // -[
  LatentClose,  // ]->
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const std::map<std::string, Tok>& keywords() {
  static const std::map<std::string, Tok> kws = {
      {"unit", Tok::KwUnit},   {"thunk", Tok::KwThunk}, {"force", Tok::KwForce},
      {"ret", Tok::KwRet},     {"let", Tok::KwLet},     {"in", Tok::KwIn},
      {"split", Tok::KwSplit}, {"case", Tok::KwCase},   {"of", Tok::KwOf},
      {"inl", Tok::KwInl},     {"inr", Tok::KwInr},     {"sub", Tok::KwSub},
      {"fn", Tok::KwFn},       {"true", Tok::KwTrue},   {"false", Tok::KwFalse},
      {"if", Tok::KwIf},       {"then", Tok::KwThen},   {"else", Tok::KwElse},
      {"var", Tok::KwVar},     {"main", Tok::KwMain},   {"language", Tok::KwLanguage},
      {"mode", Tok::KwMode},
  };
  return kws;
}

[[noreturn]] void parse_err(int line, int col, const std::string& msg) {
  fail(Errc::ParseError,
       "parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  auto word_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok k, std::string text, std::size_t n) {
      out.push_back(Token{k, std::move(text), tl, tc});
      bump(n);
    };
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      std::string w = src.substr(i, j - i);
      auto it = keywords().find(w);
      push(it == keywords().end() ? Tok::Ident : it->second, w, j - i);
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      push(Tok::Upper, src.substr(i, j - i), j - i);
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", 1); continue;
      case ')': push(Tok::RParen, ")", 1); continue;
      case '{': push(Tok::LBrace, "{", 1); continue;
      case '}': push(Tok::RBrace, "}", 1); continue;
      case '[': push(Tok::LBracket, "[", 1); continue;
      case ']':
        if (i + 2 < src.size() && src[i + 1] == '-' && src[i + 2] == '>')
          push(Tok::LatentClose, "]->", 3);
        else
          push(Tok::RBracket, "]", 1);
        continue;
      case ',': push(Tok::Comma, ",", 1); continue;
      case ';': push(Tok::Semi, ";", 1); continue;
      case ':': push(Tok::Colon, ":", 1); continue;
      case '^': push(Tok::Caret, "^", 1); continue;
      case '.': push(Tok::Dot, ".", 1); continue;
      case '*': push(Tok::Star, "*", 1); continue;
      case '+': push(Tok::Plus, "+", 1); continue;
      case '=': push(Tok::Eq, "=", 1); continue;
      case '|': push(Tok::Bar, "|", 1); continue;
      case '?': push(Tok::Question, "?", 1); continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '[') {
          push(Tok::LatentOpen, "-[", 2);
          continue;
        }
        if (i + 1 < src.size() && src[i + 1] == '>') {
          push(Tok::Arrow, "->", 2);
          continue;
        }
        parse_err(line, col, "stray '-'");
      case '<':
        if (i + 1 < src.size() && src[i + 1] == '-') {
          push(Tok::BindArrow, "<-", 2);
          continue;
        }
        parse_err(line, col, "stray '<'");
      default:
        parse_err(line, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

using Scope = std::vector<VarId>;

bool in_scope(const Scope& scope, const VarId& x) {
  return std::find(scope.begin(), scope.end(), x) != scope.end();
}

Scope with_var(Scope scope, const VarId& x) {
  scope.push_back(x);
  return scope;
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  Mode mode;

  const Token& peek(std::size_t k = 0) const {
    return toks[std::min(pos + k, toks.size() - 1)];
  }
  [[noreturn]] void err(const std::string& msg) const {
    parse_err(peek().line, peek().col, msg);
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos;
    return true;
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) err(std::string("expected ") + what);
    return toks[pos++];
  }
  VarId ident(const char* what) { return expect(Tok::Ident, what).text; }

  // ---- shared pieces ----

  Attr attr() {
    if (accept(Tok::Question)) return Attr::Unknown;
    Token t = expect(Tok::Upper, "an attribute (S, L, ?, or U)");
    Attr a;
    if (t.text == "S")
      a = Attr::Strict;
    else if (t.text == "L")
      a = Attr::Lazy;
    else if (t.text == "U")
      a = Attr::Unused;
    else
      parse_err(t.line, t.col, "expected an attribute (S, L, ?, or U)");
    if (!attr_legal(a, mode))
      parse_err(t.line, t.col, "attribute U is only legal in extended mode");
    return a;
  }

  AttrVec vec(const Scope& scope) {
    expect(Tok::LBrace, "'{'");
    AttrVec g = vec_default(mode, scope);
    std::set<VarId> seen;
    bool first = true;
    while (!accept(Tok::RBrace)) {
      if (!first) expect(Tok::Comma, "','");
      first = false;
      Token xt = peek();
      VarId x = ident("a variable name");
      if (!in_scope(scope, x))
        parse_err(xt.line, xt.col, "vector entry for a variable not in scope: " + x);
      if (!seen.insert(x).second)
        parse_err(xt.line, xt.col, "duplicate vector entry: " + x);
      expect(Tok::Colon, "':'");
      g = g.with(x, attr());
    }
    return g;
  }

  AttrVec opt_grade(const Scope& scope) {
    if (accept(Tok::Caret)) return vec(scope);
    return vec_default(mode, scope);
  }

  // ---- CBN types ----

  CbnTypePtr cbn_type(const Scope& scope) {
    if (peek().kind == Tok::LParen && peek(1).kind == Tok::Ident &&
        peek(2).kind == Tok::Colon) {
      expect(Tok::LParen, "'('");
      VarId x = ident("a binder");
      expect(Tok::Colon, "':'");
      accept(Tok::Caret);  // both (x :S ...) and (x :^S ...) are accepted
      Attr a = attr();
      CbnTypePtr t1 = cbn_type_atom(scope);
      AttrVec g1 = opt_grade(scope);
      expect(Tok::RParen, "')'");
      expect(Tok::LatentOpen, "'-['");
      AttrVec latent = vec(scope);
      expect(Tok::LatentClose, "']->'");
      CbnTypePtr t2 = cbn_type(with_var(scope, x));
      return cbn_arrow(x, a, t1, g1, latent, t2);
    }
    CbnTypePtr t1 = cbn_type_atom(scope);
    if (peek().kind == Tok::Caret || peek().kind == Tok::Star ||
        peek().kind == Tok::Plus) {
      AttrVec g1 = opt_grade(scope);
      bool is_prod;
      if (accept(Tok::Star))
        is_prod = true;
      else if (accept(Tok::Plus))
        is_prod = false;
      else
        err("expected '*' or '+' after a graded component");
      CbnTypePtr t2 = cbn_type_atom(scope);
      AttrVec g2 = opt_grade(scope);
      return is_prod ? cbn_prod(t1, g1, t2, g2) : cbn_sum(t1, g1, t2, g2);
    }
    return t1;
  }

  CbnTypePtr bool_sugar(const Scope& scope) {
    AttrVec d = vec_default(mode, scope);
    return cbn_sum(cbn_unit(), d, cbn_unit(), d);
  }

  CbnTypePtr cbn_type_atom(const Scope& scope) {
    if (accept(Tok::KwUnit)) return cbn_unit();
    if (peek().kind == Tok::Upper && peek().text == "Bool") {
      ++pos;
      return bool_sugar(scope);
    }
    if (accept(Tok::LParen)) {
      CbnTypePtr t = cbn_type(scope);
      expect(Tok::RParen, "')'");
      return t;
    }
    err("expected a type");
  }

  // ---- CBN terms ----

  VarId fresh(const Scope& scope) {
    VarId x = "_";
    for (int n = 1; in_scope(scope, x); ++n) x = "_" + std::to_string(n);
    return x;
  }

  CbnTermPtr cbn_term0(const Scope& scope) {
    if (accept(Tok::KwFn)) {
      VarId x = ident("a binder");
      expect(Tok::Colon, "':'");
      CbnTypePtr t = cbn_type_atom(scope);
      AttrVec g = opt_grade(scope);
      expect(Tok::Dot, "'.'");
      CbnTermPtr body = cbn_term0(with_var(scope, x));
      return cbn_mk(CbnTerm{CbnLam{x, t, g, body}});
    }
    if (accept(Tok::KwLet)) {
      VarId x = ident("a binder");
      expect(Tok::Eq, "'='");
      CbnTermPtr bound = cbn_term0(scope);
      expect(Tok::KwIn, "'in'");
      CbnTermPtr body = cbn_term0(with_var(scope, x));
      return cbn_mk(CbnTerm{CbnLet{x, bound, body}});
    }
    if (accept(Tok::KwSplit)) {
      expect(Tok::LParen, "'('");
      VarId x1 = ident("a binder");
      expect(Tok::Comma, "','");
      VarId x2 = ident("a binder");
      expect(Tok::RParen, "')'");
      expect(Tok::Eq, "'='");
      CbnTermPtr scrut = cbn_term0(scope);
      expect(Tok::KwIn, "'in'");
      CbnTermPtr body = cbn_term0(with_var(with_var(scope, x1), x2));
      return cbn_mk(CbnTerm{CbnSplit{x1, x2, scrut, body}});
    }
    if (accept(Tok::KwCase)) {
      CbnTermPtr scrut = cbn_term0(scope);
      expect(Tok::KwOf, "'of'");
      expect(Tok::KwInl, "'inl'");
      VarId x1 = ident("a binder");
      expect(Tok::Arrow, "'->'");
      CbnTermPtr left = cbn_term1(with_var(scope, x1));
      expect(Tok::Bar, "'|'");
      expect(Tok::KwInr, "'inr'");
      VarId x2 = ident("a binder");
      expect(Tok::Arrow, "'->'");
      CbnTermPtr right = cbn_term1(with_var(scope, x2));
      return cbn_mk(CbnTerm{CbnCase{scrut, x1, left, x2, right}});
    }
    if (accept(Tok::KwIf)) {
      CbnTermPtr scrut = cbn_term0(scope);
      expect(Tok::KwThen, "'then'");
      VarId x1 = fresh(scope);
      CbnTermPtr left = cbn_term1(with_var(scope, x1));
      expect(Tok::KwElse, "'else'");
      VarId x2 = fresh(scope);
      CbnTermPtr right = cbn_term0(with_var(scope, x2));
      return cbn_mk(CbnTerm{CbnCase{scrut, x1, left, x2, right}});
    }
    if (accept(Tok::KwSub)) {
      expect(Tok::LBracket, "'['");
      AttrVec g = vec(scope);
      expect(Tok::RBracket, "']'");
      return cbn_mk(CbnTerm{CbnSub{g, cbn_term2(scope)}});
    }
    if (peek().kind == Tok::KwInl || peek().kind == Tok::KwInr) {
      bool left = accept(Tok::KwInl);
      if (!left) expect(Tok::KwInr, "'inr'");
      expect(Tok::LBracket, "'['");
      CbnTypePtr annot = cbn_type(scope);
      expect(Tok::RBracket, "']'");
      CbnTermPtr e = cbn_term2(scope);
      if (left) return cbn_mk(CbnTerm{CbnInl{e, annot}});
      return cbn_mk(CbnTerm{CbnInr{e, annot}});
    }
    CbnTermPtr e1 = cbn_term1(scope);
    if (accept(Tok::Semi)) return cbn_mk(CbnTerm{CbnSeq{e1, cbn_term0(scope)}});
    return e1;
  }

  bool cbn_atom_start() const {
    Tok k = peek().kind;
    return k == Tok::LParen || k == Tok::Ident || k == Tok::KwTrue ||
           k == Tok::KwFalse;
  }

  CbnTermPtr cbn_term1(const Scope& scope) {
    CbnTermPtr t = cbn_term2(scope);
    while (cbn_atom_start())
      t = cbn_mk(CbnTerm{CbnApp{t, cbn_term2(scope)}});
    return t;
  }

  CbnTermPtr cbn_term2(const Scope& scope) {
    if (accept(Tok::LParen)) {
      if (accept(Tok::RParen)) return cbn_mk(CbnTerm{CbnUnit{}});
      CbnTermPtr e1 = cbn_term0(scope);
      if (accept(Tok::Comma)) {
        CbnTermPtr e2 = cbn_term0(scope);
        expect(Tok::RParen, "')'");
        return cbn_mk(CbnTerm{CbnPair{e1, e2}});
      }
      expect(Tok::RParen, "')'");
      return e1;
    }
    if (accept(Tok::KwTrue))
      return cbn_mk(
          CbnTerm{CbnInl{cbn_mk(CbnTerm{CbnUnit{}}), bool_sugar(scope)}});
    if (accept(Tok::KwFalse))
      return cbn_mk(
          CbnTerm{CbnInr{cbn_mk(CbnTerm{CbnUnit{}}), bool_sugar(scope)}});
    if (peek().kind == Tok::Ident) {
      Token t = peek();
      VarId x = ident("a variable");
      if (!in_scope(scope, x)) parse_err(t.line, t.col, "unbound identifier: " + x);
      return cbn_mk(CbnTerm{CbnVar{x}});
    }
    err("expected a term");
  }

  // ---- CBPV types ----

  CompTypePtr cbpv_comp_type(const Scope& scope) {
    if (peek().kind == Tok::Upper && peek().text == "F") {
      ++pos;
      return cbpv_f(cbpv_val_atom(scope));
    }
    std::size_t save = pos;
    try {
      ValTypePtr a = cbpv_val_atom(scope);
      if (accept(Tok::Caret)) {
        Attr arg = attr();
        expect(Tok::Arrow, "'->'");
        return cbpv_arrow(a, arg, cbpv_comp_type(scope));
      }
    } catch (const Error&) {
    }
    pos = save;
    expect(Tok::LParen, "a computation type");
    CompTypePtr b = cbpv_comp_type(scope);
    expect(Tok::RParen, "')'");
    return b;
  }

  CompTypePtr cbpv_comp_type_atom(const Scope& scope) {
    if (peek().kind == Tok::Upper && peek().text == "F") {
      ++pos;
      return cbpv_f(cbpv_val_atom(scope));
    }
    expect(Tok::LParen, "a computation type");
    CompTypePtr b = cbpv_comp_type(scope);
    expect(Tok::RParen, "')'");
    return b;
  }

  ValTypePtr cbpv_val_type(const Scope& scope) {
    ValTypePtr a1 = cbpv_val_atom(scope);
    if (accept(Tok::Star)) return cbpv_prod(a1, cbpv_val_atom(scope));
    if (accept(Tok::Plus)) return cbpv_sum(a1, cbpv_val_atom(scope));
    return a1;
  }

  ValTypePtr cbpv_val_atom(const Scope& scope) {
    if (accept(Tok::KwUnit)) return cbpv_unit();
    if (peek().kind == Tok::Upper && peek().text == "U") {
      ++pos;
      expect(Tok::LBracket, "'['");
      AttrVec g = vec(scope);
      expect(Tok::RBracket, "']'");
      return cbpv_thunk(g, cbpv_comp_type_atom(scope));
    }
    if (accept(Tok::LParen)) {
      ValTypePtr a = cbpv_val_type(scope);
      expect(Tok::RParen, "')'");
      return a;
    }
    err("expected a value type");
  }

  // ---- CBPV terms ----

  ValuePtr cbpv_value(const Scope& scope) {
    if (accept(Tok::LParen)) {
      if (accept(Tok::RParen)) return cbpv_val(Value{VUnit{}});
      ValuePtr v1 = cbpv_value(scope);
      if (accept(Tok::Comma)) {
        ValuePtr v2 = cbpv_value(scope);
        expect(Tok::RParen, "')'");
        return cbpv_val(Value{VPair{v1, v2}});
      }
      expect(Tok::RParen, "')'");
      return v1;
    }
    if (peek().kind == Tok::Ident) {
      Token t = peek();
      VarId x = ident("a variable");
      if (!in_scope(scope, x)) parse_err(t.line, t.col, "unbound identifier: " + x);
      return cbpv_val(Value{VVar{x}});
    }
    if (accept(Tok::KwThunk)) {
      expect(Tok::LBrace, "'{'");
      CompPtr m = cbpv_comp0(scope);
      expect(Tok::RBrace, "'}'");
      return cbpv_val(Value{VThunk{m, std::nullopt}});
    }
    if (peek().kind == Tok::KwInl || peek().kind == Tok::KwInr) {
      bool left = accept(Tok::KwInl);
      if (!left) expect(Tok::KwInr, "'inr'");
      expect(Tok::LBracket, "'['");
      ValTypePtr annot = cbpv_val_type(scope);
      expect(Tok::RBracket, "']'");
      ValuePtr v = cbpv_value(scope);
      if (left) return cbpv_val(Value{VInl{v, annot}});
      return cbpv_val(Value{VInr{v, annot}});
    }
    err("expected a value");
  }

  bool cbpv_value_start() const {
    Tok k = peek().kind;
    return k == Tok::LParen || k == Tok::Ident || k == Tok::KwThunk ||
           k == Tok::KwInl || k == Tok::KwInr;
  }

  CompPtr cbpv_comp0(const Scope& scope) {
    if (accept(Tok::KwFn)) {
      VarId x = ident("a binder");
      expect(Tok::Colon, "':'");
      ValTypePtr a = cbpv_val_type(scope);
      expect(Tok::Dot, "'.'");
      CompPtr body = cbpv_comp0(with_var(scope, x));
      return cbpv_comp(Comp{CLam{x, a, body, std::nullopt}});
    }
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::BindArrow) {
      VarId x = ident("a binder");
      expect(Tok::BindArrow, "'<-'");
      CompPtr m1 = cbpv_comp1(scope);
      expect(Tok::KwIn, "'in'");
      CompPtr m2 = cbpv_comp0(with_var(scope, x));
      return cbpv_comp(Comp{CLet{x, m1, m2}});
    }
    if (accept(Tok::KwSplit)) {
      expect(Tok::LParen, "'('");
      VarId x1 = ident("a binder");
      expect(Tok::Comma, "','");
      VarId x2 = ident("a binder");
      expect(Tok::RParen, "')'");
      expect(Tok::Eq, "'='");
      ValuePtr v = cbpv_value(scope);
      expect(Tok::KwIn, "'in'");
      CompPtr body = cbpv_comp0(with_var(with_var(scope, x1), x2));
      return cbpv_comp(Comp{CSplit{x1, x2, v, body}});
    }
    if (accept(Tok::KwCase)) {
      ValuePtr v = cbpv_value(scope);
      expect(Tok::KwOf, "'of'");
      expect(Tok::KwInl, "'inl'");
      VarId x1 = ident("a binder");
      expect(Tok::Arrow, "'->'");
      CompPtr m1 = cbpv_comp1(with_var(scope, x1));
      expect(Tok::Bar, "'|'");
      expect(Tok::KwInr, "'inr'");
      VarId x2 = ident("a binder");
      expect(Tok::Arrow, "'->'");
      CompPtr m2 = cbpv_comp1(with_var(scope, x2));
      return cbpv_comp(Comp{CCase{v, x1, m1, x2, m2}});
    }
    if (accept(Tok::KwSub)) {
      expect(Tok::LBracket, "'['");
      AttrVec g = vec(scope);
      expect(Tok::RBracket, "']'");
      return cbpv_comp(Comp{CSub{g, cbpv_comp_atom(scope), std::nullopt}});
    }
    if (cbpv_value_start()) {
      std::size_t save = pos;
      try {
        ValuePtr v = cbpv_value(scope);
        if (accept(Tok::Semi))
          return cbpv_comp(Comp{CSeq{v, cbpv_comp0(scope)}});
      } catch (const Error&) {
      }
      pos = save;
    }
    return cbpv_comp1(scope);
  }

  CompPtr cbpv_comp1(const Scope& scope) {
    CompPtr m = cbpv_comp_atom(scope);
    while (cbpv_value_start())
      m = cbpv_comp(Comp{CApp{m, cbpv_value(scope)}});
    return m;
  }

  CompPtr cbpv_comp_atom(const Scope& scope) {
    if (accept(Tok::KwForce)) return cbpv_comp(Comp{CForce{cbpv_value(scope)}});
    if (accept(Tok::KwRet)) return cbpv_comp(Comp{CRet{cbpv_value(scope)}});
    expect(Tok::LParen, "a computation");
    CompPtr m = cbpv_comp0(scope);
    expect(Tok::RParen, "')'");
    return m;
  }

  // ---- program files ----

  ProgramFile program(Mode default_mode) {
    ProgramFile pf;
    expect(Tok::KwLanguage, "'language'");
    Token lt = expect(Tok::Ident, "'cbn' or 'cbpv'");
    if (lt.text == "cbn")
      pf.language = Language::Cbn;
    else if (lt.text == "cbpv")
      pf.language = Language::Cbpv;
    else
      parse_err(lt.line, lt.col, "expected 'cbn' or 'cbpv'");
    pf.mode = default_mode;
    if (accept(Tok::KwMode)) {
      Token mt = expect(Tok::Ident, "'base' or 'extended'");
      if (mt.text == "base")
        pf.mode = Mode::Base;
      else if (mt.text == "extended")
        pf.mode = Mode::Extended;
      else
        parse_err(mt.line, mt.col, "expected 'base' or 'extended'");
    }
    mode = pf.mode;
    Scope scope;
    while (accept(Tok::KwVar)) {
      Token xt = peek();
      VarId x = ident("a declaration name");
      if (in_scope(scope, x))
        parse_err(xt.line, xt.col, "duplicate declaration: " + x);
      expect(Tok::Colon, "':'");
      if (pf.language == Language::Cbn) {
        CbnTypePtr t = cbn_type(scope);
        expect(Tok::Eq, "'='");
        pf.cbn_decls.push_back(CbnDecl{x, t, cbn_term0(scope)});
      } else {
        ValTypePtr a = cbpv_val_type(scope);
        expect(Tok::Eq, "'='");
        pf.cbpv_decls.push_back(CbpvDecl{x, a, cbpv_value(scope)});
      }
      scope.push_back(x);
    }
    expect(Tok::KwMain, "'var' or 'main'");
    expect(Tok::Eq, "'='");
    if (pf.language == Language::Cbn)
      pf.cbn_main = cbn_term0(scope);
    else
      pf.cbpv_main = cbpv_comp0(scope);
    expect(Tok::End, "end of input");
    return pf;
  }
};

Parser make_parser(const std::string& src, Mode mode) {
  return Parser{lex(src), 0, mode};
}

}  // namespace

AttrVec parse_vec(const std::string& src, Mode mode, const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  AttrVec g = p.vec(scope);
  p.expect(Tok::End, "end of input");
  return g;
}

CbnTypePtr parse_cbn_type(const std::string& src, Mode mode,
                          const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  CbnTypePtr t = p.cbn_type(scope);
  p.expect(Tok::End, "end of input");
  return t;
}

CbnTermPtr parse_cbn_term(const std::string& src, Mode mode,
                          const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  CbnTermPtr e = p.cbn_term0(scope);
  p.expect(Tok::End, "end of input");
  return e;
}

ValTypePtr parse_cbpv_val_type(const std::string& src, Mode mode,
                               const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  ValTypePtr a = p.cbpv_val_type(scope);
  p.expect(Tok::End, "end of input");
  return a;
}

CompTypePtr parse_cbpv_comp_type(const std::string& src, Mode mode,
                                 const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  CompTypePtr b = p.cbpv_comp_type(scope);
  p.expect(Tok::End, "end of input");
  return b;
}

ValuePtr parse_cbpv_value(const std::string& src, Mode mode,
                          const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  ValuePtr v = p.cbpv_value(scope);
  p.expect(Tok::End, "end of input");
  return v;
}

CompPtr parse_cbpv_comp(const std::string& src, Mode mode,
                        const std::vector<VarId>& scope) {
  Parser p = make_parser(src, mode);
  CompPtr m = p.cbpv_comp0(scope);
  p.expect(Tok::End, "end of input");
  return m;
}

ProgramFile parse_program(const std::string& src, Mode default_mode) {
  Parser p = make_parser(src, default_mode);
  return p.program(default_mode);
}

std::string show_program(const ProgramFile& pf) {
  std::string out = "language " + std::string(language_name(pf.language)) + "\n";
  out += "mode " + std::string(mode_name(pf.mode)) + "\n";
  if (pf.language == Language::Cbn) {
    for (const auto& d : pf.cbn_decls)
      out += "var " + d.name + " : " + show_cbn_type(d.type) + " = " +
             show_cbn_term(d.term) + "\n";
    out += "main = " + show_cbn_term(pf.cbn_main) + "\n";
  } else {
    for (const auto& d : pf.cbpv_decls)
      out += "var " + d.name + " : " + show_cbpv_val_type(d.type) + " = " +
             show_cbpv_value(d.term) + "\n";
    out += "main = " + show_cbpv_comp(pf.cbpv_main) + "\n";
  }
  return out;
}

}  // namespace strictness
