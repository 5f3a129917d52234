#include "strictness/attrs.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace strictness {

const char* attr_name(Attr a) {
  switch (a) {
    case Attr::Strict: return "S";
    case Attr::Lazy: return "L";
    case Attr::Unknown: return "?";
    case Attr::Unused: return "U";
  }
  fail(Errc::Internal, "bad attr tag");
}

const char* mode_name(Mode m) { return m == Mode::Base ? "base" : "extended"; }

bool attr_legal(Attr a, Mode mode) {
  return a != Attr::Unused || mode == Mode::Extended;
}

Attr mode_default(Mode mode) {
  return mode == Mode::Base ? Attr::Lazy : Attr::Unused;
}

static void require_legal(Attr a, Mode mode) {
  if (!attr_legal(a, mode))
    fail(Errc::IllegalAttribute, "attribute U is only legal in extended mode");
}

Attr attr_plus(Attr a, Attr b, Mode mode) {
  require_legal(a, mode);
  require_legal(b, mode);
  // Identity element: U in Extended mode; L stays the identity on the
  // three-attribute fragment either way.
  if (a == Attr::Unused) return b;
  if (b == Attr::Unused) return a;
  if (a == Attr::Strict || b == Attr::Strict) return Attr::Strict;
  if (a == Attr::Unknown || b == Attr::Unknown) return Attr::Unknown;
  return Attr::Lazy;
}

bool attr_leq(Attr a, Attr b, Mode mode) {
  require_legal(a, mode);
  require_legal(b, mode);
  if (a == b) return true;
  if (a == Attr::Unknown) return true;  // ? is the bottom of both orders
  if (a == Attr::Lazy && b == Attr::Unused) return true;
  return false;
}

Attr attr_meet(Attr a, Attr b, Mode mode) {
  require_legal(a, mode);
  require_legal(b, mode);
  if (a == b) return a;
  if (attr_leq(a, b, mode)) return a;
  if (attr_leq(b, a, mode)) return b;
  return Attr::Unknown;
}

Attr attr_lazify(Attr a, Mode mode) {
  require_legal(a, mode);
  return a == Attr::Unused ? Attr::Unused : Attr::Lazy;
}

AttrVec::AttrVec(Mode mode, std::vector<VarId> scope)
    : mode_(mode), scope_(std::move(scope)) {
  std::set<VarId> seen;
  for (const auto& x : scope_)
    if (!seen.insert(x).second)
      fail(Errc::Internal, "duplicate scope variable: " + x);
}

bool AttrVec::in_scope(const VarId& x) const {
  return std::find(scope_.begin(), scope_.end(), x) != scope_.end();
}

Attr AttrVec::get(const VarId& x) const {
  if (!in_scope(x)) fail(Errc::ScopeMismatch, "variable not in vector scope: " + x);
  auto it = entries_.find(x);
  return it == entries_.end() ? mode_default(mode_) : it->second;
}

AttrVec AttrVec::with(const VarId& x, Attr a) const {
  if (!in_scope(x)) fail(Errc::ScopeMismatch, "variable not in vector scope: " + x);
  require_legal(a, mode_);
  AttrVec out = *this;
  if (a == mode_default(mode_))
    out.entries_.erase(x);
  else
    out.entries_[x] = a;
  return out;
}

AttrVec AttrVec::extended(const VarId& x) const {
  if (in_scope(x)) fail(Errc::Internal, "scope extension with existing variable: " + x);
  AttrVec out = *this;
  out.scope_.push_back(x);
  return out;
}

AttrVec AttrVec::extended_to(const std::vector<VarId>& scope) const {
  AttrVec out(mode_, scope);
  for (const auto& x : scope_) {
    if (!out.in_scope(x))
      fail(Errc::ScopeMismatch, "scope extension must be a superset; missing " + x);
  }
  out.entries_ = entries_;
  return out;
}

std::vector<std::pair<VarId, Attr>> AttrVec::explicit_entries() const {
  std::vector<std::pair<VarId, Attr>> out;
  for (const auto& x : scope_) {
    auto it = entries_.find(x);
    if (it != entries_.end()) out.emplace_back(x, it->second);
  }
  return out;
}

bool AttrVec::same_scope(const AttrVec& other) const {
  if (scope_.size() != other.scope_.size()) return false;
  std::vector<VarId> a = scope_, b = other.scope_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool operator==(const AttrVec& a, const AttrVec& b) {
  if (a.mode_ != b.mode_ || !a.same_scope(b)) return false;
  return a.entries_ == b.entries_;  // entries are normalized (non-default only)
}

AttrVec vec_default(Mode mode, std::vector<VarId> scope) {
  return AttrVec(mode, std::move(scope));
}

static void require_same_scope(const AttrVec& g1, const AttrVec& g2) {
  if (g1.mode() != g2.mode()) fail(Errc::Internal, "vector mode mismatch");
  if (!g1.same_scope(g2))
    fail(Errc::ScopeMismatch,
         "vector scopes differ: " + show_vec(g1) + " vs " + show_vec(g2));
}

AttrVec vec_plus(const AttrVec& g1, const AttrVec& g2) {
  require_same_scope(g1, g2);
  AttrVec out(g1.mode(), g1.scope());
  for (const auto& x : g1.scope())
    out = out.with(x, attr_plus(g1.get(x), g2.get(x), g1.mode()));
  return out;
}

bool vec_leq(const AttrVec& g1, const AttrVec& g2) {
  require_same_scope(g1, g2);
  for (const auto& x : g1.scope())
    if (!attr_leq(g1.get(x), g2.get(x), g1.mode())) return false;
  return true;
}

AttrVec vec_meet(const AttrVec& g1, const AttrVec& g2) {
  require_same_scope(g1, g2);
  AttrVec out(g1.mode(), g1.scope());
  for (const auto& x : g1.scope())
    out = out.with(x, attr_meet(g1.get(x), g2.get(x), g1.mode()));
  return out;
}

AttrVec vec_restrict(const AttrVec& g, const std::vector<VarId>& dom) {
  AttrVec out(g.mode(), dom);
  for (const auto& x : dom)
    if (g.in_scope(x)) out = out.with(x, g.get(x));
  return out;  // variables in dom outside g's scope keep the mode default
}

AttrVec vec_downshift(const AttrVec& g, const VarId& x) {
  std::vector<VarId> scope;
  for (const auto& v : g.scope())
    if (v != x) scope.push_back(v);
  AttrVec out(g.mode(), scope);
  for (const auto& v : scope) out = out.with(v, g.get(v));
  return out;
}

AttrVec vec_lazify(const AttrVec& g) {
  AttrVec out(g.mode(), g.scope());
  for (const auto& x : g.scope())
    out = out.with(x, attr_lazify(g.get(x), g.mode()));
  return out;
}

bool vec_equal_renamed(const AttrVec& g1, const AttrVec& g2,
                       const std::map<VarId, VarId>& ren) {
  if (g1.mode() != g2.mode()) return false;
  std::vector<VarId> renamed;
  for (const auto& x : g2.scope()) {
    auto it = ren.find(x);
    renamed.push_back(it == ren.end() ? x : it->second);
  }
  AttrVec g2r(g2.mode(), renamed);
  for (const auto& x : g2.scope()) {
    auto it = ren.find(x);
    g2r = g2r.with(it == ren.end() ? x : it->second, g2.get(x));
  }
  return g1 == g2r;
}

std::string show_vec(const AttrVec& g) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [x, a] : g.explicit_entries()) {
    if (!first) out << ", ";
    first = false;
    out << x << ':' << attr_name(a);
  }
  out << '}';
  return out.str();
}

}  // namespace strictness
