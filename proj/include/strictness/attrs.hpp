// Strictness attributes and attribute vectors: the ordered monoid the
// type-and-effect systems are built on, lifted pointwise to scoped vectors.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace strictness {

// S: scrutinized on every path. L: never scrutinized. ?: path-dependent.
// U: definitely unused (Extended mode only).
enum class Attr : uint8_t { Strict, Lazy, Unknown, Unused };

// Base is the three-attribute system; Extended adds Unused and the
// lazify/well-formedness machinery.
enum class Mode : uint8_t { Base, Extended };

using VarId = std::string;

enum class Errc {
  IllegalAttribute,
  ScopeMismatch,
  UnboundVariable,
  TypeMismatch,
  SubsumptionNotBelow,
  IllFormedType,
  NotAThunk,
  NotAFunction,
  NotAReturner,
  BranchTypeMismatch,
  ShadowedBinder,
  UnknownVariable,
  GenerationExhausted,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code(code) {}
  Errc code;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

const char* attr_name(Attr a);             // "S", "L", "?", "U"
const char* mode_name(Mode m);             // "base", "extended"
bool attr_legal(Attr a, Mode mode);
Attr mode_default(Mode mode);              // Lazy in Base, Unused in Extended

// The + table. Commutative, associative, idempotent; Lazy is the identity in
// Base mode and Unused in Extended mode.
Attr attr_plus(Attr a, Attr b, Mode mode);

// Information order: ? below S and L; Extended mode adds L below U (and hence
// ? below U by transitivity). S/L and S/U are incomparable.
bool attr_leq(Attr a, Attr b, Mode mode);

// Greatest lower bound in the information order (total in both modes).
Attr attr_meet(Attr a, Attr b, Mode mode);

// Suspension operator: everything becomes Lazy except Unused, which stays.
// In Base mode this is constantly Lazy, for uniformity.
Attr attr_lazify(Attr a, Mode mode);

// A scoped attribute vector. The scope is an explicit ordered set of
// variables; entries hold only non-default attributes, so lookups default to
// Lazy (Base) or Unused (Extended) and equality is defaulted-lookup equality.
class AttrVec {
 public:
  AttrVec(Mode mode, std::vector<VarId> scope);

  Mode mode() const { return mode_; }
  const std::vector<VarId>& scope() const { return scope_; }
  bool in_scope(const VarId& x) const;
  Attr get(const VarId& x) const;                    // defaulted; x must be in scope
  AttrVec with(const VarId& x, Attr a) const;        // functional update
  AttrVec extended(const VarId& x) const;            // append x to scope (default attr)
  AttrVec extended_to(const std::vector<VarId>& scope) const;  // superset scope

  // Entries that differ from the mode default, in scope order.
  std::vector<std::pair<VarId, Attr>> explicit_entries() const;

  bool same_scope(const AttrVec& other) const;       // as sets
  friend bool operator==(const AttrVec& a, const AttrVec& b);

 private:
  Mode mode_;
  std::vector<VarId> scope_;
  std::map<VarId, Attr> entries_;                    // non-default only
};

AttrVec vec_default(Mode mode, std::vector<VarId> scope);
AttrVec vec_plus(const AttrVec& g1, const AttrVec& g2);
bool vec_leq(const AttrVec& g1, const AttrVec& g2);
AttrVec vec_meet(const AttrVec& g1, const AttrVec& g2);
AttrVec vec_restrict(const AttrVec& g, const std::vector<VarId>& dom);
AttrVec vec_downshift(const AttrVec& g, const VarId& x);
AttrVec vec_lazify(const AttrVec& g);

// Compare g1 with g2 after renaming g2's variables through ren (used for
// alpha-comparison of dependent arrow components).
bool vec_equal_renamed(const AttrVec& g1, const AttrVec& g2,
                       const std::map<VarId, VarId>& ren);

// Renders as {x:S, y:?}; default-attributed variables are omitted.
std::string show_vec(const AttrVec& g);

}  // namespace strictness
