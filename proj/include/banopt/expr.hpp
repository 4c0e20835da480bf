#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace banopt {

// Hard default for truth-table construction: expressions with more distinct
// variables than this are rejected instead of allocating 2^k rows.
inline constexpr int kDefaultFanInCap = 20;

enum class VarKind { Node, Input, DelayedInput };

// A named variable: an automaton state, a module input, or a module input
// observed `delay` updates before the current instant.
struct VarRef {
  VarKind kind = VarKind::Node;
  std::string label;
  int delay = 0;  // >= 1 for DelayedInput, 0 otherwise

  static VarRef node(std::string id) {
    return VarRef{VarKind::Node, std::move(id), 0};
  }
  static VarRef input(std::string label) {
    return VarRef{VarKind::Input, std::move(label), 0};
  }
  static VarRef delayed_input(std::string label, int delay);

  // Renders as the bare label, or "label@delay" for delayed inputs.
  std::string to_string() const;

  // The canonical variable order: kind, then label, then delay.
  friend auto operator<=>(const VarRef&, const VarRef&) = default;
};

// Immutable Boolean term tree over {&, |, !}, constants and variables.
// Copies share structure; all operations on Expr are pure.
class Expr {
 public:
  enum class Op { Const, Var, Not, And, Or };

  Expr();  // constant false
  static Expr constant(bool value);
  static Expr var(VarRef v);
  static Expr negation(Expr e);
  static Expr conjunction(Expr lhs, Expr rhs);
  static Expr disjunction(Expr lhs, Expr rhs);

  Op op() const;
  bool const_value() const;    // Op::Const only
  const VarRef& var_ref() const;  // Op::Var only
  const Expr& lhs() const;     // Not, And, Or
  const Expr& rhs() const;     // And, Or

  std::size_t size() const;    // term-tree node count
  std::string to_string() const;

  // Stable identity of the shared tree node, usable as a memo key.
  const void* identity() const { return node_.get(); }

  // Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Canonical semantic form: a truth table restricted to essential variables,
// with variables sorted by the VarRef order. Row r assigns variable i the
// bit (r >> i) & 1, so vars()[0] is the least significant bit.
class TruthTable {
 public:
  TruthTable() = default;  // constant false
  static TruthTable constant_table(bool value);
  // Builds a table over the given variables; vars must be sorted and
  // distinct, and bits must have exactly 2^|vars| entries. Essentiality of
  // every variable is the caller's responsibility (canonicalize guarantees
  // it).
  TruthTable(std::vector<VarRef> vars, const std::vector<bool>& bits);

  const std::vector<VarRef>& vars() const { return vars_; }
  std::size_t var_count() const { return vars_.size(); }
  std::uint64_t row_count() const { return std::uint64_t{1} << vars_.size(); }
  bool bit(std::uint64_t row) const;
  bool is_constant() const { return vars_.empty(); }

  // Largest delay among the variables; 0 when none are delayed.
  int max_delay() const;

  // Same table with every delayed-input variable shifted `delta` updates
  // further into the past. All variables must be delayed inputs.
  TruthTable shifted(int delta) const;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  friend TruthTable canonicalize(const Expr&, int);
  std::vector<VarRef> vars_;
  std::vector<std::uint64_t> words_;  // row r lives at words_[r/64] bit r%64
};

// Standard Boolean semantics; every variable occurring in e must be assigned.
bool eval(const Expr& e, const std::map<VarRef, bool>& assignment);

std::set<VarRef> syntactic_vars(const Expr& e);

// Variables whose flip changes the value for at least one assignment.
std::set<VarRef> essential_vars(const Expr& e, int fan_in_cap = kDefaultFanInCap);

// Canonical truth table over the essential variables. Two expressions get
// equal tables iff they are semantically equivalent.
TruthTable canonicalize(const Expr& e, int fan_in_cap = kDefaultFanInCap);

bool equivalent(const Expr& a, const Expr& b, int fan_in_cap = kDefaultFanInCap);

// Deterministic sum-of-products for a table: all one-variable merges of
// adjacent minterms plus the uncovered minterms, emitted in a fixed order.
Expr sop_expr(const TruthTable& table);

// Equivalent expression whose syntactic variables are exactly the essential
// ones; deterministic for a given table.
Expr simplify(const Expr& e, int fan_in_cap = kDefaultFanInCap);

// Replaces every occurrence of a mapped variable by its image.
Expr substitute(const Expr& e, const std::map<VarRef, Expr>& mapping);

// Shifts every delayed input d -> d + shift and turns bare inputs into
// delay-`shift` variables. Node variables are rejected, as is shift 0 on a
// bare input.
Expr shift_delays(const Expr& e, int shift);

// Grammar: expr := term ('|' term)*; term := factor ('&' factor)*;
// factor := '!' factor | '(' expr ')' | '0' | '1' | IDENT.
// Identifiers resolve against node_ids first, then input_labels.
Expr parse_expr(const std::string& text, const std::set<std::string>& node_ids,
                const std::set<std::string>& input_labels);

// Evaluation table over exactly the given sorted distinct variables (no
// essentiality reduction); vars must cover syntactic_vars(e). Bit layout as
// in TruthTable.
std::vector<std::uint64_t> raw_table(const Expr& e, const std::vector<VarRef>& vars);

}  // namespace banopt
