#include "banopt/expr.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "banopt/errors.hpp"

namespace banopt {

VarRef VarRef::delayed_input(std::string label, int delay) {
  if (delay < 1) {
    throw std::invalid_argument("delayed input requires delay >= 1, got " +
                                std::to_string(delay));
  }
  return VarRef{VarKind::DelayedInput, std::move(label), delay};
}

std::string VarRef::to_string() const {
  if (kind == VarKind::DelayedInput) {
    return label + "@" + std::to_string(delay);
  }
  return label;
}

struct Expr::Node {
  Op op = Op::Const;
  bool value = false;
  VarRef var;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

Expr::Expr() : Expr(constant(false)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var(VarRef v) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::negation(Expr e) {
  auto n = std::make_shared<Node>();
  n->op = Op::Not;
  n->lhs = std::move(e.node_);
  return Expr(std::move(n));
}

Expr Expr::conjunction(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->op = Op::And;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

Expr Expr::disjunction(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->op = Op::Or;
  n->lhs = std::move(lhs.node_);
  n->rhs = std::move(rhs.node_);
  return Expr(std::move(n));
}

Expr::Op Expr::op() const { return node_->op; }

bool Expr::const_value() const {
  if (node_->op != Op::Const) throw std::logic_error("not a constant");
  return node_->value;
}

const VarRef& Expr::var_ref() const {
  if (node_->op != Op::Var) throw std::logic_error("not a variable");
  return node_->var;
}

const Expr& Expr::lhs() const {
  // Safe: the wrapper is layout-compatible with its only member.
  static_assert(sizeof(Expr) == sizeof(std::shared_ptr<const Node>));
  return reinterpret_cast<const Expr&>(node_->lhs);
}

const Expr& Expr::rhs() const {
  static_assert(sizeof(Expr) == sizeof(std::shared_ptr<const Node>));
  return reinterpret_cast<const Expr&>(node_->rhs);
}

std::size_t Expr::size() const {
  switch (op()) {
    case Op::Const:
    case Op::Var:
      return 1;
    case Op::Not:
      return 1 + lhs().size();
    case Op::And:
    case Op::Or:
      return 1 + lhs().size() + rhs().size();
  }
  return 1;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Expr::Op::Const:
      return a.const_value() == b.const_value();
    case Expr::Op::Var:
      return a.var_ref() == b.var_ref();
    case Expr::Op::Not:
      return a.lhs() == b.lhs();
    case Expr::Op::And:
    case Expr::Op::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

namespace {

// Precedence levels used for rendering: '|' lowest, then '&', then '!'.
int precedence(Expr::Op op) {
  switch (op) {
    case Expr::Op::Or:
      return 0;
    case Expr::Op::And:
      return 1;
    case Expr::Op::Not:
      return 2;
    default:
      return 3;
  }
}

// Rendering is structure-preserving: re-parsing the output reproduces the
// exact tree, so right-nested same-precedence children get parentheses.
void render(const Expr& e, int min_prec, std::string& out) {
  const int prec = precedence(e.op());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.op()) {
    case Expr::Op::Const:
      out += e.const_value() ? '1' : '0';
      break;
    case Expr::Op::Var:
      out += e.var_ref().to_string();
      break;
    case Expr::Op::Not:
      out += '!';
      render(e.lhs(), 2, out);
      break;
    case Expr::Op::And:
      render(e.lhs(), 1, out);
      out += " & ";
      render(e.rhs(), 2, out);
      break;
    case Expr::Op::Or:
      render(e.lhs(), 0, out);
      out += " | ";
      render(e.rhs(), 1, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

bool eval(const Expr& e, const std::map<VarRef, bool>& assignment) {
  switch (e.op()) {
    case Expr::Op::Const:
      return e.const_value();
    case Expr::Op::Var: {
      auto it = assignment.find(e.var_ref());
      if (it == assignment.end()) {
        throw std::invalid_argument("unassigned variable: " +
                                    e.var_ref().to_string());
      }
      return it->second;
    }
    case Expr::Op::Not:
      return !eval(e.lhs(), assignment);
    case Expr::Op::And:
      return eval(e.lhs(), assignment) && eval(e.rhs(), assignment);
    case Expr::Op::Or:
      return eval(e.lhs(), assignment) || eval(e.rhs(), assignment);
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_vars(const Expr& e, std::set<VarRef>& out) {
  switch (e.op()) {
    case Expr::Op::Const:
      return;
    case Expr::Op::Var:
      out.insert(e.var_ref());
      return;
    case Expr::Op::Not:
      collect_vars(e.lhs(), out);
      return;
    case Expr::Op::And:
    case Expr::Op::Or:
      collect_vars(e.lhs(), out);
      collect_vars(e.rhs(), out);
      return;
  }
}

std::size_t word_count(std::uint64_t rows) { return (rows + 63) / 64; }

// Column pattern of variable `index`: bit r of the column is (r >> index) & 1.
std::vector<std::uint64_t> var_column(int index, std::uint64_t rows) {
  std::vector<std::uint64_t> out(word_count(rows), 0);
  static constexpr std::uint64_t kPatterns[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (index < 6) {
    std::fill(out.begin(), out.end(), kPatterns[index]);
  } else {
    for (std::size_t w = 0; w < out.size(); ++w) {
      if ((w >> (index - 6)) & 1) out[w] = ~0ull;
    }
  }
  if (rows % 64 != 0) out.back() &= (std::uint64_t{1} << (rows % 64)) - 1;
  return out;
}

void mask_tail(std::vector<std::uint64_t>& words, std::uint64_t rows) {
  if (rows % 64 != 0 && !words.empty()) {
    words.back() &= (std::uint64_t{1} << (rows % 64)) - 1;
  }
}

using WordsMemo = std::unordered_map<const void*, std::vector<std::uint64_t>>;

const std::vector<std::uint64_t>& eval_words(const Expr& e,
                                             const std::map<VarRef, int>& index_of,
                                             std::uint64_t rows, WordsMemo& memo) {
  auto hit = memo.find(e.identity());
  if (hit != memo.end()) return hit->second;

  std::vector<std::uint64_t> result;
  switch (e.op()) {
    case Expr::Op::Const:
      result.assign(word_count(rows), e.const_value() ? ~0ull : 0ull);
      mask_tail(result, rows);
      break;
    case Expr::Op::Var: {
      auto it = index_of.find(e.var_ref());
      if (it == index_of.end()) {
        throw std::invalid_argument("variable not in table scope: " +
                                    e.var_ref().to_string());
      }
      result = var_column(it->second, rows);
      break;
    }
    case Expr::Op::Not: {
      const auto& child = eval_words(e.lhs(), index_of, rows, memo);
      result.resize(child.size());
      for (std::size_t w = 0; w < child.size(); ++w) result[w] = ~child[w];
      mask_tail(result, rows);
      break;
    }
    case Expr::Op::And:
    case Expr::Op::Or: {
      std::vector<std::uint64_t> left = eval_words(e.lhs(), index_of, rows, memo);
      const auto& b = eval_words(e.rhs(), index_of, rows, memo);
      result.resize(left.size());
      if (e.op() == Expr::Op::And) {
        for (std::size_t w = 0; w < left.size(); ++w) result[w] = left[w] & b[w];
      } else {
        for (std::size_t w = 0; w < left.size(); ++w) result[w] = left[w] | b[w];
      }
      break;
    }
  }
  return memo.emplace(e.identity(), std::move(result)).first->second;
}

bool get_bit(const std::vector<std::uint64_t>& words, std::uint64_t row) {
  return (words[row >> 6] >> (row & 63)) & 1;
}

void set_bit(std::vector<std::uint64_t>& words, std::uint64_t row) {
  words[row >> 6] |= std::uint64_t{1} << (row & 63);
}

bool column_is_essential(const std::vector<std::uint64_t>& words, int var_count,
                         int index) {
  const std::uint64_t rows = std::uint64_t{1} << var_count;
  if (index < 6) {
    const auto column = var_column(index, rows);
    const int stride = 1 << index;
    for (std::size_t w = 0; w < words.size(); ++w) {
      const std::uint64_t x = words[w];
      if (((x >> stride) ^ x) & ~column[w] &
          (rows >= 64 ? ~0ull : (std::uint64_t{1} << rows) - 1)) {
        return true;
      }
    }
    return false;
  }
  const std::size_t stride = std::size_t{1} << (index - 6);
  for (std::size_t w = 0; w < words.size(); ++w) {
    if ((w >> (index - 6)) & 1) continue;
    if (words[w] != words[w + stride]) return true;
  }
  return false;
}

std::vector<std::uint64_t> project_out(const std::vector<std::uint64_t>& words,
                                       int var_count, int index) {
  const std::uint64_t rows_out = std::uint64_t{1} << (var_count - 1);
  std::vector<std::uint64_t> out(word_count(rows_out), 0);
  const std::uint64_t low_mask = (std::uint64_t{1} << index) - 1;
  for (std::uint64_t r = 0; r < rows_out; ++r) {
    const std::uint64_t src = ((r & ~low_mask) << 1) | (r & low_mask);
    if (get_bit(words, src)) set_bit(out, r);
  }
  return out;
}

}  // namespace

std::set<VarRef> syntactic_vars(const Expr& e) {
  std::set<VarRef> out;
  collect_vars(e, out);
  return out;
}

std::vector<std::uint64_t> raw_table(const Expr& e,
                                     const std::vector<VarRef>& vars) {
  std::map<VarRef, int> index_of;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    index_of[vars[i]] = static_cast<int>(i);
  }
  const std::uint64_t rows = std::uint64_t{1} << vars.size();
  WordsMemo memo;
  return eval_words(e, index_of, rows, memo);
}

TruthTable::TruthTable(std::vector<VarRef> vars, const std::vector<bool>& bits)
    : vars_(std::move(vars)) {
  if (!std::is_sorted(vars_.begin(), vars_.end()) ||
      std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end()) {
    throw std::invalid_argument("truth-table variables must be sorted and distinct");
  }
  const std::uint64_t rows = std::uint64_t{1} << vars_.size();
  if (bits.size() != rows) {
    throw std::invalid_argument("truth table needs 2^|vars| bits");
  }
  words_.assign(word_count(rows), 0);
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (bits[r]) set_bit(words_, r);
  }
}

TruthTable TruthTable::constant_table(bool value) {
  TruthTable t;
  t.words_.assign(1, value ? 1 : 0);
  return t;
}

bool TruthTable::bit(std::uint64_t row) const {
  if (row >= row_count()) throw std::out_of_range("truth-table row out of range");
  return get_bit(words_, row);
}

int TruthTable::max_delay() const {
  int d = 0;
  for (const auto& v : vars_) d = std::max(d, v.delay);
  return d;
}

TruthTable TruthTable::shifted(int delta) const {
  TruthTable t(*this);
  for (auto& v : t.vars_) {
    if (v.kind != VarKind::DelayedInput) {
      throw std::invalid_argument("shifted table requires delayed-input variables only");
    }
    v.delay += delta;
    if (v.delay < 1) throw std::invalid_argument("shift would produce delay < 1");
  }
  // Uniform shifts keep the (label, delay) order, so the rows still line up.
  return t;
}

TruthTable canonicalize(const Expr& e, int fan_in_cap) {
  std::set<VarRef> sv = syntactic_vars(e);
  if (static_cast<int>(sv.size()) > fan_in_cap) {
    throw FanInCapError("expression has " + std::to_string(sv.size()) +
                        " variables, exceeding the fan-in cap of " +
                        std::to_string(fan_in_cap));
  }
  std::vector<VarRef> vars(sv.begin(), sv.end());
  std::vector<std::uint64_t> words = raw_table(e, vars);
  for (std::size_t i = 0; i < vars.size();) {
    if (column_is_essential(words, static_cast<int>(vars.size()),
                            static_cast<int>(i))) {
      ++i;
      continue;
    }
    words = project_out(words, static_cast<int>(vars.size()), static_cast<int>(i));
    vars.erase(vars.begin() + static_cast<long>(i));
  }
  TruthTable t;
  t.vars_ = std::move(vars);
  t.words_ = std::move(words);
  return t;
}

std::set<VarRef> essential_vars(const Expr& e, int fan_in_cap) {
  const TruthTable t = canonicalize(e, fan_in_cap);
  return std::set<VarRef>(t.vars().begin(), t.vars().end());
}

bool equivalent(const Expr& a, const Expr& b, int fan_in_cap) {
  return canonicalize(a, fan_in_cap) == canonicalize(b, fan_in_cap);
}

namespace {

using Cube = std::pair<std::uint64_t, std::uint64_t>;  // (care mask, values)

// Prime implicants by iterated merging of adjacent cubes (Quine-McCluskey
// style), then a greedy cover: largest uncovered coverage first, ties by
// fewest literals, then by (care, value).
std::set<Cube> cover_cubes(const std::vector<std::uint64_t>& minterms, int k) {
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  std::set<Cube> level;
  for (std::uint64_t m : minterms) level.emplace(full, m);

  std::set<Cube> primes;
  while (!level.empty()) {
    std::set<Cube> next;
    std::set<Cube> merged;
    for (const Cube& cube : level) {
      for (int i = 0; i < k; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        if (!(cube.first & bit) || (cube.second & bit)) continue;
        const Cube partner{cube.first, cube.second | bit};
        if (!level.count(partner)) continue;
        next.emplace(cube.first & ~bit, cube.second);
        merged.insert(cube);
        merged.insert(partner);
      }
    }
    for (const Cube& cube : level) {
      if (!merged.count(cube)) primes.insert(cube);
    }
    level = std::move(next);
  }

  std::set<std::uint64_t> uncovered(minterms.begin(), minterms.end());
  auto covers = [&](const Cube& cube, std::uint64_t m) {
    return (m & cube.first) == cube.second;
  };
  std::set<Cube> chosen;
  while (!uncovered.empty()) {
    const Cube* best = nullptr;
    std::size_t best_count = 0;
    for (const Cube& cube : primes) {
      if (chosen.count(cube)) continue;
      std::size_t count = 0;
      for (std::uint64_t m : uncovered) {
        if (covers(cube, m)) ++count;
      }
      if (count == 0) continue;
      if (!best || count > best_count ||
          (count == best_count &&
           std::popcount(cube.first) < std::popcount(best->first)) ||
          (count == best_count &&
           std::popcount(cube.first) == std::popcount(best->first) && cube < *best)) {
        best = &cube;
        best_count = count;
      }
    }
    chosen.insert(*best);
    for (auto it = uncovered.begin(); it != uncovered.end();) {
      it = covers(*best, *it) ? uncovered.erase(it) : std::next(it);
    }
  }
  return chosen;
}

// Beyond prime-implicant scale a flat SOP explodes, so emit a Shannon
// decomposition on the highest variable instead; equal cofactors share one
// subtree through the memo, keeping the term DAG near the table size.
class ShannonBuilder {
 public:
  ShannonBuilder(const TruthTable& table) : table_(table) {}

  Expr build(int vars_left, std::uint64_t offset) {
    if (vars_left == 0) return Expr::constant(table_.bit(offset));
    const std::uint64_t rows = std::uint64_t{1} << vars_left;
    std::vector<bool> key(rows);
    for (std::uint64_t r = 0; r < rows; ++r) key[r] = table_.bit(offset + r);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;

    const std::uint64_t half = rows >> 1;
    Expr low = build(vars_left - 1, offset);
    Expr high = build(vars_left - 1, offset + half);
    const Expr pivot = Expr::var(table_.vars()[static_cast<std::size_t>(vars_left - 1)]);

    Expr result;
    if (low == high) {
      result = low;
    } else if (low.op() == Expr::Op::Const && !low.const_value()) {
      result = Expr::conjunction(pivot, std::move(high));
    } else if (high.op() == Expr::Op::Const && !high.const_value()) {
      result = Expr::conjunction(Expr::negation(pivot), std::move(low));
    } else if (low.op() == Expr::Op::Const) {  // low is true
      result = Expr::disjunction(Expr::negation(pivot), std::move(high));
    } else if (high.op() == Expr::Op::Const) {  // high is true
      result = Expr::disjunction(pivot, std::move(low));
    } else {
      result = Expr::disjunction(Expr::conjunction(Expr::negation(pivot), std::move(low)),
                                 Expr::conjunction(pivot, std::move(high)));
    }
    return memo_.emplace(std::move(key), std::move(result)).first->second;
  }

 private:
  const TruthTable& table_;
  std::map<std::vector<bool>, Expr> memo_;
};

constexpr int kPrimeImplicantCap = 10;

}  // namespace

Expr sop_expr(const TruthTable& table) {
  if (table.var_count() == 0) return Expr::constant(table.bit(0));
  const int k = static_cast<int>(table.var_count());

  std::vector<std::uint64_t> minterms;
  for (std::uint64_t r = 0; r < table.row_count(); ++r) {
    if (table.bit(r)) minterms.push_back(r);
  }
  if (minterms.empty()) return Expr::constant(false);
  if (minterms.size() == table.row_count()) return Expr::constant(true);

  if (k > kPrimeImplicantCap) {
    return ShannonBuilder(table).build(k, 0);
  }
  const std::set<Cube> implicants = cover_cubes(minterms, k);

  Expr out;
  bool first_term = true;
  for (const auto& [care, value] : implicants) {
    Expr product;
    bool first_lit = true;
    for (int i = 0; i < k; ++i) {
      if (!((care >> i) & 1)) continue;
      Expr lit = Expr::var(table.vars()[i]);
      if (!((value >> i) & 1)) lit = Expr::negation(std::move(lit));
      product = first_lit ? std::move(lit)
                          : Expr::conjunction(std::move(product), std::move(lit));
      first_lit = false;
    }
    out = first_term ? std::move(product)
                     : Expr::disjunction(std::move(out), std::move(product));
    first_term = false;
  }
  return out;
}

Expr simplify(const Expr& e, int fan_in_cap) {
  return sop_expr(canonicalize(e, fan_in_cap));
}

Expr substitute(const Expr& e, const std::map<VarRef, Expr>& mapping) {
  switch (e.op()) {
    case Expr::Op::Const:
      return e;
    case Expr::Op::Var: {
      auto it = mapping.find(e.var_ref());
      return it == mapping.end() ? e : it->second;
    }
    case Expr::Op::Not: {
      Expr child = substitute(e.lhs(), mapping);
      if (child.identity() == e.lhs().identity()) return e;
      return Expr::negation(std::move(child));
    }
    case Expr::Op::And:
    case Expr::Op::Or: {
      Expr left = substitute(e.lhs(), mapping);
      Expr right = substitute(e.rhs(), mapping);
      if (left.identity() == e.lhs().identity() &&
          right.identity() == e.rhs().identity()) {
        return e;
      }
      return e.op() == Expr::Op::And
                 ? Expr::conjunction(std::move(left), std::move(right))
                 : Expr::disjunction(std::move(left), std::move(right));
    }
  }
  throw std::logic_error("unreachable");
}

Expr shift_delays(const Expr& e, int shift) {
  if (shift < 0) throw std::invalid_argument("delay shift must be nonnegative");
  switch (e.op()) {
    case Expr::Op::Const:
      return e;
    case Expr::Op::Var: {
      const VarRef& v = e.var_ref();
      switch (v.kind) {
        case VarKind::Node:
          throw std::invalid_argument(
              "shift_delays applies to input/delayed variables only, got node '" +
              v.label + "'");
        case VarKind::Input:
          if (shift == 0) {
            throw std::invalid_argument("shift 0 would leave bare input '" +
                                        v.label + "' at delay 0");
          }
          return Expr::var(VarRef::delayed_input(v.label, shift));
        case VarKind::DelayedInput:
          if (shift == 0) return e;
          return Expr::var(VarRef::delayed_input(v.label, v.delay + shift));
      }
      throw std::logic_error("unreachable");
    }
    case Expr::Op::Not:
      return Expr::negation(shift_delays(e.lhs(), shift));
    case Expr::Op::And:
      return Expr::conjunction(shift_delays(e.lhs(), shift),
                               shift_delays(e.rhs(), shift));
    case Expr::Op::Or:
      return Expr::disjunction(shift_delays(e.lhs(), shift),
                               shift_delays(e.rhs(), shift));
  }
  throw std::logic_error("unreachable");
}

namespace {

struct Token {
  enum class Kind { Ident, ConstZero, ConstOne, Amp, Pipe, Bang, LParen, RParen, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < text.size() && ident_cont(text[i])) ++i;
      tokens.push_back({Token::Kind::Ident, text.substr(start, i - start), start});
      continue;
    }
    Token t;
    t.pos = i;
    t.text = std::string(1, c);
    switch (c) {
      case '0': t.kind = Token::Kind::ConstZero; break;
      case '1': t.kind = Token::Kind::ConstOne; break;
      case '&': t.kind = Token::Kind::Amp; break;
      case '|': t.kind = Token::Kind::Pipe; break;
      case '!': t.kind = Token::Kind::Bang; break;
      case '(': t.kind = Token::Kind::LParen; break;
      case ')': t.kind = Token::Kind::RParen; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
    tokens.push_back(std::move(t));
    ++i;
  }
  tokens.push_back({Token::Kind::End, "", text.size()});
  return tokens;
}

constexpr int kMaxNestingDepth = 10000;

class ExprParser {
 public:
  ExprParser(std::vector<Token> tokens, const std::set<std::string>& node_ids,
             const std::set<std::string>& input_labels)
      : tokens_(std::move(tokens)), node_ids_(node_ids), input_labels_(input_labels) {}

  Expr parse() {
    Expr e = parse_or();
    if (current().kind != Token::Kind::End) {
      throw ParseError("unexpected token '" + current().text + "'", current().pos);
    }
    return e;
  }

 private:
  const Token& current() const { return tokens_[at_]; }
  void advance() { ++at_; }

  Expr parse_or() {
    Expr e = parse_and();
    while (current().kind == Token::Kind::Pipe) {
      advance();
      e = Expr::disjunction(std::move(e), parse_and());
    }
    return e;
  }

  Expr parse_and() {
    Expr e = parse_factor();
    while (current().kind == Token::Kind::Amp) {
      advance();
      e = Expr::conjunction(std::move(e), parse_factor());
    }
    return e;
  }

  Expr parse_factor() {
    const Token& t = current();
    if (++depth_ > kMaxNestingDepth) {
      throw ParseError("expression nesting too deep", t.pos);
    }
    struct Guard {
      int& depth;
      ~Guard() { --depth; }
    } guard{depth_};
    switch (t.kind) {
      case Token::Kind::Bang:
        advance();
        return Expr::negation(parse_factor());
      case Token::Kind::LParen: {
        advance();
        Expr e = parse_or();
        if (current().kind != Token::Kind::RParen) {
          throw ParseError("expected ')'", current().pos);
        }
        advance();
        return e;
      }
      case Token::Kind::ConstZero:
        advance();
        return Expr::constant(false);
      case Token::Kind::ConstOne:
        advance();
        return Expr::constant(true);
      case Token::Kind::Ident: {
        Expr e;
        if (node_ids_.count(t.text)) {
          e = Expr::var(VarRef::node(t.text));
        } else if (input_labels_.count(t.text)) {
          e = Expr::var(VarRef::input(t.text));
        } else {
          throw ParseError("unknown identifier '" + t.text + "'", t.pos);
        }
        advance();
        return e;
      }
      default:
        throw ParseError("expected expression, got '" +
                             (t.kind == Token::Kind::End ? "end of input" : t.text) +
                             "'",
                         t.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  int depth_ = 0;
  const std::set<std::string>& node_ids_;
  const std::set<std::string>& input_labels_;
};

}  // namespace

Expr parse_expr(const std::string& text, const std::set<std::string>& node_ids,
                const std::set<std::string>& input_labels) {
  ExprParser parser(lex(text), node_ids, input_labels);
  return parser.parse();
}

}  // namespace banopt
