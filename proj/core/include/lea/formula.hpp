// Formula AST for the language with the essence operator (o) and box ([]).
//
// Formulas are immutable, reference-counted trees. Equality, ordering and
// hashing are structural; the sugar flag carried by Not nodes (used only to
// print `A p` and `<> p` back in their surface form) does not take part.

#ifndef LEA_FORMULA_HPP
#define LEA_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lea {

enum class Op : std::uint8_t { Var, Top, Bot, Not, And, Or, Implies, Iff, Ess, Box };

// How a Not node was written. Acc marks ~o f written as `A f`; Dia marks
// ~[]~f written as `<> f` (set on the outer Not).
enum class Sugar : std::uint8_t { None, Acc, Dia };

class Formula {
  struct Node {
    Op op;
    Sugar sugar = Sugar::None;
    std::string name;
    std::vector<Formula> kids;
    std::size_t size = 1;
    std::size_t hash = 0;
    int depth = 0;
    bool has_ess = false;
    bool has_box = false;
  };

 public:
  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula ess(Formula f);
  static Formula box(Formula f);
  // Sugar: Not(Ess f) and Not(Box(Not f)), flagged for resugaring.
  static Formula acc(Formula f);
  static Formula dia(Formula f);

  Op op() const { return node_->op; }
  Sugar sugar() const { return node_->sugar; }
  // Only meaningful for Var.
  const std::string& name() const { return node_->name; }
  // First child (unary operand or left operand).
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& arg() const { return lhs(); }
  std::size_t arity() const;

  std::size_t size() const { return node_->size; }
  int modal_depth() const { return node_->depth; }
  std::size_t hash() const { return node_->hash; }

  bool has_ess() const { return node_->has_ess; }
  bool has_box() const { return node_->has_box; }
  bool is_lea() const { return !has_box(); }
  bool is_ml() const { return !has_ess(); }
  bool is_atomic() const { return op() == Op::Var || op() == Op::Top || op() == Op::Bot; }

  std::set<std::string> vars() const;
  void collect_vars(std::set<std::string>& out) const;

  // Same structure, sugar flag replaced.
  Formula with_sugar(Sugar s) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, Sugar sugar, std::string name, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Simultaneous substitution of formulas for variables.
using Substitution = std::map<std::string, Formula>;

Formula substitute(const Formula& f, const Substitution& s);

// Thrown when a translation is applied outside its fragment.
class FragmentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// LEA -> ML: o f becomes t(f) -> [] t(f). Truth-preserving on every model.
Formula to_ml(const Formula& f);
// ML -> LEA: [] f becomes o t'(f) & t'(f). Truth-preserving on reflexive models.
Formula to_lea(const Formula& f);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Grammar (lowest to highest precedence):
//   <->  (right assoc)
//   ->   (right assoc)
//   |    (left assoc)
//   &    (left assoc)
//   ~  o  A  []  <>   (prefix)
//   T  F  identifiers  ( ... )
// Identifiers start with a lowercase letter other than `o` and continue with
// lowercase letters and digits.
Formula parse(std::string_view text);

// Inverse of parse. Binary operands of -> and <-> are always parenthesized;
// everywhere else parentheses appear only where precedence demands them.
std::string render(const Formula& f);

bool is_identifier(std::string_view s);

}  // namespace lea

template <>
struct std::hash<lea::Formula> {
  std::size_t operator()(const lea::Formula& f) const { return f.hash(); }
};

#endif  // LEA_FORMULA_HPP
