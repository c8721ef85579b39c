#include "lea/formula.hpp"

#include <cassert>
#include <functional>

namespace lea {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Op op, Sugar sugar, std::string name, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->sugar = sugar;
  n->hash = mix(0x51ed27, static_cast<std::size_t>(op));
  if (op == Op::Var) n->hash = mix(n->hash, std::hash<std::string>{}(name));
  for (const auto& k : kids) {
    n->size += k.size();
    n->depth = std::max(n->depth, k.modal_depth());
    n->has_ess = n->has_ess || k.has_ess();
    n->has_box = n->has_box || k.has_box();
    n->hash = mix(n->hash, k.hash());
  }
  if (op == Op::Ess || op == Op::Box) {
    n->depth += 1;
    (op == Op::Ess ? n->has_ess : n->has_box) = true;
  }
  n->name = std::move(name);
  n->kids = std::move(kids);
  return Formula(std::move(n));
}

Formula Formula::var(std::string name) { return make(Op::Var, Sugar::None, std::move(name), {}); }

Formula Formula::top() {
  static const Formula t = make(Op::Top, Sugar::None, {}, {});
  return t;
}

Formula Formula::bot() {
  static const Formula b = make(Op::Bot, Sugar::None, {}, {});
  return b;
}

Formula Formula::neg(Formula f) { return make(Op::Not, Sugar::None, {}, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) {
  return make(Op::And, Sugar::None, {}, {std::move(a), std::move(b)});
}
Formula Formula::disj(Formula a, Formula b) {
  return make(Op::Or, Sugar::None, {}, {std::move(a), std::move(b)});
}
Formula Formula::implies(Formula a, Formula b) {
  return make(Op::Implies, Sugar::None, {}, {std::move(a), std::move(b)});
}
Formula Formula::iff(Formula a, Formula b) {
  return make(Op::Iff, Sugar::None, {}, {std::move(a), std::move(b)});
}
Formula Formula::ess(Formula f) { return make(Op::Ess, Sugar::None, {}, {std::move(f)}); }
Formula Formula::box(Formula f) { return make(Op::Box, Sugar::None, {}, {std::move(f)}); }

Formula Formula::acc(Formula f) { return make(Op::Not, Sugar::Acc, {}, {ess(std::move(f))}); }
Formula Formula::dia(Formula f) {
  return make(Op::Not, Sugar::Dia, {}, {box(neg(std::move(f)))});
}

const Formula& Formula::lhs() const {
  assert(!node_->kids.empty());
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  assert(node_->kids.size() == 2);
  return node_->kids[1];
}

std::size_t Formula::arity() const { return node_->kids.size(); }

Formula Formula::with_sugar(Sugar s) const {
  if (s == sugar()) return *this;
  return make(op(), s, name(), node_->kids);
}

void Formula::collect_vars(std::set<std::string>& out) const {
  if (op() == Op::Var) {
    out.insert(name());
    return;
  }
  for (const auto& k : node_->kids) k.collect_vars(out);
}

std::set<std::string> Formula::vars() const {
  std::set<std::string> out;
  collect_vars(out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op()) return false;
  if (a.op() == Op::Var) return a.name() == b.name();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.node_->kids[i] == b.node_->kids[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.op() <=> b.op(); c != 0) return c;
  if (a.op() == Op::Var) return a.name() <=> b.name();
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.node_->kids[i] <=> b.node_->kids[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Formula substitute(const Formula& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f.op()) {
    case Op::Var: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Not:
      return Formula::neg(substitute(f.arg(), s)).with_sugar(f.sugar());
    case Op::And:
      return Formula::conj(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Op::Or:
      return Formula::disj(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Op::Implies:
      return Formula::implies(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Op::Iff:
      return Formula::iff(substitute(f.lhs(), s), substitute(f.rhs(), s));
    case Op::Ess:
      return Formula::ess(substitute(f.arg(), s));
    case Op::Box:
      return Formula::box(substitute(f.arg(), s));
  }
  return f;
}

namespace {

// Shared homomorphic skeleton of both translations; `modal` handles the one
// modality the source fragment allows.
template <typename ModalCase>
Formula translate(const Formula& f, Op forbidden, const char* what, const ModalCase& modal) {
  auto rec = [&](const Formula& g) { return translate(g, forbidden, what, modal); };
  switch (f.op()) {
    case Op::Var:
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Not:
      return Formula::neg(rec(f.arg()));
    case Op::And:
      return Formula::conj(rec(f.lhs()), rec(f.rhs()));
    case Op::Or:
      return Formula::disj(rec(f.lhs()), rec(f.rhs()));
    case Op::Implies:
      return Formula::implies(rec(f.lhs()), rec(f.rhs()));
    case Op::Iff:
      return Formula::iff(rec(f.lhs()), rec(f.rhs()));
    case Op::Ess:
    case Op::Box:
      if (f.op() == forbidden) throw FragmentError(what);
      return modal(rec(f.arg()));
  }
  return f;
}

}  // namespace

Formula to_ml(const Formula& f) {
  return translate(f, Op::Box, "to_ml: input contains []", [](const Formula& t) {
    return Formula::implies(t, Formula::box(t));
  });
}

Formula to_lea(const Formula& f) {
  return translate(f, Op::Ess, "to_lea: input contains o", [](const Formula& t) {
    return Formula::conj(Formula::ess(t), t);
  });
}

}  // namespace lea
