// Generators, fixtures and reference implementations shared by the tests.
// The reference evaluator is written straight from the satisfaction clauses
// and deliberately shares no code with the library's evaluator.

#ifndef LEA_TESTKIT_HPP
#define LEA_TESTKIT_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lea/formula.hpp"
#include "lea/kripke.hpp"

namespace lea::testkit {

using Rng = std::mt19937_64;

inline bool naive_holds(const Model& m, std::size_t s, const Formula& f) {
  switch (f.op()) {
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Var: return m.holds(f.name(), s);
    case Op::Not: return !naive_holds(m, s, f.arg());
    case Op::And: return naive_holds(m, s, f.lhs()) && naive_holds(m, s, f.rhs());
    case Op::Or: return naive_holds(m, s, f.lhs()) || naive_holds(m, s, f.rhs());
    case Op::Implies: return !naive_holds(m, s, f.lhs()) || naive_holds(m, s, f.rhs());
    case Op::Iff: return naive_holds(m, s, f.lhs()) == naive_holds(m, s, f.rhs());
    case Op::Box:
      for (std::size_t t = 0; t < m.size(); ++t)
        if (m.has_edge(s, t) && !naive_holds(m, t, f.arg())) return false;
      return true;
    case Op::Ess: {
      if (!naive_holds(m, s, f.arg())) return true;
      for (std::size_t t = 0; t < m.size(); ++t)
        if (m.has_edge(s, t) && !naive_holds(m, t, f.arg())) return false;
      return true;
    }
  }
  return false;
}

struct FormulaShape {
  std::vector<std::string> vars{"p", "q"};
  int height = 4;       // AST nesting bound
  int modal_depth = 2;  // modal nesting bound
  bool ess = true;
  bool box = false;
};

inline Formula random_formula(Rng& rng, const FormulaShape& shape, int height, int modal) {
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  if (height <= 0 || pick(5) == 0) {
    int k = pick(static_cast<int>(shape.vars.size()) + 2);
    if (k == 0) return pick(2) ? Formula::top() : Formula::bot();
    return Formula::var(shape.vars[static_cast<std::size_t>(k - 1) % shape.vars.size()]);
  }
  std::vector<int> ops{0, 1, 2, 3, 4};
  if (modal > 0 && shape.ess) ops.insert(ops.end(), {5, 5, 7});
  if (modal > 0 && shape.box) ops.insert(ops.end(), {6, 6, 8});
  switch (ops[static_cast<std::size_t>(pick(static_cast<int>(ops.size())))]) {
    case 0: return Formula::neg(random_formula(rng, shape, height - 1, modal));
    case 1:
      return Formula::conj(random_formula(rng, shape, height - 1, modal), random_formula(rng, shape, height - 1, modal));
    case 2:
      return Formula::disj(random_formula(rng, shape, height - 1, modal), random_formula(rng, shape, height - 1, modal));
    case 3:
      return Formula::implies(random_formula(rng, shape, height - 1, modal),
                              random_formula(rng, shape, height - 1, modal));
    case 4:
      return Formula::iff(random_formula(rng, shape, height - 1, modal), random_formula(rng, shape, height - 1, modal));
    case 5: return Formula::ess(random_formula(rng, shape, height - 1, modal - 1));
    case 6: return Formula::box(random_formula(rng, shape, height - 1, modal - 1));
    case 7: return Formula::acc(random_formula(rng, shape, height - 1, modal - 1));
    default: return Formula::dia(random_formula(rng, shape, height - 1, modal - 1));
  }
}

inline Formula random_formula(Rng& rng, const FormulaShape& shape) {
  return random_formula(rng, shape, shape.height, shape.modal_depth);
}

inline Model random_model(Rng& rng, std::size_t n, const std::vector<std::string>& vars, double edge_p = 0.4) {
  std::bernoulli_distribution edge(edge_p), coin(0.5);
  std::vector<WorldId> worlds;
  for (std::size_t i = 0; i < n; ++i) worlds.push_back("w" + std::to_string(i));
  std::vector<std::pair<WorldId, WorldId>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (edge(rng)) rel.emplace_back(worlds[i], worlds[j]);
  std::map<std::string, std::vector<WorldId>> val;
  for (const auto& v : vars) {
    auto& ext = val[v];
    for (const auto& w : worlds)
      if (coin(rng)) ext.push_back(w);
  }
  return Model(worlds, rel, val);
}

// Random equivalence relation on n worlds, valuation over vars.
inline Model random_s5_model(Rng& rng, std::size_t n, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<std::size_t> cls(0, n - 1);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = cls(rng);
  std::vector<WorldId> worlds;
  for (std::size_t i = 0; i < n; ++i) worlds.push_back("w" + std::to_string(i));
  std::vector<std::pair<WorldId, WorldId>> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (block[i] == block[j]) rel.emplace_back(worlds[i], worlds[j]);
  std::map<std::string, std::vector<WorldId>> val;
  for (const auto& v : vars) {
    auto& ext = val[v];
    for (const auto& w : worlds)
      if (coin(rng)) ext.push_back(w);
  }
  return Model(worlds, rel, val);
}

// Every model with 1..max_n worlds and every valuation of `vars`.
template <typename F>
void for_each_small_model(std::size_t max_n, const std::vector<std::string>& vars, F&& visit) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    FrameEnumerator frames(n);
    for (std::uint64_t code = 0; code < frames.count(); ++code) {
      ValuationEnumerator vals(frames.at(code), vars);
      for (std::uint64_t v = 0; v < vals.count(); ++v) visit(vals.at(v));
    }
  }
}

// M: s:p with a loop.  N: t:p, no edges.
inline PointedModel loop_point() { return PointedModel(Model({"s"}, {{"s", "s"}}, {{"p", {"s"}}}), "s"); }
inline PointedModel dead_point() { return PointedModel(Model({"t"}, {}, {{"p", {"t"}}}), "t"); }

// M: s:p <-> t:~p with a loop at t.  N: s':p <-> t':~p.
inline PointedModel two_cycle_with_loop() {
  return PointedModel(Model({"s", "t"}, {{"s", "t"}, {"t", "s"}, {"t", "t"}}, {{"p", {"s"}}}), "s");
}
inline PointedModel two_cycle() {
  return PointedModel(Model({"s'", "t'"}, {{"s'", "t'"}, {"t'", "s'"}}, {{"p", {"s'"}}}), "s'");
}

}  // namespace lea::testkit

#endif  // LEA_TESTKIT_HPP
