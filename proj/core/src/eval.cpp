#include "lea/eval.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace lea {

CompiledFormula::CompiledFormula(const Formula& f) : source_(f) {
  auto names = f.vars();
  vars_.assign(names.begin(), names.end());
  std::unordered_map<Formula, int, FormulaHash> seen;
  auto emit = [&](auto&& self, const Formula& g) -> int {
    if (auto it = seen.find(g); it != seen.end()) return it->second;
    Instr in{g.op()};
    if (g.op() == Op::Var) {
      in.var = static_cast<int>(std::lower_bound(vars_.begin(), vars_.end(), g.name()) - vars_.begin());
    } else if (g.arity() >= 1) {
      in.a = self(self, g.lhs());
      if (g.arity() == 2) in.b = self(self, g.rhs());
    }
    program_.push_back(in);
    int id = static_cast<int>(program_.size()) - 1;
    seen.emplace(g, id);
    return id;
  };
  emit(emit, f);
}

WorldSet evaluate(const CompiledFormula& cf, const Model& m) {
  const std::size_t n = m.size();
  std::vector<WorldSet> ext;
  ext.reserve(cf.program().size());
  auto all_succ_in = [&](std::size_t w, const WorldSet& x) {
    for (auto t : m.successors(w))
      if (!x.test(t)) return false;
    return true;
  };
  for (const auto& in : cf.program()) {
    switch (in.op) {
      case Op::Var: ext.push_back(m.extension_of(cf.vars()[in.var])); break;
      case Op::Top: ext.emplace_back(n, true); break;
      case Op::Bot: ext.emplace_back(n, false); break;
      case Op::Not: ext.push_back(~ext[in.a]); break;
      case Op::And: ext.push_back(ext[in.a] & ext[in.b]); break;
      case Op::Or: ext.push_back(ext[in.a] | ext[in.b]); break;
      case Op::Implies: ext.push_back(~ext[in.a] | ext[in.b]); break;
      case Op::Iff: {
        const auto& a = ext[in.a];
        const auto& b = ext[in.b];
        ext.push_back((a & b) | (~a & ~b));
        break;
      }
      case Op::Ess: {
        const auto& x = ext[in.a];
        WorldSet r(n);
        for (std::size_t w = 0; w < n; ++w)
          if (!x.test(w) || all_succ_in(w, x)) r.set(w);
        ext.push_back(std::move(r));
        break;
      }
      case Op::Box: {
        const auto& x = ext[in.a];
        WorldSet r(n);
        for (std::size_t w = 0; w < n; ++w)
          if (all_succ_in(w, x)) r.set(w);
        ext.push_back(std::move(r));
        break;
      }
    }
  }
  return ext.back();
}

SmallFrame::SmallFrame(const Model& m) : n(m.size()), succ(m.size(), 0) {
  if (n > 64) throw std::invalid_argument("SmallFrame holds at most 64 worlds");
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : m.successors(i)) succ[i] |= std::uint64_t{1} << j;
}

SmallFrame::SmallFrame(std::size_t worlds, std::uint64_t code) : n(worlds), succ(worlds, 0) {
  for (std::size_t i = 0; i < n; ++i) succ[i] = (code >> (i * n)) & ((std::uint64_t{1} << n) - 1);
}

std::uint64_t evaluate_small(const CompiledFormula& cf, const SmallFrame& frame,
                             std::span<const std::uint64_t> var_masks,
                             std::vector<std::uint64_t>& scratch) {
  const auto& prog = cf.program();
  scratch.resize(prog.size());
  const std::uint64_t full = frame.full();
  auto boxed = [&](std::uint64_t x) {
    std::uint64_t r = 0;
    for (std::size_t w = 0; w < frame.n; ++w)
      if ((frame.succ[w] & ~x) == 0) r |= std::uint64_t{1} << w;
    return r;
  };
  for (std::size_t k = 0; k < prog.size(); ++k) {
    const auto& in = prog[k];
    std::uint64_t v = 0;
    switch (in.op) {
      case Op::Var: v = var_masks[in.var]; break;
      case Op::Top: v = full; break;
      case Op::Bot: v = 0; break;
      case Op::Not: v = ~scratch[in.a] & full; break;
      case Op::And: v = scratch[in.a] & scratch[in.b]; break;
      case Op::Or: v = scratch[in.a] | scratch[in.b]; break;
      case Op::Implies: v = (~scratch[in.a] | scratch[in.b]) & full; break;
      case Op::Iff: v = ~(scratch[in.a] ^ scratch[in.b]) & full; break;
      case Op::Ess: v = (~scratch[in.a] & full) | boxed(scratch[in.a]); break;
      case Op::Box: v = boxed(scratch[in.a]); break;
    }
    scratch[k] = v;
  }
  return scratch.back();
}

}  // namespace lea
