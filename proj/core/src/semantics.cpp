#include "lea/semantics.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "lea/eval.hpp"

namespace lea {

WorldSet extension(const Model& m, const Formula& f) { return evaluate(CompiledFormula(f), m); }

bool satisfies_at(const Model& m, std::size_t s, const Formula& f) {
  if (s >= m.size()) throw std::out_of_range("world index out of range");
  return extension(m, f).test(s);
}

bool satisfies(const Model& m, const WorldId& s, const Formula& f) {
  return satisfies_at(m, m.index_of(s), f);
}

bool valid_in_model(const Model& m, const Formula& f) { return extension(m, f).all(); }

namespace {

// Fast path: first valuation code (and world) falsifying f, or nullopt.
struct Falsifier {
  std::uint64_t code;
  std::size_t world;
};

std::optional<Falsifier> first_falsifier(const Model& frame, const CompiledFormula& cf) {
  const std::size_t n = frame.size();
  const std::size_t k = cf.vars().size();
  if (n * k >= 63) throw std::invalid_argument("too many valuations to enumerate");
  const std::uint64_t count = std::uint64_t{1} << (n * k);
  if (n <= 64) {
    SmallFrame sf(frame);
    std::vector<std::uint64_t> masks(k), scratch;
    const std::uint64_t full = sf.full();
    const std::uint64_t var_mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      for (std::size_t v = 0; v < k; ++v) masks[v] = (code >> (v * n)) & var_mask;
      auto ext = evaluate_small(cf, sf, masks, scratch);
      if (ext != full) {
        auto missing = ~ext & full;
        return Falsifier{code, static_cast<std::size_t>(std::countr_zero(missing))};
      }
    }
    return std::nullopt;
  }
  ValuationEnumerator vals(frame, cf.vars());
  for (std::uint64_t code = 0; code < vals.count(); ++code) {
    auto ext = evaluate(cf, vals.at(code));
    if (!ext.all()) return Falsifier{code, (~ext).members().front()};
  }
  return std::nullopt;
}

}  // namespace

bool valid_on_frame(const Model& frame, const Formula& f) {
  return !first_falsifier(frame, CompiledFormula(f)).has_value();
}

std::optional<PointedModel> frame_countermodel(const Model& frame, const Formula& f) {
  CompiledFormula cf(f);
  auto hit = first_falsifier(frame, cf);
  if (!hit) return std::nullopt;
  ValuationEnumerator vals(frame, cf.vars());
  Model m = vals.at(hit->code);
  return PointedModel(std::move(m), frame.world(hit->world));
}

std::string to_string(DefinabilityVerdict::Direction d) {
  return d == DefinabilityVerdict::Direction::PropertyButInvalid ? "property-but-invalid"
                                                                 : "valid-but-no-property";
}

std::string DefinabilityVerdict::summary() const {
  if (confirmed) return "Confirmed up to n=" + std::to_string(max_n);
  return "Refuted at n=" + std::to_string(witness->size()) + " (" + to_string(*direction) + ")";
}

DefinabilityVerdict check_definability(FrameProperty p, const Formula& f, std::size_t max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be at least 1");
  DefinabilityVerdict v{p, f, max_n};
  CompiledFormula cf(f);
  for (std::size_t n = 1; n <= max_n; ++n) {
    FrameEnumerator frames(n);
    for (std::uint64_t code = 0; code < frames.count(); ++code) {
      Model frame = frames.at(code);
      const bool prop = has_property(frame, p);
      const bool valid = !first_falsifier(frame, cf).has_value();
      if (prop != valid) {
        v.confirmed = false;
        v.direction = prop ? DefinabilityVerdict::Direction::PropertyButInvalid
                           : DefinabilityVerdict::Direction::ValidButNoProperty;
        v.witness = std::move(frame);
        return v;
      }
    }
  }
  return v;
}

// Refinement step: a world's depth-(k+1) class is its depth-k class together
// with the set of depth-k classes of its successors other than its own. For
// worlds w, v in one class B, some o X (X a union of classes) separates them
// iff those successor sets differ: o X holds at w iff B is outside X or all
// successors of w lie in X.
DepthPartition lea_partition(const Model& m, const std::vector<std::string>& vars, int depth) {
  const std::size_t n = m.size();
  DepthPartition out;
  std::vector<int> cur(n);
  {
    std::map<std::vector<bool>, int> ids;
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<bool> key;
      for (const auto& v : vars) key.push_back(m.holds(v, w));
      auto [it, _] = ids.try_emplace(key, static_cast<int>(ids.size()));
      cur[w] = it->second;
    }
    out.level.push_back(cur);
    out.block_count.push_back(static_cast<int>(ids.size()));
  }
  for (int k = 0; k < depth; ++k) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> next(n);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<int> succ_blocks;
      for (auto t : m.successors(w))
        if (cur[t] != cur[w]) succ_blocks.push_back(cur[t]);
      std::sort(succ_blocks.begin(), succ_blocks.end());
      succ_blocks.erase(std::unique(succ_blocks.begin(), succ_blocks.end()), succ_blocks.end());
      auto [it, _] = ids.try_emplace({cur[w], std::move(succ_blocks)}, static_cast<int>(ids.size()));
      next[w] = it->second;
    }
    cur = std::move(next);
    out.level.push_back(cur);
    out.block_count.push_back(static_cast<int>(ids.size()));
  }
  return out;
}

namespace {

// Characteristic formulas of partition blocks, built on demand.
class Characterizer {
 public:
  Characterizer(const Model& m, const std::vector<std::string>& vars, const DepthPartition& p)
      : m_(m), vars_(vars), p_(p), memo_(p.level.size()) {}

  const Formula& chi(int level, int block) {
    auto& memo = memo_[level];
    if (auto it = memo.find(block); it != memo.end()) return it->second;
    std::size_t rep = representative(level, block);
    Formula f = level == 0 ? literals(rep) : refine(level, block, rep);
    return memo.emplace(block, std::move(f)).first->second;
  }

  // Formula true at world w and false at world v; they must differ at
  // `level` and agree at level - 1.
  Formula separate(int level, std::size_t w, std::size_t v) {
    if (level == 0) {
      for (const auto& var : vars_) {
        if (m_.holds(var, w) != m_.holds(var, v))
          return m_.holds(var, w) ? Formula::var(var) : Formula::neg(Formula::var(var));
      }
      throw std::logic_error("worlds agree on all variables");
    }
    const auto& below = p_.level[level - 1];
    const int b = below[w];
    auto sw = successor_blocks(level - 1, w);
    auto sv = successor_blocks(level - 1, v);
    for (int c : sw) {
      if (!std::binary_search(sv.begin(), sv.end(), c))
        return Formula::conj(chi(level - 1, b), sees(level - 1, c));
    }
    for (int c : sv) {
      if (!std::binary_search(sw.begin(), sw.end(), c))
        return Formula::conj(chi(level - 1, b), Formula::ess(Formula::neg(chi(level - 1, c))));
    }
    throw std::logic_error("worlds are not separated at this level");
  }

 private:
  std::size_t representative(int level, int block) const {
    const auto& lv = p_.level[level];
    for (std::size_t w = 0; w < lv.size(); ++w)
      if (lv[w] == block) return w;
    throw std::logic_error("empty block");
  }

  std::vector<int> successor_blocks(int level, std::size_t w) const {
    const auto& lv = p_.level[level];
    std::vector<int> out;
    for (auto t : m_.successors(w))
      if (lv[t] != lv[w]) out.push_back(lv[t]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // At a world outside block c: "some successor lies in c".
  Formula sees(int level, int c) { return Formula::acc(Formula::neg(chi(level, c))); }

  Formula literals(std::size_t w) const {
    std::optional<Formula> f;
    for (const auto& var : vars_) {
      Formula lit = m_.holds(var, w) ? Formula::var(var) : Formula::neg(Formula::var(var));
      f = f ? Formula::conj(*f, lit) : lit;
    }
    return f ? *f : Formula::top();
  }

  Formula refine(int level, int block, std::size_t rep) {
    const int b = p_.level[level - 1][rep];
    Formula f = chi(level - 1, b);
    auto succ = successor_blocks(level - 1, rep);
    for (int c = 0; c < p_.block_count[level - 1]; ++c) {
      if (c == b) continue;
      bool in = std::binary_search(succ.begin(), succ.end(), c);
      f = Formula::conj(f, in ? sees(level - 1, c) : Formula::ess(Formula::neg(chi(level - 1, c))));
    }
    (void)block;
    return f;
  }

  const Model& m_;
  const std::vector<std::string>& vars_;
  const DepthPartition& p_;
  std::vector<std::map<int, Formula>> memo_;
};

}  // namespace

EquivalenceResult bounded_equivalent(const PointedModel& a, const PointedModel& b,
                                     const std::vector<std::string>& vars, int depth) {
  Model u = disjoint_union(a.model, b.model);
  const std::size_t w = u.index_of(left_id(a.point));
  const std::size_t v = u.index_of(right_id(b.point));
  DepthPartition p = lea_partition(u, vars, depth);
  for (int k = 0; k <= depth; ++k) {
    if (p.level[k][w] != p.level[k][v]) {
      Characterizer ch(u, vars, p);
      return {false, ch.separate(k, w, v)};
    }
  }
  return {true, std::nullopt};
}

std::vector<Formula> layered_formulas(const Model& carrier, const std::vector<std::string>& vars,
                                      int depth, Op modality) {
  if (modality != Op::Ess && modality != Op::Box)
    throw std::invalid_argument("layered_formulas: modality must be o or []");
  struct Rep {
    Formula f;
    WorldSet ext;
  };
  std::vector<Rep> reps;
  std::map<WorldSet, std::size_t> seen;
  auto offer = [&](std::vector<Rep>& into, Formula f, WorldSet ext) {
    if (seen.try_emplace(ext, seen.size()).second) into.push_back({std::move(f), std::move(ext)});
  };
  offer(reps, Formula::top(), extension(carrier, Formula::top()));
  offer(reps, Formula::bot(), extension(carrier, Formula::bot()));
  for (const auto& v : vars) {
    offer(reps, Formula::var(v), carrier.extension_of(v));
    offer(reps, Formula::neg(Formula::var(v)), ~carrier.extension_of(v));
  }
  auto closure = [&](const std::vector<Rep>& base) {
    std::vector<Rep> out = base;
    const std::size_t k = base.size();
    for (std::size_t i = 0; i < k; ++i) offer(out, Formula::neg(base[i].f), ~base[i].ext);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        offer(out, Formula::conj(base[i].f, base[j].f), base[i].ext & base[j].ext);
        offer(out, Formula::disj(base[i].f, base[j].f), base[i].ext | base[j].ext);
      }
    }
    return out;
  };
  for (int layer = 1; layer <= depth; ++layer) {
    std::vector<Rep> closed = closure(reps);
    std::vector<Rep> next = closed;
    for (const auto& r : closed) {
      WorldSet ext(carrier.size());
      for (std::size_t w = 0; w < carrier.size(); ++w) {
        bool boxed = true;
        for (auto t : carrier.successors(w)) boxed = boxed && r.ext.test(t);
        ext.set(w, boxed || (modality == Op::Ess && !r.ext.test(w)));
      }
      offer(next, modality == Op::Ess ? Formula::ess(r.f) : Formula::box(r.f), std::move(ext));
    }
    reps = std::move(next);
  }
  reps = closure(reps);
  std::vector<Formula> out;
  out.reserve(reps.size());
  for (auto& r : reps) out.push_back(std::move(r.f));
  return out;
}

}  // namespace lea
