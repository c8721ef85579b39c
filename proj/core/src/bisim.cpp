#include "lea/bisim.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace lea {

namespace {

class PairMatrix {
 public:
  explicit PairMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {}

  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) { bits_[i * stride_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  void reset(std::size_t i, std::size_t j) {
    bits_[i * stride_ + j / 64] &= ~(std::uint64_t{1} << (j % 64));
  }

  template <typename F>
  void for_each_in_row(std::size_t i, F&& f) const {
    for (std::size_t wi = 0; wi < stride_; ++wi) {
      std::uint64_t w = bits_[i * stride_ + wi];
      while (w) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  bool empty() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  }

 private:
  std::size_t n_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
};

// Variable whose truth differs at s and s2, if any.
std::optional<std::string> inv_failure(const Model& m, std::size_t s, std::size_t s2) {
  for (const auto& [var, ext] : m.valuation())
    if (ext.test(s) != ext.test(s2)) return var;
  return std::nullopt;
}

bool has_matching_successor(const Model& m, const PairMatrix& z, std::size_t t, std::size_t s2) {
  for (auto t2 : m.successors(s2))
    if (z.test(t, t2)) return true;
  return false;
}

bool has_matching_predecessor_side(const Model& m, const PairMatrix& z, std::size_t s,
                                   std::size_t t2) {
  for (auto t : m.successors(s))
    if (z.test(t, t2)) return true;
  return false;
}

// Forth/Back check of (s, s2) against z; returns the failing kind and world.
std::optional<std::pair<BisimViolation::Kind, std::size_t>> modal_failure(const Model& m,
                                                                          const PairMatrix& z,
                                                                          std::size_t s,
                                                                          std::size_t s2) {
  for (auto t : m.successors(s)) {
    if (!z.test(s, t) && !has_matching_successor(m, z, t, s2))
      return std::make_pair(BisimViolation::Kind::Forth, t);
  }
  for (auto t2 : m.successors(s2)) {
    if (!z.test(s2, t2) && !has_matching_predecessor_side(m, z, s, t2))
      return std::make_pair(BisimViolation::Kind::Back, t2);
  }
  return std::nullopt;
}

PairMatrix to_matrix(const BisimRelation& z) {
  PairMatrix mat(z.carrier.size());
  for (const auto& [a, b] : z.pairs) mat.set(z.carrier.index_of(a), z.carrier.index_of(b));
  return mat;
}

PairMatrix largest_matrix(const Model& m) {
  const std::size_t n = m.size();
  PairMatrix z(n);
  // Group worlds by valuation so Z0 is built in O(n^2 / 64) rather than
  // comparing every pair.
  std::map<std::vector<bool>, std::vector<std::size_t>> groups;
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<bool> key;
    for (const auto& [var, ext] : m.valuation()) key.push_back(ext.test(w));
    groups[key].push_back(w);
  }
  for (const auto& [_, members] : groups)
    for (auto a : members)
      for (auto b : members) z.set(a, b);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> row;
      z.for_each_in_row(s, [&](std::size_t s2) { row.push_back(s2); });
      for (auto s2 : row) {
        if (modal_failure(m, z, s, s2)) {
          z.reset(s, s2);
          changed = true;
        }
      }
    }
  }
  return z;
}

BisimRelation to_relation(const Model& m, const PairMatrix& z) {
  BisimRelation out{m, {}};
  for (std::size_t s = 0; s < m.size(); ++s)
    z.for_each_in_row(s, [&](std::size_t s2) { out.pairs.emplace(m.world(s), m.world(s2)); });
  return out;
}

}  // namespace

std::string BisimViolation::describe() const {
  switch (kind) {
    case Kind::Empty:
      return "relation is empty";
    case Kind::Inv:
      return "(Inv) fails for (" + pair->first + ", " + pair->second + ") on variable " + *witness;
    case Kind::Forth:
      return "(o-Forth) fails for (" + pair->first + ", " + pair->second + "): successor " +
             *witness + " of " + pair->first + " has no match";
    case Kind::Back:
      return "(o-Back) fails for (" + pair->first + ", " + pair->second + "): successor " +
             *witness + " of " + pair->second + " has no match";
  }
  return "?";
}

std::optional<BisimViolation> find_violation(const BisimRelation& z) {
  PairMatrix mat = to_matrix(z);
  if (z.pairs.empty()) return BisimViolation{BisimViolation::Kind::Empty, std::nullopt, std::nullopt};
  const Model& m = z.carrier;
  for (const auto& pr : z.pairs) {
    const std::size_t s = m.index_of(pr.first);
    const std::size_t s2 = m.index_of(pr.second);
    if (auto var = inv_failure(m, s, s2)) return BisimViolation{BisimViolation::Kind::Inv, pr, var};
    if (auto f = modal_failure(m, mat, s, s2))
      return BisimViolation{f->first, pr, m.world(f->second)};
  }
  return std::nullopt;
}

bool is_circ_bisimulation(const BisimRelation& z) { return !find_violation(z).has_value(); }

BisimRelation largest_circ_bisimulation(const Model& m) { return to_relation(m, largest_matrix(m)); }

bool circ_bisimilar(const PointedModel& a, const PointedModel& b) {
  Model u = disjoint_union(a.model, b.model);
  PairMatrix z = largest_matrix(u);
  return z.test(u.index_of(left_id(a.point)), u.index_of(right_id(b.point)));
}

bool box_bisimilar(const PointedModel& a, const PointedModel& b) {
  Model u = disjoint_union(a.model, b.model);
  const std::size_t n = u.size();
  std::vector<int> block(n);
  int count = 0;
  {
    std::map<std::vector<bool>, int> ids;
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<bool> key;
      for (const auto& [var, ext] : u.valuation()) key.push_back(ext.test(w));
      block[w] = ids.try_emplace(key, static_cast<int>(ids.size())).first->second;
    }
    count = static_cast<int>(ids.size());
  }
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    std::vector<int> next(n);
    for (std::size_t w = 0; w < n; ++w) {
      std::vector<int> succ;
      for (auto t : u.successors(w)) succ.push_back(block[t]);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      next[w] = ids.try_emplace({block[w], std::move(succ)}, static_cast<int>(ids.size())).first->second;
    }
    block = std::move(next);
    if (static_cast<int>(ids.size()) == count) break;
    count = static_cast<int>(ids.size());
  }
  return block[u.index_of(left_id(a.point))] == block[u.index_of(right_id(b.point))];
}

Quotient contract(const Model& m) {
  const std::size_t n = m.size();
  PairMatrix z = largest_matrix(m);
  std::vector<int> cls(n, -1);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t s = 0; s < n; ++s) {
    if (cls[s] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    z.for_each_in_row(s, [&](std::size_t t) {
      if (cls[t] < 0) {
        cls[t] = id;
        members.back().push_back(t);
      }
    });
  }
  std::vector<WorldId> names;
  for (const auto& mem : members) {
    WorldId least = m.world(mem.front());
    for (auto w : mem) least = std::min(least, m.world(w));
    names.push_back("[" + least + "]");
  }
  Model q(names);
  for (std::size_t s = 0; s < n; ++s)
    for (auto t : m.successors(s)) q.add_edge(static_cast<std::size_t>(cls[s]), static_cast<std::size_t>(cls[t]));
  for (const auto& [var, ext] : m.valuation()) {
    WorldSet img(q.size());
    for (auto w : ext.members()) img.set(static_cast<std::size_t>(cls[w]));
    q.set_extension(var, std::move(img));
  }
  Quotient out{std::move(q), {}};
  for (std::size_t s = 0; s < n; ++s) out.class_of.emplace(m.world(s), names[cls[s]]);
  return out;
}

}  // namespace lea
