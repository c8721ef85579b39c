#include "lea/decide.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "lea/eval.hpp"
#include "lea/semantics.hpp"

namespace lea {

std::string to_string(Mode m) { return m == Mode::Sat ? "sat" : "valid"; }
std::string to_string(Method m) { return m == Method::Tableau ? "tableau" : "bounded-search"; }

bool tableau_supports(FrameClass cls) { return cls != FrameClass::TB && cls != FrameClass::B5; }

Formula ml_form(const Formula& f) {
  switch (f.op()) {
    case Op::Var:
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Not: return Formula::neg(ml_form(f.arg())).with_sugar(f.sugar());
    case Op::And: return Formula::conj(ml_form(f.lhs()), ml_form(f.rhs()));
    case Op::Or: return Formula::disj(ml_form(f.lhs()), ml_form(f.rhs()));
    case Op::Implies: return Formula::implies(ml_form(f.lhs()), ml_form(f.rhs()));
    case Op::Iff: return Formula::iff(ml_form(f.lhs()), ml_form(f.rhs()));
    case Op::Box: return Formula::box(ml_form(f.arg()));
    case Op::Ess: {
      Formula t = ml_form(f.arg());
      return Formula::implies(t, Formula::box(t));
    }
  }
  throw std::logic_error("ml_form: bad node");
}

namespace {

// Negation normal form over interned nodes. Every node the tableau touches is
// created up front, so labels can be fixed-size membership vectors.
enum class Kind { True, False, Pos, Neg, And, Or, Box, Dia };

struct Node {
  Kind kind;
  std::string var;
  int a = -1;
  int b = -1;
};

class NnfTable {
 public:
  int build(const Formula& f, bool positive) {
    switch (f.op()) {
      case Op::Top: return intern({positive ? Kind::True : Kind::False});
      case Op::Bot: return intern({positive ? Kind::False : Kind::True});
      case Op::Var: return intern({positive ? Kind::Pos : Kind::Neg, f.name()});
      case Op::Not: return build(f.arg(), !positive);
      case Op::And:
        return intern({positive ? Kind::And : Kind::Or, {}, build(f.lhs(), positive), build(f.rhs(), positive)});
      case Op::Or:
        return intern({positive ? Kind::Or : Kind::And, {}, build(f.lhs(), positive), build(f.rhs(), positive)});
      case Op::Implies:
        return intern({positive ? Kind::Or : Kind::And, {}, build(f.lhs(), !positive), build(f.rhs(), positive)});
      case Op::Iff: {
        // a <-> b  is (a & b) | (~a & ~b);  ~(a <-> b) is (a & ~b) | (~a & b)
        int both = intern({Kind::And, {}, build(f.lhs(), true), build(f.rhs(), positive)});
        int neither = intern({Kind::And, {}, build(f.lhs(), false), build(f.rhs(), !positive)});
        return intern({Kind::Or, {}, both, neither});
      }
      case Op::Box: return intern({positive ? Kind::Box : Kind::Dia, {}, build(f.arg(), positive)});
      case Op::Ess: throw std::logic_error("tableau input still contains o");
    }
    throw std::logic_error("nnf: bad node");
  }

  const Node& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  // Id of the complementary literal, or -1 when it never occurs.
  int complement(int id) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    auto it = ids_.find({n.kind == Kind::Pos ? Kind::Neg : Kind::Pos, n.var, -1, -1});
    return it == ids_.end() ? -1 : it->second;
  }

 private:
  using Key = std::tuple<Kind, std::string, int, int>;

  int intern(Node n) {
    Key k{n.kind, n.var, n.a, n.b};
    auto [it, inserted] = ids_.try_emplace(k, static_cast<int>(nodes_.size()));
    if (inserted) nodes_.push_back(std::move(n));
    return it->second;
  }

  std::vector<Node> nodes_;
  std::map<Key, int> ids_;
};

struct Label {
  std::vector<char> has;
  std::vector<int> list;  // members in insertion order
  int parent = -1;
};

struct Branch {
  std::vector<Label> labels;
  std::vector<std::vector<int>> edges;  // explicit edges, before class closure
  std::vector<std::vector<char>> rel;   // closed relation
};

class Tableau {
 public:
  Tableau(const Formula& ml, FrameClass cls) : cls_(cls) { root_ = nnf_.build(ml, true); }

  std::optional<PointedModel> run() {
    Branch b;
    new_label(b, -1);
    add(b, 0, root_);
    auto open = expand(std::move(b));
    if (!open) return std::nullopt;
    return extract(*open);
  }

 private:
  bool transitive() const { return cls_ == FrameClass::K4 || cls_ == FrameClass::S4; }
  bool reflexive() const { return cls_ == FrameClass::T || cls_ == FrameClass::S4; }

  int new_label(Branch& b, int parent) {
    b.labels.push_back({std::vector<char>(nnf_.size(), 0), {}, parent});
    b.edges.emplace_back();
    return static_cast<int>(b.labels.size()) - 1;
  }

  bool add(Branch& b, int x, int id) {
    Label& l = b.labels[static_cast<std::size_t>(x)];
    if (l.has[static_cast<std::size_t>(id)]) return false;
    l.has[static_cast<std::size_t>(id)] = 1;
    l.list.push_back(id);
    return true;
  }

  bool holds(const Branch& b, int x, int id) const {
    return b.labels[static_cast<std::size_t>(x)].has[static_cast<std::size_t>(id)];
  }

  void close_relation(Branch& b) const {
    const std::size_t n = b.labels.size();
    b.rel.assign(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x) {
      for (int y : b.edges[x]) {
        b.rel[x][static_cast<std::size_t>(y)] = 1;
        if (cls_ == FrameClass::KB) b.rel[static_cast<std::size_t>(y)][x] = 1;
      }
      if (reflexive()) b.rel[x][x] = 1;
    }
    if (cls_ == FrameClass::S5)
      for (auto& row : b.rel) std::fill(row.begin(), row.end(), 1);
    if (transitive()) {
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          if (b.rel[i][k])
            for (std::size_t j = 0; j < n; ++j)
              if (b.rel[k][j]) b.rel[i][j] = 1;
    }
  }

  bool clashed(const Branch& b) const {
    for (std::size_t x = 0; x < b.labels.size(); ++x) {
      for (int id : b.labels[x].list) {
        const Node& n = nnf_[id];
        if (n.kind == Kind::False) return true;
        if (n.kind == Kind::Pos) {
          int c = nnf_.complement(id);
          if (c >= 0 && holds(b, static_cast<int>(x), c)) return true;
        }
      }
    }
    return false;
  }

  // Applies the deterministic rules (&, [], 4) to a fixpoint. False on clash.
  bool saturate(Branch& b) {
    while (true) {
      close_relation(b);
      bool changed = false;
      for (std::size_t x = 0; x < b.labels.size(); ++x) {
        for (std::size_t i = 0; i < b.labels[x].list.size(); ++i) {
          const int id = b.labels[x].list[i];
          const Node& n = nnf_[id];
          if (n.kind == Kind::And) {
            changed |= add(b, static_cast<int>(x), n.a);
            changed |= add(b, static_cast<int>(x), n.b);
          } else if (n.kind == Kind::Box) {
            for (std::size_t y = 0; y < b.labels.size(); ++y) {
              if (!b.rel[x][y]) continue;
              changed |= add(b, static_cast<int>(y), n.a);
              if (transitive()) changed |= add(b, static_cast<int>(y), id);
            }
          }
        }
      }
      if (clashed(b)) return false;
      if (!changed) return true;
    }
  }

  bool fulfilled(const Branch& b, int x, int target) const {
    for (std::size_t y = 0; y < b.labels.size(); ++y)
      if (b.rel[static_cast<std::size_t>(x)][y] && holds(b, static_cast<int>(y), target)) return true;
    return false;
  }

  // Nearest proper ancestor whose label contains x's label.
  int blocker(const Branch& b, int x) const {
    if (!transitive()) return -1;
    const auto& lx = b.labels[static_cast<std::size_t>(x)];
    for (int y = lx.parent; y >= 0; y = b.labels[static_cast<std::size_t>(y)].parent) {
      const auto& ly = b.labels[static_cast<std::size_t>(y)];
      bool subset = std::all_of(lx.list.begin(), lx.list.end(),
                                [&](int id) { return ly.has[static_cast<std::size_t>(id)]; });
      if (subset) return y;
    }
    return -1;
  }

  std::optional<Branch> expand(Branch b) {
    while (true) {
      if (!saturate(b)) return std::nullopt;
      if (auto split = find_split(b)) {
        auto [x, left, right] = *split;
        for (int child : {left, right}) {
          Branch copy = b;
          add(copy, x, child);
          if (auto open = expand(std::move(copy))) return open;
        }
        return std::nullopt;
      }
      if (apply_diamond(b)) continue;
      if (cls_ == FrameClass::D && apply_serial(b)) continue;
      return b;
    }
  }

  std::optional<std::tuple<int, int, int>> find_split(const Branch& b) const {
    for (std::size_t x = 0; x < b.labels.size(); ++x) {
      for (int id : b.labels[x].list) {
        const Node& n = nnf_[id];
        if (n.kind == Kind::Or && !holds(b, static_cast<int>(x), n.a) && !holds(b, static_cast<int>(x), n.b))
          return std::make_tuple(static_cast<int>(x), n.a, n.b);
      }
    }
    return std::nullopt;
  }

  bool apply_diamond(Branch& b) {
    for (std::size_t xi = 0; xi < b.labels.size(); ++xi) {
      const int x = static_cast<int>(xi);
      std::optional<int> pending;
      for (int id : b.labels[xi].list) {
        const Node& n = nnf_[id];
        if (n.kind == Kind::Dia && !fulfilled(b, x, n.a)) {
          pending = n.a;
          break;
        }
      }
      if (!pending || blocker(b, x) >= 0) continue;
      int y = new_label(b, x);
      b.edges[xi].push_back(y);
      add(b, y, *pending);
      return true;
    }
    return false;
  }

  bool apply_serial(Branch& b) {
    for (std::size_t xi = 0; xi < b.labels.size(); ++xi) {
      if (std::find(b.rel[xi].begin(), b.rel[xi].end(), 1) != b.rel[xi].end()) continue;
      const int x = static_cast<int>(xi);
      const auto& l = b.labels[xi];
      bool boxed = std::any_of(l.list.begin(), l.list.end(), [&](int id) { return nnf_[id].kind == Kind::Box; });
      if (boxed) {
        int y = new_label(b, x);
        b.edges[xi].push_back(y);
      } else {
        b.edges[xi].push_back(x);
      }
      return true;
    }
    return false;
  }

  PointedModel extract(Branch& b) const {
    const std::size_t n = b.labels.size();
    // A blocked label reuses the successors of its blocker.
    for (std::size_t x = 0; x < n; ++x) {
      int y = blocker(b, static_cast<int>(x));
      if (y < 0) continue;
      for (std::size_t z = 0; z < n; ++z)
        if (b.rel[static_cast<std::size_t>(y)][z]) b.edges[x].push_back(static_cast<int>(z));
    }
    close_relation(b);
    std::vector<WorldId> names;
    for (std::size_t x = 0; x < n; ++x) names.push_back("w" + std::to_string(x));
    std::vector<std::pair<WorldId, WorldId>> rel;
    std::map<std::string, std::vector<WorldId>> val;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y)
        if (b.rel[x][y]) rel.emplace_back(names[x], names[y]);
      for (int id : b.labels[x].list)
        if (nnf_[id].kind == Kind::Pos) val[nnf_[id].var].push_back(names[x]);
    }
    return PointedModel(Model(names, rel, val), names[0]);
  }

  FrameClass cls_;
  NnfTable nnf_;
  int root_ = -1;
};

void check_witness(const Verdict& v) {
  if (v.witness && !replay_witness(v))
    throw std::logic_error("decision procedure produced a witness that does not replay");
}

}  // namespace

std::optional<PointedModel> search_model(const Formula& f, FrameClass cls, std::size_t max_n) {
  CompiledFormula cf(f);
  const std::size_t k = cf.vars().size();
  std::vector<std::uint64_t> masks(k), scratch;
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (n * k >= 63) throw std::invalid_argument("search_model: too many valuations to enumerate");
    FrameEnumerator frames(n);
    const std::uint64_t vals = std::uint64_t{1} << (n * k);
    const std::uint64_t var_mask = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t code = 0; code < frames.count(); ++code) {
      Model frame = frames.at(code);
      if (!in_class(frame, cls)) continue;
      SmallFrame sf(n, code);
      for (std::uint64_t v = 0; v < vals; ++v) {
        for (std::size_t i = 0; i < k; ++i) masks[i] = (v >> (i * n)) & var_mask;
        std::uint64_t ext = evaluate_small(cf, sf, masks, scratch);
        if (ext == 0) continue;
        Model m = ValuationEnumerator(frame, cf.vars()).at(v);
        return PointedModel(std::move(m), frame.world(static_cast<std::size_t>(std::countr_zero(ext))));
      }
    }
  }
  return std::nullopt;
}

bool replay_witness(const Verdict& v) {
  if (!v.witness || !v.answer) return false;
  const PointedModel& w = *v.witness;
  if (!in_class(w.model, v.query.cls)) return false;
  const bool truth = satisfies(w.model, w.point, v.query.formula);
  // A Sat witness satisfies the formula; a Valid witness refutes it.
  return v.query.mode == Mode::Sat ? (*v.answer && truth) : (!*v.answer && !truth);
}

Verdict satisfiable(const Formula& f, FrameClass cls, const DecideOptions& opts) {
  Verdict v{{f, cls, Mode::Sat}};
  if (!tableau_supports(cls)) {
    v.method = Method::BoundedSearch;
    v.bound = opts.search_bound;
    if (auto m = search_model(f, cls, opts.search_bound)) {
      v.answer = true;
      v.witness = std::move(m);
    }
    return v;
  }
  auto model = Tableau(ml_form(f), cls).run();
  v.answer = model.has_value();
  v.witness = std::move(model);
  check_witness(v);
  return v;
}

Verdict valid(const Formula& f, FrameClass cls, const DecideOptions& opts) {
  Verdict s = satisfiable(Formula::neg(f), cls, opts);
  Verdict v{{f, cls, Mode::Valid}};
  if (s.answer) v.answer = !*s.answer;
  v.witness = std::move(s.witness);
  v.method = s.method;
  v.bound = s.bound;
  check_witness(v);
  return v;
}

CrosscheckReport crosscheck(const Formula& f, FrameClass cls, std::size_t max_n) {
  if (max_n > 4) throw std::invalid_argument("crosscheck: max_n must be at most 4");
  CrosscheckReport r{Verdict{{f, cls, Mode::Sat}}, max_n};
  r.found = search_model(f, cls, max_n);
  try {
    r.tableau = satisfiable(f, cls);
  } catch (const std::logic_error& e) {
    r.witness_verified = false;
    r.hard_failure = true;
    r.note = e.what();
    return r;
  }
  if (r.found && r.tableau.answer != true) {
    r.hard_failure = true;
    r.note = "search found a model of size " + std::to_string(r.found->model.size()) +
             " but the tableau did not answer satisfiable";
  } else if (!r.found && r.tableau.answer == true) {
    r.inconclusive = true;
    r.note = "satisfiable, but no model with at most " + std::to_string(max_n) + " worlds";
  }
  return r;
}

}  // namespace lea
