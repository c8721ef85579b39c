// Finite Kripke models, frame properties, relation transformations and
// exhaustive enumerators.

#ifndef LEA_KRIPKE_HPP
#define LEA_KRIPKE_HPP

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lea/world_set.hpp"

namespace lea {

using WorldId = std::string;

class UnknownWorld : public std::out_of_range {
 public:
  explicit UnknownWorld(const WorldId& w) : std::out_of_range("unknown world: " + w), world_(w) {}
  const WorldId& world() const { return world_; }

 private:
  WorldId world_;
};

class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A model <S, R, V>. A frame is a model whose valuation is ignored.
// Worlds keep their construction order; that order fixes world indices.
class Model {
 public:
  Model(std::vector<WorldId> worlds, const std::vector<std::pair<WorldId, WorldId>>& rel = {},
        const std::map<std::string, std::vector<WorldId>>& val = {});

  // Worlds named w0..w(n-1), no edges, empty valuation.
  static Model with_anonymous_worlds(std::size_t n);

  std::size_t size() const { return worlds_.size(); }
  const std::vector<WorldId>& worlds() const { return worlds_; }
  const WorldId& world(std::size_t i) const { return worlds_[i]; }
  std::optional<std::size_t> find(const WorldId& w) const;
  std::size_t index_of(const WorldId& w) const;

  const std::vector<std::size_t>& successors(std::size_t i) const { return succ_[i]; }
  bool has_edge(std::size_t i, std::size_t j) const;
  std::size_t edge_count() const;
  // Edges in (source index, target index) order.
  std::vector<std::pair<WorldId, WorldId>> relation() const;

  const std::map<std::string, WorldSet>& valuation() const { return val_; }
  // False when the variable has no entry.
  bool holds(const std::string& var, std::size_t i) const;
  WorldSet extension_of(const std::string& var) const;

  void add_edge(std::size_t i, std::size_t j);
  void set_extension(const std::string& var, WorldSet ext);
  void clear_valuation() { val_.clear(); }

  friend bool operator==(const Model&, const Model&);

 private:
  Model() = default;

  std::vector<WorldId> worlds_;
  std::unordered_map<WorldId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_;
  std::map<std::string, WorldSet> val_;
};

struct PointedModel {
  PointedModel(Model m, WorldId p);

  Model model;
  WorldId point;
};

enum class FrameProperty {
  Reflexive,
  Serial,
  Transitive,
  Symmetric,
  Euclidean,
  Coreflexive,
  WeaklyTransitive,
  WeaklyConnected,
  WeakWeakEuclidean,
  StrictTransitive3,
  StrictEuclidean3
};

enum class FrameClass { K, D, T, KB, TB, K4, S4, B5, S5 };

const std::vector<FrameProperty>& all_frame_properties();
const std::vector<FrameClass>& all_frame_classes();

std::string to_string(FrameProperty p);
std::string to_string(FrameClass c);
// Accepts the names produced by to_string, case-insensitively, with `_` or `-`.
std::optional<FrameProperty> parse_frame_property(std::string_view s);
std::optional<FrameClass> parse_frame_class(std::string_view s);

const std::vector<FrameProperty>& properties_of(FrameClass c);

bool has_property(const Model& m, FrameProperty p);
bool in_class(const Model& m, FrameClass c);

enum class LoopMode {
  All,            // every world
  Endpoints,      // worlds without successors
  TwoCycles,      // worlds w with wRt and tRw for some t
  HasPredecessor  // worlds with at least one predecessor
};

const std::vector<LoopMode>& all_loop_modes();
std::string to_string(LoopMode m);

// Adds (w, w) for every world w selected by `mode`, judged on the input
// relation. Nothing else changes.
Model add_self_loops(const Model& m, LoopMode mode);

// Worlds are renamed "L:<id>" and "R:<id>"; no edges cross components.
Model disjoint_union(const Model& a, const Model& b);
WorldId left_id(const WorldId& w);
WorldId right_id(const WorldId& w);

// All 2^(n*n) frames over worlds w0..w(n-1). Frame `code` has edge (wi, wj)
// iff bit i*n+j of code is set. Random access keeps the stream restartable
// and splittable across workers.
class FrameEnumerator {
 public:
  explicit FrameEnumerator(std::size_t n);

  std::size_t worlds() const { return n_; }
  std::uint64_t count() const { return count_; }
  Model at(std::uint64_t code) const;

  class iterator {
   public:
    using value_type = Model;
    using difference_type = std::ptrdiff_t;
    iterator(const FrameEnumerator* e, std::uint64_t c) : e_(e), c_(c) {}
    Model operator*() const { return e_->at(c_); }
    iterator& operator++() {
      ++c_;
      return *this;
    }
    bool operator==(const iterator& o) const { return c_ == o.c_; }

   private:
    const FrameEnumerator* e_;
    std::uint64_t c_;
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count_}; }

 private:
  std::size_t n_;
  std::uint64_t count_;
};

// Every assignment of world subsets to `vars` over a fixed frame:
// (2^|S|)^|vars| models. Variable k takes bits [k*|S|, (k+1)*|S|) of code.
class ValuationEnumerator {
 public:
  ValuationEnumerator(Model frame, std::vector<std::string> vars);

  std::uint64_t count() const { return count_; }
  Model at(std::uint64_t code) const;

  class iterator {
   public:
    using value_type = Model;
    using difference_type = std::ptrdiff_t;
    iterator(const ValuationEnumerator* e, std::uint64_t c) : e_(e), c_(c) {}
    Model operator*() const { return e_->at(c_); }
    iterator& operator++() {
      ++c_;
      return *this;
    }
    bool operator==(const iterator& o) const { return c_ == o.c_; }

   private:
    const ValuationEnumerator* e_;
    std::uint64_t c_;
  };
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, count_}; }

 private:
  Model frame_;
  std::vector<std::string> vars_;
  std::uint64_t count_;
};

// Bit i*n+j set iff (i, j) is an edge. Requires size() <= 8.
std::uint64_t frame_code(const Model& m);

}  // namespace lea

#endif  // LEA_KRIPKE_HPP
