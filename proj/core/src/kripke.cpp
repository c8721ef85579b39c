#include "lea/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>

namespace lea {

Model::Model(std::vector<WorldId> worlds, const std::vector<std::pair<WorldId, WorldId>>& rel,
             const std::map<std::string, std::vector<WorldId>>& val)
    : worlds_(std::move(worlds)) {
  if (worlds_.empty()) throw InvalidModel("a model needs at least one world");
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (!index_.emplace(worlds_[i], i).second)
      throw InvalidModel("duplicate world id: " + worlds_[i]);
  }
  succ_.resize(worlds_.size());
  for (const auto& [a, b] : rel) add_edge(index_of(a), index_of(b));
  for (const auto& [var, ws] : val) {
    WorldSet ext(size());
    for (const auto& w : ws) ext.set(index_of(w));
    val_[var] = std::move(ext);
  }
}

Model Model::with_anonymous_worlds(std::size_t n) {
  std::vector<WorldId> ws;
  ws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ws.push_back("w" + std::to_string(i));
  return Model(std::move(ws));
}

std::optional<std::size_t> Model::find(const WorldId& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Model::index_of(const WorldId& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw UnknownWorld(w);
  return it->second;
}

bool Model::has_edge(std::size_t i, std::size_t j) const {
  const auto& s = succ_[i];
  return std::binary_search(s.begin(), s.end(), j);
}

std::size_t Model::edge_count() const {
  std::size_t c = 0;
  for (const auto& s : succ_) c += s.size();
  return c;
}

std::vector<std::pair<WorldId, WorldId>> Model::relation() const {
  std::vector<std::pair<WorldId, WorldId>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (auto j : succ_[i]) out.emplace_back(worlds_[i], worlds_[j]);
  return out;
}

bool Model::holds(const std::string& var, std::size_t i) const {
  auto it = val_.find(var);
  return it != val_.end() && it->second.test(i);
}

WorldSet Model::extension_of(const std::string& var) const {
  auto it = val_.find(var);
  return it == val_.end() ? WorldSet(size()) : it->second;
}

void Model::add_edge(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw std::out_of_range("edge endpoint out of range");
  auto& s = succ_[i];
  auto it = std::lower_bound(s.begin(), s.end(), j);
  if (it == s.end() || *it != j) s.insert(it, j);
}

void Model::set_extension(const std::string& var, WorldSet ext) {
  if (ext.universe() != size()) throw InvalidModel("valuation size mismatch for " + var);
  val_[var] = std::move(ext);
}

bool operator==(const Model& a, const Model& b) {
  if (a.worlds_ != b.worlds_ || a.succ_ != b.succ_) return false;
  // Variables mapped to the empty set are indistinguishable from absent ones.
  auto nonempty = [](const Model& m) {
    std::map<std::string, WorldSet> out;
    for (const auto& [k, v] : m.val_)
      if (!v.none()) out.emplace(k, v);
    return out;
  };
  return nonempty(a) == nonempty(b);
}

PointedModel::PointedModel(Model m, WorldId p) : model(std::move(m)), point(std::move(p)) {
  model.index_of(point);
}

const std::vector<FrameProperty>& all_frame_properties() {
  static const std::vector<FrameProperty> all = {
      FrameProperty::Reflexive,         FrameProperty::Serial,
      FrameProperty::Transitive,        FrameProperty::Symmetric,
      FrameProperty::Euclidean,         FrameProperty::Coreflexive,
      FrameProperty::WeaklyTransitive,  FrameProperty::WeaklyConnected,
      FrameProperty::WeakWeakEuclidean, FrameProperty::StrictTransitive3,
      FrameProperty::StrictEuclidean3};
  return all;
}

const std::vector<FrameClass>& all_frame_classes() {
  static const std::vector<FrameClass> all = {FrameClass::K,  FrameClass::D,  FrameClass::T,
                                              FrameClass::KB, FrameClass::TB, FrameClass::K4,
                                              FrameClass::S4, FrameClass::B5, FrameClass::S5};
  return all;
}

std::string to_string(FrameProperty p) {
  switch (p) {
    case FrameProperty::Reflexive: return "reflexive";
    case FrameProperty::Serial: return "serial";
    case FrameProperty::Transitive: return "transitive";
    case FrameProperty::Symmetric: return "symmetric";
    case FrameProperty::Euclidean: return "euclidean";
    case FrameProperty::Coreflexive: return "coreflexive";
    case FrameProperty::WeaklyTransitive: return "weakly-transitive";
    case FrameProperty::WeaklyConnected: return "weakly-connected";
    case FrameProperty::WeakWeakEuclidean: return "weak-weak-euclidean";
    case FrameProperty::StrictTransitive3: return "strict-transitive-3";
    case FrameProperty::StrictEuclidean3: return "strict-euclidean-3";
  }
  return "?";
}

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::K: return "K";
    case FrameClass::D: return "D";
    case FrameClass::T: return "T";
    case FrameClass::KB: return "KB";
    case FrameClass::TB: return "TB";
    case FrameClass::K4: return "K4";
    case FrameClass::S4: return "S4";
    case FrameClass::B5: return "B5";
    case FrameClass::S5: return "S5";
  }
  return "?";
}

namespace {

std::string normalize(std::string_view s) {
  std::string out;
  for (char c : s) out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<FrameProperty> parse_frame_property(std::string_view s) {
  auto n = normalize(s);
  for (auto p : all_frame_properties())
    if (to_string(p) == n) return p;
  return std::nullopt;
}

std::optional<FrameClass> parse_frame_class(std::string_view s) {
  auto n = normalize(s);
  for (auto c : all_frame_classes())
    if (normalize(to_string(c)) == n) return c;
  return std::nullopt;
}

const std::vector<FrameProperty>& properties_of(FrameClass c) {
  using P = FrameProperty;
  static const std::map<FrameClass, std::vector<FrameProperty>> table = {
      {FrameClass::K, {}},
      {FrameClass::D, {P::Serial}},
      {FrameClass::T, {P::Reflexive}},
      {FrameClass::KB, {P::Symmetric}},
      {FrameClass::TB, {P::Reflexive, P::Symmetric}},
      {FrameClass::K4, {P::Transitive}},
      {FrameClass::S4, {P::Reflexive, P::Transitive}},
      {FrameClass::B5, {P::Symmetric, P::Euclidean}},
      {FrameClass::S5, {P::Reflexive, P::Symmetric, P::Transitive}},
  };
  return table.at(c);
}

bool has_property(const Model& m, FrameProperty p) {
  const std::size_t n = m.size();
  auto R = [&](std::size_t i, std::size_t j) { return m.has_edge(i, j); };
  auto forall3 = [&](auto&& pred) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (!pred(x, y, z)) return false;
    return true;
  };
  switch (p) {
    case FrameProperty::Reflexive:
      for (std::size_t x = 0; x < n; ++x)
        if (!R(x, x)) return false;
      return true;
    case FrameProperty::Serial:
      for (std::size_t x = 0; x < n; ++x)
        if (m.successors(x).empty()) return false;
      return true;
    case FrameProperty::Coreflexive:
      for (std::size_t x = 0; x < n; ++x)
        for (auto y : m.successors(x))
          if (y != x) return false;
      return true;
    case FrameProperty::Symmetric:
      for (std::size_t x = 0; x < n; ++x)
        for (auto y : m.successors(x))
          if (!R(y, x)) return false;
      return true;
    case FrameProperty::Transitive:
      return forall3([&](auto x, auto y, auto z) { return !(R(x, y) && R(y, z)) || R(x, z); });
    case FrameProperty::Euclidean:
      return forall3([&](auto x, auto y, auto z) { return !(R(x, y) && R(x, z)) || R(y, z); });
    case FrameProperty::WeaklyTransitive:
      return forall3(
          [&](auto x, auto y, auto z) { return !(R(x, y) && R(y, z) && x != z) || R(x, z); });
    case FrameProperty::WeaklyConnected:
      return forall3([&](auto x, auto y, auto z) {
        return !(R(x, y) && R(x, z)) || R(y, z) || y == z || R(z, y);
      });
    case FrameProperty::WeakWeakEuclidean:
      return forall3([&](auto x, auto y, auto z) {
        return !(R(x, y) && R(x, z) && x != z && y != z) || R(y, z);
      });
    case FrameProperty::StrictTransitive3:
      return forall3([&](auto x, auto y, auto z) {
        return !(R(x, y) && R(y, z) && x != y && y != z && x != z) || R(x, z);
      });
    case FrameProperty::StrictEuclidean3:
      return forall3([&](auto x, auto y, auto z) {
        return !(R(x, y) && R(x, z) && x != y && x != z && y != z) || R(y, z);
      });
  }
  return false;
}

bool in_class(const Model& m, FrameClass c) {
  for (auto p : properties_of(c))
    if (!has_property(m, p)) return false;
  return true;
}

const std::vector<LoopMode>& all_loop_modes() {
  static const std::vector<LoopMode> all = {LoopMode::All, LoopMode::Endpoints,
                                            LoopMode::TwoCycles, LoopMode::HasPredecessor};
  return all;
}

std::string to_string(LoopMode m) {
  switch (m) {
    case LoopMode::All: return "all";
    case LoopMode::Endpoints: return "endpoints";
    case LoopMode::TwoCycles: return "two-cycles";
    case LoopMode::HasPredecessor: return "has-predecessor";
  }
  return "?";
}

Model add_self_loops(const Model& m, LoopMode mode) {
  const std::size_t n = m.size();
  std::vector<bool> pick(n, false);
  for (std::size_t w = 0; w < n; ++w) {
    switch (mode) {
      case LoopMode::All:
        pick[w] = true;
        break;
      case LoopMode::Endpoints:
        pick[w] = m.successors(w).empty();
        break;
      case LoopMode::TwoCycles:
        for (auto t : m.successors(w))
          if (m.has_edge(t, w)) pick[w] = true;
        break;
      case LoopMode::HasPredecessor:
        for (auto t : m.successors(w)) pick[t] = true;
        break;
    }
  }
  Model out = m;
  for (std::size_t w = 0; w < n; ++w)
    if (pick[w]) out.add_edge(w, w);
  return out;
}

WorldId left_id(const WorldId& w) { return "L:" + w; }
WorldId right_id(const WorldId& w) { return "R:" + w; }

Model disjoint_union(const Model& a, const Model& b) {
  std::vector<WorldId> ws;
  ws.reserve(a.size() + b.size());
  for (const auto& w : a.worlds()) ws.push_back(left_id(w));
  for (const auto& w : b.worlds()) ws.push_back(right_id(w));
  Model u(std::move(ws));
  const std::size_t off = a.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto j : a.successors(i)) u.add_edge(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (auto j : b.successors(i)) u.add_edge(off + i, off + j);
  std::map<std::string, WorldSet> val;
  auto merge = [&](const Model& m, std::size_t base) {
    for (const auto& [var, ext] : m.valuation()) {
      auto [it, _] = val.try_emplace(var, WorldSet(u.size()));
      for (auto i : ext.members()) it->second.set(base + i);
    }
  };
  merge(a, 0);
  merge(b, off);
  for (auto& [var, ext] : val) u.set_extension(var, std::move(ext));
  return u;
}

FrameEnumerator::FrameEnumerator(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("frame enumeration needs n >= 1");
  if (n * n >= 63) throw std::invalid_argument("frame enumeration beyond n=7 is not representable");
  if (n > 4) std::clog << "warning: enumerating 2^" << n * n << " frames on " << n << " worlds\n";
  count_ = std::uint64_t{1} << (n * n);
}

Model FrameEnumerator::at(std::uint64_t code) const {
  Model m = Model::with_anonymous_worlds(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if ((code >> (i * n_ + j)) & 1u) m.add_edge(i, j);
  return m;
}

ValuationEnumerator::ValuationEnumerator(Model frame, std::vector<std::string> vars)
    : frame_(std::move(frame)), vars_(std::move(vars)) {
  const std::size_t bits = frame_.size() * vars_.size();
  if (bits >= 63) throw std::invalid_argument("too many valuations to enumerate");
  count_ = std::uint64_t{1} << bits;
  frame_.clear_valuation();
}

Model ValuationEnumerator::at(std::uint64_t code) const {
  Model m = frame_;
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    WorldSet ext(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((code >> (k * n + i)) & 1u) ext.set(i);
    m.set_extension(vars_[k], std::move(ext));
  }
  return m;
}

std::uint64_t frame_code(const Model& m) {
  const std::size_t n = m.size();
  if (n > 8) throw std::invalid_argument("frame_code needs at most 8 worlds");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : m.successors(i)) code |= std::uint64_t{1} << (i * n + j);
  return code;
}

}  // namespace lea
