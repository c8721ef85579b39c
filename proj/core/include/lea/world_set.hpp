// Dense set of world indices.

#ifndef LEA_WORLD_SET_HPP
#define LEA_WORLD_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lea {

class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t n, bool full = false)
      : n_(n), words_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t universe() const { return n_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v = true) {
    auto bit = std::uint64_t{1} << (i % 64);
    if (v)
      words_[i / 64] |= bit;
    else
      words_[i / 64] &= ~bit;
  }
  void reset(std::size_t i) { set(i, false); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool all() const { return count() == n_; }

  bool is_subset_of(const WorldSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  WorldSet& operator&=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  WorldSet& operator|=(const WorldSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  WorldSet operator~() const {
    WorldSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend bool operator==(const WorldSet&, const WorldSet&) = default;
  friend auto operator<=>(const WorldSet&, const WorldSet&) = default;

  // Indices of members in increasing order.
  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      auto w = words_[wi];
      while (w) {
        out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace lea

#endif  // LEA_WORLD_SET_HPP
