#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace layerdag {

// Set of node indices drawn from a fixed universe {0, ..., universe-1}.
// Backed by a word array so subset / intersection tests on dense graphs
// stay cheap.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  int universe() const { return universe_; }

  bool contains(int v) const {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }

  void insert(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  bool is_subset_of(const NodeSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool intersects(const NodeSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  NodeSet& operator|=(const NodeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  NodeSet& operator&=(const NodeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  NodeSet& operator-=(const NodeSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

  // Lowest member, or -1 when empty.
  int first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return int(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  // Visits members in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(int(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int v) { out.push_back(v); });
    return out;
  }

  static NodeSet full(int universe) {
    NodeSet s(universe);
    for (int v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

 private:
  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace layerdag
