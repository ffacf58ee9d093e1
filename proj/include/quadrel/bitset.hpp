#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace quadrel {

/// Fixed-width bitset sized at construction. Element sets and relation rows
/// are represented this way so that containment and intersection tests run
/// word-at-a-time.
class Bitset {
 public:
  Bitset() : size_(0) {}
  explicit Bitset(std::size_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool subset_of(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  bool intersects(const Bitset& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  /// Index of the lowest set bit; size() when empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i])
        return i * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[i]));
    return size_;
  }

  /// Lowest set bit of (*this & ~mask); size() when none.
  std::size_t first_not_in(const Bitset& mask) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i] & ~mask.words_[i];
      if (w) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(w));
    }
    return size_;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

  Bitset complement() const {
    Bitset r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  bool operator==(const Bitset& o) const {
    return size_ == o.size_ && words_ == o.words_;
  }
  bool operator!=(const Bitset& o) const { return !(*this == o); }
  bool operator<(const Bitset& o) const { return words_ < o.words_; }

  std::vector<std::size_t> to_indices() const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < size_; ++i)
      if (test(i)) v.push_back(i);
    return v;
  }

  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

 private:
  void trim() {
    if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
  }

  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

}  // namespace quadrel
