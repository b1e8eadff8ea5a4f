#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "fca/errors.hpp"

namespace fca {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t width) noexcept {
  return (width + kWordBits - 1) / kWordBits;
}

namespace detail {

// Lectic comparison of two packed sets of equal length: the set holding the
// smallest element of the symmetric difference is the larger one.
inline bool lectic_less(std::span<const Word> lhs, std::span<const Word> rhs) noexcept {
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const Word diff = lhs[i] ^ rhs[i];
    if (diff != 0) {
      const Word lowest = diff & (~diff + 1);
      return (rhs[i] & lowest) != 0;
    }
  }
  return false;
}

inline std::size_t hash_words(std::span<const Word> words) noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (Word w : words) {
    h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace detail

/// Fixed-width set of dense indices packed into 64-bit words.
///
/// The tag parameter keeps object sets and attribute sets apart at compile
/// time; both share the same word-parallel implementation. Bits beyond
/// width() are always zero.
template <class Tag>
class BitSet {
 public:
  BitSet() = default;

  explicit BitSet(std::size_t width) : width_(width), words_(words_for(width), 0) {}

  BitSet(std::size_t width, std::initializer_list<std::size_t> indices) : BitSet(width) {
    for (std::size_t i : indices) set(i);
  }

  static BitSet full(std::size_t width) {
    BitSet s(width);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.trim();
    return s;
  }

  static BitSet from_indices(std::size_t width, std::span<const std::size_t> indices) {
    BitSet s(width);
    for (std::size_t i : indices) s.set(i);
    return s;
  }

  static BitSet from_words(std::size_t width, std::span<const Word> words) {
    if (words.size() != words_for(width)) {
      throw DimensionError("word count does not match width " + std::to_string(width));
    }
    BitSet s(width);
    std::copy(words.begin(), words.end(), s.words_.begin());
    s.trim();
    return s;
  }

  std::size_t width() const noexcept { return width_; }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  bool any() const noexcept { return !none(); }
  bool all() const noexcept { return count() == width_; }

  bool test(std::size_t i) const {
    check_index(i);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  BitSet& set(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] |= Word{1} << (i % kWordBits);
    return *this;
  }

  BitSet& reset(std::size_t i) {
    check_index(i);
    words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
    return *this;
  }

  BitSet& operator&=(const BitSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  BitSet& operator|=(const BitSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }

  /// In-place set difference.
  BitSet& operator-=(const BitSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend BitSet operator&(BitSet lhs, const BitSet& rhs) { return lhs &= rhs; }
  friend BitSet operator|(BitSet lhs, const BitSet& rhs) { return lhs |= rhs; }
  friend BitSet operator-(BitSet lhs, const BitSet& rhs) { return lhs -= rhs; }

  BitSet complement() const {
    BitSet s(*this);
    for (Word& w : s.words_) w = ~w;
    s.trim();
    return s;
  }

  bool is_subset_of(const BitSet& other) const {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  bool intersects(const BitSet& other) const {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & other.words_[i]) != 0) return true;
    }
    return false;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * kWordBits + bit);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::span<const Word> words() const noexcept { return words_; }

  std::size_t hash() const noexcept { return detail::hash_words(words_); }

  friend bool operator==(const BitSet& a, const BitSet& b) noexcept {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

  /// Lectic order: the set owning the smallest differing index is larger.
  friend bool lectic_less(const BitSet& a, const BitSet& b) {
    a.check_width(b);
    return detail::lectic_less(a.words_, b.words_);
  }

 private:
  void trim() noexcept {
    if (const std::size_t tail = width_ % kWordBits; tail != 0 && !words_.empty()) {
      words_.back() &= (Word{1} << tail) - 1;
    }
  }

  void check_index(std::size_t i) const {
    if (i >= width_) {
      throw DimensionError("index " + std::to_string(i) + " out of range for width " +
                           std::to_string(width_));
    }
  }

  void check_width(const BitSet& other) const {
    if (other.width_ != width_) {
      throw DimensionError("set width mismatch: " + std::to_string(width_) + " vs " +
                           std::to_string(other.width_));
    }
  }

  std::size_t width_ = 0;
  std::vector<Word> words_;
};

struct ObjectTag {};
struct AttributeTag {};

/// Subset of a context's objects.
using ObjectSet = BitSet<ObjectTag>;
/// Subset of a context's attributes.
using AttributeSet = BitSet<AttributeTag>;

struct BitSetHash {
  template <class Tag>
  std::size_t operator()(const BitSet<Tag>& s) const noexcept {
    return s.hash();
  }
};

}  // namespace fca
