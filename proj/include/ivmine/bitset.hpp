#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ivmine {

// Fixed-width bit vector. Used both for itemsets (indexed by item id) and
// for extents (indexed by object id). Binary operations require equal widths.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size, bool value = false)
      : words_((size + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}),
        size_(size) {
    trim();
  }

  static Bitset full(std::size_t size) { return Bitset(size, true); }

  template <typename Range>
  static Bitset from_indices(std::size_t size, const Range& indices) {
    Bitset b(size);
    for (auto i : indices) b.set(static_cast<std::size_t>(i));
    return b;
  }

  std::size_t size() const noexcept { return size_; }
  const std::vector<Word>& words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
  }
  bool any() const noexcept { return !none(); }

  bool is_subset_of(const Bitset& other) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }

  bool intersects(const Bitset& other) const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  // True when both sets agree on every position below `end`.
  bool equal_below(const Bitset& other, std::size_t end) const noexcept {
    const std::size_t full_words = end / kWordBits;
    for (std::size_t w = 0; w < full_words; ++w)
      if (words_[w] != other.words_[w]) return false;
    const std::size_t rest = end % kWordBits;
    if (rest == 0) return true;
    const Word mask = (Word{1} << rest) - 1;
    return ((words_[full_words] ^ other.words_[full_words]) & mask) == 0;
  }

  std::size_t intersection_count(const Bitset& other) const noexcept {
    std::size_t n = 0;
    for (std::size_t w = 0; w < words_.size(); ++w)
      n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
    return n;
  }

  Bitset& operator&=(const Bitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
  }
  Bitset& operator|=(const Bitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
  }
  Bitset& operator-=(const Bitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        f(w * kWordBits + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = size_;
    for (Word w : words_) h ^= std::hash<Word>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void trim() noexcept {
    if (size_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::vector<Word> words_;
  std::size_t size_ = 0;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const noexcept { return b.hash(); }
};

// Lexicographic order on the ascending member lists.
inline bool lexicographic_less(const Bitset& a, const Bitset& b) {
  const auto ia = a.indices();
  const auto ib = b.indices();
  return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
}

}  // namespace ivmine
