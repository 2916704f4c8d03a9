#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kplex {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Fixed-width bit set over dense local vertex IDs.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_(words_for(bits), 0) {}

  std::size_t size() const { return bits_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool test(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }
  void clear() { std::fill(words_.begin(), words_.end(), Word{0}); }

  std::size_t count() const {
    std::size_t c = 0;
    for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const {
    for (Word w : words_)
      if (w) return false;
    return true;
  }

  void and_with(std::span<const Word> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
  }
  void and_not_with(std::span<const Word> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other[i];
  }
  void or_with(std::span<const Word> other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other[i];
  }

  /// Calls fn(index) for every set bit in ascending order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        fn(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<Word> words_;
};

inline bool test_bit(std::span<const Word> row, std::size_t i) {
  return (row[i / kWordBits] >> (i % kWordBits)) & 1U;
}

inline std::size_t and_count(std::span<const Word> a, std::span<const Word> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

inline std::size_t and_count(std::span<const Word> a, std::span<const Word> b, std::span<const Word> c) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i] & c[i]));
  return n;
}

/// Row-major square (or rectangular) bit matrix; every row is padded to whole words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }

  std::span<const Word> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }

  bool test(std::size_t r, std::size_t c) const { return test_bit(row(r), c); }
  void set(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] |= Word{1} << (c % kWordBits); }
  void reset(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] &= ~(Word{1} << (c % kWordBits)); }

  std::size_t row_count(std::size_t r) const {
    std::size_t c = 0;
    for (Word w : row(r)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  template <class Fn>
  void for_each_in_row(std::size_t r, Fn&& fn) const {
    auto words = row(r);
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      Word w = words[wi];
      while (w) {
        fn(wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

}  // namespace kplex
