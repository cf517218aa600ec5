#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace clawbreak {

/// Fixed-size bit vector used for adjacency rows.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  /// Calls fn(i) for every set bit, in increasing order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = __builtin_ctzll(w);
        fn(wi * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Flat storage for a value per unordered vertex pair {u, v}, u != v.
template <class T>
class PairArray {
 public:
  PairArray() = default;
  explicit PairArray(std::size_t n) : n_(n), data_(n < 2 ? 0 : n * (n - 1) / 2, T{}) {}

  T get(std::size_t u, std::size_t v) const { return data_[index(u, v)]; }
  void set(std::size_t u, std::size_t v, T value) { data_[index(u, v)] = value; }
  void add(std::size_t u, std::size_t v, T delta) { data_[index(u, v)] += delta; }

  std::size_t size() const { return n_; }

 private:
  static std::size_t index_ordered(std::size_t lo, std::size_t hi) {
    return hi * (hi - 1) / 2 + lo;
  }
  std::size_t index(std::size_t u, std::size_t v) const {
    return u < v ? index_ordered(u, v) : index_ordered(v, u);
  }

  std::size_t n_ = 0;
  std::vector<T> data_;
};

}  // namespace clawbreak
