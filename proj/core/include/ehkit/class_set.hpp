#ifndef EHKIT_CLASS_SET_HPP_
#define EHKIT_CLASS_SET_HPP_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ehkit {

/// Fixed-width bitset over the indices of a finite universe.
class ClassSet {
 public:
  ClassSet() = default;
  explicit ClassSet(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  std::size_t universe_size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  /// Returns true if the bit was newly set.
  bool set(std::size_t i) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    const bool fresh = (words_[i >> 6] & bit) == 0;
    words_[i >> 6] |= bit;
    return fresh;
  }
  void reset(std::size_t i) noexcept {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) {
      c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
  }

  bool is_subset_of(const ClassSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  ClassSet& operator|=(const ClassSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
    }
    return *this;
  }
  ClassSet& operator&=(const ClassSet& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] &= other.words_[i];
    }
    return *this;
  }
  friend ClassSet operator|(ClassSet a, const ClassSet& b) { return a |= b; }
  friend ClassSet operator&(ClassSet a, const ClassSet& b) { return a &= b; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
      h = (h ^ w) * 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

  bool operator==(const ClassSet&) const = default;
  /// Orders by cardinality, then by the sorted index lists.
  std::strong_ordering operator<=>(const ClassSet& other) const {
    if (auto c = count() <=> other.count(); c != 0) {
      return c;
    }
    const auto a = indices();
    const auto b = other.indices();
    return std::lexicographical_compare_three_way(a.begin(), a.end(),
                                                  b.begin(), b.end());
  }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ClassSetHash {
  std::size_t operator()(const ClassSet& s) const noexcept { return s.hash(); }
};

}  // namespace ehkit

#endif  // EHKIT_CLASS_SET_HPP_
