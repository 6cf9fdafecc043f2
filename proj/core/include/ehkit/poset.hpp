#ifndef EHKIT_POSET_HPP_
#define EHKIT_POSET_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ehkit {

/// A finite poset with labelled nodes and an explicit order matrix.
template <class T>
class Poset {
 public:
  Poset() = default;
  Poset(std::vector<T> nodes, const std::function<bool(const T&, const T&)>& leq)
      : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    leq_.assign(n * n, false);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        leq_[a * n + b] = leq(nodes_[a], nodes_[b]);
      }
    }
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<T>& nodes() const noexcept { return nodes_; }
  const T& node(std::size_t i) const { return nodes_.at(i); }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }

  /// Pairs (a, b) with a < b and nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const {
    const std::size_t n = size();
    const std::size_t words = (n + 63) / 64;
    // Bit rows of the strict up-sets and strict down-sets.
    std::vector<std::uint64_t> up(n * words, 0);
    std::vector<std::uint64_t> down(n * words, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b && leq(a, b)) {
          up[a * words + b / 64] |= std::uint64_t{1} << (b % 64);
          down[b * words + a / 64] |= std::uint64_t{1} << (a % 64);
        }
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b || !leq(a, b)) {
          continue;
        }
        bool between = false;
        for (std::size_t w = 0; w < words && !between; ++w) {
          between = (up[a * words + w] & down[b * words + w]) != 0;
        }
        if (!between) {
          out.emplace_back(a, b);
        }
      }
    }
    return out;
  }

  /// Index of the unique minimum, if there is one.
  std::optional<std::size_t> minimum() const {
    for (std::size_t a = 0; a < size(); ++a) {
      bool least = true;
      for (std::size_t b = 0; b < size() && least; ++b) {
        least = leq(a, b);
      }
      if (least) {
        return a;
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<T> nodes_;
  std::vector<bool> leq_;
};

/// True when `map` (indices of `a` into `b`) is a bijection that preserves
/// and reflects the order.
template <class A, class B>
bool is_order_isomorphism(const Poset<A>& a, const Poset<B>& b,
                          const std::vector<std::size_t>& map) {
  if (a.size() != b.size() || map.size() != a.size()) {
    return false;
  }
  std::vector<bool> hit(b.size(), false);
  for (std::size_t i : map) {
    if (i >= b.size() || hit[i]) {
      return false;
    }
    hit[i] = true;
  }
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < a.size(); ++y) {
      if (a.leq(x, y) != b.leq(map[x], map[y])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace ehkit

#endif  // EHKIT_POSET_HPP_
