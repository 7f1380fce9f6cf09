#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <numeric>
#include <ostream>
#include <vector>

#include "bjacobi/errors.hpp"

namespace bjacobi {

inline constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

// Integer partition, parts stored non-increasing and positive.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw DomainError("Partition: parts must be positive");
      if (i > 0 && parts_[i] > parts_[i - 1])
        throw DomainError("Partition: parts must be non-increasing");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  // Part i (0-based); zero beyond the length.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  // Conjugate partition: column lengths.
  std::vector<int> conjugate() const {
    std::vector<int> cols(parts_.empty() ? 0 : parts_.front(), 0);
    for (int p : parts_)
      for (int j = 0; j < p; ++j) ++cols[j];
    return cols;
  }

  // Cells strictly right of (i, j) and strictly below it; 0-based cell indices.
  int arm(std::size_t i, int j) const { return parts_.at(i) - j - 1; }
  int leg(std::size_t i, int j) const {
    int l = 0;
    for (std::size_t r = i + 1; r < parts_.size() && parts_[r] > j; ++r) ++l;
    return l;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) {
  os << '[';
  for (std::size_t i = 0; i < p.length(); ++i) os << (i ? "," : "") << p[i];
  return os << ']';
}

// Partitions of k with at most max_parts parts, in reverse-lexicographic
// order.  Optional row caps bound part i by caps[i] (used by the series
// engine to skip partitions killed by a vanishing Pochhammer factor).
class PartitionRange {
 public:
  PartitionRange(int k, std::size_t max_parts = unbounded, std::vector<int> caps = {})
      : k_(k) {
    if (k < 0) throw DomainError("enumerate_partitions: k must be non-negative");
    rows_ = std::min<std::size_t>(max_parts, static_cast<std::size_t>(k));
    caps_.assign(rows_, k);
    for (std::size_t i = 0; i < rows_ && i < caps.size(); ++i) caps_[i] = std::max(0, caps[i]);
    for (std::size_t i = 1; i < rows_; ++i) caps_[i] = std::min(caps_[i], caps_[i - 1]);
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Partition*;
    using reference = const Partition&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++() {
      advance();
      return *this;
    }
    void operator++(int) { advance(); }
    friend bool operator==(const iterator& x, const iterator& y) { return x.done_ == y.done_; }

   private:
    friend class PartitionRange;
    iterator(const PartitionRange* range) : range_(range), done_(false) {
      if (!fill(0, range_->k_, range_->k_)) {
        done_ = true;
        return;
      }
      sync();
    }

    // Greedy fill of rows from `row` on with `remaining` cells, parts <= bound.
    bool fill(std::size_t row, int remaining, int bound) {
      parts_.resize(row);
      for (std::size_t r = row; r < range_->rows_ && remaining > 0; ++r) {
        const int v = std::min({remaining, bound, range_->caps_[r]});
        if (v == 0) break;
        parts_.push_back(v);
        remaining -= v;
        bound = v;
      }
      return remaining == 0;
    }

    int capacity(std::size_t from, int bound) const {
      int c = 0;
      for (std::size_t r = from; r < range_->rows_; ++r) c += std::min(bound, range_->caps_[r]);
      return c;
    }

    void advance() {
      int tail = 0;
      for (std::size_t i = parts_.size(); i-- > 0;) {
        if (parts_[i] >= 2) {
          const int v = parts_[i] - 1;
          if (tail + 1 <= capacity(i + 1, v)) {
            parts_[i] = v;
            fill(i + 1, tail + 1, v);
            sync();
            return;
          }
        }
        tail += parts_[i];
      }
      done_ = true;
    }

    void sync() { current_ = Partition(parts_); }

    const PartitionRange* range_ = nullptr;
    bool done_ = true;
    std::vector<int> parts_;
    Partition current_;
  };

  iterator begin() const { return iterator(this); }
  iterator end() const { return iterator(); }

 private:
  int k_;
  std::size_t rows_;
  std::vector<int> caps_;
};

inline std::vector<Partition> enumerate_partitions(int k, std::size_t max_parts = unbounded) {
  std::vector<Partition> out;
  for (const Partition& p : PartitionRange(k, max_parts)) out.push_back(p);
  return out;
}

// (a)_kappa = prod_i (a - (beta/2)(i-1))_{k_i}
template <class Real = double>
Real gen_pochhammer(Real a, const Partition& kappa, Real beta) {
  Real r = 1;
  for (std::size_t i = 0; i < kappa.length(); ++i) {
    const Real shift = a - beta / 2 * static_cast<Real>(i);
    for (int j = 0; j < kappa[i]; ++j) r *= shift + static_cast<Real>(j);
  }
  return r;
}

// j_kappa = prod over cells of (l + (2/beta)(1 + a)) (l + 1 + (2/beta) a)
template <class Real = double>
Real j_kappa(const Partition& kappa, Real beta) {
  const Real alpha = Real(2) / beta;
  const std::vector<int> cols = kappa.conjugate();
  Real r = 1;
  for (std::size_t i = 0; i < kappa.length(); ++i) {
    for (int j = 0; j < kappa[i]; ++j) {
      const Real arm = static_cast<Real>(kappa[i] - j - 1);
      const Real leg = static_cast<Real>(cols[j] - static_cast<int>(i) - 1);
      r *= (leg + alpha * (1 + arm)) * (leg + 1 + alpha * arm);
    }
  }
  return r;
}

}  // namespace bjacobi
