#pragma once

#include <functional>
#include <string>
#include <vector>

#include "urnlab/numerics.hpp"

namespace urnlab {

// Row-major (first coordinate slowest) indexing of the box
// [lo_1..hi_1] x ... x [lo_d..hi_d].
class IndexBox {
 public:
  IndexBox() = default;
  explicit IndexBox(std::vector<unsigned> hi) : lo_(hi.size(), 0), hi_(std::move(hi)) { init(); }
  IndexBox(std::vector<unsigned> lo, std::vector<unsigned> hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size()) throw DomainError("index box bounds differ in dimension");
    init();
  }

  std::size_t dims() const { return hi_.size(); }
  std::size_t size() const { return size_; }
  const std::vector<unsigned>& lower() const { return lo_; }
  const std::vector<unsigned>& upper() const { return hi_; }

  bool contains(const std::vector<unsigned>& k) const {
    if (k.size() != hi_.size()) return false;
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k[i] < lo_[i] || k[i] > hi_[i]) return false;
    }
    return true;
  }

  std::size_t flat(const std::vector<unsigned>& k) const {
    if (!contains(k)) throw OutOfRange("index outside the support grid");
    std::size_t f = 0;
    for (std::size_t i = 0; i < k.size(); ++i) f += (k[i] - lo_[i]) * stride_[i];
    return f;
  }

  std::vector<unsigned> unflat(std::size_t f) const {
    std::vector<unsigned> k(hi_.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      k[i] = lo_[i] + static_cast<unsigned>(f / stride_[i]);
      f %= stride_[i];
    }
    return k;
  }

  // Visits every index in flat order.
  void for_each(const std::function<void(const std::vector<unsigned>&)>& fn) const {
    if (size_ == 0) return;
    std::vector<unsigned> k = lo_;
    for (std::size_t count = 0; count < size_; ++count) {
      fn(k);
      for (std::size_t i = k.size(); i-- > 0;) {
        if (k[i] < hi_[i]) {
          ++k[i];
          break;
        }
        k[i] = lo_[i];
      }
    }
  }

 private:
  void init() {
    stride_.assign(hi_.size(), 1);
    size_ = 1;
    for (std::size_t i = hi_.size(); i-- > 0;) {
      if (hi_[i] < lo_[i]) {
        size_ = 0;
        return;
      }
      stride_[i] = size_;
      size_ *= hi_[i] - lo_[i] + 1;
    }
  }

  std::vector<unsigned> lo_, hi_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
};

// Probabilities over the grid 0..n_1 x ... x 0..n_d (d = 1 for the
// two-color case).
template <Field T>
class ExactDistribution {
 public:
  ExactDistribution() = default;

  ExactDistribution(std::vector<unsigned> extents, std::vector<T> probabilities)
      : box_(std::move(extents)), probs_(std::move(probabilities)) {
    if (probs_.size() != box_.size()) throw DomainError("probability table does not match its support grid");
  }

  static ExactDistribution univariate(std::vector<T> probabilities) {
    if (probabilities.empty()) throw DomainError("empty distribution");
    const auto n = static_cast<unsigned>(probabilities.size() - 1);
    return ExactDistribution({n}, std::move(probabilities));
  }

  std::size_t dims() const { return box_.dims(); }
  const std::vector<unsigned>& extents() const { return box_.upper(); }
  const IndexBox& box() const { return box_; }
  std::size_t size() const { return probs_.size(); }
  const std::vector<T>& probabilities() const { return probs_; }

  const T& at(std::size_t k) const {
    if (dims() != 1) throw DomainError("scalar index into a multivariate distribution");
    if (k >= probs_.size()) throw OutOfRange("k = " + std::to_string(k) + " outside support");
    return probs_[k];
  }

  const T& at(const std::vector<unsigned>& k) const { return probs_[box_.flat(k)]; }

  T total() const { return sum_terms(probs_); }

  // Expectation of f(k) under the distribution.
  T expect(const std::function<T(const std::vector<unsigned>&)>& f) const {
    std::vector<T> terms;
    terms.reserve(probs_.size());
    box_.for_each([&](const std::vector<unsigned>& k) { terms.push_back(f(k) * probs_[box_.flat(k)]); });
    return sum_terms(std::move(terms));
  }

  // True iff every probability is >= 0 and, in exact mode, the total is 1.
  bool is_valid() const {
    for (const T& p : probs_) {
      if (p < from_int<T>(0) || p > from_int<T>(1)) return false;
    }
    if constexpr (field_traits<T>::exact) return total() == 1;
    return true;
  }

  friend bool operator==(const ExactDistribution& a, const ExactDistribution& b) {
    return a.extents() == b.extents() && a.probs_ == b.probs_;
  }

 private:
  IndexBox box_;
  std::vector<T> probs_;
};

}  // namespace urnlab
