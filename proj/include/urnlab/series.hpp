#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "urnlab/numerics.hpp"

namespace urnlab {

// Power series in z truncated after z^order. The coefficient ring C must
// support +, -, *, construction from 0 and right-multiplication by a
// Rational (C = Rational or Polynomial<Rational>).
template <class C>
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t order, C zero) : coeffs_(order + 1, zero), zero_(std::move(zero)) {}

  std::size_t order() const { return coeffs_.size() - 1; }

  C& operator[](std::size_t k) { return coeffs_.at(k); }
  const C& operator[](std::size_t k) const { return coeffs_.at(k); }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t i = 0; i <= out.order(); ++i) {
      for (std::size_t j = 0; i + j <= out.order(); ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return out;
  }

  TruncatedSeries& operator*=(const Rational& c) {
    for (C& x : coeffs_) x = x * c;
    return *this;
  }

  // exp(P) for P with zero constant term, from E' = P' E:
  //   n e_n = sum_{k=1}^{n} k p_k e_{n-k}.
  TruncatedSeries exp(const C& one) const {
    TruncatedSeries out(order(), zero_);
    out.coeffs_[0] = one;
    for (std::size_t n = 1; n <= order(); ++n) {
      C acc = zero_;
      for (std::size_t k = 1; k <= n; ++k) acc += coeffs_[k] * out.coeffs_[n - k] * Rational(static_cast<long>(k));
      out.coeffs_[n] = acc * ratio(1, static_cast<long>(n));
    }
    return out;
  }

  // Antiderivative vanishing at z = 0, truncated to the same order.
  TruncatedSeries integral() const {
    TruncatedSeries out(order(), zero_);
    for (std::size_t k = 1; k <= order(); ++k) out.coeffs_[k] = coeffs_[k - 1] * ratio(1, static_cast<long>(k));
    return out;
  }

 private:
  std::vector<C> coeffs_;
  C zero_;
};

}  // namespace urnlab
