#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "urnlab/numerics.hpp"

namespace urnlab {

// Dense univariate polynomial, coefficients ascending by degree. Trailing
// zeros are always stripped; the zero polynomial has degree -1.
template <Field T>
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(std::vector<T> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

  static Polynomial constant(const T& c) { return Polynomial(std::vector<T>{c}); }

  // c * X^k
  static Polynomial monomial(const T& c, std::size_t k) {
    std::vector<T> v(k + 1, from_int<T>(0));
    v[k] = c;
    return Polynomial(std::move(v));
  }

  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient of X^k; zero past the degree.
  T coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : from_int<T>(0); }

  T leading() const { return coeffs_.empty() ? from_int<T>(0) : coeffs_.back(); }

  const std::vector<T>& coefficients() const { return coeffs_; }

  T operator()(const T& x) const {
    T acc = from_int<T>(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), from_int<T>(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), from_int<T>(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator*=(const T& c) {
    for (T& x : coeffs_) x *= c;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& c) { return a *= c; }
  friend Polynomial operator*(const T& c, Polynomial a) { return a *= c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<T> out(a.coeffs_.size() + b.coeffs_.size() - 1, from_int<T>(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (urnlab::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  // Human-readable form in the variable `var`, highest degree first,
  // e.g. "3*X^2 + X".
  std::string to_string(const std::string& var = "X") const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const T& c = coeffs_[i];
      if (urnlab::is_zero(c)) continue;
      bool negative = c < from_int<T>(0);
      T mag = magnitude(c);
      if (first) {
        if (negative) out << "-";
      } else {
        out << (negative ? " - " : " + ");
      }
      bool unit = mag == from_int<T>(1);
      if (!unit || i == 0) {
        if constexpr (std::is_same_v<T, Rational>) {
          out << (mag.get_den() == 1 ? mag.get_num().get_str() : urnlab::to_string(mag));
        } else {
          out << mag;
        }
        if (i > 0) out << "*";
      }
      if (i > 0) out << var;
      if (i > 1) out << "^" << i;
      first = false;
    }
    return out.str();
  }

 private:
  void trim() {
    while (!coeffs_.empty() && urnlab::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

}  // namespace urnlab
