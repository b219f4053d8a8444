#pragma once

// Scalar tower and combinatorial special functions.
//
// Three arithmetic modes are supported, each as a concrete C++ type:
//   Rational  exact, arbitrary precision (GMP), always in lowest terms
//   BigFloat  MPFR float, precision configured process-wide in bits
//   double    machine float
// Algorithms are templates over a `Field`; modes never mix inside one
// instantiation. The runtime-tagged `Scalar` in scalar.hpp wraps the three.

#include <gmpxx.h>
#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "urnlab/error.hpp"

namespace urnlab {

using Integer = mpz_class;
using Rational = mpq_class;
using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 256;

enum class ScalarMode { exact_rational, big_float, machine_float };

inline std::string_view to_string(ScalarMode mode) {
  switch (mode) {
    case ScalarMode::exact_rational: return "exact";
    case ScalarMode::big_float: return "bigfloat";
    case ScalarMode::machine_float: return "float";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Big-float precision. MPFR precision for boost's mpfr_float is a process-wide
// default, so it is set once (CLI start-up, test set-up) and read everywhere.

namespace detail {

inline unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.301029995663981195)) + 1;
}

inline std::atomic<unsigned>& precision_bits_storage() {
  static std::atomic<unsigned> bits{kDefaultPrecisionBits};
  return bits;
}

inline const bool precision_initialised = [] {
  BigFloat::default_precision(digits10_for_bits(kDefaultPrecisionBits));
  return true;
}();

}  // namespace detail

inline unsigned precision_bits() { return detail::precision_bits_storage().load(); }

inline void set_precision_bits(unsigned bits) {
  if (bits < 24 || bits > (1u << 20)) {
    throw DomainError("precision must lie in [24, 1048576] bits, got " + std::to_string(bits));
  }
  detail::precision_bits_storage().store(bits);
  BigFloat::default_precision(detail::digits10_for_bits(bits));
}

// Restores the previous precision on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(precision_bits()) { set_precision_bits(bits); }
  ~PrecisionScope() { set_precision_bits(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline BigFloat to_bigfloat(const Rational& q) {
  BigFloat r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

inline BigFloat bigfloat_pi() {
  BigFloat r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// Field abstraction.

template <class T>
struct field_traits {
  static constexpr bool is_field = false;
};

template <>
struct field_traits<Rational> {
  static constexpr bool is_field = true;
  static constexpr bool exact = true;
  static constexpr ScalarMode mode = ScalarMode::exact_rational;
};

template <>
struct field_traits<BigFloat> {
  static constexpr bool is_field = true;
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::big_float;
};

template <>
struct field_traits<double> {
  static constexpr bool is_field = true;
  static constexpr bool exact = false;
  static constexpr ScalarMode mode = ScalarMode::machine_float;
};

template <class T>
concept Field = field_traits<T>::is_field;

template <class T>
concept FloatField = Field<T> && !field_traits<T>::exact;

template <Field T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<T, BigFloat>) {
    return to_bigfloat(q);
  } else {
    return q.get_d();
  }
}

template <Field T>
T from_int(long v) {
  return T(v);
}

template <Field T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x.get_d();
  } else if constexpr (std::is_same_v<T, BigFloat>) {
    return x.template convert_to<double>();
  } else {
    return x;
  }
}

template <Field T>
T magnitude(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(abs(x));
  } else if constexpr (std::is_same_v<T, BigFloat>) {
    return BigFloat(abs(x));
  } else {
    return std::fabs(x);
  }
}

template <Field T>
bool is_zero(const T& x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return sgn(x) == 0;
  } else {
    return x == 0;
  }
}

template <Field T>
T pow_int(T base, unsigned exponent) {
  T result = from_int<T>(1);
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

// Sum of a list of terms. Exact fields add directly; float fields sort by
// magnitude and use Neumaier's compensated summation, since the alternating
// sums in this library cancel heavily.
template <Field T>
T sum_terms(std::vector<T> terms) {
  if constexpr (field_traits<T>::exact) {
    T total = 0;
    for (const T& t : terms) total += t;
    return total;
  } else {
    std::sort(terms.begin(), terms.end(),
              [](const T& a, const T& b) { return magnitude(a) < magnitude(b); });
    T total = 0;
    T compensation = 0;
    for (const T& x : terms) {
      T next = total + x;
      if (magnitude(total) >= magnitude(x)) {
        compensation += (total - next) + x;
      } else {
        compensation += (x - next) + total;
      }
      total = next;
    }
    return T(total + compensation);
  }
}

// ---------------------------------------------------------------------------
// Parsing.

// Canonicalised num/den; the two-argument mpq_class constructor is not.
inline Rational ratio(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational ratio(long num, long den) { return ratio(Integer(num), Integer(den)); }

// Accepts "p/q", integers and decimals with optional exponent ("-1.25e-3").
// Decimals are converted exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw DomainError("not a rational number: '" + s + "'"); };
  if (s.empty()) return fail();
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) return fail();
    if (sgn(q.get_den()) == 0) throw DomainError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return fail();
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') return fail();
    ++pos;
    std::size_t used = 0;
    long exponent = 0;
    try {
      exponent = std::stol(s.substr(pos), &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (pos + used != s.size() || exponent > 100000 || exponent < -100000) return fail();
    scale += exponent;
  }
  Integer value(digits, 10);
  if (negative) value = -value;
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  return scale < 0 ? ratio(value, power) : Rational(value * power);
}

inline std::string to_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  std::string s = c.get_num().get_str();
  s += '/';
  s += c.get_den().get_str();
  return s;
}

// ---------------------------------------------------------------------------
// Combinatorics.

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Generalized binomial coefficient binom(x, n) = prod_{j=1}^{n} (x - j + 1)/j
// for rational upper argument.
inline Rational binom_general(const Rational& x, unsigned n) {
  Rational r = 1;
  for (unsigned j = 1; j <= n; ++j) {
    r *= x - Rational(j - 1);
    r /= Rational(j);
  }
  return r;
}

// x (x-1) ... (x-s+1); 1 when s = 0.
template <Field T>
T falling_factorial(const T& x, unsigned s) {
  T r = from_int<T>(1);
  for (unsigned j = 0; j < s; ++j) r *= x - from_int<T>(static_cast<long>(j));
  return r;
}

namespace detail {

enum class StirlingKind { second, first_unsigned };

// Triangular table grown on demand; row n holds k = 0..n.
class StirlingTable {
 public:
  explicit StirlingTable(StirlingKind kind) : kind_(kind) { rows_.push_back({Integer(1)}); }

  Integer get(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::lock_guard<std::mutex> lock(mutex_);
    while (rows_.size() <= n) grow();
    return rows_[n][k];
  }

 private:
  void grow() {
    const std::size_t n = rows_.size();
    const auto& prev = rows_.back();
    std::vector<Integer> row(n + 1, Integer(0));
    for (std::size_t k = 1; k <= n; ++k) {
      Integer same = k < prev.size() ? prev[k] : Integer(0);
      Integer factor = kind_ == StirlingKind::second ? Integer(static_cast<unsigned long>(k))
                                                      : Integer(static_cast<unsigned long>(n - 1));
      row[k] = factor * same + prev[k - 1];
    }
    rows_.push_back(std::move(row));
  }

  StirlingKind kind_;
  std::mutex mutex_;
  std::vector<std::vector<Integer>> rows_;
};

}  // namespace detail

// Stirling numbers of the second kind S(n, k).
inline Integer stirling_second(unsigned n, unsigned k) {
  static detail::StirlingTable table(detail::StirlingKind::second);
  return table.get(n, k);
}

// Unsigned Stirling numbers of the first kind c(n, k).
inline Integer stirling_first_unsigned(unsigned n, unsigned k) {
  static detail::StirlingTable table(detail::StirlingKind::first_unsigned);
  return table.get(n, k);
}

// Ramanujan's Q-function, Q(n) = sum_{i=0}^{n} n^{(i)} / n^i.
inline Rational ramanujan_q(unsigned n) {
  if (n == 0) throw DomainError("ramanujan_q requires n >= 1");
  Rational term = 1;
  Rational total = 1;
  for (unsigned i = 1; i <= n; ++i) {
    term *= ratio(static_cast<long>(n - i + 1), static_cast<long>(n));
    total += term;
  }
  return total;
}

}  // namespace urnlab
