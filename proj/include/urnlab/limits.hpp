#pragma once

// Limit laws for urn model I with A = (n) and black weights growing like m^2:
// Y_m (n -> oo), Z_n (m -> oo) and W (both -> oo), the theta-type series
// giving the CDF of W, and infinite products with tail control.

#include <cmath>
#include <complex>
#include <string>

#include "urnlab/numerics.hpp"
#include "urnlab/weights.hpp"

namespace urnlab {

namespace detail {

template <FloatField T>
T fsqrt(const T& x) {
  if constexpr (std::is_same_v<T, double>) return std::sqrt(x); else return T(sqrt(x));
}
template <FloatField T>
T fexp(const T& x) {
  if constexpr (std::is_same_v<T, double>) return std::exp(x); else return T(exp(x));
}
template <FloatField T>
T flog(const T& x) {
  if constexpr (std::is_same_v<T, double>) return std::log(x); else return T(log(x));
}
template <FloatField T>
T fsinh(const T& x) {
  if constexpr (std::is_same_v<T, double>) return std::sinh(x); else return T(sinh(x));
}
template <FloatField T>
T fcosh(const T& x) {
  if constexpr (std::is_same_v<T, double>) return std::cosh(x); else return T(cosh(x));
}
template <FloatField T>
T fpi() {
  if constexpr (std::is_same_v<T, double>) return 3.14159265358979323846; else return bigfloat_pi();
}

// Copies x into a variable of the current default precision (rounding).
inline BigFloat round_to_working(const BigFloat& x) {
  BigFloat r;
  mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
  return r;
}

// 2^-bits of the working precision, as a stopping tolerance.
template <FloatField T>
T working_epsilon() {
  if constexpr (std::is_same_v<T, double>) {
    return std::ldexp(1.0, -60);
  } else {
    BigFloat e = 1;
    mpfr_mul_2si(e.backend().data(), e.backend().data(), -static_cast<long>(precision_bits()) - 8, MPFR_RNDN);
    return e;
  }
}

template <FloatField T>
void require_tolerance(const T& tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
}

template <FloatField T>
void require_unit_open(const T& q) {
  if (!(q >= 0) || !(q < 1)) throw DomainError("q must lie in [0, 1)");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Families of black weights with a known limit law for W.

enum class LimitTag { square, triangular, shifted_square };

struct LimitFamily {
  LimitTag tag = LimitTag::square;

  static LimitFamily parse(std::string_view s) {
    if (s == "square") return {LimitTag::square};
    if (s == "triangular") return {LimitTag::triangular};
    if (s == "shifted-square") return {LimitTag::shifted_square};
    throw DomainError("limit family must be square, triangular or shifted-square, got '" + std::string(s) + "'");
  }

  std::string name() const {
    switch (tag) {
      case LimitTag::square: return "square";
      case LimitTag::triangular: return "triangular";
      case LimitTag::shifted_square: return "shifted-square";
    }
    return "?";
  }

  WeightSequence black() const {
    switch (tag) {
      case LimitTag::square: return WeightSequence::square();
      case LimitTag::triangular: return WeightSequence::triangular();
      case LimitTag::shifted_square: return WeightSequence::shifted_square();
    }
    return WeightSequence::square();
  }

  // sum_{l > M} 1 / beta_l: exact for triangular weights, midpoint
  // estimates otherwise.
  template <FloatField T>
  T tail_sum(unsigned long big_m) const {
    const T m = from_int<T>(static_cast<long>(big_m));
    switch (tag) {
      case LimitTag::square: return from_int<T>(1) / (m + from_rational<T>(ratio(1, 2)));
      case LimitTag::triangular: return from_int<T>(2) / (m + from_int<T>(1));
      case LimitTag::shifted_square: return from_int<T>(1) / m;
    }
    return from_int<T>(0);
  }
};

// ---------------------------------------------------------------------------
// Y_m.

// E(Y_m^s) = prod_{l=1}^{m} l^2 / (l^2 + s)
template <Field T>
T ym_moment(unsigned m, unsigned s) {
  if (m < 1 || s < 1) throw DomainError("ym_moment needs m >= 1 and s >= 1");
  T p = from_int<T>(1);
  for (unsigned l = 1; l <= m; ++l) {
    const T l2 = from_int<T>(static_cast<long>(l) * l);
    p *= l2 / (l2 + from_int<T>(s));
  }
  return p;
}

namespace detail {

// log Gamma(z) for complex z with Re z > 0.5 (Lanczos, g = 7, n = 9).
inline std::complex<double> lgamma_complex(std::complex<double> z) {
  static const double c[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  std::complex<double> x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + 7.5;
  return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace detail

// The Gamma-function form of E(Y_m^s),
//   (m!)^2 / (Gamma(m+1-i sqrt s) Gamma(m+1+i sqrt s)) * pi sqrt s / sinh(pi sqrt s),
// in machine floats; an independent cross-check of the product.
inline double ym_moment_gamma(unsigned m, unsigned s) {
  if (m < 1 || s < 1) throw DomainError("ym_moment_gamma needs m >= 1 and s >= 1");
  const double x = std::sqrt(static_cast<double>(s));
  const std::complex<double> lg = detail::lgamma_complex({m + 1.0, x});
  const double log_ratio = 2 * std::lgamma(m + 1.0) - 2 * lg.real();
  const double px = M_PI * x;
  // pi x / sinh(pi x) = 2 pi x e^{-pi x} / (1 - e^{-2 pi x})
  const double tail = std::log(2 * px) - px - std::log1p(-std::exp(-2 * px));
  return std::exp(log_ratio + tail);
}

namespace detail {

// 2 (-1)^{l-1} binom(m, l) / binom(m + l, m)
inline Rational ym_coefficient(unsigned m, unsigned l) {
  Rational c = ratio(2 * binomial(m, l), binomial(m + l, m));
  return l % 2 ? c : Rational(-c);
}

}  // namespace detail

// f_m(q) = 2 sum_{l=1}^{m} (-1)^{l-1} binom(m,l)/binom(m+l,m) l^2 q^{l^2-1}
template <Field T>
T ym_density(unsigned m, const T& q) {
  if (m < 1) throw DomainError("ym_density needs m >= 1");
  if (q < from_int<T>(0) || q > from_int<T>(1)) throw DomainError("q must lie in [0, 1]");
  std::vector<T> terms;
  for (unsigned l = 1; l <= m; ++l) {
    const unsigned e = l * l - 1;
    terms.push_back(from_rational<T>(detail::ym_coefficient(m, l) * Rational(l * l)) * pow_int(q, e));
  }
  return sum_terms(std::move(terms));
}

// P{Y_m <= x}, the termwise integral of the density.
template <Field T>
T ym_cdf(unsigned m, const T& x) {
  if (m < 1) throw DomainError("ym_cdf needs m >= 1");
  if (x < from_int<T>(0) || x > from_int<T>(1)) throw DomainError("x must lie in [0, 1]");
  std::vector<T> terms;
  for (unsigned l = 1; l <= m; ++l) terms.push_back(from_rational<T>(detail::ym_coefficient(m, l)) * pow_int(x, l * l));
  return sum_terms(std::move(terms));
}

// integral_0^1 q^s f_m(q) dq, termwise: 2 sum (-1)^{l-1} binom(m,l)/binom(m+l,m) l^2/(l^2+s).
// s = 0 gives the total mass.
inline Rational ym_density_moment(unsigned m, unsigned s) {
  if (m < 1) throw DomainError("ym_density_moment needs m >= 1");
  Rational total = 0;
  for (unsigned l = 1; l <= m; ++l) total += detail::ym_coefficient(m, l) * ratio(l * l, l * l + s);
  return total;
}

// ---------------------------------------------------------------------------
// Z_n.

// pi sqrt(l) / sinh(pi sqrt(l)); 1 at l = 0.
template <FloatField T>
T sinh_ratio(unsigned l) {
  if (l == 0) return from_int<T>(1);
  const T x = detail::fpi<T>() * detail::fsqrt(from_int<T>(l));
  return x / detail::fsinh(x);
}

// P{Z_n = k} = sum_{l=k}^{n} (-1)^{l-k} binom(n,l) binom(l,k) pi sqrt l / sinh(pi sqrt l)
template <FloatField T>
T zn_pmf(unsigned n, unsigned k) {
  if (k > n) throw OutOfRange("k exceeds n");
  std::vector<T> terms;
  for (unsigned l = k; l <= n; ++l) {
    const T c = from_rational<T>(Rational(binomial(n, l) * binomial(l, k)));
    terms.push_back((((l - k) % 2) ? T(-c) : c) * sinh_ratio<T>(l));
  }
  return sum_terms(std::move(terms));
}

template <FloatField T>
struct SeriesValue {
  T value;
  T error_bound;
  unsigned long terms;
};

// P{Z_n = 0} = 2 sum_{l>=1} (-1)^{l-1} / binom(n + l^2, n), truncated after
// `terms` terms. The terms decrease in l, so the next one bounds the error.
// Only k = 0: for k >= 1 the analogous series does not converge in general.
template <FloatField T>
SeriesValue<T> zn_pmf_series(unsigned n, unsigned k, unsigned long terms) {
  if (k != 0) {
    throw DomainError("the series representation is only supported for k = 0; use the finite sum");
  }
  if (n < 1 || terms < 1) throw DomainError("zn_pmf_series needs n >= 1 and at least one term");
  auto term = [n](unsigned long l) {
    // 1 / binom(n + l^2, n) = prod_{j=1}^{n} j / (l^2 + j)
    T t = from_int<T>(1);
    const T l2 = from_int<T>(static_cast<long>(l * l));
    for (unsigned j = 1; j <= n; ++j) t *= from_int<T>(j) / (l2 + from_int<T>(j));
    return T(2 * t);
  };
  std::vector<T> parts;
  for (unsigned long l = 1; l <= terms; ++l) parts.push_back(l % 2 ? term(l) : T(-term(l)));
  return {sum_terms(std::move(parts)), term(terms + 1), terms};
}

// E(Z_n^s) = sum_{l=1}^{s} n^l sum_{j=l}^{s} S(s,j) c(j,l) (-1)^{j-l} pi sqrt j / sinh(pi sqrt j)
template <FloatField T>
T zn_moment(unsigned n, unsigned s) {
  if (n < 1 || s < 1) throw DomainError("zn_moment needs n >= 1 and s >= 1");
  std::vector<T> terms;
  for (unsigned l = 1; l <= s; ++l) {
    for (unsigned j = l; j <= s; ++j) {
      Integer c = stirling_second(s, j) * stirling_first_unsigned(j, l) * pow_int(Rational(n), l).get_num();
      if ((j - l) % 2) c = -c;
      terms.push_back(from_rational<T>(Rational(c)) * sinh_ratio<T>(j));
    }
  }
  return sum_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// W.

// Closed-form E(W^s):
//   square          pi sqrt s / sinh(pi sqrt s)
//   triangular      2 s pi / cosh(pi sqrt(8s - 1) / 2)
//   shifted-square  1 / cosh(pi sqrt s)
template <FloatField T>
T w_moment(unsigned s, LimitFamily family) {
  if (s < 1) throw DomainError("w_moment needs s >= 1");
  const T pi = detail::fpi<T>();
  switch (family.tag) {
    case LimitTag::square: return sinh_ratio<T>(s);
    case LimitTag::triangular: {
      const T x = pi * detail::fsqrt(from_int<T>(8 * static_cast<long>(s) - 1)) / from_int<T>(2);
      return from_int<T>(2 * static_cast<long>(s)) * pi / detail::fcosh(x);
    }
    case LimitTag::shifted_square: return from_int<T>(1) / detail::fcosh(T(pi * detail::fsqrt(from_int<T>(s))));
  }
  return from_int<T>(0);
}

// prod_{l=1}^{M} beta_l / (beta_l + s), times exp(-s sum_{l>M} 1/beta_l) for
// the omitted factors. The error bound (s + 2 s^2) / M^3 covers the
// second-order term of log(1 + s/beta) and the tail-sum estimate.
template <FloatField T>
SeriesValue<T> w_moment_product(unsigned s, LimitFamily family, unsigned long big_m) {
  if (s < 1 || big_m < 1) throw DomainError("w_moment_product needs s >= 1 and M >= 1");
  const WeightSequence beta = family.black();
  const T st = from_int<T>(s);
  T log_p = from_int<T>(0);
  for (unsigned long l = 1; l <= big_m; ++l) {
    const T b = beta.eval<T>(l);
    log_p -= detail::flog(T(from_int<T>(1) + st / b));
  }
  log_p -= st * family.tail_sum<T>(big_m);
  const T m = from_int<T>(static_cast<long>(big_m));
  const T bound = (st + 2 * st * st) / (m * m * m);
  return {detail::fexp(log_p), bound, big_m};
}

// Smallest truncation index whose error bound is below tol.
inline unsigned long w_product_terms_for(unsigned s, double tol) {
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  const double need = std::cbrt((s + 2.0 * s * s) / tol);
  if (need > 1e8) throw DomainError("tolerance too small for the product form");
  return static_cast<unsigned long>(std::ceil(need));
}

// Theta(q) = sum_{n in Z} (-1)^n q^{n^2} = 1 + 2 sum_{n>=1} (-1)^n q^{n^2};
// stops once the next term is below tol.
template <FloatField T>
SeriesValue<T> theta(const T& q, const T& tol) {
  detail::require_unit_open(q);
  detail::require_tolerance(tol);
  std::vector<T> terms{from_int<T>(1)};
  T qn2 = q;         // q^{n^2}
  T step = q * q * q;  // q^{2n+1}
  const T q2 = q * q;
  unsigned long n = 1;
  while (2 * qn2 >= tol) {
    terms.push_back(n % 2 ? T(-2 * qn2) : T(2 * qn2));
    qn2 *= step;
    step *= q2;
    ++n;
  }
  return {sum_terms(std::move(terms)), T(2 * qn2), n};
}

// prod_{j>=1} (1 - q^{2j}) (1 - q^{2j-1})^2, stopped once q^{2j-1} < tol / 4.
template <FloatField T>
T theta_triple_product(const T& q, const T& tol) {
  detail::require_unit_open(q);
  detail::require_tolerance(tol);
  T p = from_int<T>(1);
  T odd = q;  // q^{2j-1}
  while (odd >= tol / 4) {
    const T even = odd * q;
    const T a = from_int<T>(1) - odd;
    p *= (from_int<T>(1) - even) * a * a;
    odd = even * q;
  }
  return p;
}

// phi(q)^3 = sum_{l>=0} (-1)^l (2l+1) q^{l(l+1)/2}.
template <FloatField T>
SeriesValue<T> euler_phi_cubed(const T& q, const T& tol) {
  detail::require_unit_open(q);
  detail::require_tolerance(tol);
  std::vector<T> terms;
  T ql = from_int<T>(1);  // q^{l(l+1)/2}
  T step = q;             // q^{l+1}
  unsigned long l = 0;
  while (true) {
    const T t = from_int<T>(static_cast<long>(2 * l + 1)) * ql;
    if (l > 0 && t < tol) return {sum_terms(std::move(terms)), t, l};
    terms.push_back(l % 2 ? T(-t) : t);
    ql *= step;
    step *= q;
    ++l;
  }
}

// (prod_{n>=1} (1 - q^n))^3, stopped once q^n < tol / 3.
template <FloatField T>
T euler_phi_cubed_product(const T& q, const T& tol) {
  detail::require_unit_open(q);
  detail::require_tolerance(tol);
  T p = from_int<T>(1);
  for (T qn = q; qn >= tol / 3; qn *= q) p *= from_int<T>(1) - qn;
  return p * p * p;
}

// (4/pi) sum_{l>=1} (-1)^{l-1} q^{(l-1/2)^2} / (2l - 1)
template <FloatField T>
SeriesValue<T> shifted_square_series(const T& q, const T& tol) {
  detail::require_unit_open(q);
  detail::require_tolerance(tol);
  if (q == 0) return {from_int<T>(0), from_int<T>(0), 0};
  const T four_over_pi = from_int<T>(4) / detail::fpi<T>();
  std::vector<T> terms;
  // (l - 1/2)^2 = l^2 - l + 1/4; consecutive exponents differ by 2l.
  T ql = detail::fexp(T(detail::flog(q) / 4));  // q^{1/4}
  T step = q * q;                                 // q^{2l}
  const T q2 = q * q;
  unsigned long l = 1;
  while (true) {
    const T t = four_over_pi * ql / from_int<T>(static_cast<long>(2 * l - 1));
    if (t < tol) return {sum_terms(std::move(terms)), t, l};
    terms.push_back(l % 2 ? t : T(-t));
    ql *= step;
    step *= q2;
    ++l;
  }
}

namespace detail {

inline BigFloat w_cdf_big(const BigFloat& q, LimitFamily family) {
  const BigFloat tol = working_epsilon<BigFloat>();
  switch (family.tag) {
    case LimitTag::square: return 1 - theta(q, tol).value;
    case LimitTag::triangular: return 1 - euler_phi_cubed(q, tol).value;
    case LimitTag::shifted_square: return shifted_square_series(q, tol).value;
  }
  return 0;
}

}  // namespace detail

// P{W <= q} for the family's limit law: 1 - Theta(q), 1 - phi(q)^3, or the
// shifted-square series. Evaluated with 64 guard bits (at least 128 bits for
// machine floats) so the alternating sums near q = 1 do not lose
// monotonicity, clamped to [0, 1]; exactly 1 at q = 1.
template <FloatField T>
T w_cdf(const T& q, LimitFamily family) {
  if (!(q >= 0) || !(q <= 1)) throw DomainError("q must lie in [0, 1]");
  if (q == 1) return from_int<T>(1);
  if (q == 0) return from_int<T>(0);
  const unsigned working = std::max(precision_bits(), 64u);
  BigFloat value;
  {
    PrecisionScope guard(working + 64);
    BigFloat qb;
    if constexpr (std::is_same_v<T, double>) {
      qb = q;
    } else {
      mpfr_set(qb.backend().data(), q.backend().data(), MPFR_RNDN);
    }
    value = detail::w_cdf_big(qb, family);
    if (value < 0) value = 0;
    if (value > 1) value = 1;
  }
  if constexpr (std::is_same_v<T, double>) {
    return value.template convert_to<double>();
  } else {
    return detail::round_to_working(value);
  }
}

}  // namespace urnlab
