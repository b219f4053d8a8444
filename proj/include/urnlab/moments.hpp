#pragma once

// Moments of the Polya specializations: factorial and raw moments for
// sampling without replacement, mixed factorial moments for r colors, and
// OK Corral moments through the polynomials f_n, g_n and Ramanujan's Q.

#include <mutex>
#include <string>
#include <vector>

#include "urnlab/closedform.hpp"
#include "urnlab/polynomial.hpp"
#include "urnlab/scalar.hpp"
#include "urnlab/series.hpp"

namespace urnlab {

enum class MomentMethod { closed_form, direct_summation };

inline std::string_view to_string(MomentMethod m) {
  return m == MomentMethod::closed_form ? "closed-form" : "direct-summation";
}

struct MomentReport {
  std::vector<unsigned> order;
  Scalar value;
  MomentMethod method;
};

// ---------------------------------------------------------------------------
// Direct summation over a distribution.

template <Field T>
T raw_moment_direct(const ExactDistribution<T>& d, unsigned s) {
  return d.expect([s](const std::vector<unsigned>& k) { return pow_int(from_int<T>(k[0]), s); });
}

template <Field T>
T factorial_moment_direct(const ExactDistribution<T>& d, unsigned s) {
  return d.expect([s](const std::vector<unsigned>& k) { return falling_factorial(from_int<T>(k[0]), s); });
}

// E(prod_j (K_j)^{(s_j)}) for an r-color outcome distribution.
template <Field T>
T mixed_factorial_moment_direct(const ExactDistribution<T>& d, const std::vector<unsigned>& s) {
  if (s.size() != d.dims()) throw DomainError("moment order vector has the wrong length");
  return d.expect([&](const std::vector<unsigned>& k) {
    T p = from_int<T>(1);
    for (std::size_t j = 0; j < k.size(); ++j) p *= falling_factorial(from_int<T>(k[j]), s[j]);
    return p;
  });
}

// E(P(K)) for a polynomial P.
template <Field T>
T polynomial_moment_direct(const ExactDistribution<T>& d, const Polynomial<Rational>& p) {
  return d.expect([&](const std::vector<unsigned>& k) {
    T acc = from_int<T>(0);
    const T x = from_int<T>(k[0]);
    const auto& c = p.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + from_rational<T>(c[i]);
    return acc;
  });
}

// ---------------------------------------------------------------------------
// Sampling without replacement, weights a*n and d*m; moments of Y/a.

// n^{(s)} / binom(m + a s / d, m)
template <Field T>
T sampling_factorial_moment(unsigned long a, unsigned long d, unsigned n, unsigned m, unsigned s) {
  detail::require_positive_params({a, d});
  const Rational x = ratio(static_cast<long>(a * s), static_cast<long>(d)) + m;
  return falling_factorial(from_int<T>(n), s) / from_rational<T>(binom_general(x, m));
}

// sum_j S(s, j) E(falling factorial of order j)
template <Field T>
T sampling_raw_moment(unsigned long a, unsigned long d, unsigned n, unsigned m, unsigned s) {
  std::vector<T> terms;
  for (unsigned j = 0; j <= s; ++j) {
    const Integer st = stirling_second(s, j);
    if (st == 0) continue;
    terms.push_back(from_rational<T>(Rational(st)) * sampling_factorial_moment<T>(a, d, n, m, j));
  }
  return sum_terms(std::move(terms));
}

// prod_j n_j^{(s_j)} / binom(n_r + sum_f a_f s_f / a_r, n_r)
template <Field T>
T multi_mixed_factorial_moment(const std::vector<unsigned long>& a, const std::vector<unsigned>& n,
                               const std::vector<unsigned>& s) {
  const std::size_t r = a.size();
  if (r < 2 || n.size() != r || s.size() + 1 != r) throw DomainError("need r parameters, r counts and r-1 orders");
  for (unsigned long x : a) detail::require_positive_params({x});
  T num = from_int<T>(1);
  Rational shift = n[r - 1];
  for (std::size_t j = 0; j + 1 < r; ++j) {
    num *= falling_factorial(from_int<T>(n[j]), s[j]);
    shift += ratio(static_cast<long>(a[j] * s[j]), static_cast<long>(a[r - 1]));
  }
  return num / from_rational<T>(binom_general(shift, n[r - 1]));
}

// ---------------------------------------------------------------------------
// f_n(u) = n! [z^n] exp(u (e^{-z} + z - 1)),
// g_n(u) = n! [z^n] exp(u h(z)) * integral_0^z u e^{-t} exp(-u h(t)) dt,
// with h(z) = e^{-z} + z - 1, by exact truncated series in z with
// coefficients in Q[u].

namespace detail {

class PuyhaubertCache {
 public:
  static PuyhaubertCache& instance() {
    static PuyhaubertCache cache;
    return cache;
  }

  Polynomial<Rational> f(unsigned n) {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    return f_[n];
  }

  Polynomial<Rational> g(unsigned n) {
    std::lock_guard<std::mutex> lock(mutex_);
    ensure(n);
    return g_[n];
  }

 private:
  using Poly = Polynomial<Rational>;
  using Series = TruncatedSeries<Poly>;

  void ensure(unsigned n) {
    if (n < f_.size()) return;
    const unsigned order = std::max<unsigned>(n, 2 * static_cast<unsigned>(f_.size())) + 1;
    const Poly one = Poly::constant(1);
    const Poly u = Poly::monomial(1, 1);

    Series uh(order, Poly());       // u h(z)
    Series e_minus(order, Poly());  // e^{-z}
    Integer fact = 1;
    for (unsigned j = 0; j <= order; ++j) {
      if (j > 0) fact *= j;
      const Rational c = ratio(Integer(j % 2 ? -1 : 1), fact);
      e_minus[j] = Poly::constant(c);
      if (j >= 2) uh[j] = u * c;
    }
    Series neg_uh = uh;
    neg_uh *= Rational(-1);

    const Series big_f = uh.exp(one);
    Series inner = e_minus * neg_uh.exp(one);
    for (unsigned j = 0; j <= order; ++j) inner[j] = inner[j] * u;
    const Series big_g = big_f * inner.integral();

    f_.clear();
    g_.clear();
    fact = 1;
    for (unsigned j = 0; j <= order; ++j) {
      if (j > 0) fact *= j;
      f_.push_back(big_f[j] * Rational(fact));
      g_.push_back(big_g[j] * Rational(fact));
    }
  }

  std::mutex mutex_;
  std::vector<Poly> f_, g_;
};

}  // namespace detail

inline Polynomial<Rational> puyhaubert_f(unsigned n) { return detail::PuyhaubertCache::instance().f(n); }
inline Polynomial<Rational> puyhaubert_g(unsigned n) { return detail::PuyhaubertCache::instance().g(n); }

// f_{s+1}(l) Q(l) + g_{s+1}(l)
inline Rational puyhaubert_combination(unsigned l, unsigned s) {
  const Rational x(l);
  return puyhaubert_f(s + 1)(x) * ramanujan_q(l) + puyhaubert_g(s + 1)(x);
}

// Both sides of
//   sum_{k=1}^{l} binom(l-1, k-1) k! l^{-k} k^s = (f_{s+1}(l) Q(l) + g_{s+1}(l)) / l.
inline std::pair<Rational, Rational> puyhaubert_sum_identity_check(unsigned l, unsigned s) {
  if (l < 1) throw DomainError("the identity needs l >= 1");
  Rational lhs = 0;
  for (unsigned k = 1; k <= l; ++k) {
    Integer lk, ks;
    mpz_ui_pow_ui(lk.get_mpz_t(), l, k);
    mpz_ui_pow_ui(ks.get_mpz_t(), k, s);
    lhs += ratio(binomial(l - 1, k - 1) * factorial(k) * ks, lk);
  }
  return {lhs, puyhaubert_combination(l, s) / l};
}

// ---------------------------------------------------------------------------
// OK Corral, weights c*n and b*m; moments of Y/c.

// Power of l in the moment sum: the displayed formula has l^{m+n-1}; the
// derivation's intermediate line reads as an extra factor l times l^{m+n}.
enum class OkCorralExponent { displayed, derivation_literal };

inline std::string_view to_string(OkCorralExponent e) {
  return e == OkCorralExponent::displayed ? "l^(m+n-1)" : "l*l^(m+n)";
}

namespace detail {

// (c/b)^m / binom(m + c l / b, m) * binom(n+m, n-l) binom(m+l, l) * (-1)^{n-l}
inline Rational okcorral_weight(unsigned long b, unsigned long c, unsigned n, unsigned m, unsigned l) {
  const Rational cb = ratio(static_cast<long>(c), static_cast<long>(b));
  Rational w = pow_int(cb, m) * Rational(binomial(n + m, n - l) * binomial(m + l, l)) / binom_general(cb * l + m, m);
  return (n - l) % 2 ? Rational(-w) : w;
}

}  // namespace detail

// E(Y^s) = 1/(n+m)! (c/b)^m sum_{l=1}^{n} (-1)^{n-l} binom(n+m,n-l) binom(m+l,l)
//          / binom(m + c l/b, m) * l^{m+n-1} (f_{s+1}(l) Q(l) + g_{s+1}(l))
// (the l = 0 term vanishes).
template <Field T>
T okcorral_raw_moment(unsigned long b, unsigned long c, unsigned n, unsigned m, unsigned s,
                      OkCorralExponent exponent = OkCorralExponent::displayed) {
  detail::require_positive_params({b, c});
  if (n < 1 || m < 1) throw DomainError("n and m must be >= 1");
  if (s < 1) throw DomainError("moment order s must be >= 1");
  const unsigned e = exponent == OkCorralExponent::displayed ? n + m - 1 : n + m + 1;
  const T scale = from_rational<T>(ratio(Integer(1), factorial(n + m)));
  std::vector<T> terms;
  for (unsigned l = 1; l <= n; ++l) {
    T t = from_rational<T>(detail::okcorral_weight(b, c, n, m, l)) * from_rational<T>(puyhaubert_combination(l, s));
    terms.push_back(scale * t * pow_int(from_int<T>(l), e));
  }
  return sum_terms(std::move(terms));
}

// Coefficients m_1..m_{2s} of M_s from
//   sum_i m_i f_{i+1}(X) = 0,  sum_i m_i g_{i+1}(X) = s! 2^s X^{s+1},
// solved from the top: m_{2j} from the X^{j+1} coefficient of the g-equation
// (only g_{2j+1}, ..., g_{2s+1} reach that degree), m_{2j-1} from the X^j
// coefficient of the f-equation. Every remaining coefficient is then checked.
inline Polynomial<Rational> m_polynomial(unsigned s) {
  if (s < 1) throw DomainError("M_s needs s >= 1");
  const unsigned top = 2 * s;
  std::vector<Polynomial<Rational>> f(top + 2), g(top + 2);
  for (unsigned i = 1; i <= top + 1; ++i) {
    f[i] = puyhaubert_f(i);
    g[i] = puyhaubert_g(i);
  }
  const Rational rhs_coeff = Rational(factorial(s)) * pow_int(Rational(2), s);
  std::vector<Rational> coeff(top + 1, Rational(0));
  for (unsigned i = top; i >= 1; --i) {
    const bool even = i % 2 == 0;
    const unsigned deg = even ? i / 2 + 1 : (i + 1) / 2;
    const auto& fam = even ? g : f;
    Rational target = even && deg == s + 1 ? rhs_coeff : Rational(0);
    for (unsigned j = i + 1; j <= top; ++j) target -= coeff[j] * fam[j + 1].coefficient(deg);
    const Rational pivot = fam[i + 1].coefficient(deg);
    if (sgn(pivot) == 0) throw InconsistentSystem("zero pivot while solving for M_" + std::to_string(s));
    coeff[i] = target / pivot;
  }
  Polynomial<Rational> f_side, g_side;
  for (unsigned i = 1; i <= top; ++i) {
    f_side += f[i + 1] * coeff[i];
    g_side += g[i + 1] * coeff[i];
  }
  if (!f_side.is_zero() || !(g_side == Polynomial<Rational>::monomial(rhs_coeff, s + 1))) {
    throw InconsistentSystem("the triangular system for M_" + std::to_string(s) + " has no solution");
  }
  if (coeff[top] != 1) throw InconsistentSystem("M_" + std::to_string(s) + " is not monic");
  return Polynomial<Rational>(std::move(coeff));
}

// The two displayed closed forms for E(M_s(Y/c)):
//   s! 2^s / (n+m)! (c/b)^m sum_l (-1)^{n-l} binom(n+m,n-l) binom(m+l,l) / binom(m+cl/b, m) l^{m+n+s}
//   s! 2^s / (n! m!) (c/b)^m sum_l (-1)^{n-l} binom(n,l) / binom(m+cl/b, m) l^{m+n+s}
enum class MsForm { factorial_n_plus_m, factorial_n_times_m };

template <Field T>
T okcorral_m_moment(unsigned long b, unsigned long c, unsigned n, unsigned m, unsigned s, MsForm form) {
  detail::require_positive_params({b, c});
  if (n < 1 || m < 1 || s < 1) throw DomainError("n, m and s must be >= 1");
  const Rational cb = ratio(static_cast<long>(c), static_cast<long>(b));
  const Rational lead = Rational(factorial(s)) * pow_int(Rational(2), s) * pow_int(cb, m);
  const Rational pre = form == MsForm::factorial_n_plus_m ? lead / Rational(factorial(n + m))
                                                          : lead / Rational(factorial(n) * factorial(m));
  std::vector<T> terms;
  for (unsigned l = 1; l <= n; ++l) {
    Rational w = form == MsForm::factorial_n_plus_m ? Rational(binomial(n + m, n - l) * binomial(m + l, l))
                                                    : Rational(binomial(n, l));
    w /= binom_general(cb * l + m, m);
    if ((n - l) % 2) w = -w;
    terms.push_back(from_rational<T>(pre * w) * pow_int(from_int<T>(l), n + m + s));
  }
  return sum_terms(std::move(terms));
}

}  // namespace urnlab
