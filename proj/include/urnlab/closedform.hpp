#pragma once

// Explicit absorption probabilities for both urn models: the general-weight
// formulas (two colors and r colors), their Polya specializations, and the
// partial-fraction identity they rest on.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "urnlab/distribution.hpp"
#include "urnlab/oracle.hpp"

namespace urnlab {

// Which set of poles a sum runs over: alpha_k..alpha_n or beta_1..beta_m.
enum class Representation { alpha_poles, beta_poles };

inline std::string_view to_string(Representation r) {
  return r == Representation::alpha_poles ? "alpha-poles" : "beta-poles";
}

namespace detail {

// Running product; for rationals numerator and denominator are collected as
// integers and reduced once.
template <Field T>
class Product {
 public:
  void mul(const T& x) { value_ *= x; }
  void div(const T& x) { value_ /= x; }
  T get() const { return value_; }

 private:
  T value_ = from_int<T>(1);
};

template <>
class Product<Rational> {
 public:
  void mul(const Rational& x) {
    num_ *= x.get_num();
    den_ *= x.get_den();
  }
  void div(const Rational& x) {
    num_ *= x.get_den();
    den_ *= x.get_num();
  }
  Rational get() const { return ratio(num_, den_); }

 private:
  Integer num_ = 1;
  Integer den_ = 1;
};

template <Field T>
T signed_one(bool negative) {
  return from_int<T>(negative ? -1 : 1);
}

// Square table t[i][j] = f(i, j).
template <Field T>
using Table2 = std::vector<std::vector<T>>;

}  // namespace detail

// Weights and pairwise sums/differences for two sequences up to (max_n,
// max_m), after checking distinctness there. Every sub-instance n <= max_n,
// m <= max_m can then be evaluated without re-tabulating.
template <Field T>
class TwoColorForms {
 public:
  TwoColorForms(const WeightSequence& a, const WeightSequence& b, unsigned max_n, unsigned max_m)
      : max_n_(max_n), max_m_(max_m) {
    require_distinct(a, max_n, "A");
    require_distinct(b, max_m, "B");
    const WeightTable<T> w({a, b}, {max_n, max_m});
    alpha_ = w.color(0);
    beta_ = w.color(1);
    alpha_diff_ = differences(alpha_);
    beta_diff_ = differences(beta_);
    sum_.assign(max_n + 1, std::vector<T>(max_m + 1));
    for (unsigned j = 0; j <= max_n; ++j) {
      for (unsigned l = 0; l <= max_m; ++l) sum_[j][l] = alpha_[j] + beta_[l];
    }
  }

  // P{X_{n,m} = k}, model I. k = 0 uses alpha_0 = 0.
  T pmf_I(unsigned n, unsigned m, unsigned k, Representation rep) const {
    check(n, m, k);
    detail::Product<T> pre;
    for (unsigned h = 1; h <= m; ++h) pre.mul(beta_[h]);
    for (unsigned h = k + 1; h <= n; ++h) pre.mul(alpha_[h]);
    const T prefactor = pre.get();
    std::vector<T> terms;
    if (rep == Representation::beta_poles) {
      for (unsigned l = 1; l <= m; ++l) {
        detail::Product<T> p;
        p.mul(prefactor);
        for (unsigned j = k; j <= n; ++j) p.div(sum_[j][l]);
        for (unsigned i = 1; i <= m; ++i) {
          if (i != l) p.div(beta_diff_[i][l]);
        }
        terms.push_back(p.get());
      }
    } else {
      for (unsigned l = k; l <= n; ++l) {
        detail::Product<T> p;
        p.mul(prefactor);
        for (unsigned j = k; j <= n; ++j) {
          if (j != l) p.div(alpha_diff_[j][l]);
        }
        for (unsigned i = 1; i <= m; ++i) p.div(sum_[l][i]);
        terms.push_back(p.get());
      }
    }
    return sum_terms(std::move(terms));
  }

  // P{X_{n,m} = k}, model II, with the separate k = 0 formulas.
  T pmf_II(unsigned n, unsigned m, unsigned k, Representation rep) const {
    check(n, m, k);
    const unsigned first = k == 0 ? 1 : k;
    const unsigned exponent = n + m - 1 - k;
    std::vector<T> terms;
    if (rep == Representation::alpha_poles) {
      for (unsigned j = first; j <= n; ++j) {
        detail::Product<T> p;
        p.mul(pow_int(alpha_[j], exponent));
        if (k > 0) p.mul(alpha_[k]);
        for (unsigned l = first; l <= n; ++l) {
          if (l != j) p.div(alpha_diff_[j][l]);
        }
        for (unsigned h = 1; h <= m; ++h) p.div(sum_[j][h]);
        terms.push_back(p.get());
      }
      T s = sum_terms(std::move(terms));
      return k == 0 ? T(from_int<T>(1) - s) : s;
    }
    for (unsigned l = 1; l <= m; ++l) {
      detail::Product<T> p;
      p.mul(pow_int(beta_[l], exponent));
      if (k > 0) p.mul(alpha_[k]);
      for (unsigned j = first; j <= n; ++j) p.div(sum_[j][l]);
      for (unsigned h = 1; h <= m; ++h) {
        if (h != l) p.div(beta_diff_[l][h]);
      }
      terms.push_back(p.get());
    }
    return sum_terms(std::move(terms));
  }

  T pmf(Model model, unsigned n, unsigned m, unsigned k, Representation rep) const {
    return model == Model::I ? pmf_I(n, m, k, rep) : pmf_II(n, m, k, rep);
  }

  ExactDistribution<T> distribution(Model model, unsigned n, unsigned m, Representation rep) const {
    std::vector<T> p;
    for (unsigned k = 0; k <= n; ++k) p.push_back(pmf(model, n, m, k, rep));
    return ExactDistribution<T>::univariate(std::move(p));
  }

 private:
  static detail::Table2<T> differences(const std::vector<T>& v) {
    detail::Table2<T> d(v.size(), std::vector<T>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) d[i][j] = v[i] - v[j];
    }
    return d;
  }

  void check(unsigned n, unsigned m, unsigned k) const {
    if (n < 1 || m < 1) throw DomainError("closed forms need n >= 1 and m >= 1");
    if (k > n) throw OutOfRange("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    if (n > max_n_ || m > max_m_) throw OutOfRange("instance exceeds the tabulated weight range");
  }

  unsigned max_n_, max_m_;
  std::vector<T> alpha_, beta_;
  detail::Table2<T> alpha_diff_, beta_diff_, sum_;
};

template <Field T>
T pmf_I(const WeightSequence& a, const WeightSequence& b, unsigned n, unsigned m, unsigned k, Representation rep) {
  return TwoColorForms<T>(a, b, n, m).pmf_I(n, m, k, rep);
}

template <Field T>
T pmf_II(const WeightSequence& a, const WeightSequence& b, unsigned n, unsigned m, unsigned k, Representation rep) {
  return TwoColorForms<T>(a, b, n, m).pmf_II(n, m, k, rep);
}

// ---------------------------------------------------------------------------
// Polya specializations with integer parameters.

namespace detail {

inline void require_positive_params(std::initializer_list<unsigned long> params) {
  for (unsigned long p : params) {
    if (p == 0) throw DomainError("urn parameters must be positive integers");
  }
}

template <Field T>
T binom_t(const Rational& x, unsigned n) {
  return from_rational<T>(binom_general(x, n));
}

template <Field T>
T integer_t(const Integer& z) {
  return from_rational<T>(Rational(z));
}

}  // namespace detail

// Classical sampling without replacement, a = d = 1:
// binom(n+m-1-k, m-1) / binom(n+m, n).
inline Rational pmf_sampling_classical(unsigned n, unsigned m, unsigned k) {
  if (m < 1) throw DomainError("m must be >= 1");
  if (k > n) throw OutOfRange("k exceeds n");
  return ratio(binomial(n + m - 1 - k, m - 1), binomial(n + m, n));
}

// Classical OK Corral, b = c = 1. k >= 1 from the alternating sum over r;
// k = 0 as the complement.
inline Rational pmf_okcorral_classical(unsigned n, unsigned m, unsigned k) {
  if (n < 1 || m < 1) throw DomainError("n and m must be >= 1");
  if (k > n) throw OutOfRange("k exceeds n");
  auto at = [&](unsigned kk) {
    Integer s = 0;
    for (unsigned r = 1; r <= n; ++r) {
      Integer pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), r, n + m - kk);
      Integer t = binomial(n + m, n - r) * binomial(r - 1, kk - 1) * pw;
      if ((n - r) % 2) s -= t; else s += t;
    }
    return ratio(factorial(kk) * s, factorial(n + m));
  };
  if (k > 0) return at(k);
  Rational rest = 0;
  for (unsigned kk = 1; kk <= n; ++kk) rest += at(kk);
  return 1 - rest;
}

// Which alternating sum to use.
//   first:  over l = 1..m
//   second: over l = k..n (sampling) or l = 0..n (OK Corral)
enum class PolyaForm { first, second };

// P{Y_{an,dm} = ak} for sampling without replacement with weights a*n, d*m.
template <Field T>
T pmf_sampling_polya(unsigned long a, unsigned long d, unsigned n, unsigned m, unsigned k, PolyaForm form) {
  detail::require_positive_params({a, d});
  if (m < 1) throw DomainError("m must be >= 1");
  if (k > n) throw OutOfRange("k exceeds n");
  std::vector<T> terms;
  if (form == PolyaForm::first) {
    const Rational step = ratio(static_cast<long>(d), static_cast<long>(a));
    for (unsigned l = 1; l <= m; ++l) {
      const Rational x = step * l;
      T t = detail::integer_t<T>(binomial(m, l)) * detail::binom_t<T>(x + k - 1, k) / detail::binom_t<T>(x + n, n);
      terms.push_back(detail::signed_one<T>((l - 1) % 2) * t);
    }
  } else {
    const Rational step = ratio(static_cast<long>(a), static_cast<long>(d));
    for (unsigned l = k; l <= n; ++l) {
      T t = detail::integer_t<T>(binomial(n, l) * binomial(l, k)) / detail::binom_t<T>(step * l + m, m);
      terms.push_back(detail::signed_one<T>((l - k) % 2) * t);
    }
  }
  return sum_terms(std::move(terms));
}

// P{Y_{cn,bm} = ck} for the OK Corral urn with weights c*n (white) and b*m
// (black). For k = 0 both forms use the dedicated k = 0 sum.
template <Field T>
T pmf_okcorral_polya(unsigned long b, unsigned long c, unsigned n, unsigned m, unsigned k, PolyaForm form) {
  detail::require_positive_params({b, c});
  if (n < 1 || m < 1) throw DomainError("n and m must be >= 1");
  if (k > n) throw OutOfRange("k exceeds n");
  const Rational bc = ratio(static_cast<long>(b), static_cast<long>(c));
  std::vector<T> terms;
  if (k == 0 || form == PolyaForm::first) {
    // k / ((n-k+1)! (m-1)!) (b/c)^{n-k} sum_l (-1)^{m-l} binom(m-1,l-1) l^{n+m-1-k} / binom(n + (b/c) l, n-k+1)
    // and for k = 0:  1/(n! (m-1)!) (b/c)^n sum_l (-1)^{m-l} binom(m-1,l-1) l^{n+m-1} / binom(n + (b/c) l, n)
    const unsigned lower = k == 0 ? n : n - k + 1;
    Rational pre = k == 0 ? ratio(Integer(1), factorial(n) * factorial(m - 1))
                          : ratio(Integer(k), factorial(n - k + 1) * factorial(m - 1));
    pre *= pow_int(bc, k == 0 ? n : n - k);
    const T prefactor = from_rational<T>(pre);
    for (unsigned l = 1; l <= m; ++l) {
      Integer pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), l, n + m - 1 - k);
      T t = detail::integer_t<T>(binomial(m - 1, l - 1) * pw) / detail::binom_t<T>(bc * l + n, lower);
      terms.push_back(detail::signed_one<T>((m - l) % 2) * prefactor * t);
    }
  } else {
    // k / ((n-k)! m!) (c/b)^m sum_{l=0}^{n} (-1)^{n-l} binom(n-k, l-k) l^{m+n-1-k} / binom(m + c l / b, m)
    const Rational cb = 1 / bc;
    Rational pre = ratio(Integer(k), factorial(n - k) * factorial(m));
    pre *= pow_int(cb, m);
    const T prefactor = from_rational<T>(pre);
    for (unsigned l = k; l <= n; ++l) {
      Integer pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), l, n + m - 1 - k);
      T t = detail::integer_t<T>(binomial(n - k, l - k) * pw) / detail::binom_t<T>(cb * l + m, m);
      terms.push_back(detail::signed_one<T>((n - l) % 2) * prefactor * t);
    }
  }
  return sum_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// r colors.

// How the denominator of the model-II r-color formula is read. The printed
// formula has sum_g (prod_j alpha_{k_j}) / alpha_{l_g}; the form that agrees
// with the recurrence (and reduces to the two-color result) has
// sum_g prod_{j != g} alpha_{l_j}.
enum class MultiReading { corrected, literal };

inline std::string_view to_string(MultiReading r) { return r == MultiReading::corrected ? "corrected" : "literal"; }

template <Field T>
class MultiForms {
 public:
  MultiForms(const std::vector<WeightSequence>& seqs, std::vector<unsigned> upper) : upper_(std::move(upper)) {
    if (seqs.size() < 2 || seqs.size() != upper_.size()) throw DomainError("r-color forms need r >= 2 sequences and counts");
    for (std::size_t c = 0; c < seqs.size(); ++c) {
      require_distinct(seqs[c], upper_[c], ("A^[" + std::to_string(c + 1) + "]").c_str());
    }
    const WeightTable<T> w(seqs, upper_);
    for (std::size_t c = 0; c < seqs.size(); ++c) {
      alpha_.push_back(w.color(c));
      const auto& v = alpha_.back();
      detail::Table2<T> d(v.size(), std::vector<T>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) d[i][j] = v[i] - v[j];
      }
      diff_.push_back(std::move(d));
    }
  }

  std::size_t colors() const { return alpha_.size(); }

  // Model I: sum over l_j = k_j..n_j of
  //   prod_f alpha^[r]_f prod_j prod_{h=k_j+1}^{n_j} alpha^[j]_h
  //   / ( prod_f (alpha^[r]_f + sum_j alpha^[j]_{l_j}) prod_j prod_{h != l_j} (alpha^[j]_h - alpha^[j]_{l_j}) )
  T pmf_I(const std::vector<unsigned>& n, const std::vector<unsigned>& k) const {
    check(n, k, false);
    const std::size_t r = colors();
    detail::Product<T> pre;
    for (unsigned f = 1; f <= n[r - 1]; ++f) pre.mul(alpha_[r - 1][f]);
    for (std::size_t j = 0; j + 1 < r; ++j) {
      for (unsigned h = k[j] + 1; h <= n[j]; ++h) pre.mul(alpha_[j][h]);
    }
    const T prefactor = pre.get();
    std::vector<T> terms;
    IndexBox(k, head(n)).for_each([&](const std::vector<unsigned>& l) {
      detail::Product<T> p;
      p.mul(prefactor);
      T s = from_int<T>(0);
      for (std::size_t j = 0; j + 1 < r; ++j) s += alpha_[j][l[j]];
      for (unsigned f = 1; f <= n[r - 1]; ++f) p.div(T(alpha_[r - 1][f] + s));
      for (std::size_t j = 0; j + 1 < r; ++j) {
        for (unsigned h = k[j]; h <= n[j]; ++h) {
          if (h != l[j]) p.div(diff_[j][h][l[j]]);
        }
      }
      terms.push_back(p.get());
    });
    return sum_terms(std::move(terms));
  }

  // Model II for k_j >= 1: sum over l_j = k_j..n_j of
  //   prod_j alpha_{k_j} alpha_{l_j}^{n_j - k_j + n_r - 1}
  //   / ( prod_f (P + alpha^[r]_f S) prod_j prod_{h != l_j} (alpha_{l_j} - alpha_h) )
  // with P = prod_j alpha_{l_j}; S = sum_g prod_{j != g} alpha_{l_j} (corrected)
  // or S = sum_g prod_j alpha_{k_j} / alpha_{l_g} (literal).
  T pmf_II(const std::vector<unsigned>& n, const std::vector<unsigned>& k,
           MultiReading reading = MultiReading::corrected) const {
    check(n, k, true);
    const std::size_t r = colors();
    const unsigned nr = n[r - 1];
    T kprod = from_int<T>(1);
    for (std::size_t j = 0; j + 1 < r; ++j) kprod *= alpha_[j][k[j]];
    std::vector<T> terms;
    IndexBox(k, head(n)).for_each([&](const std::vector<unsigned>& l) {
      detail::Product<T> p;
      T lprod = from_int<T>(1);
      for (std::size_t j = 0; j + 1 < r; ++j) {
        p.mul(alpha_[j][k[j]]);
        p.mul(pow_int(alpha_[j][l[j]], n[j] - k[j] + nr - 1));
        lprod *= alpha_[j][l[j]];
      }
      T s = from_int<T>(0);
      for (std::size_t g = 0; g + 1 < r; ++g) {
        s += (reading == MultiReading::corrected ? lprod : kprod) / alpha_[g][l[g]];
      }
      for (unsigned f = 1; f <= nr; ++f) p.div(T(lprod + alpha_[r - 1][f] * s));
      for (std::size_t j = 0; j + 1 < r; ++j) {
        for (unsigned h = k[j]; h <= n[j]; ++h) {
          if (h != l[j]) p.div(diff_[j][l[j]][h]);
        }
      }
      terms.push_back(p.get());
    });
    return sum_terms(std::move(terms));
  }

 private:
  static std::vector<unsigned> head(const std::vector<unsigned>& n) { return {n.begin(), n.end() - 1}; }

  void check(const std::vector<unsigned>& n, const std::vector<unsigned>& k, bool positive_k) const {
    const std::size_t r = colors();
    if (n.size() != r || k.size() + 1 != r) throw DomainError("count or outcome vector has the wrong length");
    for (std::size_t j = 0; j < r; ++j) {
      if (n[j] < 1) throw DomainError("closed forms need every n_j >= 1");
      if (n[j] > upper_[j]) throw OutOfRange("instance exceeds the tabulated weight range");
    }
    for (std::size_t j = 0; j + 1 < r; ++j) {
      if (k[j] > n[j]) throw OutOfRange("k_" + std::to_string(j + 1) + " exceeds n_" + std::to_string(j + 1));
      if (positive_k && k[j] == 0) {
        throw ClosedFormUnavailable("no closed form for model II with some k_j = 0; use the recurrence oracle");
      }
    }
  }

  std::vector<unsigned> upper_;
  std::vector<std::vector<T>> alpha_;
  std::vector<detail::Table2<T>> diff_;
};

template <Field T>
T pmf_multi_I(const std::vector<WeightSequence>& seqs, const std::vector<unsigned>& n, const std::vector<unsigned>& k) {
  return MultiForms<T>(seqs, n).pmf_I(n, k);
}

template <Field T>
T pmf_multi_II(const std::vector<WeightSequence>& seqs, const std::vector<unsigned>& n, const std::vector<unsigned>& k,
               MultiReading reading = MultiReading::corrected) {
  return MultiForms<T>(seqs, n).pmf_II(n, k, reading);
}

// Full r-color distribution from the closed forms. For model II the entries
// with some k_j = 0 have no closed form and are taken from the recurrence;
// `closed_form[i]` records which entries came from a formula.
template <Field T>
struct MultiPmf {
  ExactDistribution<T> distribution;
  std::vector<bool> closed_form;
};

template <Field T>
MultiPmf<T> pmf_multi_distribution(const UrnSpec& spec, MultiReading reading = MultiReading::corrected) {
  spec.validate();
  const MultiForms<T> forms(spec.weights, spec.counts);
  const IndexBox grid(outcome(spec.counts));
  std::optional<ExactDistribution<T>> oracle;
  std::vector<T> probs;
  std::vector<bool> closed;
  grid.for_each([&](const std::vector<unsigned>& k) {
    if (spec.model == Model::I) {
      probs.push_back(forms.pmf_I(spec.counts, k));
      closed.push_back(true);
      return;
    }
    if (std::find(k.begin(), k.end(), 0u) == k.end()) {
      probs.push_back(forms.pmf_II(spec.counts, k, reading));
      closed.push_back(true);
      return;
    }
    if (!oracle) oracle = pmf_recurrence_multi<T>(spec);
    probs.push_back(oracle->at(k));
    closed.push_back(false);
  });
  return {ExactDistribution<T>(outcome(spec.counts), std::move(probs)), std::move(closed)};
}

// r-color sampling Polya urn with weights a_j * n:
//   sum_{l_j = k_j..n_j} prod_j binom(n_j,l_j) binom(l_j,k_j) (-1)^{l_j-k_j}
//   / binom(n_r + sum_f a_f l_f / a_r, n_r)
template <Field T>
T pmf_multi_polya(const std::vector<unsigned long>& a, const std::vector<unsigned>& n, const std::vector<unsigned>& k) {
  const std::size_t r = a.size();
  if (r < 2 || n.size() != r || k.size() + 1 != r) throw DomainError("need r >= 2 parameters, r counts and r-1 outcomes");
  for (unsigned long x : a) detail::require_positive_params({x});
  for (std::size_t j = 0; j + 1 < r; ++j) {
    if (k[j] > n[j]) throw OutOfRange("k_" + std::to_string(j + 1) + " exceeds n_" + std::to_string(j + 1));
  }
  std::vector<T> terms;
  IndexBox(k, std::vector<unsigned>(n.begin(), n.end() - 1)).for_each([&](const std::vector<unsigned>& l) {
    Integer num = 1;
    bool negative = false;
    Rational shift = 0;
    for (std::size_t j = 0; j + 1 < r; ++j) {
      num *= binomial(n[j], l[j]) * binomial(l[j], k[j]);
      negative ^= ((l[j] - k[j]) % 2) != 0;
      shift += ratio(static_cast<long>(a[j] * l[j]), static_cast<long>(a[r - 1]));
    }
    T t = detail::integer_t<T>(num) / detail::binom_t<T>(shift + n[r - 1], n[r - 1]);
    terms.push_back(detail::signed_one<T>(negative) * t);
  });
  return sum_terms(std::move(terms));
}

// ---------------------------------------------------------------------------

// Both sides of 1/prod_j (a_j + x) = sum_j 1/((a_j + x) prod_{i != j} (a_i - a_j)).
template <Field T>
std::pair<T, T> partial_fraction_check(const std::vector<T>& nodes, const T& x) {
  if (nodes.empty()) throw DomainError("partial_fraction_check needs at least one node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (is_zero(T(nodes[i] + x))) throw DomainError("x coincides with a pole");
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j]) throw DistinctnessViolation("partial fractions need pairwise distinct nodes");
    }
  }
  T lhs = from_int<T>(1);
  for (const T& a : nodes) lhs /= a + x;
  std::vector<T> terms;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    T t = from_int<T>(1) / (nodes[j] + x);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i != j) t /= nodes[i] - nodes[j];
    }
    terms.push_back(t);
  }
  return {lhs, sum_terms(std::move(terms))};
}

// ---------------------------------------------------------------------------
// Formula-discrepancy diagnostics: each printed formula variant is compared
// exactly against the recurrence on a grid of instances.

struct FormulaFinding {
  std::string formula;  // e.g. "okcorral-polya/first"
  std::string reading;  // e.g. "as printed"
  bool matches = true;
  unsigned instances = 0;
  std::string first_mismatch;  // empty when matches
};

// OK Corral Polya forms against the model-II recurrence with weights c*n, b*m.
inline std::vector<FormulaFinding> okcorral_form_findings(unsigned long b, unsigned long c, unsigned max_n, unsigned max_m) {
  std::vector<FormulaFinding> out{{"okcorral-polya/first", "k >= 1, sum over l = 1..m", true, 0, {}},
                                  {"okcorral-polya/second", "k >= 1, sum over l = 0..n", true, 0, {}},
                                  {"okcorral-polya/zero", "k = 0", true, 0, {}}};
  const RecurrenceTable<Rational> table(Model::II, WeightSequence::linear(Rational(static_cast<unsigned long>(c))),
                                        WeightSequence::linear(Rational(static_cast<unsigned long>(b))), max_n, max_m);
  for (unsigned n = 1; n <= max_n; ++n) {
    for (unsigned m = 1; m <= max_m; ++m) {
      const auto truth = table.distribution(n, m);
      for (unsigned k = 0; k <= n; ++k) {
        auto note = [&](FormulaFinding& f, const Rational& got) {
          ++f.instances;
          if (got != truth.at(k) && f.matches) {
            f.matches = false;
            f.first_mismatch = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " k=" + std::to_string(k) +
                               ": formula " + to_string(got) + ", recurrence " + to_string(truth.at(k));
          }
        };
        if (k == 0) {
          note(out[2], pmf_okcorral_polya<Rational>(b, c, n, m, 0, PolyaForm::first));
        } else {
          note(out[0], pmf_okcorral_polya<Rational>(b, c, n, m, k, PolyaForm::first));
          note(out[1], pmf_okcorral_polya<Rational>(b, c, n, m, k, PolyaForm::second));
        }
      }
    }
  }
  return out;
}

// Both readings of the model-II r-color formula against the recurrence.
inline std::vector<FormulaFinding> multi_II_reading_findings(const std::vector<WeightSequence>& seqs,
                                                             const std::vector<unsigned>& n) {
  std::vector<FormulaFinding> out{{"multi-II", "corrected", true, 0, {}}, {"multi-II", "literal", true, 0, {}}};
  const UrnSpec spec = UrnSpec::multi(Model::II, seqs, n);
  const auto truth = pmf_recurrence_multi<Rational>(spec);
  const MultiForms<Rational> forms(seqs, n);
  std::vector<unsigned> ones(n.size() - 1, 1);
  IndexBox(ones, outcome(n)).for_each([&](const std::vector<unsigned>& k) {
    for (auto* f : {&out[0], &out[1]}) {
      const auto reading = f == &out[0] ? MultiReading::corrected : MultiReading::literal;
      const Rational got = forms.pmf_II(n, k, reading);
      ++f->instances;
      if (got != truth.at(k) && f->matches) {
        f->matches = false;
        std::string where;
        for (unsigned x : k) where += (where.empty() ? "" : ",") + std::to_string(x);
        f->first_mismatch = "k=(" + where + "): formula " + to_string(got) + ", recurrence " + to_string(truth.at(k));
      }
    }
  });
  return out;
}

}  // namespace urnlab
