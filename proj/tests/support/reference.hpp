#pragma once

// Test-side reference: a memoized first-step recursion over urn states,
// written directly against GMP with its own weight functions. It shares no
// code with the library's oracle.

#include <gmpxx.h>

#include <functional>
#include <map>
#include <vector>

namespace ref {

using Q = mpq_class;
using Weight = std::function<Q(unsigned)>;
using State = std::vector<unsigned>;
using Law = std::map<State, Q>;  // outcome (colors 1..r-1) -> probability

inline Weight linear(long a) { return [a](unsigned j) { return Q(a * static_cast<long>(j)); }; }
inline Weight square() { return [](unsigned j) { return Q(static_cast<long>(j) * j); }; }
inline Weight triangular() {
  return [](unsigned j) {
    Q t(static_cast<long>(j) * (j + 1), 2);
    t.canonicalize();
    return t;
  };
}
inline Weight shifted_square() {
  return [](unsigned j) {
    Q h(2 * static_cast<long>(j) - 1, 2);
    h.canonicalize();
    return j == 0 ? Q(0) : Q(h * h);
  };
}
inline Weight cube(long c) { return [c](unsigned j) { return Q(c * static_cast<long>(j) * j * j); }; }
inline Weight reciprocal(Weight w) {
  return [w](unsigned j) { return j == 0 ? Q(0) : Q(1 / w(j)); };
}

class Urn {
 public:
  Urn(int model, std::vector<Weight> w) : model_(model), w_(std::move(w)) {}

  const Law& law(const State& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    Law out;
    const std::size_t r = s.size();
    bool others_empty = true;
    for (std::size_t j = 0; j + 1 < r; ++j) others_empty = others_empty && s[j] == 0;
    if (s.back() == 0 || others_empty) {
      out[State(s.begin(), s.end() - 1)] = 1;
      return memo_[s] = out;
    }
    std::vector<Q> p(r, 0);
    Q total = 0;
    for (std::size_t l = 0; l < r; ++l) {
      if (s[l] == 0) continue;
      if (model_ == 1) {
        p[l] = w_[l](s[l]);
      } else {
        p[l] = 1;
        for (std::size_t j = 0; j < r; ++j) {
          if (j != l && s[j] != 0) p[l] *= w_[j](s[j]);
        }
      }
      total += p[l];
    }
    for (std::size_t l = 0; l < r; ++l) {
      if (p[l] == 0) continue;
      State child = s;
      --child[l];
      const Law sub = law(child);
      for (const auto& [k, q] : sub) out[k] += p[l] / total * q;
    }
    return memo_[s] = out;
  }

  Q prob(const State& s, const State& k) {
    const Law& l = law(s);
    auto it = l.find(k);
    return it == l.end() ? Q(0) : it->second;
  }

 private:
  int model_;
  std::vector<Weight> w_;
  std::map<State, Law> memo_;
};

inline mpz_class binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace ref
