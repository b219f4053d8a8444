#pragma once

// Monte Carlo simulation of both urn models and of the exponential
// representations of the limit variables.
//
// Trials are split into fixed-size chunks; chunk c draws from its own
// mt19937_64 seeded by (seed, c). Counts are summed per chunk, so the totals
// do not depend on how many workers share the chunks.

#include <atomic>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "urnlab/distribution.hpp"
#include "urnlab/limits.hpp"
#include "urnlab/process.hpp"

namespace urnlab {

using Rng = std::mt19937_64;
using u128 = unsigned __int128;

inline constexpr std::uint64_t kChunkTrials = 1u << 14;

// Generator for chunk c of a run with the given seed.
inline Rng chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return Rng(seq);
}

namespace detail {

inline u128 draw_u128(Rng& rng) { return (static_cast<u128>(rng()) << 64) | rng(); }

// floor(p * 2^128), saturated at 2^128 - 1.
inline u128 fixed_point(const Rational& p) {
  if (p <= 0) return 0;
  if (p >= 1) return ~u128(0);
  Integer x = p.get_num();
  x <<= 128;
  x /= p.get_den();
  const Integer hi = x >> 64;
  const Integer lo = x - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
}

inline u128 fixed_point(const BigFloat& p) {
  if (p <= 0) return 0;
  if (p >= 1) return ~u128(0);
  BigFloat scaled = p;
  mpfr_mul_2ui(scaled.backend().data(), scaled.backend().data(), 128, MPFR_RNDN);
  Integer x;
  mpfr_get_z(x.get_mpz_t(), scaled.backend().data(), MPFR_RNDD);
  return fixed_point(Rational(x, Integer(1) << 128));
}

}  // namespace detail

// Per-state cumulative drawing thresholds, computed once from exact (or
// big-float) probabilities.
class TransitionTable {
 public:
  explicit TransitionTable(const UrnSpec& spec) : model_(spec.model), counts_(spec.counts), states_(spec.counts) {
    spec.validate();
    if (spec.is_exact()) build<Rational>(spec); else build<BigFloat>(spec);
  }

  const std::vector<unsigned>& counts() const { return counts_; }
  const IndexBox& states() const { return states_; }

  // One run from the initial state; returns the terminal outcome's flat
  // index in the outcome box.
  std::size_t run(Rng& rng, const IndexBox& outcomes) const {
    std::vector<unsigned> c = counts_;
    const std::size_t r = c.size();
    std::size_t f = states_.flat(c);
    while (!is_absorbing(c)) {
      const u128 u = detail::draw_u128(rng);
      const u128* t = &cumulative_[f * r];
      std::size_t l = 0;
      while (l + 1 < r && u >= t[l]) ++l;
      --c[l];
      f -= stride_[l];
    }
    if (c.back() != 0) return 0;
    std::size_t k = 0;
    for (std::size_t j = 0; j + 1 < r; ++j) k = k * (outcomes.upper()[j] + 1) + c[j];
    return k;
  }

 private:
  template <Field T>
  void build(const UrnSpec& spec) {
    const std::size_t r = counts_.size();
    const WeightTable<T> w(spec);
    cumulative_.assign(states_.size() * r, 0);
    states_.for_each([&](const std::vector<unsigned>& c) {
      if (is_absorbing(c)) return;
      const std::vector<T> p = draw_probabilities(model_, w, c);
      T acc = from_int<T>(0);
      const std::size_t f = states_.flat(c);
      for (std::size_t l = 0; l < r; ++l) {
        acc += p[l];
        // An empty color gets a zero-width interval.
        cumulative_[f * r + l] = c[l] == 0 && l > 0 ? cumulative_[f * r + l - 1] : detail::fixed_point(acc);
      }
    });
    stride_.assign(r, 1);
    for (std::size_t i = r - 1; i-- > 0;) stride_[i] = stride_[i + 1] * (counts_[i + 1] + 1);
  }

  Model model_;
  std::vector<unsigned> counts_;
  IndexBox states_;
  std::vector<std::size_t> stride_;
  std::vector<u128> cumulative_;
};

// One absorption outcome (surviving counts of colors 1..r-1).
inline std::vector<unsigned> simulate_once(const UrnSpec& spec, Rng& rng) {
  spec.validate();
  const TransitionTable table(spec);
  const IndexBox outcomes(outcome(spec.counts));
  return outcomes.unflat(table.run(rng, outcomes));
}

struct SimConfig {
  UrnSpec spec;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct ChiSquare {
  double statistic = 0;
  unsigned dof = 0;
  double p_value = 1;
  unsigned bins = 0;
};

struct EmpiricalPmf {
  std::vector<unsigned> extents;
  std::vector<std::uint64_t> counts;
  std::uint64_t trials = 0;

  IndexBox box() const { return IndexBox(extents); }

  // Sample mean of f over outcomes.
  double expect(const std::function<double(const std::vector<unsigned>&)>& f) const {
    const IndexBox b = box();
    double s = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) s += static_cast<double>(counts[i]) * f(b.unflat(i));
    return s / static_cast<double>(trials);
  }
};

inline EmpiricalPmf empirical_pmf(const SimConfig& config) {
  if (config.trials == 0) throw DomainError("trials must be at least 1");
  if (config.workers == 0) throw DomainError("worker count must be at least 1");
  const TransitionTable table(config.spec);
  const IndexBox outcomes(outcome(config.spec.counts));
  const std::uint64_t chunks = (config.trials + kChunkTrials - 1) / kChunkTrials;

  std::atomic<std::uint64_t> next{0};
  std::vector<std::vector<std::uint64_t>> partial(config.workers, std::vector<std::uint64_t>(outcomes.size(), 0));
  auto work = [&](unsigned id) {
    auto& local = partial[id];
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      Rng rng = chunk_rng(config.seed, c);
      const std::uint64_t n = std::min(kChunkTrials, config.trials - c * kChunkTrials);
      for (std::uint64_t t = 0; t < n; ++t) ++local[table.run(rng, outcomes)];
    }
  };
  if (config.workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < config.workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }

  EmpiricalPmf out{outcome(config.spec.counts), std::vector<std::uint64_t>(outcomes.size(), 0), config.trials};
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < p.size(); ++i) out.counts[i] += p[i];
  }
  return out;
}

// Pearson chi-square against an exact pmf. Cells are pooled in flat order
// until each bin expects at least 5 observations; a short final remainder
// joins the previous bin. Observations in a zero-probability cell, or a
// grid mismatch, raise SupportMismatch.
template <Field T>
ChiSquare chi_square(const EmpiricalPmf& observed, const ExactDistribution<T>& exact) {
  if (observed.extents != exact.extents()) throw SupportMismatch("empirical and exact distributions have different support grids");
  const double n = static_cast<double>(observed.trials);
  std::vector<double> obs, expd;
  double o = 0, e = 0;
  for (std::size_t i = 0; i < observed.counts.size(); ++i) {
    const double p = to_double(exact.probabilities()[i]);
    if (p <= 0 && observed.counts[i] > 0) throw SupportMismatch("outcome observed with zero exact probability");
    o += static_cast<double>(observed.counts[i]);
    e += p * n;
    if (e >= 5) {
      obs.push_back(o);
      expd.push_back(e);
      o = e = 0;
    }
  }
  if (e > 0 || o > 0) {
    if (expd.empty()) {
      obs.push_back(o);
      expd.push_back(e);
    } else {
      obs.back() += o;
      expd.back() += e;
    }
  }
  ChiSquare out;
  out.bins = static_cast<unsigned>(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double d = obs[i] - expd[i];
    out.statistic += d * d / expd[i];
  }
  if (out.bins < 2) return out;
  out.dof = out.bins - 1;
  out.p_value = boost::math::gamma_q(out.dof / 2.0, out.statistic / 2.0);
  return out;
}

template <Field T>
std::pair<EmpiricalPmf, ChiSquare> empirical_pmf(const SimConfig& config, const ExactDistribution<T>& exact) {
  EmpiricalPmf e = empirical_pmf(config);
  const ChiSquare c = chi_square(e, exact);
  return {std::move(e), c};
}

// Y_m = exp(-sum_{l<=m} eps_l / l^2) with unit exponentials eps_l.
inline double sample_ym(unsigned m, Rng& rng) {
  if (m < 1) throw DomainError("sample_ym needs m >= 1");
  std::exponential_distribution<double> eps(1.0);
  double s = 0;
  for (unsigned l = 1; l <= m; ++l) s += eps(rng) / (static_cast<double>(l) * l);
  return std::exp(-s);
}

// W = exp(-sum_l eps_l / beta_l), truncated after M terms. The truncated
// variable dominates W, so its s-th moment exceeds E(W^s) by at most
// s * sum_{l>M} 1/beta_l (see w_truncation_bias).
class WSampler {
 public:
  WSampler(LimitFamily family, unsigned long big_m) {
    if (big_m < 1) throw DomainError("sample_w needs M >= 1");
    const WeightSequence beta = family.black();
    inverse_.reserve(big_m);
    for (unsigned long l = 1; l <= big_m; ++l) inverse_.push_back(1 / beta.eval<double>(l));
  }

  double operator()(Rng& rng) const {
    std::exponential_distribution<double> eps(1.0);
    double s = 0;
    for (double b : inverse_) s += eps(rng) * b;
    return std::exp(-s);
  }

 private:
  std::vector<double> inverse_;
};

inline double sample_w(LimitFamily family, Rng& rng, unsigned long big_m) { return WSampler(family, big_m)(rng); }

// Upper bound on E(W_M^s) - E(W^s), from 1 - e^{-x} <= x and
// sum_{l>M} 1/beta_l < 1/M (square), = 2/(M+1) (triangular),
// < 1/(M - 1/2) (shifted-square).
inline double w_truncation_bias(LimitFamily family, unsigned long big_m, unsigned s = 1) {
  const double m = static_cast<double>(big_m);
  double tail = 0;
  switch (family.tag) {
    case LimitTag::square: tail = 1 / m; break;
    case LimitTag::triangular: tail = 2 / (m + 1); break;
    case LimitTag::shifted_square: tail = 1 / (m - 0.5); break;
  }
  return s * tail;
}

struct SampleSummary {
  double mean = 0;
  double std_dev = 0;
  std::uint64_t draws = 0;

  double standard_error() const { return std_dev / std::sqrt(static_cast<double>(draws)); }
};

// Chunked, worker-count independent sample mean of draw(rng).
template <class Draw>
SampleSummary sample_mean(std::uint64_t draws, std::uint64_t seed, unsigned workers, Draw draw) {
  if (draws < 2) throw DomainError("at least two draws are needed");
  if (workers == 0) throw DomainError("worker count must be at least 1");
  const std::uint64_t chunks = (draws + kChunkTrials - 1) / kChunkTrials;
  std::vector<double> sum(chunks, 0), sum2(chunks, 0);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      Rng rng = chunk_rng(seed, c);
      const std::uint64_t n = std::min(kChunkTrials, draws - c * kChunkTrials);
      for (std::uint64_t t = 0; t < n; ++t) {
        const double x = draw(rng);
        sum[c] += x;
        sum2[c] += x * x;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  double s = 0, s2 = 0;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    s += sum[c];
    s2 += sum2[c];
  }
  const double n = static_cast<double>(draws);
  const double mean = s / n;
  const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(var), draws};
}

}  // namespace urnlab
