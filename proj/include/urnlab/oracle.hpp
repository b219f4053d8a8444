#pragma once

// Ground-truth absorption distributions computed from the recurrence
// P_n(k) = sum_l p_l(n) P_{n - e_l}(k) and its boundary conditions, plus
// brute-force path enumeration for tiny urns. Nothing here divides by a
// difference of weights, so no distinctness is required.

#include <numeric>
#include <vector>

#include "urnlab/distribution.hpp"
#include "urnlab/process.hpp"

namespace urnlab {

namespace detail {

inline void require_two_color(const UrnSpec& spec) {
  spec.validate();
  if (spec.colors() != 2) throw DomainError("two-color operation called with " + std::to_string(spec.colors()) + " colors");
}

template <Field T>
T white_probability(Model model, const T& alpha, const T& beta) {
  return (model == Model::I ? alpha : beta) / (alpha + beta);
}

}  // namespace detail

// Two colors, filled along anti-diagonals i + j = d; only the previous
// diagonal is kept. Node (i, j) holds P{X_{i,j} = k} for k = 0..i.
template <Field T>
ExactDistribution<T> pmf_recurrence(const UrnSpec& spec) {
  detail::require_two_color(spec);
  const unsigned n = spec.counts[0];
  const unsigned m = spec.counts[1];
  const WeightTable<T> w(spec);
  std::vector<std::vector<T>> prev, cur;
  unsigned prev_lo = 0;
  for (unsigned d = 0; d <= n + m; ++d) {
    const unsigned lo = d > m ? d - m : 0;
    const unsigned hi = std::min(n, d);
    cur.assign(hi - lo + 1, {});
    for (unsigned i = lo; i <= hi; ++i) {
      const unsigned j = d - i;
      std::vector<T>& node = cur[i - lo];
      node.assign(i + 1, from_int<T>(0));
      if (j == 0) {
        node[i] = from_int<T>(1);
      } else if (i == 0) {
        node[0] = from_int<T>(1);
      } else {
        const T pw = detail::white_probability(spec.model, w(0, i), w(1, j));
        const T pb = from_int<T>(1) - pw;
        const auto& after_white = prev[i - 1 - prev_lo];
        const auto& after_black = prev[i - prev_lo];
        for (unsigned k = 0; k < i; ++k) node[k] = pw * after_white[k] + pb * after_black[k];
        node[i] = pb * after_black[i];
      }
    }
    prev.swap(cur);
    prev_lo = lo;
  }
  return ExactDistribution<T>::univariate(std::move(prev.back()));
}

// Full (N+1) x (M+1) lattice for one model and pair of sequences; every
// sub-instance (n <= N, m <= M) is available after one fill.
template <Field T>
class RecurrenceTable {
 public:
  RecurrenceTable(Model model, const WeightSequence& a, const WeightSequence& b, unsigned max_n, unsigned max_m)
      : max_n_(max_n), max_m_(max_m), nodes_((max_n + 1) * (max_m + 1)) {
    const WeightTable<T> w({a, b}, {max_n, max_m});
    for (unsigned i = 0; i <= max_n; ++i) {
      for (unsigned j = 0; j <= max_m; ++j) {
        std::vector<T>& node = nodes_[index(i, j)];
        node.assign(i + 1, from_int<T>(0));
        if (j == 0) {
          node[i] = from_int<T>(1);
        } else if (i == 0) {
          node[0] = from_int<T>(1);
        } else {
          const T pw = detail::white_probability(model, w(0, i), w(1, j));
          const T pb = from_int<T>(1) - pw;
          const auto& after_white = nodes_[index(i - 1, j)];
          const auto& after_black = nodes_[index(i, j - 1)];
          for (unsigned k = 0; k < i; ++k) node[k] = pw * after_white[k] + pb * after_black[k];
          node[i] = pb * after_black[i];
        }
      }
    }
  }

  ExactDistribution<T> distribution(unsigned n, unsigned m) const {
    if (n > max_n_ || m > max_m_) throw OutOfRange("recurrence table queried outside its lattice");
    return ExactDistribution<T>::univariate(nodes_[index(n, m)]);
  }

 private:
  std::size_t index(unsigned i, unsigned j) const { return static_cast<std::size_t>(i) * (max_m_ + 1) + j; }

  unsigned max_n_, max_m_;
  std::vector<std::vector<T>> nodes_;
};

namespace detail {

// Fills P_c for every state c in the box 0..upper, by increasing total ball
// count. With keep_all = false a layer is released once the next one is done.
template <Field T>
std::vector<std::vector<T>> fill_multi(Model model, const WeightTable<T>& w, const std::vector<unsigned>& upper,
                                       bool keep_all) {
  const std::size_t r = upper.size();
  const IndexBox states(upper);
  const unsigned total_max = std::accumulate(upper.begin(), upper.end(), 0u);
  std::vector<std::vector<std::size_t>> layers(total_max + 1);
  states.for_each([&](const std::vector<unsigned>& c) {
    layers[std::accumulate(c.begin(), c.end(), 0u)].push_back(states.flat(c));
  });

  std::vector<std::vector<T>> store(states.size());
  for (unsigned t = 0; t <= total_max; ++t) {
    for (std::size_t f : layers[t]) {
      const std::vector<unsigned> c = states.unflat(f);
      const IndexBox grid(outcome(c));
      std::vector<T>& node = store[f];
      node.assign(grid.size(), from_int<T>(0));
      if (is_absorbing(c)) {
        node[c.back() == 0 ? grid.flat(outcome(c)) : 0] = from_int<T>(1);
        continue;
      }
      const std::vector<T> p = draw_probabilities(model, w, c);
      for (std::size_t l = 0; l < r; ++l) {
        if (is_zero(p[l])) continue;
        std::vector<unsigned> child = c;
        --child[l];
        const std::vector<T>& src = store[states.flat(child)];
        const IndexBox child_grid(outcome(child));
        grid.for_each([&](const std::vector<unsigned>& k) {
          if (l + 1 < r && k[l] == c[l]) return;
          node[grid.flat(k)] += p[l] * src[child_grid.flat(k)];
        });
      }
    }
    if (!keep_all && t >= 1) {
      for (std::size_t f : layers[t - 1]) std::vector<T>().swap(store[f]);
    }
  }
  return store;
}

}  // namespace detail

// r colors, layer by layer over the total number of balls left.
template <Field T>
ExactDistribution<T> pmf_recurrence_multi(const UrnSpec& spec) {
  spec.validate();
  const WeightTable<T> w(spec);
  auto store = detail::fill_multi(spec.model, w, spec.counts, false);
  const IndexBox states(spec.counts);
  return ExactDistribution<T>(outcome(spec.counts), std::move(store[states.flat(spec.counts)]));
}

// Every sub-instance of the box 0..upper from one fill, for sweeps.
template <Field T>
class MultiRecurrenceTable {
 public:
  MultiRecurrenceTable(Model model, const std::vector<WeightSequence>& seqs, std::vector<unsigned> upper)
      : states_(upper) {
    const WeightTable<T> w(seqs, upper);
    store_ = detail::fill_multi(model, w, upper, true);
  }

  ExactDistribution<T> distribution(const std::vector<unsigned>& counts) const {
    if (!states_.contains(counts)) throw OutOfRange("recurrence table queried outside its box");
    return ExactDistribution<T>(outcome(counts), store_[states_.flat(counts)]);
  }

 private:
  IndexBox states_;
  std::vector<std::vector<T>> store_;
};

// Limits for brute-force enumeration.
inline constexpr unsigned kEnumerateMaxBalls = 16;
inline constexpr double kEnumerateMaxPaths = 2e6;

namespace detail {

template <Field T>
void enumerate_paths(Model model, const WeightTable<T>& w, std::vector<unsigned>& state, const T& weight,
                     const IndexBox& grid, std::vector<T>& out) {
  if (is_absorbing(state)) {
    out[state.back() == 0 ? grid.flat(outcome(state)) : 0] += weight;
    return;
  }
  const std::vector<T> p = draw_probabilities(model, w, state);
  for (std::size_t l = 0; l < state.size(); ++l) {
    if (is_zero(p[l])) continue;
    --state[l];
    enumerate_paths(model, w, state, T(weight * p[l]), grid, out);
    ++state[l];
  }
}

}  // namespace detail

// Sums the probabilities of all drawing sequences. Refuses urns with more
// than 16 balls, or whose path count could exceed two million.
template <Field T>
ExactDistribution<T> pmf_enumerate(const UrnSpec& spec) {
  spec.validate();
  const unsigned total = std::accumulate(spec.counts.begin(), spec.counts.end(), 0u);
  if (total > kEnumerateMaxBalls) {
    throw InstanceTooLarge("path enumeration is limited to " + std::to_string(kEnumerateMaxBalls) + " balls, urn has " +
                           std::to_string(total));
  }
  // Multinomial coefficient bounds the number of complete drawing orders.
  double paths = 1;
  unsigned seen = 0;
  for (unsigned c : spec.counts) {
    for (unsigned i = 1; i <= c; ++i) paths = paths * (++seen) / i;
  }
  if (paths > kEnumerateMaxPaths) throw InstanceTooLarge("path enumeration would visit too many paths");

  const WeightTable<T> w(spec);
  const IndexBox grid(outcome(spec.counts));
  std::vector<T> out(grid.size(), from_int<T>(0));
  std::vector<unsigned> state = spec.counts;
  detail::enumerate_paths(spec.model, w, state, from_int<T>(1), grid, out);
  return ExactDistribution<T>(outcome(spec.counts), std::move(out));
}

}  // namespace urnlab
