#pragma once

// The absorbing Markov chain shared by both urn models: states are count
// vectors (n_1, ..., n_r); the process stops once color r is exhausted, or
// once colors 1..r-1 are all exhausted.

#include <vector>

#include "urnlab/weights.hpp"

namespace urnlab {

// Weight values w_j for j = 0..upper of every color, evaluated once.
template <Field T>
class WeightTable {
 public:
  WeightTable() = default;

  WeightTable(const std::vector<WeightSequence>& seqs, const std::vector<unsigned>& upper) {
    if (seqs.size() != upper.size()) throw DomainError("weight table: color count mismatch");
    values_.resize(seqs.size());
    for (std::size_t c = 0; c < seqs.size(); ++c) {
      seqs[c].require_range(upper[c]);
      values_[c].reserve(upper[c] + 1);
      for (unsigned j = 0; j <= upper[c]; ++j) values_[c].push_back(seqs[c].template eval<T>(j));
    }
  }

  explicit WeightTable(const UrnSpec& spec) : WeightTable(spec.weights, spec.counts) {}

  std::size_t colors() const { return values_.size(); }
  const T& operator()(std::size_t color, unsigned j) const { return values_[color].at(j); }
  const std::vector<T>& color(std::size_t c) const { return values_[c]; }

 private:
  std::vector<std::vector<T>> values_;
};

inline bool is_absorbing(const std::vector<unsigned>& state) {
  if (state.back() == 0) return true;
  for (std::size_t j = 0; j + 1 < state.size(); ++j) {
    if (state[j] != 0) return false;
  }
  return true;
}

// Surviving counts of colors 1..r-1 at an absorbing state.
inline std::vector<unsigned> outcome(const std::vector<unsigned>& state) {
  return std::vector<unsigned>(state.begin(), state.end() - 1);
}

// Unnormalized drawing weight of each color at a non-absorbing state.
//   model I:  alpha^[l]_{n_l}  (zero for an empty color)
//   model II: product of alpha^[j]_{n_j} over the other non-empty colors,
//             zero for an empty color
template <Field T>
std::vector<T> draw_weights(Model model, const WeightTable<T>& w, const std::vector<unsigned>& state) {
  const std::size_t r = state.size();
  std::vector<T> out(r, from_int<T>(0));
  if (model == Model::I) {
    for (std::size_t l = 0; l < r; ++l) out[l] = w(l, state[l]);
    return out;
  }
  for (std::size_t l = 0; l < r; ++l) {
    if (state[l] == 0) continue;
    T p = from_int<T>(1);
    for (std::size_t j = 0; j < r; ++j) {
      if (j != l && state[j] != 0) p *= w(j, state[j]);
    }
    out[l] = p;
  }
  return out;
}

template <Field T>
std::vector<T> draw_probabilities(Model model, const WeightTable<T>& w, const std::vector<unsigned>& state) {
  std::vector<T> p = draw_weights(model, w, state);
  T total = from_int<T>(0);
  for (const T& x : p) total += x;
  for (T& x : p) x /= total;
  return p;
}

}  // namespace urnlab
