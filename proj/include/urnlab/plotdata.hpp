#pragma once

// Plot data as two-column CSV (x, value), LF line endings.

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "urnlab/distribution.hpp"
#include "urnlab/scalar.hpp"

namespace urnlab {

struct PlotRow {
  std::string x;
  std::string value;
};

// lo, lo + step, ... up to and including hi, exactly. Empty when lo > hi.
inline std::vector<Rational> rational_grid(const Rational& lo, const Rational& hi, const Rational& step) {
  if (step <= 0) throw DomainError("grid step must be positive");
  std::vector<Rational> out;
  for (Rational x = lo; x <= hi; x += step) out.push_back(x);
  return out;
}

// Evaluates f at each grid point; x is rendered with `decimals` digits.
inline std::vector<PlotRow> plot_rows(const std::vector<Rational>& grid, unsigned decimals,
                                      const std::function<std::string(const Rational&)>& f) {
  std::vector<PlotRow> rows;
  rows.reserve(grid.size());
  for (const Rational& x : grid) rows.push_back({to_decimal(x, decimals), f(x)});
  return rows;
}

// One row per support point of a univariate distribution.
template <Field T>
std::vector<PlotRow> plot_rows(const ExactDistribution<T>& d, const std::function<std::string(const T&)>& render) {
  if (d.dims() != 1) throw DomainError("plot data needs a univariate distribution");
  std::vector<PlotRow> rows;
  for (std::size_t k = 0; k < d.size(); ++k) rows.push_back({std::to_string(k), render(d.probabilities()[k])});
  return rows;
}

inline void write_plot_csv(std::ostream& out, const std::vector<PlotRow>& rows) {
  out << "x,value\n";
  for (const PlotRow& r : rows) out << r.x << ',' << r.value << '\n';
}

}  // namespace urnlab
