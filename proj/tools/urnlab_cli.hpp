#pragma once

// Command-line front end. run() is kept separate from main() so the tests
// can drive it with in-memory streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "urnlab/urnlab.hpp"

namespace urnlab::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kDiscrepancy = 3 };

inline constexpr const char* kPrecisionEnv = "URNLAB_PRECISION_BITS";

// A validation failure attributed to one flag.
struct FlagError : DomainError {
  FlagError(const std::string& flag, const std::string& what) : DomainError(flag + ": " + what) {}
};

template <class F>
auto for_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FlagError&) {
    throw;
  } catch (const DomainError& e) {
    throw FlagError(flag, e.what());
  }
}

// ---------------------------------------------------------------------------
// Options shared by the subcommands.

struct UrnArgs {
  std::string model = "I";
  std::string a, b;
  unsigned n = 0, m = 0;
  std::vector<std::string> weights;
  std::string counts;
  bool has_n = false, has_m = false;

  bool multi() const { return !weights.empty(); }
};

struct Args {
  // output
  std::string format = "json";
  int decimals = -1;
  std::string mode = "auto";
  unsigned precision = 0;
  // urn
  UrnArgs urn;
  std::string method;
  std::string rep = "auto";
  std::string reading = "corrected";
  // moments
  unsigned s = 1;
  std::string orders;
  std::string kind;
  unsigned long b = 1, c = 1;
  std::string exponent = "displayed";
  // limits
  unsigned k = 0;
  std::string q = "0.5";
  std::string family = "square";
  unsigned long terms = 1000;
  std::string tol;
  std::string grid_step, grid_from = "0", grid_to = "1";
  std::string function = "theta";
  // simulation
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string sampler = "urn";
  unsigned long tail = 1000;
  bool chi = false;
  std::string manifest;
};

inline std::vector<unsigned> parse_counts(const std::string& flag, const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument("bad");
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw FlagError(flag, "expected a comma-separated list of non-negative integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw FlagError(flag, "empty list");
  return out;
}

inline UrnSpec build_spec(const UrnArgs& u) {
  const Model model = for_flag("--model", [&] { return parse_model(u.model); });
  UrnSpec spec;
  spec.model = model;
  if (u.multi()) {
    if (u.weights.size() < 2) throw FlagError("--weights", "at least two weight sequences are required");
    for (std::size_t i = 0; i < u.weights.size(); ++i) {
      spec.weights.push_back(for_flag("--weights", [&] { return WeightSequence::parse(u.weights[i]); }));
    }
    if (u.counts.empty()) throw FlagError("--counts", "required with --weights");
    spec.counts = parse_counts("--counts", u.counts);
    if (spec.counts.size() != spec.weights.size()) {
      throw FlagError("--counts", "expected " + std::to_string(spec.weights.size()) + " counts, got " +
                                      std::to_string(spec.counts.size()));
    }
    for_flag("--weights", [&] { spec.validate(); });
    return spec;
  }
  if (u.a.empty()) throw FlagError("--A", "required (or use --weights/--counts)");
  if (u.b.empty()) throw FlagError("--B", "required (or use --weights/--counts)");
  if (!u.has_n) throw FlagError("--n", "required");
  if (!u.has_m) throw FlagError("--m", "required");
  spec.weights.push_back(for_flag("--A", [&] { return WeightSequence::parse(u.a); }));
  spec.weights.push_back(for_flag("--B", [&] { return WeightSequence::parse(u.b); }));
  spec.counts = {u.n, u.m};
  for_flag("--A", [&] { spec.weights[0].require_range(u.n); });
  for_flag("--B", [&] { spec.weights[1].require_range(u.m); });
  return spec;
}

// ---------------------------------------------------------------------------
// Output assembly.

struct Output {
  json body = json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int code = kOk;
};

class Context {
 public:
  Context(const Args& args, ScalarMode mode) : args_(args), mode_(mode) {}

  const Args& args() const { return args_; }
  ScalarMode mode() const { return mode_; }
  bool csv() const { return args_.format == "csv"; }

  template <Field T>
  std::string json_value(const T& x) const {
    return serialize(x);
  }

  // CSV cells follow --decimals when it is given.
  template <Field T>
  std::string cell(const T& x) const {
    if (args_.decimals >= 0) return to_decimal(x, static_cast<unsigned>(args_.decimals));
    return serialize(x);
  }

 private:
  const Args& args_;
  ScalarMode mode_;
};

inline ScalarMode parse_mode(const std::string& s) {
  if (s == "exact") return ScalarMode::exact_rational;
  if (s == "bigfloat") return ScalarMode::big_float;
  if (s == "float") return ScalarMode::machine_float;
  throw FlagError("--mode", "expected exact, bigfloat, float or auto, got '" + s + "'");
}

// Resolves --mode: `auto` picks exact arithmetic when the computation allows
// it, big floats otherwise.
inline ScalarMode resolve_mode(const std::string& flag_value, bool exact_possible) {
  if (flag_value == "auto") return exact_possible ? ScalarMode::exact_rational : ScalarMode::big_float;
  const ScalarMode m = parse_mode(flag_value);
  if (m == ScalarMode::exact_rational && !exact_possible) {
    throw FlagError("--mode", "exact mode is not available here (irrational weights or transcendental result)");
  }
  return m;
}

template <class F>
auto dispatch(ScalarMode mode, F&& f) {
  switch (mode) {
    case ScalarMode::exact_rational: return f.template operator()<Rational>();
    case ScalarMode::big_float: return f.template operator()<BigFloat>();
    case ScalarMode::machine_float: break;
  }
  return f.template operator()<double>();
}

template <Field T>
T abs_value(const T& x) {
  return x < from_int<T>(0) ? T(-x) : x;
}

// Largest |a_i - b_i| over two distributions on the same grid.
template <Field T>
T max_difference(const ExactDistribution<T>& a, const ExactDistribution<T>& b) {
  if (a.extents() != b.extents()) throw SupportMismatch("distributions have different support grids");
  T worst = from_int<T>(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const T d = abs_value(T(a.probabilities()[i] - b.probabilities()[i]));
    if (worst < d) worst = d;
  }
  return worst;
}

// Agreement threshold for non-exact modes.
template <Field T>
T agreement_tolerance(const std::string& tol_flag) {
  if (!tol_flag.empty()) return from_rational<T>(for_flag("--tol", [&] { return parse_rational(tol_flag); }));
  if constexpr (std::is_same_v<T, Rational>) {
    return Rational(0);
  } else if constexpr (std::is_same_v<T, BigFloat>) {
    return from_rational<T>(ratio(Integer(1), Integer(1) << (precision_bits() / 2)));
  } else {
    return 1e-9;
  }
}

template <Field T>
bool agrees(const T& a, const T& b, const T& tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    return a == b;
  } else {
    const T scale = std::max(from_int<T>(1), abs_value(a));
    return abs_value(T(a - b)) <= tol * scale;
  }
}

template <Field T>
void put_pmf(const Context& ctx, Output& o, const ExactDistribution<T>& d, const std::vector<bool>* closed = nullptr) {
  json list = json::array();
  const IndexBox box = d.box();
  const bool uni = d.dims() == 1;
  o.header.clear();
  if (uni) {
    o.header = {"k", "p"};
  } else {
    for (std::size_t j = 0; j < d.dims(); ++j) o.header.push_back("k" + std::to_string(j + 1));
    o.header.push_back("p");
  }
  if (closed) o.header.push_back("closed_form");
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto k = box.unflat(i);
    json e;
    if (uni) e["k"] = k[0]; else e["k"] = k;
    e["p"] = ctx.json_value(d.probabilities()[i]);
    if (closed) e["closed_form"] = static_cast<bool>((*closed)[i]);
    list.push_back(e);
    std::vector<std::string> row;
    for (unsigned x : k) row.push_back(std::to_string(x));
    row.push_back(ctx.cell(d.probabilities()[i]));
    if (closed) row.push_back((*closed)[i] ? "true" : "false");
    o.rows.push_back(std::move(row));
  }
  o.body["pmf"] = list;
  o.body["total"] = ctx.json_value(d.total());
}

// RFC 4180 quoting for cells with commas, quotes or line breaks.
inline std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline void put_scalar_rows(Output& o, const std::vector<std::pair<std::string, std::string>>& kv) {
  o.header = {"quantity", "value"};
  for (const auto& [k, v] : kv) o.rows.push_back({k, v});
}

// ---------------------------------------------------------------------------
// Subcommands.

inline Representation parse_rep(const std::string& s, Model model) {
  if (s == "auto") return model == Model::I ? Representation::beta_poles : Representation::alpha_poles;
  if (s == "alpha" || s == "alpha-poles") return Representation::alpha_poles;
  if (s == "beta" || s == "beta-poles") return Representation::beta_poles;
  throw FlagError("--rep", "expected alpha or beta, got '" + s + "'");
}

inline MultiReading parse_reading(const std::string& s) {
  if (s == "corrected") return MultiReading::corrected;
  if (s == "literal") return MultiReading::literal;
  throw FlagError("--reading", "expected corrected or literal, got '" + s + "'");
}

template <Field T>
ExactDistribution<T> oracle_distribution(const UrnSpec& spec, const std::string& method) {
  if (method == "enumerate") return pmf_enumerate<T>(spec);
  if (method != "recurrence" && method != "oracle") {
    throw FlagError("--method", "expected recurrence or enumerate, got '" + method + "'");
  }
  return spec.colors() == 2 ? pmf_recurrence<T>(spec) : pmf_recurrence_multi<T>(spec);
}

inline Output cmd_pmf(const Args& a, bool multi_command) {
  if (multi_command && !a.urn.multi()) throw FlagError("--weights", "pmf-multi needs --weights and --counts");
  if (!multi_command && a.urn.multi()) throw FlagError("--weights", "pmf is two-color; use pmf-multi");
  const UrnSpec spec = build_spec(a.urn);
  const ScalarMode mode = resolve_mode(a.mode, spec.is_exact());
  const Context ctx(a, mode);
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  const std::string method = a.method.empty() ? "closed-form" : a.method;
  o.body["method"] = method;
  dispatch(mode, [&]<Field T>() {
    // A closed form that does not sum to one is a formula discrepancy.
    auto check_total = [&](const ExactDistribution<T>& d) {
      if (!agrees(d.total(), from_int<T>(1), agreement_tolerance<T>(""))) {
        o.code = kDiscrepancy;
        o.body["discrepancy"] = true;
        o.body["total"] = ctx.json_value(d.total());
      }
    };
    if (method == "closed-form") {
      if (spec.colors() == 2) {
        const Representation rep = parse_rep(a.rep, spec.model);
        const auto [n, m] = std::pair{spec.counts[0], spec.counts[1]};
        if (n == 0 || m == 0) {
          put_pmf(ctx, o, pmf_recurrence<T>(spec));
          o.body["note"] = "absorbing start; no closed form needed";
          return 0;
        }
        o.body["representation"] = std::string(to_string(rep));
        const auto d = TwoColorForms<T>(spec.weights[0], spec.weights[1], n, m).distribution(spec.model, n, m, rep);
        put_pmf(ctx, o, d);
        check_total(d);
      } else {
        const MultiReading reading = parse_reading(a.reading);
        const MultiPmf<T> r = pmf_multi_distribution<T>(spec, reading);
        if (spec.model == Model::II) o.body["reading"] = std::string(to_string(reading));
        put_pmf(ctx, o, r.distribution, &r.closed_form);
        check_total(r.distribution);
      }
    } else {
      put_pmf(ctx, o, oracle_distribution<T>(spec, method == "oracle" ? "recurrence" : method));
    }
    return 0;
  });
  return o;
}

inline Output cmd_oracle(const Args& a) {
  const UrnSpec spec = build_spec(a.urn);
  const ScalarMode mode = resolve_mode(a.mode, spec.is_exact());
  const Context ctx(a, mode);
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  const std::string method = a.method.empty() ? "recurrence" : a.method;
  o.body["method"] = method;
  dispatch(mode, [&]<Field T>() {
    put_pmf(ctx, o, oracle_distribution<T>(spec, method));
    return 0;
  });
  return o;
}

// Integer parameter of an unreciprocated linear sequence, if it is one.
inline std::optional<unsigned long> linear_integer(const WeightSequence& w) {
  if (w.family() != Family::linear || w.reciprocated()) return std::nullopt;
  const Rational& p = w.parameters()[0];
  if (p.get_den() != 1 || !p.get_num().fits_ulong_p()) return std::nullopt;
  return p.get_num().get_ui();
}

inline Output cmd_moments(const Args& a) {
  const UrnSpec spec = build_spec(a.urn);
  const ScalarMode mode = resolve_mode(a.mode, spec.is_exact());
  const Context ctx(a, mode);
  const std::string kind = a.kind.empty() ? "factorial" : a.kind;
  if (kind != "factorial" && kind != "raw") throw FlagError("--kind", "expected factorial or raw, got '" + kind + "'");
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  o.body["kind"] = kind;
  std::vector<unsigned> order;
  if (spec.colors() == 2) {
    if (a.s < 1) throw FlagError("--s", "moment order must be >= 1");
    order = {a.s};
  } else {
    if (a.orders.empty()) throw FlagError("--orders", "required for r-color urns (one order per color 1..r-1)");
    order = parse_counts("--orders", a.orders);
    if (order.size() + 1 != spec.colors()) throw FlagError("--orders", "expected one order per color 1..r-1");
  }
  o.body["order"] = order;

  dispatch(mode, [&]<Field T>() {
    const auto d = oracle_distribution<T>(spec, "recurrence");
    std::vector<MomentReport> reports;
    T direct;
    if (spec.colors() == 2) {
      direct = kind == "raw" ? raw_moment_direct(d, a.s) : factorial_moment_direct(d, a.s);
    } else if (kind == "factorial") {
      direct = mixed_factorial_moment_direct(d, order);
    } else {
      direct = d.expect([&](const std::vector<unsigned>& k) {
        T p = from_int<T>(1);
        for (std::size_t j = 0; j < k.size(); ++j) p *= pow_int(from_int<T>(k[j]), order[j]);
        return p;
      });
    }
    reports.push_back({order, Scalar::of(direct), MomentMethod::direct_summation});

    // Closed forms exist for linear integer weights.
    std::vector<std::optional<unsigned long>> lin;
    for (const auto& w : spec.weights) lin.push_back(linear_integer(w));
    const bool all_linear = std::all_of(lin.begin(), lin.end(), [](const auto& x) { return x.has_value(); });
    std::optional<T> closed;
    std::string formula;
    if (all_linear && spec.colors() == 2 && spec.model == Model::I) {
      closed = kind == "raw" ? sampling_raw_moment<T>(*lin[0], *lin[1], spec.counts[0], spec.counts[1], a.s)
                             : sampling_factorial_moment<T>(*lin[0], *lin[1], spec.counts[0], spec.counts[1], a.s);
      formula = "sampling";
    } else if (all_linear && spec.colors() == 2 && spec.model == Model::II && spec.counts[0] >= 1 &&
               spec.counts[1] >= 1) {
      // A = c n, B = b m.
      const unsigned long c = *lin[0], b = *lin[1];
      if (kind == "raw") {
        closed = okcorral_raw_moment<T>(b, c, spec.counts[0], spec.counts[1], a.s);
      } else {
        std::vector<T> terms;
        for (unsigned j = 1; j <= a.s; ++j) {
          Rational coeff(stirling_first_unsigned(a.s, j));
          if ((a.s - j) % 2) coeff = -coeff;
          terms.push_back(from_rational<T>(coeff) * okcorral_raw_moment<T>(b, c, spec.counts[0], spec.counts[1], j));
        }
        closed = sum_terms(std::move(terms));
      }
      formula = "okcorral";
    } else if (all_linear && spec.colors() > 2 && spec.model == Model::I && kind == "factorial") {
      std::vector<unsigned long> av;
      for (const auto& x : lin) av.push_back(*x);
      closed = multi_mixed_factorial_moment<T>(av, spec.counts, order);
      formula = "sampling-multi";
    }
    if (closed) reports.push_back({order, Scalar::of(*closed), MomentMethod::closed_form});

    json list = json::array();
    std::vector<std::pair<std::string, std::string>> kv;
    for (const auto& r : reports) {
      list.push_back({{"method", std::string(to_string(r.method))}, {"value", r.value.serialize()}});
      kv.push_back({std::string(to_string(r.method)), ctx.cell(r.value.template get<T>())});
    }
    o.body["reports"] = list;
    if (closed) {
      const bool ok = agrees(direct, *closed, agreement_tolerance<T>(a.tol));
      o.body["closed_form"] = formula;
      o.body["agree"] = ok;
      kv.push_back({"agree", ok ? "true" : "false"});
      if (!ok) o.code = kDiscrepancy;
    } else {
      o.body["closed_form"] = nullptr;
    }
    put_scalar_rows(o, kv);
    return 0;
  });
  return o;
}

inline Output cmd_okc_moments(const Args& a) {
  if (a.b < 1) throw FlagError("--b", "must be >= 1");
  if (a.c < 1) throw FlagError("--c", "must be >= 1");
  if (!a.urn.has_n || a.urn.n < 1) throw FlagError("--n", "required, >= 1");
  if (!a.urn.has_m || a.urn.m < 1) throw FlagError("--m", "required, >= 1");
  if (a.s < 1) throw FlagError("--s", "moment order must be >= 1");
  OkCorralExponent exponent;
  if (a.exponent == "displayed") exponent = OkCorralExponent::displayed;
  else if (a.exponent == "literal") exponent = OkCorralExponent::derivation_literal;
  else throw FlagError("--exponent", "expected displayed or literal, got '" + a.exponent + "'");
  const ScalarMode mode = resolve_mode(a.mode, true);
  const Context ctx(a, mode);
  const unsigned n = a.urn.n, m = a.urn.m, s = a.s;
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  o.body["f"] = puyhaubert_f(s + 1).to_string("u");
  o.body["g"] = puyhaubert_g(s + 1).to_string("u");
  const Polynomial<Rational> ms = m_polynomial(s);
  o.body["m_polynomial"] = ms.to_string("X");
  std::vector<std::pair<std::string, std::string>> kv{
      {"f", puyhaubert_f(s + 1).to_string("u")}, {"g", puyhaubert_g(s + 1).to_string("u")}, {"M", ms.to_string("X")}};
  dispatch(mode, [&]<Field T>() {
    const UrnSpec spec = UrnSpec::two_color(Model::II, WeightSequence::linear(Rational(static_cast<unsigned long>(a.c))),
                                            WeightSequence::linear(Rational(static_cast<unsigned long>(a.b))), n, m);
    const auto d = pmf_recurrence<T>(spec);
    const T tol = agreement_tolerance<T>(a.tol);
    const T raw_closed = okcorral_raw_moment<T>(a.b, a.c, n, m, s, exponent);
    const T raw_direct = raw_moment_direct(d, s);
    const T m1 = okcorral_m_moment<T>(a.b, a.c, n, m, s, MsForm::factorial_n_plus_m);
    const T m2 = okcorral_m_moment<T>(a.b, a.c, n, m, s, MsForm::factorial_n_times_m);
    const T m_direct = polynomial_moment_direct(d, ms);
    const bool raw_ok = agrees(raw_direct, raw_closed, tol);
    const bool m_ok = agrees(m_direct, m1, tol) && agrees(m_direct, m2, tol);
    o.body["exponent"] = std::string(to_string(exponent));
    o.body["raw_moment"] = {{"closed_form", ctx.json_value(raw_closed)},
                            {"direct_summation", ctx.json_value(raw_direct)},
                            {"agree", raw_ok}};
    o.body["m_moment"] = {{"closed_form_n_plus_m", ctx.json_value(m1)},
                          {"closed_form_n_times_m", ctx.json_value(m2)},
                          {"direct_summation", ctx.json_value(m_direct)},
                          {"agree", m_ok}};
    kv.push_back({"raw_closed_form", ctx.cell(raw_closed)});
    kv.push_back({"raw_direct_summation", ctx.cell(raw_direct)});
    kv.push_back({"m_closed_form_n_plus_m", ctx.cell(m1)});
    kv.push_back({"m_closed_form_n_times_m", ctx.cell(m2)});
    kv.push_back({"m_direct_summation", ctx.cell(m_direct)});
    if (!raw_ok || !m_ok) o.code = kDiscrepancy;
    return 0;
  });
  put_scalar_rows(o, kv);
  return o;
}

inline Rational parse_q(const std::string& flag, const std::string& text) {
  return for_flag(flag, [&] { return parse_rational(text); });
}

inline Output cmd_limit(const Args& a) {
  static const std::vector<std::string> kinds{"ym-moment", "ym-density", "ym-cdf", "zn-pmf", "zn-moment", "w-moment", "w-cdf"};
  const std::string kind = a.kind.empty() ? "w-moment" : a.kind;
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    throw FlagError("--kind", "expected one of ym-moment, ym-density, ym-cdf, zn-pmf, zn-moment, w-moment, w-cdf");
  }
  const bool rational_kind = kind.rfind("ym-", 0) == 0;
  const ScalarMode mode = resolve_mode(a.mode == "auto" ? (rational_kind ? "exact" : "bigfloat") : a.mode, rational_kind);
  const Context ctx(a, mode);
  const LimitFamily family = for_flag("--family", [&] { return LimitFamily::parse(a.family); });
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  o.body["kind"] = kind;
  const bool plot = !a.grid_step.empty();

  dispatch(mode, [&]<Field T>() {
    std::vector<std::pair<std::string, std::string>> kv;
    auto scalar = [&](const std::string& name, const T& v) {
      o.body[name] = ctx.json_value(v);
      kv.push_back({name, ctx.cell(v)});
    };
    if (plot) {
      if (kind != "ym-density" && kind != "ym-cdf" && kind != "w-cdf") {
        throw FlagError("--grid-step", "grids are available for ym-density, ym-cdf and w-cdf");
      }
      const auto grid = for_flag("--grid-step", [&] {
        return rational_grid(parse_q("--grid-from", a.grid_from), parse_q("--grid-to", a.grid_to),
                             parse_q("--grid-step", a.grid_step));
      });
      const unsigned xdec = a.decimals >= 0 ? static_cast<unsigned>(a.decimals) : 6;
      auto eval = [&](const Rational& x) -> T {
        const T xt = from_rational<T>(x);
        if (kind == "ym-density") return ym_density(a.urn.m, xt);
        if (kind == "ym-cdf") return ym_cdf(a.urn.m, xt);
        if constexpr (FloatField<T>) return w_cdf(xt, family);
        throw ModeMismatch("w-cdf needs a floating mode");
      };
      const auto rows = for_flag("--grid-from", [&] {
        return plot_rows(grid, xdec, [&](const Rational& x) { return ctx.cell(eval(x)); });
      });
      json list = json::array();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        list.push_back({{"x", to_decimal(grid[i], xdec)}, {"value", ctx.json_value(eval(grid[i]))}});
      }
      o.body["family"] = family.name();
      o.body["plot"] = list;
      o.header = {"x", "value"};
      for (const auto& r : rows) o.rows.push_back({r.x, r.value});
      return 0;
    }
    if (kind == "ym-moment") {
      if (a.urn.m < 1) throw FlagError("--m", "must be >= 1");
      if (a.s < 1) throw FlagError("--s", "must be >= 1");
      scalar("value", ym_moment<T>(a.urn.m, a.s));
      if constexpr (std::is_same_v<T, double>) {
        const double g = ym_moment_gamma(a.urn.m, a.s);
        scalar("gamma_form", g);
      }
    } else if (kind == "ym-density" || kind == "ym-cdf") {
      if (a.urn.m < 1) throw FlagError("--m", "must be >= 1");
      const Rational q = parse_q("--q", a.q);
      if (q < 0 || q > 1) throw FlagError("--q", "must lie in [0, 1]");
      scalar("value", kind == "ym-density" ? ym_density(a.urn.m, from_rational<T>(q)) : ym_cdf(a.urn.m, from_rational<T>(q)));
    } else if constexpr (FloatField<T>) {
      if (kind == "zn-pmf") {
        if (!a.urn.has_n) throw FlagError("--n", "required");
        if (a.k > a.urn.n) throw FlagError("--k", "must not exceed --n");
        const std::string method = a.method.empty() ? "finite-sum" : a.method;
        o.body["method"] = method;
        if (method == "finite-sum") {
          scalar("value", zn_pmf<T>(a.urn.n, a.k));
        } else if (method == "series") {
          const auto r = for_flag("--k", [&] { return zn_pmf_series<T>(a.urn.n, a.k, a.terms); });
          scalar("value", r.value);
          scalar("error_bound", r.error_bound);
          o.body["terms"] = r.terms;
        } else {
          throw FlagError("--method", "expected finite-sum or series, got '" + method + "'");
        }
      } else if (kind == "zn-moment") {
        if (!a.urn.has_n || a.urn.n < 1) throw FlagError("--n", "required, >= 1");
        if (a.s < 1) throw FlagError("--s", "must be >= 1");
        scalar("value", zn_moment<T>(a.urn.n, a.s));
      } else if (kind == "w-moment") {
        if (a.s < 1) throw FlagError("--s", "must be >= 1");
        const double tol = a.tol.empty() ? 1e-9 : to_double(parse_q("--tol", a.tol));
        const unsigned long big_m = for_flag("--tol", [&] { return w_product_terms_for(a.s, tol); });
        const auto p = w_moment_product<T>(a.s, family, big_m);
        const T closed = w_moment<T>(a.s, family);
        o.body["family"] = family.name();
        scalar("value", closed);
        scalar("product", p.value);
        scalar("product_error_bound", p.error_bound);
        o.body["product_terms"] = p.terms;
        const bool ok = abs_value(T(closed - p.value)) <= p.error_bound;
        o.body["agree"] = ok;
        kv.push_back({"agree", ok ? "true" : "false"});
        if (!ok) o.code = kDiscrepancy;
      } else if (kind == "w-cdf") {
        const Rational q = parse_q("--q", a.q);
        if (q < 0 || q > 1) throw FlagError("--q", "must lie in [0, 1]");
        o.body["family"] = family.name();
        scalar("value", w_cdf(from_rational<T>(q), family));
      }
    }
    put_scalar_rows(o, kv);
    return 0;
  });
  return o;
}

inline Output cmd_theta(const Args& a) {
  const ScalarMode mode = resolve_mode(a.mode == "auto" ? "bigfloat" : a.mode, false);
  const Context ctx(a, mode);
  if (a.function != "theta" && a.function != "phi3") {
    throw FlagError("--function", "expected theta or phi3, got '" + a.function + "'");
  }
  const Rational q = parse_q("--q", a.q);
  if (q < 0 || q >= 1) throw FlagError("--q", "must lie in [0, 1)");
  const Rational tol = a.tol.empty() ? ratio(1, 1000000000000000L) : parse_q("--tol", a.tol);
  if (tol <= 0) throw FlagError("--tol", "must be positive");
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  o.body["function"] = a.function;
  dispatch(mode, [&]<Field T>() {
    if constexpr (FloatField<T>) {
      const T qt = from_rational<T>(q), tt = from_rational<T>(tol);
      const auto series = a.function == "theta" ? theta(qt, tt) : euler_phi_cubed(qt, tt);
      const T product = a.function == "theta" ? theta_triple_product(qt, tt) : euler_phi_cubed_product(qt, tt);
      const T diff = abs_value(T(series.value - product));
      const bool ok = diff <= from_rational<T>(ratio(1, 1000000000000L));
      o.body["series"] = ctx.json_value(series.value);
      o.body["terms"] = series.terms;
      o.body["error_bound"] = ctx.json_value(series.error_bound);
      o.body["product"] = ctx.json_value(product);
      o.body["difference"] = ctx.json_value(diff);
      o.body["agree"] = ok;
      put_scalar_rows(o, {{"series", ctx.cell(series.value)},
                          {"product", ctx.cell(product)},
                          {"difference", ctx.cell(diff)},
                          {"agree", ok ? "true" : "false"}});
      if (!ok) o.code = kDiscrepancy;
    }
    return 0;
  });
  return o;
}

inline Output cmd_duality(const Args& a) {
  const UrnSpec spec = build_spec(a.urn);
  const UrnSpec dual = spec.dual();
  const ScalarMode mode = resolve_mode(a.mode, spec.is_exact() && dual.is_exact());
  const Context ctx(a, mode);
  Output o;
  o.body["mode"] = std::string(to_string(mode));
  o.body["urn"] = spec.to_json();
  o.body["dual"] = dual.to_json();
  dispatch(mode, [&]<Field T>() {
    const auto p = oracle_distribution<T>(spec, "recurrence");
    const auto q = oracle_distribution<T>(dual, "recurrence");
    const T diff = max_difference(p, q);
    const T tol = agreement_tolerance<T>(a.tol);
    std::string result;
    if (is_zero(diff)) result = "exact match";
    else if (!std::is_same_v<T, Rational> && diff <= tol) result = "match within tolerance";
    else result = "mismatch";
    o.body["result"] = result;
    o.body["max_abs_difference"] = ctx.json_value(diff);
    put_scalar_rows(o, {{"result", result}, {"max_abs_difference", ctx.cell(diff)}});
    if (result == "mismatch") o.code = kDiscrepancy;
    return 0;
  });
  return o;
}

inline Output cmd_simulate(const Args& a) {
  if (a.workers < 1) throw FlagError("--workers", "must be >= 1");
  Output o;
  o.body["sampler"] = a.sampler;
  if (a.sampler == "ym" || a.sampler == "w") {
    if (a.trials < 2) throw FlagError("--trials", "need at least two draws");
    SampleSummary s;
    double target = 0, bias = 0;
    if (a.sampler == "ym") {
      if (a.urn.m < 1) throw FlagError("--m", "must be >= 1");
      s = sample_mean(a.trials, a.seed, a.workers, [m = a.urn.m](Rng& r) { return sample_ym(m, r); });
      target = to_double(ym_moment<Rational>(a.urn.m, 1));
    } else {
      const LimitFamily family = for_flag("--family", [&] { return LimitFamily::parse(a.family); });
      if (a.tail < 1) throw FlagError("--tail", "must be >= 1");
      const WSampler sampler(family, a.tail);
      s = sample_mean(a.trials, a.seed, a.workers, [&](Rng& r) { return sampler(r); });
      target = w_moment<double>(1, family);
      bias = w_truncation_bias(family, a.tail);
      o.body["family"] = family.name();
      o.body["truncation_bias_bound"] = serialize(bias);
    }
    const bool ok = std::abs(s.mean - target) <= 3 * s.standard_error() + bias;
    o.body["mean"] = serialize(s.mean);
    o.body["std_dev"] = serialize(s.std_dev);
    o.body["standard_error"] = serialize(s.standard_error());
    o.body["target_mean"] = serialize(target);
    o.body["within_3_sigma"] = ok;
    put_scalar_rows(o, {{"mean", serialize(s.mean)},
                        {"standard_error", serialize(s.standard_error())},
                        {"target_mean", serialize(target)},
                        {"within_3_sigma", ok ? "true" : "false"}});
    return o;
  }
  if (a.sampler != "urn") throw FlagError("--sampler", "expected urn, ym or w, got '" + a.sampler + "'");
  if (a.trials < 1) throw FlagError("--trials", "must be >= 1");
  const UrnSpec spec = build_spec(a.urn);
  const SimConfig config{spec, a.trials, a.seed, a.workers};
  const EmpiricalPmf e = empirical_pmf(config);
  const IndexBox box = e.box();
  json counts = json::array();
  o.header.clear();
  for (std::size_t j = 0; j < box.dims(); ++j) o.header.push_back(box.dims() == 1 ? "k" : "k" + std::to_string(j + 1));
  o.header.push_back("count");
  for (std::size_t i = 0; i < e.counts.size(); ++i) {
    const auto k = box.unflat(i);
    json item;
    if (k.size() == 1) item["k"] = k[0]; else item["k"] = k;
    item["count"] = e.counts[i];
    counts.push_back(item);
    std::vector<std::string> row;
    for (unsigned x : k) row.push_back(std::to_string(x));
    row.push_back(std::to_string(e.counts[i]));
    o.rows.push_back(row);
  }
  o.body["trials"] = e.trials;
  o.body["counts"] = counts;
  if (box.dims() == 1) o.body["mean"] = serialize(e.expect([](const std::vector<unsigned>& k) { return double(k[0]); }));
  if (a.chi) {
    const ChiSquare c = spec.is_exact() ? chi_square(e, pmf_recurrence_multi<Rational>(spec))
                                        : chi_square(e, pmf_recurrence_multi<BigFloat>(spec));
    o.body["chi_square"] = {{"statistic", serialize(c.statistic)},
                            {"dof", c.dof},
                            {"bins", c.bins},
                            {"p_value", serialize(c.p_value)}};
  }
  return o;
}

// closed form vs oracle vs (optional) enumeration and simulation for one urn.
template <Field T>
json compare_one(const UrnSpec& spec, const Args& a, std::uint64_t trials, std::uint64_t seed, bool& discrepancy,
                 std::string& worst) {
  json r;
  r["urn"] = spec.to_json();
  r["mode"] = std::string(to_string(field_traits<T>::mode));
  const auto oracle = oracle_distribution<T>(spec, "recurrence");
  const T tol = agreement_tolerance<T>(a.tol);
  T worst_here = from_int<T>(0);
  auto track = [&](const T& d) {
    if (worst_here < d) worst_here = d;
  };
  json closed = json::object();
  bool closed_available = true;
  try {
    if (spec.colors() == 2) {
      const unsigned n = spec.counts[0], m = spec.counts[1];
      if (n == 0 || m == 0) throw ClosedFormUnavailable("absorbing start");
      const TwoColorForms<T> forms(spec.weights[0], spec.weights[1], n, m);
      for (Representation rep : {Representation::alpha_poles, Representation::beta_poles}) {
        const T d = max_difference(forms.distribution(spec.model, n, m, rep), oracle);
        track(d);
        closed[std::string(to_string(rep))] = serialize(d);
      }
    } else {
      const MultiReading reading = parse_reading(a.reading);
      const T d = max_difference(pmf_multi_distribution<T>(spec, reading).distribution, oracle);
      track(d);
      closed[std::string(to_string(reading))] = serialize(d);
    }
  } catch (const DistinctnessViolation& e) {
    closed_available = false;
    r["closed_form_unavailable"] = e.what();
  } catch (const ClosedFormUnavailable& e) {
    closed_available = false;
    r["closed_form_unavailable"] = e.what();
  }
  r["closed_form_vs_oracle"] = closed;
  try {
    const T d = max_difference(pmf_enumerate<T>(spec), oracle);
    track(d);
    r["enumerate_vs_oracle"] = serialize(d);
  } catch (const InstanceTooLarge&) {
    r["enumerate_vs_oracle"] = nullptr;
  }
  const bool bad = std::is_same_v<T, Rational> ? !is_zero(worst_here) : tol < worst_here;
  if (bad) discrepancy = true;
  r["max_discrepancy"] = serialize(worst_here);
  r["discrepancy"] = bad;
  (void)closed_available;
  worst = serialize(worst_here);
  if (trials > 0) {
    const EmpiricalPmf e = empirical_pmf(SimConfig{spec, trials, seed, a.workers});
    const ChiSquare c = chi_square(e, oracle);
    r["simulation"] = {{"trials", trials},
                       {"seed", seed},
                       {"chi_square", serialize(c.statistic)},
                       {"dof", c.dof},
                       {"p_value", serialize(c.p_value)}};
  }
  return r;
}

inline Output cmd_compare(const Args& a) {
  struct Item {
    UrnSpec spec;
    std::uint64_t trials, seed;
  };
  std::vector<Item> items;
  if (!a.manifest.empty()) {
    std::ifstream in(a.manifest);
    if (!in) throw FlagError("--manifest", "cannot open '" + a.manifest + "'");
    json m;
    try {
      m = json::parse(in);
    } catch (const json::exception& e) {
      throw FlagError("--manifest", std::string("not valid JSON: ") + e.what());
    }
    if (!m.contains("urns") || !m["urns"].is_array()) throw FlagError("--manifest", "expected an object with an 'urns' array");
    for (const auto& u : m["urns"]) {
      const UrnSpec spec = for_flag("--manifest", [&] { return UrnSpec::from_json(nlohmann::json::parse(u.dump())); });
      items.push_back({spec, u.value("trials", a.trials), u.value("seed", a.seed)});
    }
  } else {
    items.push_back({build_spec(a.urn), a.trials, a.seed});
  }
  Output o;
  json results = json::array();
  bool discrepancy = false;
  o.header = {"urn", "mode", "max_discrepancy", "p_value", "discrepancy"};
  for (const Item& it : items) {
    const ScalarMode mode = resolve_mode(a.mode, it.spec.is_exact());
    std::string worst;
    bool bad = false;
    json r = dispatch(mode, [&]<Field T>() { return compare_one<T>(it.spec, a, it.trials, it.seed, bad, worst); });
    discrepancy = discrepancy || bad;
    std::string label;
    for (std::size_t i = 0; i < it.spec.colors(); ++i) {
      label += (i ? " " : "") + it.spec.weights[i].describe() + "=" + std::to_string(it.spec.counts[i]);
    }
    label = std::string(to_string(it.spec.model)) + " " + label;
    o.rows.push_back({label, r["mode"].get<std::string>(), worst, r.contains("simulation") ? r["simulation"]["p_value"].get<std::string>() : "",
                      bad ? "true" : "false"});
    results.push_back(std::move(r));
  }
  o.body["results"] = results;
  o.body["discrepancy"] = discrepancy;
  if (discrepancy) o.code = kDiscrepancy;
  return o;
}

// ---------------------------------------------------------------------------
// Entry point.

inline unsigned precision_from_env() {
  const char* v = std::getenv(kPrecisionEnv);
  if (!v || !*v) return kDefaultPrecisionBits;
  try {
    std::size_t used = 0;
    const unsigned long bits = std::stoul(v, &used);
    if (used != std::strlen(v)) throw std::invalid_argument("trailing");
    return static_cast<unsigned>(bits);
  } catch (const std::exception&) {
    throw DomainError(std::string(kPrecisionEnv) + ": not an integer: '" + v + "'");
  }
}

// Replays a saved request: {"subcommand": ..., "options": {"--flag": value | [values]}}.
inline std::vector<std::string> request_to_args(const json& req) {
  if (!req.contains("subcommand") || !req.contains("options")) {
    throw FlagError("--request", "expected an object with 'subcommand' and 'options'");
  }
  std::vector<std::string> args{req["subcommand"].get<std::string>()};
  for (const auto& [key, value] : req["options"].items()) {
    if (value.is_array()) {
      for (const auto& v : value) args.push_back(key + "=" + v.get<std::string>());
    } else {
      args.push_back(key + "=" + value.get<std::string>());
    }
  }
  return args;
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic absorption laws of generalized two- and multi-color urns", "urnlab"};
  app.require_subcommand(0, 1);
  std::string request_file;
  app.add_option("--request", request_file, "replay a request saved from a previous JSON output");

  // Each subcommand binds its own Args so option defaults do not collide.
  std::map<std::string, Args> all;
  Args* cur = nullptr;
  auto add_output = [&](CLI::App* s) {
    s->add_option("--format", (*cur).format, "json or csv")->default_val("json")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--decimals", (*cur).decimals, "decimal digits for CSV values");
    s->add_option("--mode", (*cur).mode, "exact, bigfloat, float or auto")->default_val("auto");
    s->add_option("--precision", (*cur).precision, "big-float precision in bits (default: $URNLAB_PRECISION_BITS or 256)");
  };
  auto add_urn = [&](CLI::App* s, bool two_color_only) {
    s->add_option("--model", (*cur).urn.model, "I or II")->default_val("I");
    s->add_option("--A", (*cur).urn.a, "white weight sequence, e.g. linear:1, power:2:3/2, square");
    s->add_option("--B", (*cur).urn.b, "black weight sequence");
    s->add_option("--n", (*cur).urn.n, "white balls");
    s->add_option("--m", (*cur).urn.m, "black balls");
    if (!two_color_only) {
      s->add_option("--weights", (*cur).urn.weights, "one weight sequence per color (r >= 2)");
      s->add_option("--counts", (*cur).urn.counts, "comma-separated initial counts, one per color");
    }
  };

  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    cur = &all[name];
    subs[name] = s;
    add_output(s);
    return s;
  };

  CLI::App* pmf = sub("pmf", "two-color absorption pmf (closed form, recurrence or enumeration)");
  add_urn(pmf, false);
  pmf->add_option("--method", (*cur).method, "closed-form, oracle or enumerate")->default_val("closed-form");
  pmf->add_option("--rep", (*cur).rep, "alpha or beta poles (default: beta for model I, alpha for model II)")->default_val("auto");

  CLI::App* pmf_multi = sub("pmf-multi", "r-color absorption pmf");
  add_urn(pmf_multi, false);
  pmf_multi->add_option("--method", (*cur).method, "closed-form, oracle or enumerate")->default_val("closed-form");
  pmf_multi->add_option("--reading", (*cur).reading, "model-II formula reading: corrected or literal")->default_val("corrected");

  CLI::App* moments = sub("moments", "moments by direct summation and, for linear weights, closed form");
  add_urn(moments, false);
  moments->add_option("--s", (*cur).s, "moment order (two colors)")->default_val(1);
  moments->add_option("--orders", (*cur).orders, "comma-separated orders for colors 1..r-1");
  moments->add_option("--kind", (*cur).kind, "factorial or raw")->default_val("factorial");
  moments->add_option("--tol", (*cur).tol, "relative agreement tolerance in float modes");

  CLI::App* okc = sub("okc-moments", "OK Corral moments for weights c*n, b*m");
  okc->add_option("--b", (*cur).b, "black weight factor")->default_val(1);
  okc->add_option("--c", (*cur).c, "white weight factor")->default_val(1);
  okc->add_option("--n", (*cur).urn.n, "white balls");
  okc->add_option("--m", (*cur).urn.m, "black balls");
  okc->add_option("--s", (*cur).s, "moment order")->default_val(1);
  okc->add_option("--exponent", (*cur).exponent, "displayed or literal")->default_val("displayed");
  okc->add_option("--tol", (*cur).tol, "relative agreement tolerance in float modes");

  CLI::App* limit = sub("limit", "limit laws Y_m, Z_n and W");
  limit->add_option("--kind", (*cur).kind, "ym-moment, ym-density, ym-cdf, zn-pmf, zn-moment, w-moment, w-cdf")
      ->default_val("w-moment");
  limit->add_option("--m", (*cur).urn.m, "black balls (Y_m)")->default_val(1);
  limit->add_option("--n", (*cur).urn.n, "white balls (Z_n)");
  limit->add_option("--k", (*cur).k, "survivor count (Z_n)")->default_val(0);
  limit->add_option("--s", (*cur).s, "moment order")->default_val(1);
  limit->add_option("--q", (*cur).q, "evaluation point in [0, 1]")->default_val("0.5");
  limit->add_option("--family", (*cur).family, "square, triangular or shifted-square")->default_val("square");
  limit->add_option("--method", (*cur).method, "zn-pmf: finite-sum or series");
  limit->add_option("--terms", (*cur).terms, "series terms")->default_val(1000);
  limit->add_option("--tol", (*cur).tol, "product truncation tolerance (w-moment)");
  limit->add_option("--grid-step", (*cur).grid_step, "emit plot data on a grid with this step");
  limit->add_option("--grid-from", (*cur).grid_from, "grid start")->default_val("0");
  limit->add_option("--grid-to", (*cur).grid_to, "grid end")->default_val("1");

  CLI::App* theta_cmd = sub("theta", "Jacobi theta or Euler phi^3 series against its product form");
  theta_cmd->add_option("--q", (*cur).q, "argument in [0, 1)")->default_val("0.5");
  theta_cmd->add_option("--tol", (*cur).tol, "series stopping tolerance")->default_val("1e-15");
  theta_cmd->add_option("--function", (*cur).function, "theta or phi3")->default_val("theta");

  CLI::App* duality = sub("duality-check", "model I with (A, B) against model II with reciprocal sequences");
  add_urn(duality, false);
  duality->add_option("--tol", (*cur).tol, "agreement tolerance in float modes");

  CLI::App* oracle = sub("oracle", "ground-truth pmf by recurrence or enumeration");
  add_urn(oracle, false);
  oracle->add_option("--method", (*cur).method, "recurrence or enumerate")->default_val("recurrence");

  CLI::App* simulate = sub("simulate", "Monte Carlo simulation");
  add_urn(simulate, false);
  simulate->add_option("--sampler", (*cur).sampler, "urn, ym or w")->default_val("urn");
  simulate->add_option("--trials", (*cur).trials, "number of trials or draws")->default_val(100000);
  simulate->add_option("--seed", (*cur).seed, "64-bit seed")->default_val(0);
  simulate->add_option("--workers", (*cur).workers, "worker threads; results do not depend on it")->default_val(1);
  simulate->add_flag("--chi-square", (*cur).chi, "chi-square test against the exact pmf");
  simulate->add_option("--family", (*cur).family, "W sampler family")->default_val("square");
  simulate->add_option("--tail", (*cur).tail, "W sampler truncation index M")->default_val(1000);

  CLI::App* compare = sub("compare", "closed form vs oracle vs simulation");
  add_urn(compare, false);
  compare->add_option("--manifest", (*cur).manifest, "JSON file with an 'urns' array");
  compare->add_option("--trials", (*cur).trials, "simulation trials per urn (0 skips simulation)")->default_val(20000);
  compare->add_option("--seed", (*cur).seed, "64-bit seed")->default_val(0);
  compare->add_option("--workers", (*cur).workers, "worker threads")->default_val(1);
  compare->add_option("--reading", (*cur).reading, "model-II r-color reading: corrected or literal")->default_val("corrected");
  compare->add_option("--tol", (*cur).tol, "agreement tolerance in float modes");

  try {
    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  if (!request_file.empty()) {
    if (!app.get_subcommands().empty()) {
      err << "error: --request: cannot be combined with a subcommand\n";
      return kValidation;
    }
    std::ifstream in(request_file);
    if (!in) {
      err << "error: --request: cannot open '" << request_file << "'\n";
      return kValidation;
    }
    try {
      json doc = json::parse(in);
      return run(request_to_args(doc.contains("request") ? doc["request"] : doc), out, err);
    } catch (const json::exception& e) {
      err << "error: --request: " << e.what() << "\n";
      return kValidation;
    } catch (const DomainError& e) {
      err << "error: " << e.what() << "\n";
      return kValidation;
    }
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required (pmf, pmf-multi, moments, okc-moments, limit, theta, duality-check, oracle, "
           "simulate, compare)\n";
    return kValidation;
  }
  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  Args& a = all[name];
  if (auto* o = chosen->get_option_no_throw("--n")) a.urn.has_n = o->count() > 0;
  if (auto* o = chosen->get_option_no_throw("--m")) a.urn.has_m = o->count() > 0 || name == "limit";

  try {
    const unsigned bits = a.precision ? a.precision : precision_from_env();
    for_flag("--precision", [&] { set_precision_bits(bits); });
    a.precision = bits;

    // Full, replayable flag set.
    json request{{"subcommand", name}, {"options", json::object()}};
    for (const CLI::Option* opt : chosen->get_options()) {
      const std::string key = opt->get_name();
      if (key == "--help" || key == "-h" || key.empty()) continue;
      if (key == "--precision") {
        request["options"][key] = std::to_string(bits);
      } else if (opt->count() > 0) {
        const auto& res = opt->results();
        if (opt->get_expected_max() > 1) request["options"][key] = res; else request["options"][key] = res.back();
      } else if (!opt->get_default_str().empty()) {
        request["options"][key] = opt->get_default_str();
      }
    }

    Output o;
    if (name == "pmf") o = cmd_pmf(a, false);
    else if (name == "pmf-multi") o = cmd_pmf(a, true);
    else if (name == "moments") o = cmd_moments(a);
    else if (name == "okc-moments") o = cmd_okc_moments(a);
    else if (name == "limit") o = cmd_limit(a);
    else if (name == "theta") o = cmd_theta(a);
    else if (name == "duality-check") o = cmd_duality(a);
    else if (name == "oracle") o = cmd_oracle(a);
    else if (name == "simulate") o = cmd_simulate(a);
    else if (name == "compare") o = cmd_compare(a);

    if (a.format == "csv") {
      for (std::size_t i = 0; i < o.header.size(); ++i) out << (i ? "," : "") << csv_cell(o.header[i]);
      out << "\n";
      for (const auto& row : o.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << "\n";
      }
    } else {
      json doc{{"subcommand", name},
               {"status", o.code == kDiscrepancy ? "discrepancy" : "ok"},
               {"precision_bits", bits},
               {"request", request}};
      for (auto& [k, v] : o.body.items()) doc[k] = v;
      out << doc.dump(2) << "\n";
    }
    return o.code;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const InconsistentSystem& e) {
    err << "error: " << e.what() << "\n";
    return kDiscrepancy;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace urnlab::cli
