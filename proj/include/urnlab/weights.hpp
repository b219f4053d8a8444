#pragma once

// Weight sequences, the reciprocal (duality) transform, and urn descriptions.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "urnlab/numerics.hpp"

namespace urnlab {

enum class Family { linear, power, square, triangular, shifted_square, custom };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::linear: return "linear";
    case Family::power: return "power";
    case Family::square: return "square";
    case Family::triangular: return "triangular";
    case Family::shifted_square: return "shifted-square";
    case Family::custom: return "custom";
  }
  return "?";
}

// A positive sequence j -> w_j on j >= 1 with w_0 = 0. Built-in families are
// closed formulas; custom sequences are finite tables with an explicit range.
// `reciprocal()` flips a flag, so the transform is an exact involution.
class WeightSequence {
 public:
  // a * j
  static WeightSequence linear(Rational a = 1) {
    require_positive(a, "linear weight a");
    return WeightSequence(Family::linear, {std::move(a)});
  }

  // c * j^r; rational at every index iff r is an integer.
  static WeightSequence power(Rational c, Rational r) {
    require_positive(c, "power weight c");
    return WeightSequence(Family::power, {std::move(c), std::move(r)});
  }

  static WeightSequence square() { return WeightSequence(Family::square, {}); }

  // j (j + 1) / 2
  static WeightSequence triangular() { return WeightSequence(Family::triangular, {}); }

  // (j - 1/2)^2
  static WeightSequence shifted_square() { return WeightSequence(Family::shifted_square, {}); }

  // values[j-1] is w_j, for j = 1..values.size().
  static WeightSequence custom(std::vector<Rational> values) {
    if (values.empty()) throw DomainError("custom weight table must not be empty");
    for (const auto& v : values) require_positive(v, "custom weight");
    return WeightSequence(Family::custom, std::move(values));
  }

  Family family() const { return family_; }
  bool reciprocated() const { return reciprocal_; }
  const std::vector<Rational>& parameters() const { return params_; }

  // Largest index that may be evaluated, if bounded.
  std::optional<std::size_t> range() const {
    if (family_ == Family::custom) return params_.size();
    return std::nullopt;
  }

  void require_range(std::size_t upper) const {
    if (auto r = range(); r && upper > *r) {
      throw OutOfRange("custom weight table covers indices 1.." + std::to_string(*r) + " but index " +
                       std::to_string(upper) + " is needed");
    }
  }

  bool is_exact() const { return family_ != Family::power || params_[1].get_den() == 1; }

  Rational eval_exact(std::size_t j) const {
    if (j == 0) return 0;
    require_range(j);
    Rational v = base_exact(j);
    return reciprocal_ ? Rational(1 / v) : v;
  }

  template <Field T>
  T eval(std::size_t j) const {
    if (j == 0) return from_int<T>(0);
    if (is_exact()) return from_rational<T>(eval_exact(j));
    if constexpr (field_traits<T>::exact) {
      throw ModeMismatch("weight sequence " + describe() + " is not rational; use bigfloat or float mode");
    } else {
      T c = from_rational<T>(params_[0]);
      T r = from_rational<T>(params_[1]);
      T base = from_int<T>(static_cast<long>(j));
      T v;
      if constexpr (std::is_same_v<T, double>) {
        v = c * std::pow(base, r);
      } else {
        v = c * pow(base, r);
      }
      return reciprocal_ ? T(1 / v) : v;
    }
  }

  WeightSequence reciprocal() const {
    WeightSequence w = *this;
    w.reciprocal_ = !w.reciprocal_;
    return w;
  }

  // Short form accepted by parse(): "linear:2", "power:1:3/2", "square",
  // "custom:1,4,9"; reciprocals carry a "recip:" prefix.
  std::string describe() const {
    std::string s = reciprocal_ ? "recip:" : "";
    s += std::string(to_string(family_));
    switch (family_) {
      case Family::linear: s += ":" + short_rational(params_[0]); break;
      case Family::power: s += ":" + short_rational(params_[0]) + ":" + short_rational(params_[1]); break;
      case Family::custom: {
        s += ":";
        for (std::size_t i = 0; i < params_.size(); ++i) s += (i ? "," : "") + short_rational(params_[i]);
        break;
      }
      default: break;
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["family"] = std::string(to_string(family_));
    switch (family_) {
      case Family::linear: j["a"] = short_rational(params_[0]); break;
      case Family::power:
        j["c"] = short_rational(params_[0]);
        j["r"] = short_rational(params_[1]);
        break;
      case Family::custom: {
        auto values = nlohmann::json::array();
        for (const auto& v : params_) values.push_back(short_rational(v));
        j["values"] = values;
        break;
      }
      default: break;
    }
    if (reciprocal_) j["reciprocal"] = true;
    return j;
  }

  static WeightSequence from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string()) {
      throw DomainError("weight description needs a string field \"family\"");
    }
    auto field = [&](const char* key, const char* fallback) -> Rational {
      if (!j.contains(key)) {
        if (fallback) return parse_rational(fallback);
        throw DomainError(std::string("weight description lacks field \"") + key + "\"");
      }
      const auto& v = j[key];
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<long>());
      throw DomainError(std::string("field \"") + key + "\" must be a string or integer");
    };
    const std::string family = j["family"].get<std::string>();
    WeightSequence w = [&] {
      if (family == "linear") return linear(field("a", "1"));
      if (family == "power") return power(field("c", "1"), field("r", nullptr));
      if (family == "square") return square();
      if (family == "triangular") return triangular();
      if (family == "shifted-square") return shifted_square();
      if (family == "custom") {
        if (!j.contains("values") || !j["values"].is_array()) throw DomainError("custom weights need a \"values\" array");
        std::vector<Rational> values;
        for (const auto& v : j["values"]) {
          values.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>()));
        }
        return custom(std::move(values));
      }
      throw DomainError("unknown weight family '" + family + "'");
    }();
    if (j.contains("reciprocal") && j["reciprocal"].get<bool>()) w = w.reciprocal();
    return w;
  }

  // Short form (see describe()) or a JSON object.
  static WeightSequence parse(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(s);
      } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed weight JSON: ") + e.what());
      }
      return from_json(j);
    }
    if (s.rfind("recip:", 0) == 0) return parse(s.substr(6)).reciprocal();
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.empty()) throw DomainError("empty weight description");
    const std::string& name = parts[0];
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (parts.size() - 1 < lo || parts.size() - 1 > hi) {
        throw DomainError("weight family '" + name + "' takes " + std::to_string(lo) +
                          (lo == hi ? "" : "-" + std::to_string(hi)) + " parameter(s)");
      }
    };
    if (name == "linear") {
      arity(0, 1);
      return linear(parts.size() > 1 ? parse_rational(parts[1]) : Rational(1));
    }
    if (name == "power") {
      arity(2, 2);
      return power(parse_rational(parts[1]), parse_rational(parts[2]));
    }
    if (name == "square") return arity(0, 0), square();
    if (name == "triangular") return arity(0, 0), triangular();
    if (name == "shifted-square") return arity(0, 0), shifted_square();
    if (name == "custom") {
      arity(1, 1);
      std::vector<Rational> values;
      std::stringstream list(parts[1]);
      for (std::string v; std::getline(list, v, ',');) values.push_back(parse_rational(v));
      return custom(std::move(values));
    }
    throw DomainError("unknown weight family '" + name + "'");
  }

  friend bool operator==(const WeightSequence& a, const WeightSequence& b) {
    return a.family_ == b.family_ && a.reciprocal_ == b.reciprocal_ && a.params_ == b.params_;
  }

 private:
  WeightSequence(Family f, std::vector<Rational> params) : family_(f), params_(std::move(params)) {}

  static void require_positive(const Rational& v, const char* what) {
    if (sgn(v) <= 0) throw DomainError(std::string(what) + " must be positive, got " + to_string(v));
  }

  static std::string short_rational(const Rational& q) {
    return q.get_den() == 1 ? q.get_num().get_str() : to_string(q);
  }

  Rational base_exact(std::size_t j) const {
    const Rational x(static_cast<unsigned long>(j));
    switch (family_) {
      case Family::linear: return params_[0] * x;
      case Family::power: {
        if (!is_exact()) throw ModeMismatch("weight sequence " + describe() + " is not rational");
        const Integer& r = params_[1].get_num();
        unsigned long e = Integer(abs(r)).get_ui();
        Rational p = pow_int<Rational>(x, static_cast<unsigned>(e));
        return sgn(r) < 0 ? Rational(params_[0] / p) : Rational(params_[0] * p);
      }
      case Family::square: return x * x;
      case Family::triangular: return x * (x + 1) / 2;
      case Family::shifted_square: {
        Rational h = x - ratio(1, 2);
        return h * h;
      }
      case Family::custom: return params_[j - 1];
    }
    return 0;
  }

  Family family_;
  std::vector<Rational> params_;
  bool reciprocal_ = false;
};

// True iff w_1..w_upper are pairwise distinct. Exact comparison for rational
// sequences.
inline bool check_distinct(const WeightSequence& seq, std::size_t upper) {
  if (upper == 0) throw DomainError("check_distinct needs upper >= 1");
  seq.require_range(upper);
  if (seq.is_exact()) {
    std::vector<Rational> v;
    v.reserve(upper);
    for (std::size_t j = 1; j <= upper; ++j) v.push_back(seq.eval_exact(j));
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  }
  std::vector<BigFloat> v;
  v.reserve(upper);
  for (std::size_t j = 1; j <= upper; ++j) v.push_back(seq.eval<BigFloat>(j));
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

inline void require_distinct(const WeightSequence& seq, std::size_t upper, const char* name) {
  if (upper == 0) return;
  if (!check_distinct(seq, upper)) {
    throw DistinctnessViolation(std::string("weights ") + name + " = " + seq.describe() + " are not pairwise distinct on 1.." +
                                std::to_string(upper));
  }
}

// ---------------------------------------------------------------------------

enum class Model { I, II };

inline std::string_view to_string(Model m) { return m == Model::I ? "I" : "II"; }

inline Model parse_model(std::string_view s) {
  if (s == "I" || s == "1") return Model::I;
  if (s == "II" || s == "2") return Model::II;
  throw DomainError("model must be I or II, got '" + std::string(s) + "'");
}

// One urn instance. Color r (the last) is the one whose exhaustion stops the
// process; for two colors, weights = {A, B} and counts = {n, m}.
struct UrnSpec {
  Model model = Model::I;
  std::vector<WeightSequence> weights;
  std::vector<unsigned> counts;

  static UrnSpec two_color(Model model, WeightSequence a, WeightSequence b, unsigned n, unsigned m) {
    UrnSpec s{model, {std::move(a), std::move(b)}, {n, m}};
    s.validate();
    return s;
  }

  static UrnSpec multi(Model model, std::vector<WeightSequence> weights, std::vector<unsigned> counts) {
    UrnSpec s{model, std::move(weights), std::move(counts)};
    s.validate();
    return s;
  }

  std::size_t colors() const { return weights.size(); }

  bool is_exact() const {
    return std::all_of(weights.begin(), weights.end(), [](const WeightSequence& w) { return w.is_exact(); });
  }

  void validate() const {
    if (weights.size() < 2) throw DomainError("an urn needs at least two colors");
    if (weights.size() != counts.size()) {
      throw DomainError("urn has " + std::to_string(weights.size()) + " weight sequences but " +
                        std::to_string(counts.size()) + " counts");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) weights[i].require_range(counts[i]);
  }

  // Same urn under the other model with every sequence reciprocated.
  UrnSpec dual() const {
    UrnSpec d = *this;
    d.model = model == Model::I ? Model::II : Model::I;
    for (auto& w : d.weights) w = w.reciprocal();
    return d;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["model"] = std::string(to_string(model));
    auto ws = nlohmann::json::array();
    for (const auto& w : weights) ws.push_back(w.to_json());
    j["weights"] = ws;
    j["counts"] = counts;
    return j;
  }

  static UrnSpec from_json(const nlohmann::json& j) {
    try {
      UrnSpec s;
      s.model = parse_model(j.at("model").get<std::string>());
      for (const auto& w : j.at("weights")) {
        s.weights.push_back(w.is_string() ? WeightSequence::parse(w.get<std::string>()) : WeightSequence::from_json(w));
      }
      s.counts = j.at("counts").get<std::vector<unsigned>>();
      s.validate();
      return s;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("malformed urn description: ") + e.what());
    }
  }
};

}  // namespace urnlab
