#pragma once

#include <cstdio>
#include <string>
#include <variant>

#include "urnlab/numerics.hpp"

namespace urnlab {

// Decimal rendering with a fixed number of digits after the point.
// Rationals are rounded exactly (half away from zero).
inline std::string to_decimal(const Rational& q, unsigned decimals) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, decimals);
  Rational scaled = q * Rational(scale);
  Integer num = abs(scaled.get_num());
  Integer den = scaled.get_den();
  Integer rounded = (2 * num + den) / (2 * den);
  std::string digits = rounded.get_str();
  if (digits.size() <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
  std::string out = sgn(q) < 0 && rounded != 0 ? "-" : "";
  out += digits.substr(0, digits.size() - decimals);
  if (decimals > 0) out += "." + digits.substr(digits.size() - decimals);
  return out;
}

inline std::string to_decimal(const BigFloat& x, unsigned decimals) {
  return x.str(static_cast<std::streamsize>(decimals), std::ios_base::fixed);
}

inline std::string to_decimal(double x, unsigned decimals) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", static_cast<int>(decimals), x);
  return buf;
}

// Serialized forms:
//   exact     "numerator/denominator"
//   bigfloat  "<scientific decimal>@<bits>", e.g. "2.72e-01@256"
//   float     shortest round-trip "%.17g"
inline std::string serialize(const Rational& q) { return to_string(q); }

inline std::string serialize(const BigFloat& x) {
  const long bits = mpfr_get_prec(x.backend().data());
  const auto digits = static_cast<std::streamsize>(bits * 0.301029995663981195);
  return x.str(digits, std::ios_base::scientific) + "@" + std::to_string(bits);
}

inline std::string serialize(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Runtime-tagged scalar. Arithmetic between different modes throws
// ModeMismatch instead of converting.
class Scalar {
 public:
  explicit Scalar(Rational q) : value_(std::move(q)) {}
  explicit Scalar(BigFloat x) : value_(std::move(x)) {}
  explicit Scalar(double x) : value_(x) {}

  template <Field T>
  static Scalar of(T x) {
    return Scalar(std::move(x));
  }

  ScalarMode mode() const {
    switch (value_.index()) {
      case 0: return ScalarMode::exact_rational;
      case 1: return ScalarMode::big_float;
      default: return ScalarMode::machine_float;
    }
  }

  template <Field T>
  const T& get() const {
    if (const T* p = std::get_if<T>(&value_)) return *p;
    throw ModeMismatch("scalar holds " + std::string(urnlab::to_string(mode())) + ", requested " +
                       std::string(urnlab::to_string(field_traits<T>::mode)));
  }

  double to_double() const {
    return std::visit([](const auto& v) { return urnlab::to_double(v); }, value_);
  }

  std::string serialize() const {
    return std::visit([](const auto& v) { return urnlab::serialize(v); }, value_);
  }

  std::string decimal(unsigned decimals) const {
    return std::visit([decimals](const auto& v) { return urnlab::to_decimal(v, decimals); }, value_);
  }

  // Inverse of serialize().
  static Scalar parse(std::string_view text) {
    std::string s(text);
    if (auto at = s.find('@'); at != std::string::npos) {
      unsigned bits = static_cast<unsigned>(std::stoul(s.substr(at + 1)));
      if (bits < MPFR_PREC_MIN || bits > MPFR_PREC_MAX) throw DomainError("bad precision in '" + s + "'");
      BigFloat x;
      mpfr_set_prec(x.backend().data(), static_cast<mpfr_prec_t>(bits));
      if (mpfr_set_str(x.backend().data(), s.substr(0, at).c_str(), 10, MPFR_RNDN) != 0) {
        throw DomainError("not a big-float literal: '" + s + "'");
      }
      return Scalar(std::move(x));
    }
    if (s.find('/') != std::string::npos) return Scalar(parse_rational(s));
    std::size_t used = 0;
    double d = std::stod(s, &used);
    if (used != s.size()) throw DomainError("not a float literal: '" + s + "'");
    return Scalar(d);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, [](const auto& x, const auto& y) { return x + y; }); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, [](const auto& x, const auto& y) { return x - y; }); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, [](const auto& x, const auto& y) { return x * y; }); }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return combine(a, b, [](const auto& x, const auto& y) {
      if (is_zero(y)) throw DomainError("division by zero");
      return x / y;
    });
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return a.value_ == b.value_;
  }

  friend bool operator<(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return x < std::get<T>(b.value_);
        },
        a.value_);
  }

 private:
  static void check_same(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) {
      throw ModeMismatch("cannot mix " + std::string(urnlab::to_string(a.mode())) + " and " +
                         std::string(urnlab::to_string(b.mode())) + " scalars");
    }
  }

  template <class Op>
  static Scalar combine(const Scalar& a, const Scalar& b, Op op) {
    check_same(a, b);
    return std::visit(
        [&](const auto& x) -> Scalar {
          using T = std::decay_t<decltype(x)>;
          return Scalar(T(op(x, std::get<T>(b.value_))));
        },
        a.value_);
  }

  std::variant<Rational, BigFloat, double> value_;
};

}  // namespace urnlab
