#pragma once

// Exact scalar types: arbitrary-precision rationals and positive/negative
// radicals of the form sign * prod_k b_k^{e_k} with rational exponents.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reinhardt {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
  const Integer den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Integer power, negative exponents allowed for nonzero bases.
inline Rational pow(const Rational& base, long long exponent) {
  if (exponent < 0) {
    if (base == 0) throw Error("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  auto e = static_cast<unsigned long long>(exponent);
  while (e != 0) {
    if (e & 1u) result *= b;
    e >>= 1u;
    if (e != 0) b *= b;
  }
  return result;
}

/// Parses "p", "-p" or "p/q" (no whitespace). Throws Error on malformed input.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (!valid_int(num)) throw Error("malformed rational '" + std::string(text) + "'");
  if (slash == std::string_view::npos) return Rational(Integer(num));
  std::string den(text.substr(slash + 1));
  if (!valid_int(den) || den.front() == '-' || den.front() == '+')
    throw Error("malformed rational '" + std::string(text) + "'");
  Integer d(den);
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  return Rational(Integer(num), d);
}

namespace detail {

// Trial division up to this bound; the cofactor, if any, becomes a base of its own.
inline constexpr unsigned kTrialDivisionLimit = 1u << 16;

inline void factor_into(Integer value, const Rational& exponent,
                        std::map<Integer, Rational>& out) {
  for (unsigned p = 2; p <= kTrialDivisionLimit && Integer(p) * p <= value;
       p += (p == 2 ? 1 : 2)) {
    long long count = 0;
    while (value % p == 0) {
      value /= p;
      ++count;
    }
    if (count != 0) out[Integer(p)] += exponent * count;
  }
  if (value > 1) out[value] += exponent;
}

}  // namespace detail

/// A real number sign * prod_k base_k^(exponent_k) with integer bases and
/// rational exponents. Closed under multiplication, division and rational
/// powers; used for dilation factors and rescaled coefficients that leave Q.
///
/// Bases come from trial division; a cofactor without small prime factors is
/// kept as one base. Equality is exact as long as such cofactors of different
/// values are coprime (always true for coefficients below 2^32).
class Radical {
 public:
  Radical() : sign_(0) {}
  Radical(const Rational& q) {  // NOLINT: implicit by intent
    sign_ = q.sign();
    if (sign_ == 0) return;
    const Rational a = boost::multiprecision::abs(q);
    detail::factor_into(numerator_of(a), Rational(1), factors_);
    detail::factor_into(denominator_of(a), Rational(-1), factors_);
    prune();
  }
  Radical(long long v) : Radical(Rational(v)) {}  // NOLINT

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  const std::map<Integer, Rational>& factors() const { return factors_; }

  bool is_rational() const {
    for (const auto& [base, e] : factors_)
      if (denominator_of(e) != 1) return false;
    return true;
  }

  /// Throws if the value is irrational.
  Rational to_rational() const {
    if (!is_rational()) throw Error("radical " + str() + " is not rational");
    Rational out = sign_;
    for (const auto& [base, e] : factors_)
      out *= reinhardt::pow(Rational(base), numerator_of(e).convert_to<long long>());
    return out;
  }

  double to_double() const {
    double out = sign_;
    for (const auto& [base, e] : factors_)
      out *= std::pow(base.convert_to<double>(), reinhardt::to_double(e));
    return out;
  }

  /// Writes the value as sign * radicand^(1/index) with a rational radicand
  /// and the smallest index. Zero is (0, 1).
  std::pair<Rational, long long> radicand_and_index() const {
    if (sign_ == 0) return {Rational(0), 1};
    long long index = 1;
    for (const auto& [base, e] : factors_)
      index = std::lcm(index, denominator_of(e).convert_to<long long>());
    Rational radicand = 1;
    for (const auto& [base, e] : factors_) {
      const Rational scaled = e * index;
      radicand *= reinhardt::pow(Rational(base), numerator_of(scaled).convert_to<long long>());
    }
    return {radicand, index};
  }

  /// "p/q" when rational, otherwise "[-](p/q)^(1/k)".
  std::string str() const {
    if (sign_ == 0) return "0";
    if (is_rational()) return to_string(to_rational());
    const auto [radicand, index] = radicand_and_index();
    std::string out = sign_ < 0 ? "-" : "";
    out += "(" + to_string(radicand) + ")^(1/" + std::to_string(index) + ")";
    return out;
  }

  Radical pow(const Rational& exponent) const {
    if (sign_ == 0) {
      if (exponent <= 0) throw Error("zero raised to a non-positive power");
      return {};
    }
    if (sign_ < 0) {
      if (denominator_of(exponent) != 1)
        throw Error("fractional power of a negative radical");
    }
    Radical out;
    out.sign_ = 1;
    if (sign_ < 0 && numerator_of(exponent) % 2 != 0) out.sign_ = -1;
    for (const auto& [base, e] : factors_) out.factors_[base] = e * exponent;
    out.prune();
    return out;
  }

  friend Radical operator*(const Radical& a, const Radical& b) {
    Radical out;
    out.sign_ = a.sign_ * b.sign_;
    if (out.sign_ == 0) return out;
    out.factors_ = a.factors_;
    for (const auto& [base, e] : b.factors_) out.factors_[base] += e;
    out.prune();
    return out;
  }
  friend Radical operator/(const Radical& a, const Radical& b) {
    if (b.sign_ == 0) throw Error("division by zero radical");
    return a * b.pow(Rational(-1));
  }
  Radical operator-() const {
    Radical out = *this;
    out.sign_ = -out.sign_;
    return out;
  }
  friend bool operator==(const Radical& a, const Radical& b) {
    return a.sign_ == b.sign_ && a.factors_ == b.factors_;
  }
  /// Orders by numeric value; exact when the values' ratio is rational or
  /// the doubles differ, which covers the small coefficients used here.
  friend bool operator<(const Radical& a, const Radical& b) {
    if (a == b) return false;
    const Radical ratio = a / b;
    if (ratio.is_rational() && b.sign_ != 0) {
      const Rational r = ratio.to_rational();
      return b.sign_ > 0 ? r < 1 : r > 1;
    }
    return a.to_double() < b.to_double();
  }

 private:
  void prune() {
    for (auto it = factors_.begin(); it != factors_.end();) {
      if (it->second == 0)
        it = factors_.erase(it);
      else
        ++it;
    }
  }

  int sign_ = 0;
  std::map<Integer, Rational> factors_;
};

}  // namespace reinhardt
