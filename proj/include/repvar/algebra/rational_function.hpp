#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "repvar/algebra/polynomial.hpp"

namespace repvar {

/// Raised when a rational function that should be a polynomial is not.
/// Carries the remainder of numerator modulo the reduced denominator.
class NotPolynomial : public std::domain_error {
 public:
  NotPolynomial(RatPoly remainder, RatPoly denominator)
      : std::domain_error("rational function is not a polynomial: remainder " +
                          to_string(remainder) + " modulo " + to_string(denominator)),
        remainder_(std::move(remainder)),
        denominator_(std::move(denominator)) {}

  const RatPoly& remainder() const { return remainder_; }
  const RatPoly& denominator() const { return denominator_; }

 private:
  RatPoly remainder_;
  RatPoly denominator_;
};

/// Raised by series expansion when the denominator vanishes at t = 0.
class PoleAtZero : public std::domain_error {
 public:
  PoleAtZero() : std::domain_error("rational function has a pole at t = 0") {}
};

inline constexpr unsigned kDefaultSeriesDegree = 40;

/// Univariate rational function in canonical form: numerator and
/// denominator coprime, denominator a primitive integer polynomial with
/// positive leading coefficient. Two RatFn compare equal iff they are equal
/// as functions.
class RatFn {
 public:
  RatFn() : den_(Rat(1)) {}
  RatFn(RatPoly num) : num_(std::move(num)), den_(Rat(1)) {}  // NOLINT(implicit)
  RatFn(RatPoly num, RatPoly den) : num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
  }

  const RatPoly& numerator() const { return num_; }
  const RatPoly& denominator() const { return den_; }

  bool is_polynomial() const { return !degree(den_).value_or(0); }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RatFn operator-(const RatFn& a) { return {-a.num_, a.den_}; }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.num_.is_zero()) throw std::domain_error("division by the zero rational function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

  friend bool operator==(const RatFn& a, const RatFn& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Equality by cross-multiplication, independent of canonical form.
  friend bool cross_equal(const RatFn& a, const RatFn& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = RatPoly(Rat(1));
      return;
    }
    const RatPoly g = gcd(num_, den_);
    if (degree(g).value_or(0) > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    // Scale the denominator to a primitive integer polynomial.
    BigInt lcm_den = 1;
    for (const auto& [e, c] : den_.terms()) {
      const BigInt d = boost::multiprecision::denominator(c);
      lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, d) * d;
    }
    BigInt content = 0;
    for (const auto& [e, c] : den_.terms())
      content = boost::multiprecision::gcd(content, boost::multiprecision::numerator(Rat(c * lcm_den)));
    Rat scale = Rat(lcm_den) / Rat(content);
    if (den_.leading_coeff() < 0) scale = -scale;
    num_ *= scale;
    den_ *= scale;
  }

  RatPoly num_;
  RatPoly den_;
};

/// Returns f as a polynomial; throws NotPolynomial when the reduced
/// denominator is not a constant.
inline RatPoly ratfn_simplify_to_poly(const RatFn& f) {
  if (!f.is_polynomial()) {
    throw NotPolynomial(divmod(f.numerator(), f.denominator()).second, f.denominator());
  }
  return f.numerator() * (Rat(1) / f.denominator().coeff(0));
}

/// Taylor coefficients c_0..c_{n_max} of f at t = 0.
inline std::vector<Rat> series_expand(const RatFn& f, unsigned n_max = kDefaultSeriesDegree) {
  const RatPoly& den = f.denominator();
  const Rat d0 = den.coeff(0);
  if (d0 == 0) throw PoleAtZero();
  // den * c = num, solved term by term.
  std::vector<Rat> c(n_max + 1, Rat(0));
  for (unsigned k = 0; k <= n_max; ++k) {
    Rat acc = f.numerator().coeff(k);
    for (const auto& [e, dc] : den.terms()) {
      if (e == 0 || e > k) continue;
      acc -= dc * c[k - e];
    }
    c[k] = acc / d0;
  }
  return c;
}

inline std::string to_string(const RatFn& f) {
  if (f.is_polynomial()) return to_string(ratfn_simplify_to_poly(f));
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RatFn& f) { return os << to_string(f); }

}  // namespace repvar
