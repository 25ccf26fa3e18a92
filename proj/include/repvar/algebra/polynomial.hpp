#pragma once

#include <array>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "repvar/algebra/rational.hpp"

namespace repvar {

/// Exponent of a bivariate monomial x^a y^b, ordered lexicographically by
/// (x-degree, y-degree).
using BiExponent = std::array<unsigned, 2>;

namespace detail {

inline BiExponent add_exponents(const BiExponent& a, const BiExponent& b) {
  return {a[0] + b[0], a[1] + b[1]};
}
inline unsigned add_exponents(unsigned a, unsigned b) { return a + b; }

}  // namespace detail

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
template <class Exponent>
class SparsePoly {
 public:
  using exponent_type = Exponent;
  using term_map = std::map<Exponent, Rat>;

  SparsePoly() = default;

  /// Constant polynomial.
  explicit SparsePoly(const Rat& c) {
    if (c != 0) terms_.emplace(Exponent{}, c);
  }

  SparsePoly(std::initializer_list<std::pair<const Exponent, Rat>> terms) {
    for (const auto& [e, c] : terms) add_term(e, c);
  }

  static SparsePoly monomial(const Exponent& e, const Rat& c = 1) {
    SparsePoly p;
    p.add_term(e, c);
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const term_map& terms() const { return terms_; }

  Rat coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  /// Largest exponent in the term order; empty for the zero polynomial.
  std::optional<Exponent> leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  Rat leading_coeff() const {
    return terms_.empty() ? Rat(0) : terms_.rbegin()->second;
  }

  void add_term(const Exponent& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  SparsePoly& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator-(SparsePoly a) { return a *= Rat(-1); }
  friend SparsePoly operator*(SparsePoly a, const Rat& s) { return a *= s; }
  friend SparsePoly operator*(const Rat& s, SparsePoly a) { return a *= s; }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        r.add_term(detail::add_exponents(ea, eb), ca * cb);
    return r;
  }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.terms_ == b.terms_;
  }

  SparsePoly pow(unsigned k) const {
    SparsePoly result(Rat(1)), base = *this;
    while (k) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return result;
  }

 private:
  term_map terms_;
};

using RatPoly = SparsePoly<unsigned>;
using RatPoly2 = SparsePoly<BiExponent>;

/// The polynomial t.
inline RatPoly poly_t() { return RatPoly::monomial(1); }

/// c * t^e.
inline RatPoly poly_term(unsigned e, const Rat& c = 1) { return RatPoly::monomial(e, c); }

/// Builds a polynomial from dense coefficients c0, c1, ...
inline RatPoly poly_from_coeffs(const std::vector<Rat>& coeffs) {
  RatPoly p;
  for (unsigned i = 0; i < coeffs.size(); ++i) p.add_term(i, coeffs[i]);
  return p;
}

inline std::optional<unsigned> degree(const RatPoly& p) { return p.leading_exponent(); }

/// Dense coefficient list c0..c_deg; empty for zero.
inline std::vector<Rat> dense_coeffs(const RatPoly& p) {
  std::vector<Rat> out;
  if (auto d = degree(p)) {
    out.assign(*d + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) out[e] = c;
  }
  return out;
}

inline Rat evaluate(const RatPoly& p, const Rat& x) {
  Rat acc = 0;
  auto d = degree(p);
  if (!d) return acc;
  for (long e = *d; e >= 0; --e) acc = acc * x + p.coeff(static_cast<unsigned>(e));
  return acc;
}

/// t^d * p(1/t). Requires d >= deg p.
inline RatPoly poly_reciprocal(const RatPoly& p, unsigned d) {
  if (auto deg = degree(p); deg && *deg > d)
    throw std::domain_error("poly_reciprocal: degree " + std::to_string(*deg) +
                            " exceeds reflection degree " + std::to_string(d));
  RatPoly r;
  for (const auto& [e, c] : p.terms()) r.add_term(d - e, c);
  return r;
}

/// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const unsigned db = *degree(b);
  const Rat lb = b.leading_coeff();
  RatPoly q, r = a;
  while (!r.is_zero() && *degree(r) >= db) {
    const unsigned shift = *degree(r) - db;
    const Rat f = r.leading_coeff() / lb;
    q.add_term(shift, f);
    for (const auto& [e, c] : b.terms()) r.add_term(e + shift, -f * c);
  }
  return {q, r};
}

inline RatPoly make_monic(RatPoly p) {
  if (p.is_zero()) return p;
  return p *= Rat(1) / p.leading_coeff();
}

/// Monic gcd over Q (zero iff both inputs are zero).
inline RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

/// Evaluates x^a y^b at (x, y) = (t^wx, t^wy), giving t^(wx*a + wy*b).
inline RatPoly specialize(const RatPoly2& p, unsigned x_weight, unsigned y_weight) {
  RatPoly r;
  for (const auto& [e, c] : p.terms()) r.add_term(x_weight * e[0] + y_weight * e[1], c);
  return r;
}

inline Rat evaluate(const RatPoly2& p, const Rat& x, const Rat& y) {
  Rat acc = 0;
  for (const auto& [e, c] : p.terms()) {
    Rat m = c;
    for (unsigned i = 0; i < e[0]; ++i) m *= x;
    for (unsigned i = 0; i < e[1]; ++i) m *= y;
    acc += m;
  }
  return acc;
}

namespace detail {

inline void write_rat(std::ostream& os, const Rat& c) {
  os << numerator_string(c);
  if (boost::multiprecision::denominator(c) != 1) os << '/' << denominator_string(c);
}

}  // namespace detail

/// Human-readable form, ascending exponents, e.g. "1 + 2*t^3 + t^4".
inline std::string to_string(const RatPoly& p, const std::string& var = "t") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rat a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (e == 0) {
      detail::write_rat(os, a);
      continue;
    }
    if (a == -1) {
      os << '-';
    } else if (a != 1) {
      detail::write_rat(os, a);
      os << '*';
    }
    os << var;
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

inline std::string to_string(const RatPoly2& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    detail::write_rat(os, c);
    if (e[0]) os << "*x" << (e[0] > 1 ? "^" + std::to_string(e[0]) : "");
    if (e[1]) os << "*y" << (e[1] > 1 ? "^" + std::to_string(e[1]) : "");
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << to_string(p); }
inline std::ostream& operator<<(std::ostream& os, const RatPoly2& p) { return os << to_string(p); }

}  // namespace repvar
