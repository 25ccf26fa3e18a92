#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace repvar {

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string numerator_string(const Rat& r) {
  return boost::multiprecision::numerator(r).str();
}

inline std::string denominator_string(const Rat& r) {
  return boost::multiprecision::denominator(r).str();
}

inline Rat rat_from_strings(const std::string& num, const std::string& den) {
  BigInt d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in rational literal");
  return Rat(BigInt(num)) / Rat(d);
}

/// Binomial coefficient C(n, k) as an exact integer; zero outside 0 <= k <= n.
inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace repvar
