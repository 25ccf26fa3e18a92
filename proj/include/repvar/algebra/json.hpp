#pragma once

// JSON encoding of exact polynomials: an array of
// [exponent, "numerator", "denominator"] triples in ascending exponent order.
// Bivariate exponents are encoded as [x_degree, y_degree].

#include <json.hpp>

#include "repvar/algebra/rational_function.hpp"

namespace repvar {

inline nlohmann::json rat_to_json(const Rat& r) {
  return nlohmann::json::array({numerator_string(r), denominator_string(r)});
}

inline nlohmann::json poly_to_json(const RatPoly& p) {
  auto out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms())
    out.push_back({e, numerator_string(c), denominator_string(c)});
  return out;
}

inline nlohmann::json poly_to_json(const RatPoly2& p) {
  auto out = nlohmann::json::array();
  for (const auto& [e, c] : p.terms())
    out.push_back({{e[0], e[1]}, numerator_string(c), denominator_string(c)});
  return out;
}

inline RatPoly poly_from_json(const nlohmann::json& j) {
  RatPoly p;
  for (const auto& term : j)
    p.add_term(term.at(0).get<unsigned>(),
               rat_from_strings(term.at(1).get<std::string>(), term.at(2).get<std::string>()));
  return p;
}

inline RatPoly2 poly2_from_json(const nlohmann::json& j) {
  RatPoly2 p;
  for (const auto& term : j)
    p.add_term({term.at(0).at(0).get<unsigned>(), term.at(0).at(1).get<unsigned>()},
               rat_from_strings(term.at(1).get<std::string>(), term.at(2).get<std::string>()));
  return p;
}

inline nlohmann::json ratfn_to_json(const RatFn& f) {
  return {{"numerator", poly_to_json(f.numerator())},
          {"denominator", poly_to_json(f.denominator())}};
}

inline RatFn ratfn_from_json(const nlohmann::json& j) {
  return {poly_from_json(j.at("numerator")), poly_from_json(j.at("denominator"))};
}

}  // namespace repvar
