#pragma once

// Canonical JSON for exact objects. Terms appear in the polynomial's own
// (descending grlex) order and coefficients are "num/den" strings, so equal
// values always serialize to identical text.

#include "n32/algebra.hpp"

#include <json.hpp>

namespace n32 {

using Json = nlohmann::ordered_json;

template <std::size_t N>
Json to_json(const Polynomial<N>& p, std::span<const std::string_view, N> names)
{
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json exps = Json::array();
    for (auto v : e)
      exps.push_back(static_cast<int>(v));
    terms.push_back({{"exp", exps}, {"coef", to_fraction_string(c)}});
  }
  Json vars = Json::array();
  for (auto n : names)
    vars.push_back(std::string(n));
  return {{"vars", vars}, {"terms", terms}};
}

template <std::size_t N>
Polynomial<N> polynomial_from_json(const Json& j)
{
  Polynomial<N> p;
  for (const auto& t : j.at("terms")) {
    const auto& exps = t.at("exp");
    if (exps.size() != N)
      throw std::invalid_argument("polynomial_from_json: exponent arity");
    typename Polynomial<N>::Exponent e{};
    for (std::size_t i = 0; i < N; ++i)
      e[i] = static_cast<std::int8_t>(exps[i].get<int>());
    p.add_term(e, parse_rational(t.at("coef").get<std::string>()));
  }
  return p;
}

inline Json to_json(const algebra::MultiPoly& p) { return to_json<6>(p, algebra::kCoordNames); }

inline Json to_json(const algebra::VectorField& v)
{
  static constexpr std::array<const char*, 6> slots = {"d_x1", "d_x2", "d_x3", "d_y1", "d_y2", "d_y3"};
  Json j = Json::object();
  for (std::size_t k = 0; k < 6; ++k)
    j[slots[k]] = to_json(v.coef[k]);
  return j;
}

inline algebra::VectorField vector_field_from_json(const Json& j)
{
  static constexpr std::array<const char*, 6> slots = {"d_x1", "d_x2", "d_x3", "d_y1", "d_y2", "d_y3"};
  algebra::VectorField v;
  for (std::size_t k = 0; k < 6; ++k)
    v.coef[k] = polynomial_from_json<6>(j.at(slots[k]));
  return v;
}

} // namespace n32
