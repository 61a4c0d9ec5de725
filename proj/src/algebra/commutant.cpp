#include "exact_linear.hpp"
#include "n32/algebra.hpp"

#include <map>
#include <stdexcept>

namespace n32::algebra {

bool SecondOrderOperator::is_zero() const
{
  if (!zeroth.is_zero())
    return false;
  for (std::size_t a = 0; a < 6; ++a) {
    if (!first[a].is_zero())
      return false;
    for (std::size_t b = a; b < 6; ++b)
      if (!second[a][b].is_zero())
        return false;
  }
  return true;
}

SecondOrderOperator extract_operator(const std::function<MultiPoly(const MultiPoly&)>& op)
{
  SecondOrderOperator out;
  out.zeroth = op(MultiPoly(1));
  std::array<MultiPoly, 6> u;
  for (std::size_t a = 0; a < 6; ++a) {
    u[a] = MultiPoly::variable(a);
    out.first[a] = op(u[a]) - out.zeroth * u[a];
  }
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a; b < 6; ++b) {
      MultiPoly uu = u[a] * u[b];
      MultiPoly rest = op(uu) - out.zeroth * uu - out.first[a] * u[b] - out.first[b] * u[a];
      out.second[a][b] = (a == b) ? rest * Rational(1, 2) : rest;
    }
  }
  return out;
}

SecondOrderOperator sublaplacian_operator()
{
  return extract_operator([](const MultiPoly& f) { return sublaplacian(f); });
}

SecondOrderOperator commutator_with_sublaplacian(const VectorField& v)
{
  return extract_operator([&v](const MultiPoly& f) { return sublaplacian(vf_apply(v, f)) - vf_apply(v, sublaplacian(f)); });
}

std::vector<VectorField> stock_commutant()
{
  std::vector<VectorField> out;
  for (std::size_t i = 0; i < 3; ++i)
    out.push_back(Xhat(i));
  for (std::size_t i = 0; i < 3; ++i)
    out.push_back(theta(i));
  for (std::size_t i = 0; i < 3; ++i)
    out.push_back(Y(i));
  return out;
}

namespace {

std::vector<MultiPoly::Exponent> monomials_up_to(int max_degree)
{
  std::vector<MultiPoly::Exponent> out;
  MultiPoly::Exponent e{};
  std::function<void(std::size_t, int)> walk = [&](std::size_t var, int left) {
    if (var == 6) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[var] = static_cast<std::int8_t>(k);
      walk(var + 1, left - k);
    }
    e[var] = 0;
  };
  walk(0, max_degree);
  return out;
}

// Assigns dense integer ids to (slot, exponent) keys.
class KeyIndex {
public:
  int id(int slot, const MultiPoly::Exponent& e)
  {
    auto [it, inserted] = ids_.try_emplace({slot, e}, static_cast<int>(ids_.size()));
    return it->second;
  }
  int size() const { return static_cast<int>(ids_.size()); }

private:
  std::map<std::pair<int, MultiPoly::Exponent>, int> ids_;
};

void scatter(std::map<int, detail::SparseRationalRow>& rows_by_key, KeyIndex& keys, int slot, const MultiPoly& p,
             int column)
{
  for (const auto& [e, c] : p.terms())
    rows_by_key[keys.id(slot, e)][column] = c;
}

} // namespace

std::vector<VectorField> commutant_basis(int max_degree)
{
  if (max_degree < 1)
    throw std::invalid_argument("commutant_basis: max_degree must be >= 1");

  const auto monos = monomials_up_to(max_degree);
  const int ncols = static_cast<int>(6 * monos.size());

  // Column (slot k, monomial m) is the field m * d_k. Each column of the
  // system is the coefficient list of [L, m d_k].
  std::map<int, detail::SparseRationalRow> rows;
  KeyIndex keys;
  for (std::size_t k = 0; k < 6; ++k) {
    for (std::size_t m = 0; m < monos.size(); ++m) {
      VectorField v;
      v.coef[k] = MultiPoly::monomial(monos[m]);
      const int col = static_cast<int>(k * monos.size() + m);
      auto op = commutator_with_sublaplacian(v);
      scatter(rows, keys, 0, op.zeroth, col);
      for (std::size_t a = 0; a < 6; ++a) {
        scatter(rows, keys, 1 + static_cast<int>(a), op.first[a], col);
        for (std::size_t b = a; b < 6; ++b)
          scatter(rows, keys, 7 + static_cast<int>(6 * a + b), op.second[a][b], col);
      }
    }
  }

  detail::IntegerEchelon ech(ncols);
  for (const auto& [key, row] : rows)
    ech.add_row(row);

  std::vector<VectorField> basis;
  for (const auto& vec : ech.nullspace()) {
    VectorField v;
    for (std::size_t k = 0; k < 6; ++k)
      for (std::size_t m = 0; m < monos.size(); ++m) {
        const auto& c = vec[k * monos.size() + m];
        if (c != 0)
          v.coef[k].add_term(monos[m], c);
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t span_rank(const std::vector<VectorField>& fields)
{
  // Transpose: each field is a column; rows are (slot, exponent) keys.
  KeyIndex keys;
  std::map<int, detail::SparseRationalRow> rows;
  for (std::size_t j = 0; j < fields.size(); ++j)
    for (std::size_t k = 0; k < 6; ++k)
      scatter(rows, keys, static_cast<int>(k), fields[j].coef[k], static_cast<int>(j));
  detail::IntegerEchelon ech(static_cast<int>(fields.size()));
  for (const auto& [key, row] : rows)
    ech.add_row(row);
  return ech.rank();
}

} // namespace n32::algebra
