#include "exact_linear.hpp"

#include <algorithm>
#include <stdexcept>

namespace n32::detail {

const mpz_class* IntegerEchelon::find(const Row& r, int col)
{
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const Entry& e, int c) { return e.first < c; });
  if (it == r.end() || it->first != col)
    return nullptr;
  return &it->second;
}

void IntegerEchelon::make_primitive(Row& r)
{
  if (r.empty())
    return;
  mpz_class g = 0;
  for (const auto& [c, v] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1)
      break;
  }
  if (r.front().second < 0)
    g = -g;
  if (g != 1)
    for (auto& [c, v] : r)
      mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntegerEchelon::Row IntegerEchelon::combine(const mpz_class& a, const Row& r, const mpz_class& b, const Row& p)
{
  Row out;
  out.reserve(r.size() + p.size());
  auto i = r.begin();
  auto j = p.begin();
  while (i != r.end() || j != p.end()) {
    if (j == p.end() || (i != r.end() && i->first < j->first)) {
      out.emplace_back(i->first, a * i->second);
      ++i;
    } else if (i == r.end() || j->first < i->first) {
      out.emplace_back(j->first, -b * j->second);
      ++j;
    } else {
      mpz_class v = a * i->second - b * j->second;
      if (v != 0)
        out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

bool IntegerEchelon::add_row(const SparseRationalRow& row)
{
  mpz_class lcm = 1;
  for (const auto& [c, q] : row) {
    if (c < 0 || c >= ncols_)
      throw std::out_of_range("IntegerEchelon: column index");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  Row r;
  for (const auto& [c, q] : row) {
    if (q == 0)
      continue;
    mpz_class v = q.get_num() * (lcm / q.get_den());
    r.emplace_back(c, std::move(v));
  }
  make_primitive(r);

  // Pivot rows carry no other pivot column, so one sweep clears r.
  std::vector<int> hits;
  for (const auto& [c, v] : r)
    if (pivots_.count(c))
      hits.push_back(c);
  for (int c : hits) {
    const mpz_class* rc = find(r, c);
    if (!rc)
      continue;
    const Row& p = pivots_.at(c);
    const mpz_class pc = *find(p, c);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), pc.get_mpz_t(), rc->get_mpz_t());
    mpz_class a = pc / g;
    mpz_class b = *rc / g;
    r = combine(a, r, b, p);
    make_primitive(r);
  }
  if (r.empty())
    return false;

  const int col = r.front().first;
  const mpz_class rc = r.front().second;
  for (auto& [pc_col, p] : pivots_) {
    const mpz_class* pv = find(p, col);
    if (!pv)
      continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), rc.get_mpz_t(), pv->get_mpz_t());
    mpz_class a = rc / g;
    mpz_class b = *pv / g;
    p = combine(a, p, b, r);
    make_primitive(p);
  }
  pivots_.emplace(col, std::move(r));
  return true;
}

std::vector<std::vector<Rational>> IntegerEchelon::nullspace() const
{
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < ncols_; ++f) {
    if (pivots_.count(f))
      continue;
    std::vector<Rational> v(static_cast<std::size_t>(ncols_), Rational(0));
    v[static_cast<std::size_t>(f)] = 1;
    for (const auto& [c, p] : pivots_) {
      const mpz_class* ef = find(p, f);
      if (!ef)
        continue;
      Rational q(*ef, *find(p, c));
      q.canonicalize();
      v[static_cast<std::size_t>(c)] = -q;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace n32::detail
