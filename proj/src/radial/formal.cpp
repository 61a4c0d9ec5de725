// Formal jet calculus for the reduced operators. f is a symbol; D_a are total
// derivatives acting on polynomials in (r1, r2, z, f, jets), shifting each jet
// symbol to the next order.

#include "n32/radial.hpp"

#include <map>
#include <stdexcept>

namespace n32::radial {

const std::array<std::string_view, 23> kJetNames = {
    "r1",   "r2",   "z",    "f",    "f1",   "f2",   "fz",   "f11",  "f12",  "f1z",  "f22",  "f2z",
    "fzz",  "f111", "f112", "f11z", "f122", "f12z", "f1zz", "f222", "f22z", "f2zz", "fzzz"};

template <>
struct ScalarOps<JetPoly> {
  static JetPoly constant(long num, long den = 1) { return JetPoly(ScalarOps<Rational>::constant(num, den)); }
  static JetPoly reciprocal(const JetPoly& v)
  {
    if (v.size() != 1)
      throw std::domain_error("formal reciprocal of a non-monomial");
    const auto& [e, c] = *v.terms().begin();
    JetPoly::Exponent inv;
    for (std::size_t i = 0; i < e.size(); ++i)
      inv[i] = static_cast<std::int8_t>(-e[i]);
    return JetPoly::monomial(inv, Rational(1) / c);
  }
  static bool is_zero(const JetPoly& v) { return v.is_zero(); }
};

namespace {

constexpr std::size_t kFirstJet = 3; // index of f itself

// Derivative counts (n_r1, n_r2, n_z) of each jet symbol.
using Counts = std::array<int, 3>;

const std::array<Counts, 20>& jet_counts()
{
  static const std::array<Counts, 20> table = [] {
    std::array<Counts, 20> t{};
    std::size_t k = 0;
    for (int order = 0; order <= 3; ++order)
      for (int a = order; a >= 0; --a)
        for (int b = order - a; b >= 0; --b)
          t[k++] = {a, b, order - a - b};
    return t;
  }();
  return table;
}

std::size_t jet_index(const Counts& c)
{
  const auto& t = jet_counts();
  for (std::size_t k = 0; k < t.size(); ++k)
    if (t[k] == c)
      return kFirstJet + k;
  throw std::out_of_range("jet order above 3 requested");
}

JetPoly var(std::size_t i) { return JetPoly::variable(i); }

/// Total derivative in coordinate a (0 = r1, 1 = r2, 2 = z).
JetPoly total_derivative(const JetPoly& p, std::size_t a)
{
  JetPoly r = p.derivative(a);
  for (std::size_t k = 0; k < 20; ++k) {
    const std::size_t v = kFirstJet + k;
    JetPoly dp = p.derivative(v);
    if (dp.is_zero())
      continue;
    Counts c = jet_counts()[k];
    ++c[a];
    r += dp * var(jet_index(c));
  }
  return r;
}

JetPoly formal_lhat(const JetPoly& p)
{
  const JetPoly r1 = var(0), r2 = var(1), z = var(2);
  const JetPoly d1 = total_derivative(p, 0), d2 = total_derivative(p, 1), dz = total_derivative(p, 2);
  return Rational(4) * r1 * total_derivative(d1, 0) + (r1 * r2 - z * z) * total_derivative(d2, 1) +
         r2 * total_derivative(dz, 2) + Rational(4) * z * total_derivative(d1, 2) + Rational(6) * d1 + r1 * d2;
}

JetPoly formal_gammahat(const JetPoly& p, const JetPoly& q)
{
  const JetPoly r1 = var(0), r2 = var(1), z = var(2);
  const JetPoly p1 = total_derivative(p, 0), p2 = total_derivative(p, 1), pz = total_derivative(p, 2);
  const JetPoly q1 = total_derivative(q, 0), q2 = total_derivative(q, 1), qz = total_derivative(q, 2);
  return Rational(4) * r1 * p1 * q1 + (r1 * r2 - z * z) * p2 * q2 + r2 * pz * qz +
         Rational(2) * z * (p1 * qz + pz * q1);
}

RadialJet<JetPoly> symbolic_jet()
{
  RadialJet<JetPoly> j;
  j.f1 = var(4);
  j.f2 = var(5);
  j.fz = var(6);
  j.f11 = var(7);
  j.f12 = var(8);
  j.f1z = var(9);
  j.f22 = var(10);
  j.f2z = var(11);
  j.fzz = var(12);
  for (std::size_t k = 0; k < 10; ++k)
    j.third[k] = var(13 + k);
  return j;
}

} // namespace

FormalReport gammahat2_formal_check()
{
  FormalReport rep;
  const JetPoly f = var(kFirstJet);
  rep.definitional =
      (formal_lhat(formal_gammahat(f, f)) - Rational(2) * formal_gammahat(f, formal_lhat(f))) * Rational(1, 2);

  rep.third_order_cancels = true;
  for (const auto& [e, coef] : rep.definitional.terms())
    for (std::size_t v = 13; v < 23; ++v)
      if (e[v] != 0)
        rep.third_order_cancels = false;

  const BasicRadialPoint<JetPoly> p{var(0), var(1), var(2)};
  const auto j = symbolic_jet();
  const JetPoly expanded = gammahat2_expanded(j, p);
  rep.expanded_residual = rep.definitional - expanded;
  rep.sos_residual = var(0) * (gammahat2_sos(j, p).value - expanded);

  // f = f(r1): every jet with an r2 or z derivative vanishes.
  std::array<JetPoly, 23> keep;
  for (std::size_t v = 0; v < 23; ++v) {
    bool drop = false;
    if (v > kFirstJet) {
      const Counts& c = jet_counts()[v - kFirstJet];
      drop = c[1] != 0 || c[2] != 0;
    }
    keep[v] = drop ? JetPoly() : var(v);
  }
  const JetPoly r1 = var(0), f1 = var(4), f11 = var(7);
  rep.r1_only_residual = rep.definitional.compose<23>(keep) -
                         (Rational(16) * r1 * r1 * f11 * f11 + Rational(16) * r1 * f1 * f11 + Rational(12) * f1 * f1);
  return rep;
}

JetPoly gammahat2_formal_residual() { return gammahat2_formal_check().expanded_residual; }

} // namespace n32::radial
