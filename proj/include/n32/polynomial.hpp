#pragma once

#include "n32/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace n32 {

/// Sparse multivariate polynomial in N variables with exact rational
/// coefficients.
///
/// Exponents are signed so that a variable may carry negative powers; the
/// radial code uses this to keep 1/r1 factors exact. Everything else only
/// ever builds ordinary polynomials.
///
/// Terms are kept in a map ordered by descending graded lexicographic order
/// (total degree first, then variable 0 before variable 1, ...), which makes
/// iteration order and serialization deterministic. Zero coefficients are
/// never stored.
template <std::size_t N>
class Polynomial {
public:
  using Exponent = std::array<std::int8_t, N>;

  struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const
    {
      int da = 0, db = 0;
      for (std::size_t i = 0; i < N; ++i) {
        da += a[i];
        db += b[i];
      }
      if (da != db)
        return da > db;
      return a > b;
    }
  };

  using TermMap = std::map<Exponent, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& c) { add_term(Exponent{}, c); }
  Polynomial(int c) : Polynomial(Rational(c)) {}

  static Polynomial variable(std::size_t index)
  {
    if (index >= N)
      throw std::out_of_range("polynomial variable index");
    Exponent e{};
    e[index] = 1;
    return monomial(e);
  }

  static Polynomial monomial(const Exponent& e, const Rational& c = Rational(1))
  {
    Polynomial p;
    p.add_term(e, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const
  {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{});
  }

  Rational constant_term() const { return coefficient(Exponent{}); }

  Rational coefficient(const Exponent& e) const
  {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree of the leading term; -1 for the zero polynomial.
  int degree() const
  {
    if (terms_.empty())
      return -1;
    int d = 0;
    for (auto v : terms_.begin()->first)
      d += v;
    return d;
  }

  int degree_in(std::size_t var) const
  {
    int d = -1;
    for (const auto& [e, c] : terms_)
      d = std::max<int>(d, e[var]);
    return d;
  }

  void add_term(const Exponent& e, const Rational& c)
  {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o)
  {
    for (const auto& [e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o)
  {
    for (const auto& [e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s)
  {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_)
      c *= s;
    return *this;
  }

  Polynomial& operator*=(const Polynomial& o)
  {
    *this = *this * o;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator-(Polynomial a)
  {
    for (auto& [e, c] : a.terms_)
      c = -c;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
  {
    Polynomial r;
    Rational prod;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (std::size_t i = 0; i < N; ++i)
          e[i] = static_cast<std::int8_t>(ea[i] + eb[i]);
        mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
        r.add_term(e, prod);
      }
    }
    return r;
  }

  friend Polynomial operator/(Polynomial a, const Rational& s)
  {
    if (s == 0)
      throw std::domain_error("polynomial division by zero");
    return a *= Rational(1) / s;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned k) const
  {
    Polynomial r(1);
    for (unsigned i = 0; i < k; ++i)
      r = r * *this;
    return r;
  }

  /// Partial derivative with respect to variable `var`.
  Polynomial derivative(std::size_t var) const
  {
    Polynomial r;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0)
        continue;
      Exponent d = e;
      d[var] = static_cast<std::int8_t>(d[var] - 1);
      r.add_term(d, c * e[var]);
    }
    return r;
  }

  /// Substitutes a polynomial in M variables for each of the N variables.
  /// Negative exponents are rejected.
  template <std::size_t M>
  Polynomial<M> compose(const std::array<Polynomial<M>, N>& images) const
  {
    Polynomial<M> r;
    std::array<std::vector<Polynomial<M>>, N> powers;
    for (const auto& [e, c] : terms_) {
      Polynomial<M> term(c);
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] < 0)
          throw std::domain_error("compose: negative exponent");
        auto& pw = powers[i];
        if (pw.empty())
          pw.emplace_back(1);
        while (static_cast<int>(pw.size()) <= e[i])
          pw.push_back(pw.back() * images[i]);
        if (e[i] > 0)
          term = term * pw[static_cast<std::size_t>(e[i])];
      }
      r += term;
    }
    return r;
  }

  /// Evaluates at a point. T is any field type constructible from a Rational
  /// via `convert` (double or Rational in practice).
  template <class T, class Convert>
  T evaluate(std::span<const T, N> point, Convert convert) const
  {
    std::array<std::vector<T>, N> powers;
    T total = convert(Rational(0));
    for (const auto& [e, c] : terms_) {
      T term = convert(c);
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] == 0)
          continue;
        auto& pw = powers[i];
        if (pw.empty())
          pw.push_back(convert(Rational(1)));
        int k = e[i] < 0 ? -e[i] : e[i];
        while (static_cast<int>(pw.size()) <= k)
          pw.push_back(pw.back() * point[i]);
        if (e[i] > 0)
          term = term * pw[static_cast<std::size_t>(k)];
        else
          term = term / pw[static_cast<std::size_t>(k)];
      }
      total = total + term;
    }
    return total;
  }

  Rational evaluate(std::span<const Rational, N> point) const
  {
    return evaluate<Rational>(point, [](const Rational& q) { return q; });
  }

  double evaluate(std::span<const double, N> point) const
  {
    return evaluate<double>(point, [](const Rational& q) { return q.get_d(); });
  }

  std::string to_string(std::span<const std::string_view, N> names) const
  {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = abs(c);
      os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      bool unit = (mag == 1);
      bool any_var = false;
      for (auto v : e)
        any_var = any_var || v != 0;
      if (!unit || !any_var)
        os << mag.get_str();
      bool need_star = !unit || !any_var;
      for (std::size_t i = 0; i < N; ++i) {
        if (e[i] == 0)
          continue;
        if (need_star)
          os << "*";
        os << names[i];
        if (e[i] != 1)
          os << "^" << static_cast<int>(e[i]);
        need_star = true;
      }
      first = false;
    }
    return os.str();
  }

private:
  TermMap terms_;
};

} // namespace n32
