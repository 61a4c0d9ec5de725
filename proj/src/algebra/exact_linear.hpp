#pragma once

// Sparse fraction-free Gauss-Jordan elimination over the integers.
// Rows come in with rational entries, are cleared of denominators and kept
// primitive (content divided out) after every update.

#include "n32/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace n32::detail {

using SparseRationalRow = std::map<int, Rational>;

class IntegerEchelon {
public:
  explicit IntegerEchelon(int ncols) : ncols_(ncols) {}

  /// Returns true if the row was independent of the rows added so far.
  bool add_row(const SparseRationalRow& row);

  std::size_t rank() const { return pivots_.size(); }
  int columns() const { return ncols_; }

  /// Basis of the nullspace {v : row . v = 0 for all rows}, one vector per
  /// free column, as dense rational vectors.
  std::vector<std::vector<Rational>> nullspace() const;

private:
  using Entry = std::pair<int, mpz_class>;
  using Row = std::vector<Entry>;

  static void make_primitive(Row& r);
  // r <- a*r - b*p
  static Row combine(const mpz_class& a, const Row& r, const mpz_class& b, const Row& p);
  static const mpz_class* find(const Row& r, int col);

  int ncols_;
  std::map<int, Row> pivots_; // pivot column -> reduced row
};

} // namespace n32::detail
