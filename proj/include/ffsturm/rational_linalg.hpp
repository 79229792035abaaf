#ifndef FFSTURM_RATIONAL_LINALG_HPP
#define FFSTURM_RATIONAL_LINALG_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ffsturm {

using Rational = mpq_class;

/// Dense matrix over Q, row major.
class QMat {
public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  void append_row(const std::vector<Rational>& row);
  static QMat identity(int n);
  QMat operator*(const QMat& o) const;
  bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

int rank(QMat a);

/// Basis of {x : a x = 0}, each vector scaled to primitive integers.
std::vector<std::vector<Rational>> kernel_basis(QMat a);

/// Unique solution of a x = b for a with full column rank; throws if the
/// system is inconsistent or underdetermined.
std::vector<Rational> solve_exact(QMat a, std::vector<Rational> b);

/// Scales to integer entries with content 1; sign fixed so the first
/// nonzero entry is positive. No-op on the zero vector.
void make_primitive(std::vector<Rational>& v);

/// Incremental row-space rank: feed rows one at a time; each kept row is
/// reduced against the pivots so far. Cheap when the rank saturates
/// early.
class RankAccumulator {
public:
  explicit RankAccumulator(int cols) : cols_(cols) {}
  /// Returns true if the row increased the rank.
  bool add_row(std::vector<Rational> row);
  int rank() const { return int(pivot_cols_.size()); }
  int cols() const { return cols_; }

private:
  int cols_;
  std::vector<std::vector<Rational>> rows_;  // echelonized, pivot scaled to 1
  std::vector<int> pivot_cols_;
};

std::string rational_to_string(const Rational& x);
Rational rational_from_string(const std::string& s);

/// q^e as a rational, e possibly negative.
Rational rational_pow(int q, int e);

}  // namespace ffsturm

#endif
