#include "ffsturm/rational_linalg.hpp"

#include <stdexcept>

namespace ffsturm {

void QMat::append_row(const std::vector<Rational>& row) {
  if (cols_ == 0 && rows_ == 0) cols_ = int(row.size());
  if (int(row.size()) != cols_) throw std::invalid_argument("append_row: width mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMat: size mismatch");
  QMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

namespace {

// Row echelon; returns pivot columns. Destroys a.
std::vector<int> echelon(QMat& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int p = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a.at(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = col; j < a.cols(); ++j) swap(a.at(p, j), a.at(row, j));
    Rational inv = 1 / a.at(row, col);
    for (int j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col) == 0) continue;
      Rational f = a.at(i, col);
      for (int j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int rank(QMat a) { return int(echelon(a).size()); }

std::vector<std::vector<Rational>> kernel_basis(QMat a) {
  const int n = a.cols();
  std::vector<int> pivots = echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<Rational> v(n, 0);
    v[freec] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.at(int(r), freec);
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> solve_exact(QMat a, std::vector<Rational> b) {
  if (int(b.size()) != a.rows()) throw std::invalid_argument("solve_exact: size");
  const int n = a.cols();
  QMat aug(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<int> pivots = echelon(aug);
  for (int c : pivots)
    if (c == n) throw std::domain_error("solve_exact: inconsistent system");
  if (int(pivots.size()) != n) throw std::domain_error("solve_exact: underdetermined");
  std::vector<Rational> x(n, 0);
  for (int r = 0; r < n; ++r) x[pivots[r]] = aug.at(r, n);
  return x;
}

void make_primitive(std::vector<Rational>& v) {
  mpz_class den_lcm = 1;
  for (const auto& x : v)
    if (x != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den().get_mpz_t());
  mpz_class num_gcd = 0;
  for (auto& x : v) {
    x *= Rational(den_lcm);
    x.canonicalize();
    if (x != 0) mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
  }
  if (num_gcd == 0) return;
  int sign = 0;
  for (const auto& x : v)
    if (x != 0) {
      sign = sgn(x) > 0 ? 1 : -1;
      break;
    }
  Rational scale = Rational(sign) / Rational(num_gcd);
  for (auto& x : v) {
    x *= scale;
    x.canonicalize();
  }
}

bool RankAccumulator::add_row(std::vector<Rational> row) {
  if (int(row.size()) != cols_) throw std::invalid_argument("add_row: width");
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Rational& f = row[pivot_cols_[k]];
    if (f == 0) continue;
    Rational scale = f;
    for (int j = 0; j < cols_; ++j)
      if (rows_[k][j] != 0) row[j] -= scale * rows_[k][j];
  }
  int pivot = -1;
  for (int j = 0; j < cols_; ++j)
    if (row[j] != 0) {
      pivot = j;
      break;
    }
  if (pivot < 0) return false;
  Rational inv = 1 / row[pivot];
  for (int j = 0; j < cols_; ++j) row[j] *= inv;
  rows_.push_back(std::move(row));
  pivot_cols_.push_back(pivot);
  return true;
}

std::string rational_to_string(const Rational& x) { return x.get_str(); }

Rational rational_from_string(const std::string& s) {
  Rational x(s);
  x.canonicalize();
  return x;
}

Rational rational_pow(int q, int e) {
  Rational r = 1;
  for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= q;
  return e >= 0 ? r : 1 / r;
}

}  // namespace ffsturm
