#ifndef FFSTURM_EDGE_REDUCTION_HPP
#define FFSTURM_EDGE_REDUCTION_HPP

#include "ffsturm/poly.hpp"
#include "ffsturm/proj_line.hpp"

namespace ffsturm {

/// Element of GL_2(K), exact rational entries.
struct Mat2K {
  Rat a, b, c, d;

  static Mat2K identity(int q);
  static Mat2K from_poly(const Mat2Poly& m);
  static Mat2K diag_theta_pow(int q, int r);  // diag(theta^r, 1)
  /// (0 1; pi_infty 0): right factor representing the opposite edge.
  static Mat2K reversal(int q);
  /// w_n = (0 -1; n 0).
  static Mat2K atkin_lehner_full(const Poly& n);

  Mat2K operator*(const Mat2K& o) const;
  Rat det() const;
  int q() const { return a.q(); }
};

/// Directed edge of the quotient graph in (point class, stratum,
/// orientation) coordinates. orient +1 is the class of gamma e_r,
/// -1 of gamma ebar_r.
struct EdgeCoord {
  ProjPoint pt;
  int r = 0;
  int orient = +1;

  bool operator==(const EdgeCoord& o) const {
    return pt == o.pt && r == o.r && orient == o.orient;
  }
};

/// g = gamma * diag(theta^r, 1) * z * kappa with gamma in GL_2(A) of
/// unit determinant, z scalar, kappa in GL_2(O_infty); r unique.
struct WeilDecomposition {
  Mat2Poly gamma;
  int r = 0;
};

WeilDecomposition weil_decompose(const Mat2K& g);

/// Edge version: g * (K^x Iwahori) = gamma * diag(theta^r, 1) *
/// reversal^epsilon * (K^x Iwahori); orient = +1 for epsilon even.
struct ReducedEdge {
  Mat2Poly gamma;  // in GL_2(A), unit determinant
  int r = 0;
  int orient = +1;
};

ReducedEdge reduce_edge_gamma(const Mat2K& g);

EdgeCoord reduce_edge(const Mat2K& g, const Level& level);

/// Matrix representative gamma_lift(pt) * diag(theta^r, 1) * reversal^eps.
Mat2K edge_rep(const EdgeCoord& e, const Level& level);

EdgeCoord act_and_reduce(const Mat2K& m, const EdgeCoord& e, const Level& level);

/// Exact postcondition checks (test support).
bool verify_weil(const Mat2K& g, const WeilDecomposition& w);
bool verify_reduced_edge(const Mat2K& g, const ReducedEdge& e);

/// Reduction of the horocycle edge (pi^m, u; 0, 1) with u =
/// sum digits[i] pi^{i+1}. Level-independent, cached globally per
/// (q, m, digits); safe for concurrent use.
ReducedEdge reduce_horocycle(int q, int m, const std::vector<FqElem>& u_digits);

Mat2K mat_inverse(const Mat2K& m);
Mat2Poly mat_mul(const Mat2Poly& x, const Mat2Poly& y);
Poly mat_det(const Mat2Poly& m);

}  // namespace ffsturm

#endif
