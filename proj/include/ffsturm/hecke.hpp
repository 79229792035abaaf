#ifndef FFSTURM_HECKE_HPP
#define FFSTURM_HECKE_HPP

#include <string>

#include "ffsturm/harmonic.hpp"

namespace ffsturm {

/// Matrix of an operator on an explicit basis: column j holds the
/// coordinates of the image of basis vector j.
struct OperatorMatrix {
  std::string label;
  QMat matrix;
};

/// Coset matrices of T_m: (a b; 0 d) with ad = m monic, gcd(a, n) = 1,
/// deg b < deg d.
std::vector<Mat2K> hecke_cosets(const Poly& m, const Level& level);

/// Matrix of f -> sum_t f(M_t e) on the span of `basis`. Throws if the
/// span is not stable.
OperatorMatrix operator_matrix(const QuotientGraph& G,
                               const std::vector<HarmonicCochain>& basis,
                               const std::vector<Mat2K>& terms,
                               const std::string& label);

OperatorMatrix hecke_T(const Poly& m, const QuotientGraph& G,
                       const std::vector<HarmonicCochain>& basis);

/// The Atkin-Lehner matrix (sm, t; un, vm) with s v m^2 - u t n = m,
/// computed by Bezout. m must exactly divide n.
Mat2K atkin_lehner_matrix(const Poly& m, const Level& level);

OperatorMatrix atkin_lehner(const Poly& m, const QuotientGraph& G,
                            const std::vector<HarmonicCochain>& basis);

/// Image of f in H_0(src) under e -> f((1 0; 0 m_prime) e), as a cochain
/// at the target level. src_m * m_prime must divide the target level.
HarmonicCochain degeneracy_image(const HarmonicCochain& f, const QuotientGraph& src,
                                 const Poly& m_prime, const QuotientGraph& dst);

Rational petersson(const HarmonicCochain& f1, const HarmonicCochain& f2,
                   const QuotientGraph& G);

/// Basis of the old subspace: degeneracy images of H_0(d) for proper
/// monic divisors d, spanning set reduced to a basis.
std::vector<HarmonicCochain> old_subspace(const QuotientGraph& G);

/// Orthogonal complement of the old subspace under the Petersson
/// product, inside the span of cusp_basis.
std::vector<HarmonicCochain> new_subspace(const QuotientGraph& G,
                                          const std::vector<HarmonicCochain>& cusp_basis);

/// Rank of [c_m(f_i)] over monic m with deg m <= bound.
int pairing_rank(const QuotientGraph& G, const std::vector<HarmonicCochain>& basis,
                 int bound);

/// Coordinates of an arbitrary cochain in the given basis; throws if it
/// is not in the span.
std::vector<Rational> coordinates_in_basis(const QuotientGraph& G,
                                           const std::vector<HarmonicCochain>& basis,
                                           const HarmonicCochain& f);

}  // namespace ffsturm

#endif
