#ifndef FFSTURM_DRINFELD_HPP
#define FFSTURM_DRINFELD_HPP

#include "ffsturm/proj_line.hpp"
#include "ffsturm/rational_linalg.hpp"

namespace ffsturm {

/// kappa(n) = [Gamma : Gamma_0(n)] = #P^1(A/n), by enumeration.
long long index_kappa(const Level& level);

struct DrinfeldBoundQuery {
  int q = 0;
  Poly n;
  int k = 0;    // weight
  int m = 0;    // type, 0 <= m <= q - 2
  int ell = 0;  // cuspidality order
};

struct DrinfeldBound {
  Rational bound;      // exact value of the coefficient threshold B
  long long j_max;     // floor(B); b_j with j <= B determine the form
  long long kappa;
  bool type_warning;   // the space is zero unless k = 2m mod (q - 1)
};

/// B = kappa(n) (k/(q^2-1) - ell/((q-1)|n|)) + (ell - m|n|)/((q-1)|n|)
/// with |n| = q^{deg n}.
DrinfeldBound drinfeld_sturm(const DrinfeldBoundQuery& query);

}  // namespace ffsturm

#endif
