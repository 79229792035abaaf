#ifndef FFSTURM_ELLIPTIC_HPP
#define FFSTURM_ELLIPTIC_HPP

#include <map>

#include "ffsturm/proj_line.hpp"
#include "ffsturm/sturm.hpp"

namespace ffsturm {

enum class ReductionType { SplitMultiplicative, NonSplitMultiplicative, Additive };

/// Long Weierstrass model over K with a declared conductor (finite part)
/// and supplied reduction types at bad primes; the conductor itself is
/// an input, not computed.
struct CurveModel {
  int q = 0;
  Rat a1, a2, a3, a4, a6;
  Poly conductor;  // monic finite part n
  std::map<Poly, ReductionType> bad;
};

/// a_p: |p| + 1 - #E(F_p) at good primes (by x-enumeration with a
/// quadratic solvability test), the standard 1 / -1 / 0 at bad primes.
/// Throws when the model is not p-integral, or the reduction is bad and
/// no type was supplied.
long long ap_at_prime(const CurveModel& e, const Poly& p);

/// Point count of the reduction mod p including infinity; requires good
/// reduction.
long long count_points(const CurveModel& e, const Poly& p);

struct APTable {
  int q = 0;
  Poly conductor;
  int bound = -1;  // all monic primes of degree <= bound are present
  std::map<Poly, long long> entries;
  std::map<Poly, ReductionType> bad;
};

APTable ap_table(const CurveModel& e, int max_deg, int jobs = 1);

/// deg n - 2, plus ell(n) unless n is a prime power, square-free, or
/// p^2 q with deg q = 1.
int isogeny_bound(const Level& level);

enum class IsogenyVerdict { Isogenous, NotIsogenous, InsufficientData };

/// Coefficient comparison up to isogeny_bound; conductor mismatch is an
/// error, tables too short give InsufficientData.
IsogenyVerdict check_isogenous(const APTable& t1, const APTable& t2,
                               const Level& level);

}  // namespace ffsturm

#endif
