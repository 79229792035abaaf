#ifndef FFSTURM_HARMONIC_HPP
#define FFSTURM_HARMONIC_HPP

#include <map>

#include "ffsturm/quotient_graph.hpp"
#include "ffsturm/rational_linalg.hpp"

namespace ffsturm {

/// Gamma_0(n)-invariant harmonic cochain, stored by its values on the
/// finite part plus one value per end.
///
/// edge_values[k] is the value on directed edge 2k (the e_r direction);
/// the reversal carries the negative. end_values[s] is the value at the
/// first edge of end s, oriented away from the finite part; along the
/// end the values grow by a factor q per step. Cuspidal cochains have
/// all end values zero.
struct HarmonicCochain {
  std::vector<Rational> edge_values;
  std::vector<Rational> end_values;
  bool cuspidal = false;
};

/// Basis of H_0(n): kernel of the weighted harmonicity system on
/// cochains supported on the finite part. Size = genus.
std::vector<HarmonicCochain> cuspidal_basis(const QuotientGraph& G);

/// Basis of H(n): edge values plus free end values; size = genus +
/// #cusps - 1.
std::vector<HarmonicCochain> full_basis(const QuotientGraph& G);

/// Throws InvariantError if f violates the weighted harmonicity at some
/// finite vertex.
void check_harmonic(const HarmonicCochain& f, const QuotientGraph& G);

Rational located_value(const HarmonicCochain& f, const QuotientGraph& G,
                       const QuotientGraph::Located& loc);
Rational evaluate(const HarmonicCochain& f, const QuotientGraph& G, const Mat2K& g);

/// Precomputed horocycle locations (pi^r, u; 0, 1) for 2 <= r <=
/// max_deg + 2 and u over pi O / pi^r O. Shared by Fourier extraction
/// and the vanishing-constraint machinery.
struct FourierPlan {
  int max_deg = -1;
  // located[r-2][uidx], uidx encoding digits (u_1.. u_{r-1}) base q with
  // u_1 least significant
  std::vector<std::vector<QuotientGraph::Located>> located;

  static FourierPlan make(const QuotientGraph& G, int max_deg);
};

struct FourierCoeffs {
  Rational c0;
  std::map<Poly, Rational> cm;  // monic m with deg m <= max_deg
};

FourierCoeffs fourier(const HarmonicCochain& f, const QuotientGraph& G, int max_deg);
FourierCoeffs fourier_with_plan(const HarmonicCochain& f, const QuotientGraph& G,
                                const FourierPlan& plan);

/// Horocycle values f((pi^r, u; 0, 1)) for all u, as a vector indexed
/// like the plan.
std::vector<Rational> horocycle_values(const HarmonicCochain& f, const QuotientGraph& G,
                                       const FourierPlan& plan, int r);

/// Sum over eps in F_q^x of psi(eps x) for x = m*u: q - 1 when the
/// pi^1-coefficient of m*u vanishes, else -1.
int psi_sum(const GaloisField& F, const Poly& m, const std::vector<FqElem>& u_digits);

/// Digits (u_1 .. u_{len}) of the uidx-th tail in enumeration order.
std::vector<FqElem> tail_digits(int q, int len, std::uint64_t uidx);

}  // namespace ffsturm

#endif
