#ifndef FFSTURM_PROJ_LINE_HPP
#define FFSTURM_PROJ_LINE_HPP

#include <cstdint>
#include <vector>

#include "ffsturm/poly.hpp"

namespace ffsturm {

/// A level n together with its factorization and CRT data for fast
/// canonicalization of projective points. Immutable after make().
struct Level {
  int q = 0;
  Poly n;
  std::vector<std::pair<Poly, int>> factorization;
  std::vector<Poly> prime_powers;  // p_i^{e_i}, in factorization order
  std::vector<Poly> idempotents;   // e_i = 1 mod p_i^{e_i}, 0 mod the rest

  static Level make(int q, const Poly& n);

  int deg() const { return n.deg(); }
  int num_primes() const { return int(factorization.size()); }
  bool is_one() const { return n.is_one(); }
  bool is_prime_power() const { return factorization.size() == 1; }
  bool is_square_free() const;
};

/// Point (c:d) of P^1(A/n) in canonical form: componentwise via CRT,
/// locally (x, 1) when d is invertible and (1, y) with p | y otherwise.
/// Equality of canonical forms is equality of points.
class ProjPoint {
public:
  ProjPoint() = default;
  ProjPoint(Poly c, Poly d) : c_(std::move(c)), d_(std::move(d)) {}

  const Poly& c() const { return c_; }
  const Poly& d() const { return d_; }

  bool operator==(const ProjPoint& o) const { return c_ == o.c_ && d_ == o.d_; }
  bool operator!=(const ProjPoint& o) const { return !(*this == o); }
  bool operator<(const ProjPoint& o) const {
    if (c_ != o.c_) return c_ < o.c_;
    return d_ < o.d_;
  }
  std::uint64_t key() const { return (c_.encode() << 32) | d_.encode(); }

private:
  Poly c_, d_;
};

/// Canonical representative of (c:d) mod n. Throws std::domain_error if
/// gcd(c, d, n) != 1.
ProjPoint canonicalize(const Poly& c, const Poly& d, const Level& level);

/// All points of P^1(A/n), sorted by canonical pair; the count is
/// kappa(n) = [Gamma : Gamma_0(n)].
std::vector<ProjPoint> enumerate_proj_line(const Level& level);

/// Width n / gcd(c^2, n), monic. Constant on Gamma_infty-orbits.
Poly width(const ProjPoint& pt, const Level& level);
int width_deg(const ProjPoint& pt, const Level& level);

/// Right action (c:d) * (a b; c2 d2), canonicalized.
ProjPoint act_right(const ProjPoint& pt, const Poly& a, const Poly& b,
                    const Poly& c2, const Poly& d2, const Level& level);

struct Mat2Poly {
  Poly a, b, c, d;
};

/// Lift of pt to a coprime pair (c0, d0) in A^2 congruent to the stored
/// representative mod n.
std::pair<Poly, Poly> coprime_lift(const ProjPoint& pt, const Level& level);

/// Lift of pt to gamma in GL_2(A) with det 1 and bottom row a coprime
/// lift of pt.
Mat2Poly gamma_lift(const ProjPoint& pt, const Level& level);

struct Cusp {
  ProjPoint orbit_rep;
  Mat2Poly lift;  // gamma_s, det 1
  int ell_s = 0;  // max(0, deg width - 1)
};

/// Gamma_infty-orbit representatives of P^1(A/n); [0:1] first, the rest
/// ordered by orbit representative.
std::vector<Cusp> cusps(const Level& level);

/// Partition of `points` (sorted canonical points of the level) into
/// Gamma_infty-orbits: returns orbit id per point index, ids numbered by
/// first appearance.
std::vector<int> cusp_orbit_ids(const std::vector<ProjPoint>& points,
                                const Level& level);

enum class StabKind { Vertex, Edge };

/// Order of Stab_{Gamma_0(n)}(gamma x_r) where gamma lifts pt and x_r is
/// v_r or e_r. Counts {beta in Stab_Gamma(x_r) : gamma beta gamma^-1 in
/// Gamma_0(n)}.
long long stabilizer_order(const ProjPoint& pt, int r, const Level& level,
                           StabKind kind);

/// Order of the ambient stabilizer Stab_Gamma(x_r) in GL_2(A).
long long ambient_stabilizer_order(int q, int r, StabKind kind);

}  // namespace ffsturm

#endif
