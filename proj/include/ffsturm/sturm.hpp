#ifndef FFSTURM_STURM_HPP
#define FFSTURM_STURM_HPP

#include <chrono>
#include <optional>

#include "ffsturm/clique.hpp"
#include "ffsturm/factor_sieve.hpp"
#include "ffsturm/harmonic.hpp"
#include "ffsturm/proj_line.hpp"

namespace ffsturm {

using Deadline = std::chrono::steady_clock::time_point;
constexpr auto kNoDeadline = std::chrono::steady_clock::time_point::max();

/// delta_n(c, d) = min max(deg x, deg y) with gcd(cx + dy, n) = 1, and
/// eps = 0 iff some witness has deg y0 < deg x0 = delta.
struct DeltaEps {
  int delta = 0;
  int eps = 0;
};
DeltaEps delta_eps(const Poly& c, const Poly& d, const Level& level);

/// ell(n) = max over cusps of 2 delta + eps, evaluated at the stored
/// coprime lifts.
int ell_of_level(const Level& level);

/// t(c, d; m): largest pairwise-coprime subset of S(c, d; m) =
/// {xc + yd : deg x, deg y <= m}. With cutoff >= 0 the search stops once
/// a subset of that size is found (result.exact = false).
CliqueResult t_cdm(const Poly& c, const Poly& d, int m, const FactorSieve& sieve,
                   int cutoff = -1, Deadline deadline = kNoDeadline);

struct TTableEntry {
  int q = 0, m = 0, n = 0;
  bool infinite = false;  // n < m + 3
  bool timeout = false;
  long long value = 0;
};

/// t(m, n) = min of t(c, d; m) over coprime pairs with
/// m + 1 < max(deg c, deg d) < n; +infinity when n < m + 3.
TTableEntry t_mn(int q, int m, int n, int jobs = 1, Deadline deadline = kNoDeadline);

/// The whole row t(m, m+3), ..., t(m, n_max) sharing work across the
/// strata; entries past a per-cell deadline are flagged.
std::vector<TTableEntry> t_row(int q, int m, int n_max, int jobs = 1,
                               double cell_timeout_seconds = 0);

/// True iff t(m, n) > threshold, established without computing the
/// exact table value.
bool t_mn_exceeds(int q, int m, int n, int threshold, int jobs = 1,
                  Deadline deadline = kNoDeadline);

/// Minimum of t(c, d; m) over pairs with max(deg c, deg d) exactly D.
long long t_stratum_min(int q, int m, int D, int jobs = 1,
                        Deadline deadline = kNoDeadline);

/// tau(n) = min { m >= 0 : t(n) < t(m, deg n) }.
int tau(const Level& level, int jobs = 1);

struct BoundReport {
  int q = 0;
  Poly n;
  int deg_n = 0;
  int t_of_n = 0;  // distinct prime factors
  std::optional<int> tau;
  std::optional<int> ell;
  int coarse_cuspidal = 0;  // 2 deg n - 4
  int coarse_full = 0;      // max(2 deg n - 3, deg n - 1)
  std::optional<int> thm03;    // deg n - 1 + 2 tau: bound for H(n)
  std::optional<int> thm04;    // deg n - 2 (+ ell unless prime power): for H_0(n)
  std::optional<int> newform;  // four-case bound for the new subspace
  int b_prime = 0;             // deg n - 1 + 2 floor((t - 1)/q)
  std::optional<int> b_true;
  bool trivial = false;           // deg n < 3, H_0(n) = 0
  bool predict_tau_holds = true;  // monitored inequality tau <= floor((t-1)/q)
};

struct BoundsOptions {
  bool with_tau = true;
  bool with_ell = true;
  bool with_b_true = false;
  int jobs = 1;
};

/// Bound quantities per the options; tau and ell involve searches that
/// grow with deg n, b_true builds the quotient graph.
BoundReport bounds(const Level& level, const BoundsOptions& opts = {});

/// min { ell >= 0 : the pruned subgraph G(n)^o_(ell) has genus 0 }.
int b_true(const QuotientGraph& G);

/// Undirected edge ids removed in G(n)^o_(ell) for each ell' <= ell,
/// i.e. the classes of e(ell', u).
std::vector<bool> pruned_removal_mask(const QuotientGraph& G, int ell);

/// dim { f in span(basis) : c_m(f) = 0 for deg m <= bound (and c_0 = 0
/// when with_c0) }.
int constrained_dim(const QuotientGraph& G, const std::vector<HarmonicCochain>& basis,
                    int bound, bool with_c0);

}  // namespace ffsturm

#endif
