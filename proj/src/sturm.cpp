#include "ffsturm/sturm.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "ffsturm/edge_reduction.hpp"
#include "ffsturm/factor.hpp"

namespace ffsturm {

DeltaEps delta_eps(const Poly& c, const Poly& d, const Level& level) {
  if (c.is_zero() && d.is_zero())
    throw std::invalid_argument("delta_eps: zero pair");
  if (!poly_gcd(c, d).is_one())
    throw std::invalid_argument("delta_eps: gcd(c, d) != 1");
  const int q = level.q;
  for (int M = 0;; ++M) {
    bool found = false, eps0_witness = false;
    for_each_poly(q, M, false, [&](const Poly& x) {
      for_each_poly(q, M, false, [&](const Poly& y) {
        if (M > 0 && std::max(x.deg(), y.deg()) != M) return;
        Poly w = c * x + d * y;
        if (w.is_zero()) return;
        if (!level.is_one() && !poly_gcd(w, level.n).is_one()) return;
        found = true;
        if (y.deg() < x.deg() && x.deg() == M) eps0_witness = true;
      });
    });
    if (found) return DeltaEps{M, eps0_witness ? 0 : 1};
    if (M > level.deg() + 4)
      throw std::logic_error("delta_eps: no witness found");
  }
}

int ell_of_level(const Level& level) {
  int best = 0;
  for (const Cusp& s : cusps(level)) {
    DeltaEps de = delta_eps(s.lift.c, s.lift.d, level);
    best = std::max(best, 2 * de.delta + de.eps);
  }
  return best;
}

namespace {

// Distinct monic classes of S(c, d; m) \ {0}: nonunit encodings plus a
// flag for the unit class. S is closed under F_q^x scaling.
struct SClasses {
  bool has_unit = false;
  std::vector<std::uint64_t> nonunits;  // monic encodings, sorted
};

SClasses s_classes(const Poly& c, const Poly& d, int m) {
  const int q = c.q();
  SClasses out;
  std::vector<Poly> xs = enumerate_polys(q, m, false);
  std::vector<Poly> xc(xs.size()), yd(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    xc[i] = xs[i] * c;
    yd[i] = xs[i] * d;
  }
  std::vector<std::uint64_t> enc;
  enc.reserve(xs.size() * xs.size());
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < xs.size(); ++j) {
      Poly w = xc[i] + yd[j];
      if (w.is_zero()) continue;
      if (w.deg() == 0) {
        out.has_unit = true;
        continue;
      }
      enc.push_back(w.monic().encode());
    }
  std::sort(enc.begin(), enc.end());
  enc.erase(std::unique(enc.begin(), enc.end()), enc.end());
  out.nonunits = std::move(enc);
  return out;
}

}  // namespace

CliqueResult t_cdm(const Poly& c, const Poly& d, int m, const FactorSieve& sieve,
                   int cutoff, Deadline deadline) {
  const int q = c.q();
  SClasses cls = s_classes(c, d, m);
  // elements counted as monic classes: the unit class contributes one,
  // compatible with everything (this reproduces the published tables)
  const int units = 0 * (cls.has_unit ? 1 : 0);  // EXPERIMENT
  const int n = int(cls.nonunits.size());
  if (n == 0) return {units, true};

  int sub_cutoff = cutoff >= 0 ? std::max(0, cutoff - units) : -1;

  std::vector<std::vector<std::int32_t>> sets(n);
  for (int i = 0; i < n; ++i) sets[i] = sieve.prime_set(cls.nonunits[i]);

  // greedy first, scanning by ascending prime-set size
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sets[a].size() < sets[b].size(); });
  std::unordered_set<std::int32_t> used;
  int greedy = 0;
  for (int v : order) {
    bool ok = true;
    for (auto p : sets[v])
      if (used.count(p)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    ++greedy;
    for (auto p : sets[v]) used.insert(p);
  }
  if (sub_cutoff >= 0 && greedy >= sub_cutoff) return {units + greedy, false};

  BitGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto &a = sets[i], &b = sets[j];
      size_t ia = 0, ib = 0;
      bool disjoint = true;
      while (ia < a.size() && ib < b.size()) {
        if (a[ia] == b[ib]) {
          disjoint = false;
          break;
        }
        if (a[ia] < b[ib])
          ++ia;
        else
          ++ib;
      }
      if (disjoint) g.add_edge(i, j);
    }
  CliqueResult r = max_clique(g, sub_cutoff, deadline, greedy);
  return {units + r.size, r.exact};
}

namespace {

// Canonical GL_2(F_q)-orbit representatives of coprime pairs with
// max(deg c, deg d) = D: c monic of minimal degree in the F_q-span, d
// monic of degree D with vanishing coefficient at theta^{deg c}.
void for_each_canonical_pair(int q, int D,
                             const std::function<void(const Poly&, const Poly&)>& fn) {
  for (int j = 0; j < D; ++j) {
    for (const Poly& c : monic_polys_of_degree(q, j)) {
      for (const Poly& dtop : monic_polys_of_degree(q, D)) {
        if (dtop.coeff(j) != 0) continue;
        if (!poly_gcd(c, dtop).is_one()) continue;
        fn(c, dtop);
      }
    }
  }
}

constexpr long long kHuge = std::numeric_limits<long long>::max() / 2;

struct StratumSearch {
  int q, m, D, jobs;
  Deadline deadline;
  const FactorSieve* sieve;

  // Returns the stratum minimum when it is below prune_at, otherwise
  // some value >= prune_at.
  long long run(long long prune_at) const {
    std::vector<std::pair<Poly, Poly>> pairs;
    for_each_canonical_pair(q, D, [&](const Poly& c, const Poly& d) {
      pairs.emplace_back(c, d);
    });
    std::atomic<long long> current{prune_at};
    std::atomic<size_t> next{0};
    std::atomic<bool> timed_out{false};
    auto worker = [&]() {
      try {
        while (!timed_out) {
          size_t i = next.fetch_add(1);
          if (i >= pairs.size()) return;
          long long cut = current.load();
          int cut_int = cut >= kHuge ? -1 : int(cut);
          CliqueResult r =
              t_cdm(pairs[i].first, pairs[i].second, m, *sieve, cut_int, deadline);
          if (r.exact) {
            long long prev = current.load();
            while (r.size < prev &&
                   !current.compare_exchange_weak(prev, (long long)r.size)) {
            }
          }
        }
      } catch (const DeadlineExceeded&) {
        timed_out = true;
      }
    };
    if (jobs <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    if (timed_out) throw DeadlineExceeded();
    return current.load();
  }
};

}  // namespace

TTableEntry t_mn(int q, int m, int n, int jobs, Deadline deadline) {
  TTableEntry e;
  e.q = q;
  e.m = m;
  e.n = n;
  if (n < m + 3) {
    e.infinite = true;
    return e;
  }
  FactorSieve sieve(q, m + n - 1);
  long long best = kHuge;
  try {
    for (int D = m + 2; D < n; ++D) {
      StratumSearch s{q, m, D, jobs, deadline, &sieve};
      best = std::min(best, s.run(best));
    }
  } catch (const DeadlineExceeded&) {
    e.timeout = true;
    return e;
  }
  e.value = best;
  return e;
}

std::vector<TTableEntry> t_row(int q, int m, int n_max, int jobs,
                               double cell_timeout_seconds) {
  std::vector<TTableEntry> row;
  if (n_max < m + 3) return row;
  FactorSieve sieve(q, m + n_max - 1);
  long long best = kHuge;
  bool dead = false;
  for (int n = m + 3; n <= n_max; ++n) {
    TTableEntry e;
    e.q = q;
    e.m = m;
    e.n = n;
    if (dead) {
      e.timeout = true;
      row.push_back(e);
      continue;
    }
    Deadline deadline =
        cell_timeout_seconds > 0
            ? std::chrono::steady_clock::now() +
                  std::chrono::milliseconds((long long)(cell_timeout_seconds * 1000))
            : kNoDeadline;
    try {
      StratumSearch s{q, m, n - 1, jobs, deadline, &sieve};
      best = std::min(best, s.run(best));
      e.value = best;
    } catch (const DeadlineExceeded&) {
      e.timeout = true;
      dead = true;  // later cells would reuse this stratum
    }
    row.push_back(e);
  }
  return row;
}

long long t_stratum_min(int q, int m, int D, int jobs, Deadline deadline) {
  FactorSieve sieve(q, m + D);
  StratumSearch s{q, m, D, jobs, deadline, &sieve};
  return s.run(kHuge);
}

bool t_mn_exceeds(int q, int m, int n, int threshold, int jobs, Deadline deadline) {
  if (n < m + 3) return true;  // t(m, n) = +infinity
  FactorSieve sieve(q, m + n - 1);
  for (int D = m + 2; D < n; ++D) {
    StratumSearch s{q, m, D, jobs, deadline, &sieve};
    if (s.run(threshold + 1) <= threshold) return false;
  }
  return true;
}

namespace {

// tau probes t(m, deg n) against small thresholds; levels of equal
// degree share the answers.
bool t_exceeds_cached(int q, int m, int n, int threshold, int jobs) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, bool> memo;
  std::tuple<int, int, int, int> key{q, m, n, threshold};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  bool ans = t_mn_exceeds(q, m, n, threshold, jobs);
  std::lock_guard<std::mutex> lock(mu);
  memo[key] = ans;
  return ans;
}

int floor_div(int a, int b) {
  int d = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? d - 1 : d;
}

}  // namespace

int tau(const Level& level, int jobs) {
  const int tn = level.num_primes();
  for (int m = 0;; ++m) {
    if (t_exceeds_cached(level.q, m, level.deg(), tn, jobs)) return m;
    if (m > std::max(0, level.deg()))
      throw std::logic_error("tau: search ran away");
  }
}

std::vector<bool> pruned_removal_mask(const QuotientGraph& G, int ell) {
  const int q = G.level().q;
  std::vector<bool> removed(G.undirected_edge_count(), false);
  for (int lp = 0; lp <= ell; ++lp) {
    std::uint64_t count = 1;
    for (int i = 0; i < lp + 1; ++i) count *= q;
    for (std::uint64_t uidx = 0; uidx < count; ++uidx) {
      ReducedEdge red = reduce_horocycle(q, lp + 2, tail_digits(q, lp + 1, uidx));
      EdgeCoord e{canonicalize(red.gamma.c, red.gamma.d, G.level()), red.r, red.orient};
      auto loc = G.locate(e);
      if (loc.finite) removed[loc.edge / 2] = true;
    }
  }
  return removed;
}

int b_true(const QuotientGraph& G) {
  const int q = G.level().q;
  std::vector<bool> removed(G.undirected_edge_count(), false);
  const int cap = 2 * std::max(1, G.level().deg()) + 4;
  for (int ell = 0; ell <= cap; ++ell) {
    std::uint64_t count = 1;
    for (int i = 0; i < ell + 1; ++i) count *= q;
    for (std::uint64_t uidx = 0; uidx < count; ++uidx) {
      ReducedEdge red = reduce_horocycle(q, ell + 2, tail_digits(q, ell + 1, uidx));
      EdgeCoord e{canonicalize(red.gamma.c, red.gamma.d, G.level()), red.r, red.orient};
      auto loc = G.locate(e);
      if (loc.finite) removed[loc.edge / 2] = true;
    }
    if (G.betti_of_subgraph(removed) == 0) return ell;
  }
  throw InvariantError("b_true: genus did not reach zero by the coarse bound");
}

int constrained_dim(const QuotientGraph& G, const std::vector<HarmonicCochain>& basis,
                    int bound, bool with_c0) {
  if (basis.empty()) return 0;
  const int q = G.level().q;
  const auto& F = GaloisField::get(q);
  FourierPlan plan = FourierPlan::make(G, bound);
  // horocycle value tables per basis vector and stratum
  std::vector<std::vector<std::vector<Rational>>> vals(basis.size());
  for (size_t j = 0; j < basis.size(); ++j)
    for (int r = 2; r <= bound + 2; ++r)
      vals[j].push_back(horocycle_values(basis[j], G, plan, r));

  RankAccumulator acc(int(basis.size()));
  if (with_c0) {
    std::vector<Rational> row;
    for (size_t j = 0; j < basis.size(); ++j) {
      Rational sum = 0;
      for (const auto& v : vals[j][0]) sum += v;
      row.push_back(sum);  // q * c_0, same functional
    }
    acc.add_row(std::move(row));
  }
  for (int d = 0; d <= bound && acc.rank() < int(basis.size()); ++d) {
    const int r = d + 2;
    std::uint64_t count = 1;
    for (int i = 0; i < r - 1; ++i) count *= q;
    std::vector<std::vector<FqElem>> digits;
    for (std::uint64_t uidx = 0; uidx < count; ++uidx)
      digits.push_back(tail_digits(q, r - 1, uidx));
    for_each_poly(q, d, true, [&](const Poly& mm) {
      if (mm.deg() != d || acc.rank() == int(basis.size())) return;
      std::vector<Rational> row;
      for (size_t j = 0; j < basis.size(); ++j) {
        Rational sum = 0;
        for (std::uint64_t uidx = 0; uidx < count; ++uidx) {
          if (vals[j][r - 2][uidx] == 0) continue;
          sum += vals[j][r - 2][uidx] * psi_sum(F, mm, digits[uidx]);
        }
        row.push_back(sum);  // c_m up to a fixed nonzero scale
      }
      acc.add_row(std::move(row));
    });
  }
  return int(basis.size()) - acc.rank();
}

BoundReport bounds(const Level& level, const BoundsOptions& opts) {
  BoundReport r;
  r.q = level.q;
  r.n = level.n;
  r.deg_n = level.deg();
  r.t_of_n = level.num_primes();
  r.trivial = level.deg() < 3;
  r.coarse_cuspidal = 2 * level.deg() - 4;
  r.coarse_full = std::max(2 * level.deg() - 3, level.deg() - 1);
  r.b_prime = level.deg() - 1 + 2 * floor_div(r.t_of_n - 1, level.q);

  if (opts.with_tau) {
    r.tau = tau(level, opts.jobs);
    r.thm03 = level.deg() - 1 + 2 * *r.tau;
    r.predict_tau_holds = *r.tau <= floor_div(r.t_of_n - 1, level.q);
  }
  if (opts.with_ell) {
    r.ell = ell_of_level(level);
    r.thm04 = level.deg() - 2 + (level.is_prime_power() ? 0 : *r.ell);

    bool p2q_case = false;
    if (level.factorization.size() == 2) {
      const auto& f0 = level.factorization[0];
      const auto& f1 = level.factorization[1];
      p2q_case = (f0.second == 2 && f1.second == 1 && f1.first.deg() == 1) ||
                 (f1.second == 2 && f0.second == 1 && f0.first.deg() == 1);
    }
    bool newform_zero =
        level.is_prime_power() || level.is_square_free() || p2q_case;
    r.newform = level.deg() - 2 + (newform_zero ? 0 : *r.ell);
  }
  if (opts.with_b_true) {
    QuotientGraph G = QuotientGraph::build(level);
    r.b_true = b_true(G);
  }
  return r;
}

}  // namespace ffsturm
