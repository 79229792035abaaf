#include "ffsturm/elliptic.hpp"

#include <thread>

#include "ffsturm/factor.hpp"

namespace ffsturm {

namespace {

// Residue field A/p arithmetic on reduced polynomials.
struct ResidueField {
  Poly p;
  int q;
  std::uint64_t size;  // q^{deg p}

  explicit ResidueField(const Poly& prime) : p(prime), q(prime.q()) {
    size = 1;
    for (int i = 0; i < p.deg(); ++i) size *= std::uint64_t(q);
  }
  Poly mul(const Poly& a, const Poly& b) const { return (a * b) % p; }
  Poly scalar(int c) const {
    const auto& F = GaloisField::get(q);
    FqElem v = 0;
    int cc = ((c % F.p()) + F.p()) % F.p();
    for (int i = 0; i < cc; ++i) v = F.add(v, 1);
    return Poly::constant(q, v);
  }
  // reduction of a rational coefficient; throws when not p-integral
  Poly reduce(const Rat& x) const {
    Poly den = x.den() % p;
    if (den.is_zero() || !poly_gcd(den, p).is_one())
      throw std::domain_error("ap_at_prime: model is not p-integral");
    return ((x.num() % p) * poly_invmod(den, p)) % p;
  }
  // number of solutions of y^2 + h y = g in A/p
  int quadratic_solutions(const Poly& h, const Poly& g) const {
    const auto& F = GaloisField::get(q);
    if (F.p() == 2) {
      if ((h % p).is_zero()) return 1;  // Frobenius is bijective
      Poly hinv = poly_invmod(h % p, p);
      Poly w = mul(mul(g, hinv), hinv);
      // absolute trace of w to F_2: sum of 2^i-th power squarings
      int k = F.e() * p.deg();
      Poly tr = w, cur = w;
      for (int i = 1; i < k; ++i) {
        cur = mul(cur, cur);
        tr = (tr + cur) % p;
      }
      if (!tr.is_zero() && !tr.is_one())
        throw std::logic_error("quadratic_solutions: trace not in F_2");
      return tr.is_zero() ? 2 : 0;
    }
    // odd characteristic: complete the square, Euler criterion
    Poly half = poly_invmod(scalar(2), p);
    Poly t = mul(h, half);
    Poly rhs = (g + mul(t, t)) % p;
    if (rhs.is_zero()) return 1;
    Poly chi = poly_powmod(rhs, (size - 1) / 2, p);
    return chi.is_one() ? 2 : 0;
  }
};

}  // namespace

long long count_points(const CurveModel& e, const Poly& p) {
  ResidueField F(p);
  Poly a1 = F.reduce(e.a1), a2 = F.reduce(e.a2), a3 = F.reduce(e.a3),
       a4 = F.reduce(e.a4), a6 = F.reduce(e.a6);
  long long count = 1;  // point at infinity
  for_each_poly(e.q, p.deg() - 1, false, [&](const Poly& x) {
    Poly h = (F.mul(a1, x) + a3) % p;
    Poly g = (F.mul(F.mul(x, x), x) + F.mul(a2, F.mul(x, x)) + F.mul(a4, x) + a6) % p;
    count += F.quadratic_solutions(h, g);
  });
  return count;
}

namespace {

Poly discriminant_mod(const CurveModel& e, const Poly& p) {
  ResidueField F(p);
  Poly a1 = F.reduce(e.a1), a2 = F.reduce(e.a2), a3 = F.reduce(e.a3),
       a4 = F.reduce(e.a4), a6 = F.reduce(e.a6);
  Poly b2 = (F.mul(a1, a1) + F.mul(F.scalar(4), a2)) % p;
  Poly b4 = (F.mul(F.scalar(2), a4) + F.mul(a1, a3)) % p;
  Poly b6 = (F.mul(a3, a3) + F.mul(F.scalar(4), a6)) % p;
  Poly b8 = (F.mul(F.mul(a1, a1), a6) + F.mul(F.scalar(4), F.mul(a2, a6)) -
             F.mul(a1, F.mul(a3, a4)) + F.mul(a2, F.mul(a3, a3)) - F.mul(a4, a4)) %
            p;
  Poly disc = (-F.mul(F.mul(b2, b2), b8) - F.mul(F.scalar(8), F.mul(F.mul(b4, b4), b4)) -
               F.mul(F.scalar(27), F.mul(b6, b6)) +
               F.mul(F.scalar(9), F.mul(b2, F.mul(b4, b6)))) %
              p;
  return disc;
}

}  // namespace

long long ap_at_prime(const CurveModel& e, const Poly& p) {
  if (!is_irreducible(p)) throw std::invalid_argument("ap_at_prime: p not prime");
  Poly disc = discriminant_mod(e, p);
  if (!disc.is_zero()) {
    ResidueField F(p);
    return (long long)F.size + 1 - count_points(e, p);
  }
  auto it = e.bad.find(p.monic());
  if (it == e.bad.end())
    throw std::domain_error("ap_at_prime: bad reduction without supplied type");
  switch (it->second) {
    case ReductionType::SplitMultiplicative:
      return 1;
    case ReductionType::NonSplitMultiplicative:
      return -1;
    default:
      return 0;
  }
}

APTable ap_table(const CurveModel& e, int max_deg, int jobs) {
  APTable t;
  t.q = e.q;
  t.conductor = e.conductor;
  t.bound = max_deg;
  t.bad = e.bad;
  std::vector<Poly> primes = monic_primes_up_to(e.q, max_deg);
  std::vector<long long> vals(primes.size());
  auto worker = [&](size_t lo, size_t hi) {
    for (size_t i = lo; i < hi; ++i) vals[i] = ap_at_prime(e, primes[i]);
  };
  if (jobs <= 1 || primes.size() < 8) {
    worker(0, primes.size());
  } else {
    std::vector<std::thread> threads;
    size_t chunk = (primes.size() + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      size_t lo = j * chunk, hi = std::min(primes.size(), lo + chunk);
      if (lo < hi) threads.emplace_back(worker, lo, hi);
    }
    for (auto& th : threads) th.join();
  }
  for (size_t i = 0; i < primes.size(); ++i) t.entries[primes[i]] = vals[i];
  return t;
}

int isogeny_bound(const Level& level) {
  bool p2q_case = false;
  if (level.factorization.size() == 2) {
    const auto& f0 = level.factorization[0];
    const auto& f1 = level.factorization[1];
    p2q_case = (f0.second == 2 && f1.second == 1 && f1.first.deg() == 1) ||
               (f1.second == 2 && f0.second == 1 && f0.first.deg() == 1);
  }
  if (level.is_prime_power() || level.is_square_free() || p2q_case)
    return level.deg() - 2;
  return level.deg() - 2 + ell_of_level(level);
}

IsogenyVerdict check_isogenous(const APTable& t1, const APTable& t2,
                               const Level& level) {
  if (t1.conductor != level.n || t2.conductor != level.n)
    throw std::invalid_argument("check_isogenous: conductor mismatch");
  int need = isogeny_bound(level);
  if (t1.bound < need || t2.bound < need) return IsogenyVerdict::InsufficientData;
  for (const Poly& p : monic_primes_up_to(level.q, need)) {
    auto i1 = t1.entries.find(p), i2 = t2.entries.find(p);
    if (i1 == t1.entries.end() || i2 == t2.entries.end())
      return IsogenyVerdict::InsufficientData;
    if (i1->second != i2->second) return IsogenyVerdict::NotIsogenous;
  }
  return IsogenyVerdict::Isogenous;
}

}  // namespace ffsturm
