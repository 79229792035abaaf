#include "ffsturm/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ffsturm {

namespace {

// x^(q^j) mod f, iterated from x.
Poly frobenius_power(const Poly& f, int j) {
  const int q = f.q();
  Poly x = Poly::theta(q) % f;
  Poly r = x;
  for (int i = 0; i < j; ++i) r = poly_powmod(r, std::uint64_t(q), f);
  return r;
}

// p-th root of a polynomial whose derivative vanishes: f = g(theta^p).
Poly pth_root(const Poly& f) {
  const auto& F = f.field();
  const int p = F.p();
  std::vector<FqElem> c(f.deg() / p + 1, 0);
  for (int i = 0; i * p <= f.deg(); ++i) {
    FqElem a = f.coeff(i * p);
    // inverse of Frobenius: apply it e-1 more times
    for (int k = 1; k < F.e(); ++k) a = F.frobenius(a);
    c[i] = a;
  }
  return Poly(f.q(), std::move(c));
}

// Splits a monic squarefree product of irreducibles of equal degree d.
// Deterministic: trial elements are taken in enumeration order.
void equal_degree_split(const Poly& f, int d, std::vector<Poly>& out) {
  if (f.deg() == d) {
    out.push_back(f);
    return;
  }
  const int q = f.q();
  const auto& F = f.field();
  for (std::uint64_t code = 2;; ++code) {
    Poly h = Poly::decode(q, code) % f;
    if (h.deg() < 1) continue;
    Poly w;
    if (F.p() == 2) {
      // absolute trace map sum h^(2^i), i < d*e
      Poly acc = h, cur = h;
      for (int i = 1; i < d * F.e(); ++i) {
        cur = (cur * cur) % f;
        acc = acc + cur;
      }
      w = acc;
    } else {
      // h^((q^d - 1)/2) - 1
      std::uint64_t exp = 1;
      for (int i = 0; i < d; ++i) exp *= std::uint64_t(q);
      w = poly_powmod(h, (exp - 1) / 2, f) - Poly::one(q);
    }
    if (w.is_zero()) continue;
    Poly g = poly_gcd(w, f);
    if (g.is_one() || g.deg() == f.deg()) continue;
    equal_degree_split(g, d, out);
    equal_degree_split(f / g, d, out);
    return;
  }
}

void factor_squarefree(const Poly& f, int multiplicity,
                       std::map<Poly, int>& acc) {
  // distinct-degree decomposition
  Poly rest = f;
  const int q = f.q();
  Poly x = Poly::theta(q);
  int d = 0;
  Poly xq = x;  // x^(q^d) mod rest, maintained incrementally
  while (rest.deg() > 0) {
    ++d;
    if (2 * d > rest.deg()) {
      acc[rest] += multiplicity;
      break;
    }
    xq = poly_powmod(xq % rest, std::uint64_t(q), rest);
    Poly g = poly_gcd(xq - x, rest);
    if (!g.is_one()) {
      std::vector<Poly> parts;
      equal_degree_split(g, d, parts);
      for (const Poly& pr : parts) acc[pr] += multiplicity;
      rest = rest / g;
      xq = xq % rest;
    }
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> factorize(const Poly& n) {
  if (n.is_zero()) throw std::domain_error("factorize: zero polynomial");
  if (!n.is_monic()) throw std::invalid_argument("factorize: input must be monic");
  std::map<Poly, int> acc;

  // squarefree decomposition (Yun, char p variant)
  Poly f = n;
  int power = 1;
  while (f.deg() > 0) {
    Poly df = f.derivative();
    if (df.is_zero()) {
      f = pth_root(f);
      power *= f.field().p();
      continue;
    }
    Poly g = poly_gcd(f, df);
    Poly squarefree = f / g;  // product of primes with mult not divisible by p
    int m = 1;
    Poly w = squarefree;
    Poly rest = g;
    while (!w.is_one()) {
      Poly y = poly_gcd(w, rest);
      Poly fac = w / y;  // primes of multiplicity exactly m in f
      if (fac.deg() > 0) factor_squarefree(fac, m * power, acc);
      w = y;
      if (!y.is_one()) rest = rest / y;
      ++m;
    }
    f = rest;
  }

  std::vector<std::pair<Poly, int>> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.deg() < 1) return false;
  const int q = f.q();
  Poly fm = f.monic();
  Poly x = Poly::theta(q) % fm;
  // x^(q^deg) == x mod f, and gcd(x^(q^j) - x, f) = 1 for j <= deg/2
  Poly xq = x;
  for (int j = 1; j <= f.deg(); ++j) {
    xq = poly_powmod(xq, std::uint64_t(q), fm);
    if (j <= f.deg() / 2 && !poly_gcd(xq - x, fm).is_one()) return false;
  }
  return xq == x;
}

int prime_factor_count(const Poly& n) { return int(factorize(n).size()); }

Poly radical(const Poly& n) {
  Poly r = Poly::one(n.q());
  for (const auto& [p, m] : factorize(n)) r = r * p;
  return r;
}

void for_each_poly(int q, int max_deg, bool monic_only,
                   const std::function<void(const Poly&)>& fn) {
  if (!monic_only && max_deg >= -1) fn(Poly::zero(q));
  for (int d = 0; d <= max_deg; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= std::uint64_t(q);
    const int top_hi = monic_only ? 1 : q - 1;
    for (int top = 1; top <= top_hi; ++top) {
      for (std::uint64_t low = 0; low < count; ++low) {
        std::vector<FqElem> c(d + 1);
        std::uint64_t rest = low;
        for (int i = 0; i < d; ++i) {
          c[i] = FqElem(rest % q);
          rest /= q;
        }
        c[d] = FqElem(top);
        fn(Poly(q, std::move(c)));
      }
    }
  }
}

std::vector<Poly> enumerate_polys(int q, int max_deg, bool monic_only) {
  std::vector<Poly> out;
  for_each_poly(q, max_deg, monic_only, [&](const Poly& p) { out.push_back(p); });
  return out;
}

std::vector<Poly> monic_polys_of_degree(int q, int d) {
  std::vector<Poly> out;
  for_each_poly(q, d, true, [&](const Poly& p) {
    if (p.deg() == d) out.push_back(p);
  });
  return out;
}

std::vector<Poly> monic_primes_of_degree(int q, int d) {
  std::vector<Poly> out;
  for (const Poly& p : monic_polys_of_degree(q, d))
    if (is_irreducible(p)) out.push_back(p);
  return out;
}

std::vector<Poly> monic_primes_up_to(int q, int d) {
  std::vector<Poly> out;
  for (int k = 1; k <= d; ++k)
    for (Poly& p : monic_primes_of_degree(q, k)) out.push_back(std::move(p));
  return out;
}

}  // namespace ffsturm
