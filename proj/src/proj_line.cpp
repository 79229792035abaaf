#include "ffsturm/proj_line.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "ffsturm/factor.hpp"

namespace ffsturm {

namespace {

Poly poly_pow(const Poly& base, int e) {
  Poly r = Poly::one(base.q());
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the least index as representative
    parent[b] = a;
  }
};

}  // namespace

bool Level::is_square_free() const {
  for (const auto& [p, m] : factorization)
    if (m > 1) return false;
  return true;
}

Level Level::make(int q, const Poly& n) {
  if (n.is_zero() || !n.is_monic())
    throw std::invalid_argument("Level: n must be monic nonzero");
  if (n.q() != q) throw std::invalid_argument("Level: field mismatch");
  Level L;
  L.q = q;
  L.n = n;
  L.factorization = factorize(n);
  for (const auto& [p, e] : L.factorization) L.prime_powers.push_back(poly_pow(p, e));
  // idempotents: e_i = m_i * (m_i^{-1} mod P_i), m_i = n / P_i
  for (const Poly& P : L.prime_powers) {
    Poly m = n / P;
    Poly inv = poly_invmod(m % P, P);
    L.idempotents.push_back((m * inv) % n);
  }
  return L;
}

ProjPoint canonicalize(const Poly& c, const Poly& d, const Level& level) {
  const int q = level.q;
  if (level.is_one()) return ProjPoint(Poly::zero(q), Poly::one(q));
  const Poly& n = level.n;
  Poly cr = c % n, dr = d % n;
  Poly cc = Poly::zero(q), dc = Poly::zero(q);
  for (size_t i = 0; i < level.prime_powers.size(); ++i) {
    const Poly& P = level.prime_powers[i];
    const Poly& prime = level.factorization[i].first;
    Poly cl = cr % P, dl = dr % P;
    Poly cloc, dloc;
    if (dl.is_zero() || !poly_gcd(dl, prime).is_one()) {
      if (cl.is_zero() || !poly_gcd(cl, prime).is_one())
        throw std::domain_error("canonicalize: (c, d) not unimodular mod n");
      cloc = Poly::one(q);
      dloc = (dl * poly_invmod(cl, P)) % P;
    } else {
      cloc = (cl * poly_invmod(dl, P)) % P;
      dloc = Poly::one(q);
    }
    cc = (cc + cloc * level.idempotents[i]) % n;
    dc = (dc + dloc * level.idempotents[i]) % n;
  }
  return ProjPoint(std::move(cc), std::move(dc));
}

std::vector<ProjPoint> enumerate_proj_line(const Level& level) {
  const int q = level.q;
  if (level.is_one()) return {ProjPoint(Poly::zero(q), Poly::one(q))};

  // local points per prime power: (x, 1) for all x mod P, and (1, y*p)
  // for y mod P/p
  std::vector<std::vector<std::pair<Poly, Poly>>> locals;
  for (size_t i = 0; i < level.prime_powers.size(); ++i) {
    const Poly& P = level.prime_powers[i];
    const Poly& prime = level.factorization[i].first;
    std::vector<std::pair<Poly, Poly>> loc;
    for_each_poly(q, P.deg() - 1, false, [&](const Poly& x) {
      loc.emplace_back(x, Poly::one(q));
    });
    Poly cof = P / prime;
    for_each_poly(q, cof.deg() - 1, false, [&](const Poly& y) {
      loc.emplace_back(Poly::one(q), (y * prime) % P);
    });
    locals.push_back(std::move(loc));
  }

  std::vector<ProjPoint> out;
  std::vector<size_t> idx(locals.size(), 0);
  const Poly& n = level.n;
  while (true) {
    Poly c = Poly::zero(q), d = Poly::zero(q);
    for (size_t i = 0; i < locals.size(); ++i) {
      c = (c + locals[i][idx[i]].first * level.idempotents[i]) % n;
      d = (d + locals[i][idx[i]].second * level.idempotents[i]) % n;
    }
    out.emplace_back(std::move(c), std::move(d));
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == locals[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Poly width(const ProjPoint& pt, const Level& level) {
  if (level.is_one()) return Poly::one(level.q);
  Poly c2 = (pt.c() * pt.c()) % level.n;
  Poly g = c2.is_zero() ? level.n : poly_gcd(c2, level.n);
  return level.n / g;
}

int width_deg(const ProjPoint& pt, const Level& level) {
  return width(pt, level).deg();
}

ProjPoint act_right(const ProjPoint& pt, const Poly& a, const Poly& b,
                    const Poly& c2, const Poly& d2, const Level& level) {
  return canonicalize(pt.c() * a + pt.d() * c2, pt.c() * b + pt.d() * d2, level);
}

std::pair<Poly, Poly> coprime_lift(const ProjPoint& pt, const Level& level) {
  const int q = level.q;
  Poly c = pt.c(), d = pt.d();
  if (c.is_zero()) {
    // canonical [0:1] has d = 1
    if (!d.is_unit()) {
      // non-canonical input: fall back to lifting c
      for (std::uint64_t code = 0;; ++code) {
        Poly c0 = c + Poly::decode(q, code) * level.n;
        if (!c0.is_zero() && poly_gcd(c0, d).is_one()) return {c0, d};
      }
    }
    return {c, d};
  }
  if (d.is_zero()) d = level.n;
  for (std::uint64_t code = 0;; ++code) {
    Poly d0 = d + Poly::decode(q, code) * level.n;
    if (!d0.is_zero() && poly_gcd(c, d0).is_one()) return {c, d0};
    if (code > (1u << 20)) throw std::runtime_error("coprime_lift: search blew up");
  }
}

Mat2Poly gamma_lift(const ProjPoint& pt, const Level& level) {
  auto [c0, d0] = coprime_lift(pt, level);
  auto [g, s, t] = poly_gcd_bezout(c0, d0);
  if (!g.is_one()) throw std::logic_error("gamma_lift: lift not coprime");
  // s c0 + t d0 = 1, so det (t, -s; c0, d0) = t d0 + s c0 = 1
  return Mat2Poly{t, -s, c0, d0};
}

std::vector<int> cusp_orbit_ids(const std::vector<ProjPoint>& points,
                                const Level& level) {
  const int q = level.q;
  const auto& F = GaloisField::get(q);
  std::map<std::uint64_t, int> index;
  for (size_t i = 0; i < points.size(); ++i) index[points[i].key()] = int(i);
  auto index_of = [&](const ProjPoint& p) {
    auto it = index.find(p.key());
    if (it == index.end()) throw std::logic_error("cusp_orbit_ids: point not in list");
    return it->second;
  };

  UnionFind uf(int(points.size()));
  // generators of Gamma_infty modulo scalars: d -> d*g and
  // d -> d + c * beta_k theta^j
  std::vector<Poly> bgens;
  for (int j = 0; j < std::max(1, level.deg()); ++j)
    for (int k = 0; k < F.e(); ++k)
      bgens.push_back(Poly::constant(q, F.pow(F.generator(), k)).shifted(j));
  const Poly gen = Poly::constant(q, F.generator());
  for (size_t i = 0; i < points.size(); ++i) {
    const ProjPoint& pt = points[i];
    if (q > 2)
      uf.unite(int(i), index_of(canonicalize(pt.c(), pt.d() * gen, level)));
    for (const Poly& b : bgens)
      uf.unite(int(i), index_of(canonicalize(pt.c(), pt.d() + pt.c() * b, level)));
  }

  std::vector<int> ids(points.size(), -1);
  int next = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    int root = uf.find(int(i));
    if (ids[root] == -1) ids[root] = next++;
    ids[i] = ids[root];
  }
  return ids;
}

std::vector<Cusp> cusps(const Level& level) {
  auto points = enumerate_proj_line(level);
  auto ids = cusp_orbit_ids(points, level);
  int count = *std::max_element(ids.begin(), ids.end()) + 1;
  std::vector<ProjPoint> reps(count);
  std::vector<bool> seen(count, false);
  for (size_t i = 0; i < points.size(); ++i) {
    if (!seen[ids[i]]) {
      seen[ids[i]] = true;
      reps[ids[i]] = points[i];  // least point of the orbit: points sorted
    }
  }
  // [0:1] first
  ProjPoint zero_one = canonicalize(Poly::zero(level.q), Poly::one(level.q), level);
  std::stable_sort(reps.begin(), reps.end(), [&](const ProjPoint& a, const ProjPoint& b) {
    if (a == zero_one) return b != zero_one;
    if (b == zero_one) return false;
    return a < b;
  });
  std::vector<Cusp> out;
  for (const ProjPoint& rep : reps) {
    Cusp s;
    s.orbit_rep = rep;
    s.lift = gamma_lift(rep, level);
    s.ell_s = std::max(0, width_deg(rep, level) - 1);
    out.push_back(std::move(s));
  }
  return out;
}

long long ambient_stabilizer_order(int q, int r, StabKind kind) {
  if (r < 0) throw std::invalid_argument("ambient_stabilizer_order: r < 0");
  if (kind == StabKind::Vertex && r == 0)
    return (long long)(q * q - 1) * (long long)(q * q - q);
  long long c = (long long)(q - 1) * (q - 1);
  for (int i = 0; i <= r; ++i) c *= q;
  return c;
}

namespace {

// #{b : deg b <= r, C^2 b = R mod n}
long long count_b_solutions(const Poly& C2, const Poly& R, const Poly& n, int r) {
  const int q = n.q();
  Poly g = C2.is_zero() ? n : poly_gcd(C2, n);
  if (!(g.divides(R.is_zero() ? Poly::zero(q) : R))) return 0;
  Poly M = n / g;  // solutions form b0 + M*A
  Poly b0;
  if (M.is_one()) {
    b0 = Poly::zero(q);
  } else {
    Poly rhs = (R / g) % M;
    Poly inv = poly_invmod((C2 / g) % M, M);
    b0 = (rhs * inv) % M;
  }
  if (M.deg() <= r) {
    long long cnt = 1;
    for (int i = 0; i < r + 1 - M.deg(); ++i) cnt *= q;
    return cnt;
  }
  if (b0.is_zero()) return 1;
  return b0.deg() <= r ? 1 : 0;
}

}  // namespace

long long stabilizer_order(const ProjPoint& pt, int r, const Level& level,
                           StabKind kind) {
  if (r < 0) throw std::invalid_argument("stabilizer_order: r < 0");
  const int q = level.q;
  const auto& F = GaloisField::get(q);
  Mat2Poly g = gamma_lift(pt, level);
  const Poly &C = g.c, &D = g.d;

  if (kind == StabKind::Vertex && r == 0) {
    // beta runs over GL_2(F_q); condition: n | (gamma beta adj(gamma))_{21}
    long long count = 0;
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        for (int c = 0; c < q; ++c)
          for (int d = 0; d < q; ++d) {
            FqElem det = F.sub(F.mul(FqElem(a), FqElem(d)), F.mul(FqElem(b), FqElem(c)));
            if (det == 0) continue;
            // (gamma (a b; c d) adj gamma)_{21}
            Poly row0 = C.scaled(FqElem(a)) + D.scaled(FqElem(c));
            Poly row1 = C.scaled(FqElem(b)) + D.scaled(FqElem(d));
            Poly e21 = row0 * D - row1 * C;
            if ((e21 % level.n).is_zero()) ++count;
          }
    return count;
  }

  // beta = (a b; 0 dt) with deg b <= r: condition C D (a - dt) = C^2 b mod n
  Poly C2 = (C * C) % level.n;
  Poly CD = (C * D) % level.n;
  long long count = 0;
  for (int a = 1; a < q; ++a)
    for (int dt = 1; dt < q; ++dt) {
      FqElem diff = F.sub(FqElem(a), FqElem(dt));
      Poly R = CD.scaled(diff) % level.n;
      count += count_b_solutions(C2, R, level.n, r);
    }
  return count;
}

}  // namespace ffsturm
