#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ffsturm/factor.hpp"
#include "ffsturm/proj_line.hpp"
#include "test_util.hpp"

using namespace ffsturm;

namespace {

// Brute-force model of P^1(A/n): unimodular pairs modulo unit scaling,
// each class keyed by its least member pair.
struct BruteP1 {
  Level level;
  std::vector<Poly> units;                       // units of A/n
  std::vector<std::pair<Poly, Poly>> class_keys;  // least member per class
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> pair_to_class;

  explicit BruteP1(const Level& L) : level(L) {
    const Poly& n = L.n;
    const int q = L.q;
    for_each_poly(q, n.deg() - 1, false, [&](const Poly& u) {
      if (!u.is_zero() && poly_gcd(u, n).is_one()) units.push_back(u);
    });
    std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
    for_each_poly(q, n.deg() - 1, false, [&](const Poly& c) {
      for_each_poly(q, n.deg() - 1, false, [&](const Poly& d) {
        Poly g = poly_gcd(poly_gcd(c + n * Poly::one(q), d + n), n);
        // gcd(c, d, n) via gcd chains; c or d may be zero
        Poly gc = c.is_zero() ? n : poly_gcd(c, n);
        Poly gcd_all = d.is_zero() ? gc : poly_gcd(gc, d);
        (void)g;
        if (!gcd_all.is_one()) return;
        if (seen.count({c.encode(), d.encode()})) return;
        // orbit under unit scaling
        std::vector<std::pair<Poly, Poly>> orbit;
        for (const Poly& u : units)
          orbit.emplace_back((c * u) % n, (d * u) % n);
        std::sort(orbit.begin(), orbit.end(),
                  [](const auto& x, const auto& y) {
                    if (x.first != y.first) return x.first < y.first;
                    return x.second < y.second;
                  });
        int id = int(class_keys.size());
        class_keys.push_back(orbit.front());
        for (const auto& [oc, od] : orbit) {
          seen.insert({oc.encode(), od.encode()});
          pair_to_class[{oc.encode(), od.encode()}] = id;
        }
      });
    });
  }

  int class_of(const Poly& c, const Poly& d) const {
    auto it = pair_to_class.find({(c % level.n).encode(), (d % level.n).encode()});
    REQUIRE(it != pair_to_class.end());
    return it->second;
  }
};

std::vector<Level> small_levels(int q, int max_deg) {
  std::vector<Level> out;
  for (int d = 0; d <= max_deg; ++d)
    for (const Poly& n : monic_polys_of_degree(q, d)) out.push_back(Level::make(q, n));
  return out;
}

}  // namespace

TEST_CASE("canonicalize basics") {
  Level L = Level::make(2, Poly::parse(2, "T^2"));
  ProjPoint p01 = canonicalize(Poly::zero(2), Poly::one(2), L);
  CHECK(p01.c().is_zero());
  CHECK(p01.d().is_one());
  // unit scaling collapses
  CHECK(canonicalize(Poly::zero(2), Poly::parse(2, "1 + T"), L) == p01);
  // reduction mod n
  CHECK(canonicalize(Poly::parse(2, "T"), Poly::parse(2, "1 + T"), L) ==
        canonicalize(Poly::parse(2, "T"), Poly::parse(2, "1 + T + T^2"), L));
  CHECK_THROWS(canonicalize(Poly::parse(2, "T"), Poly::parse(2, "T"), L));
}

TEST_CASE("enumeration matches brute force") {
  for (int q : {2, 3}) {
    for (const Level& L : small_levels(q, q == 2 ? 4 : 3)) {
      auto pts = enumerate_proj_line(L);
      // distinct and sorted
      for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i - 1] < pts[i]);
      if (L.is_one()) {
        CHECK(pts.size() == 1);
        continue;
      }
      BruteP1 brute(L);
      CHECK(pts.size() == brute.class_keys.size());
      // canonicalize is constant on classes and separates them
      std::set<std::uint64_t> keys;
      for (const auto& key : brute.class_keys) {
        ProjPoint cp = canonicalize(key.first, key.second, L);
        keys.insert(cp.key());
        CHECK(std::binary_search(pts.begin(), pts.end(), cp));
      }
      CHECK(keys.size() == pts.size());
    }
  }
  // kappa examples
  CHECK(enumerate_proj_line(Level::make(2, Poly::parse(2, "T"))).size() == 3);
  CHECK(enumerate_proj_line(Level::make(2, Poly::parse(2, "T^2"))).size() == 6);
}

TEST_CASE("width") {
  Level L = Level::make(2, Poly::parse(2, "T^3"));
  CHECK(width(canonicalize(Poly::zero(2), Poly::one(2), L), L).is_one());
  CHECK(width(canonicalize(Poly::one(2), Poly::zero(2), L), L) == L.n);
  CHECK(width(canonicalize(Poly::parse(2, "T"), Poly::one(2), L), L) ==
        Poly::parse(2, "T"));

  SUBCASE("constant on Gamma_infty orbits") {
    std::mt19937_64 rng(42);
    for (int q : {2, 3}) {
      for (const Level& L2 : small_levels(q, 3)) {
        if (L2.is_one()) continue;
        const auto& F = GaloisField::get(q);
        for (const ProjPoint& pt : enumerate_proj_line(L2)) {
          for (int iter = 0; iter < 20; ++iter) {
            Poly a = Poly::constant(q, FqElem(1 + rng() % (q - 1)));
            Poly d = Poly::constant(q, FqElem(1 + rng() % (q - 1)));
            Poly b = testutil::random_poly(rng, q, L2.deg() - 1);
            ProjPoint moved = act_right(pt, a, b, Poly::zero(q), d, L2);
            CHECK(width(moved, L2) == width(pt, L2));
            (void)F;
          }
        }
      }
    }
  }
}

TEST_CASE("cusps against brute-force orbit partition") {
  for (int q : {2, 3}) {
    for (const Level& L : small_levels(q, q == 2 ? 4 : 3)) {
      auto pts = enumerate_proj_line(L);
      auto ids = cusp_orbit_ids(pts, L);
      auto cs = cusps(L);
      int count = *std::max_element(ids.begin(), ids.end()) + 1;
      CHECK(int(cs.size()) == count);
      // [0:1] is present and listed first
      CHECK(cs[0].orbit_rep == canonicalize(Poly::zero(q), Poly::one(q), L));
      if (L.is_one()) {
        CHECK(cs.size() == 1);
        CHECK(cs[0].ell_s == 0);
        continue;
      }

      // brute force: enumerate beta = (a b; 0 d) acting on pairs
      BruteP1 brute(L);
      std::vector<int> brute_ids(brute.class_keys.size());
      std::iota(brute_ids.begin(), brute_ids.end(), 0);
      std::function<int(int)> find = [&](int x) {
        while (brute_ids[x] != x) x = brute_ids[x] = brute_ids[brute_ids[x]];
        return x;
      };
      auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) brute_ids[std::max(a, b)] = std::min(a, b);
      };
      for (size_t i = 0; i < brute.class_keys.size(); ++i) {
        const auto& [c, d] = brute.class_keys[i];
        for (int a = 1; a < q; ++a)
          for (int dd = 1; dd < q; ++dd)
            for_each_poly(q, L.deg() - 1, false, [&](const Poly& b) {
              Poly nc = (c.scaled(FqElem(a))) % L.n;
              Poly nd = (c * b + d.scaled(FqElem(dd))) % L.n;
              unite(int(i), brute.class_of(nc, nd));
            });
      }
      std::set<int> roots;
      for (size_t i = 0; i < brute.class_keys.size(); ++i) roots.insert(find(int(i)));
      CHECK(int(roots.size()) == count);

      // the two partitions agree, not just their counts
      for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = 0; j < pts.size(); ++j) {
          bool lib_same = ids[i] == ids[j];
          bool brute_same = find(brute.class_of(pts[i].c(), pts[i].d())) ==
                            find(brute.class_of(pts[j].c(), pts[j].d()));
          CHECK(lib_same == brute_same);
        }

      // lifts: det 1, bottom row congruent to rep
      for (const Cusp& s : cs) {
        Poly det = s.lift.a * s.lift.d - s.lift.b * s.lift.c;
        CHECK(det.is_one());
        CHECK(canonicalize(s.lift.c, s.lift.d, L) == s.orbit_rep);
        CHECK(poly_gcd(s.lift.c.is_zero() ? s.lift.d : s.lift.c,
                       s.lift.d.is_zero() ? s.lift.c : s.lift.d)
                  .is_one());
        CHECK(s.ell_s == std::max(0, width_deg(s.orbit_rep, L) - 1));
      }
    }
  }

  // q=2, n=theta: 2 cusps
  CHECK(cusps(Level::make(2, Poly::parse(2, "T"))).size() == 2);
}

TEST_CASE("stabilizer orders") {
  SUBCASE("level one gives full ambient orders") {
    for (int q : {2, 3}) {
      Level L = Level::make(q, Poly::one(q));
      ProjPoint pt = canonicalize(Poly::zero(q), Poly::one(q), L);
      CHECK(stabilizer_order(pt, 0, L, StabKind::Vertex) ==
            (long long)(q * q - 1) * (q * q - q));
      CHECK(stabilizer_order(pt, 1, L, StabKind::Edge) ==
            (long long)(q - 1) * (q - 1) * q * q);
      for (int r = 0; r <= 3; ++r) {
        CHECK(stabilizer_order(pt, r, L, StabKind::Edge) ==
              ambient_stabilizer_order(q, r, StabKind::Edge));
        CHECK(stabilizer_order(pt, r, L, StabKind::Vertex) ==
              ambient_stabilizer_order(q, r, StabKind::Vertex));
      }
    }
  }

  SUBCASE("explicit enumeration oracle") {
    for (int q : {2, 3}) {
      for (const Level& L : small_levels(q, 3)) {
        if (L.is_one()) continue;
        auto pts = enumerate_proj_line(L);
        for (const ProjPoint& pt : pts) {
          Mat2Poly g = gamma_lift(pt, L);
          for (int r = 0; r <= 3; ++r) {
            // brute count over beta = (a b; 0 d), deg b <= r
            long long expect = 0;
            for (int a = 1; a < q; ++a)
              for (int dd = 1; dd < q; ++dd)
                for_each_poly(q, r, false, [&](const Poly& b) {
                  Poly row0 = g.c.scaled(FqElem(a));
                  Poly row1 = g.c * b + g.d.scaled(FqElem(dd));
                  Poly e21 = row0 * g.d - row1 * g.c;
                  if ((e21 % L.n).is_zero()) ++expect;
                });
            CHECK(stabilizer_order(pt, r, L, StabKind::Edge) == expect);
            if (r >= 1)
              CHECK(stabilizer_order(pt, r, L, StabKind::Vertex) == expect);
            // divisibility into the ambient order
            long long amb = ambient_stabilizer_order(q, r, StabKind::Edge);
            CHECK(amb % stabilizer_order(pt, r, L, StabKind::Edge) == 0);
          }
          long long v0 = stabilizer_order(pt, 0, L, StabKind::Vertex);
          CHECK(ambient_stabilizer_order(q, 0, StabKind::Vertex) % v0 == 0);
        }
      }
    }
  }

  SUBCASE("spec example: q=2 n=T^3 pt=[1:0] r=0 edge") {
    Level L = Level::make(2, Poly::parse(2, "T^3"));
    ProjPoint pt = canonicalize(Poly::one(2), Poly::zero(2), L);
    CHECK(stabilizer_order(pt, 0, L, StabKind::Edge) == 1);
  }
}
