#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ffsturm/factor.hpp"
#include "ffsturm/hecke.hpp"
#include "test_util.hpp"

using namespace ffsturm;

namespace {

struct LevelData {
  Level level;
  QuotientGraph graph;
  std::vector<HarmonicCochain> h0, h;

  explicit LevelData(int q, const Poly& n)
      : level(Level::make(q, n)),
        graph(QuotientGraph::build(level)),
        h0(cuspidal_basis(graph)),
        h(full_basis(graph)) {}
};

bool is_identity(const QMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool is_zero(const QMat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) return false;
  return true;
}

QMat mat_sub(const QMat& a, const QMat& b) {
  QMat r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

QMat mat_scale(const QMat& a, const Rational& c) {
  QMat r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.at(i, j) *= c;
  return r;
}

std::vector<Poly> square_free_levels(int q, int deg) {
  std::vector<Poly> out;
  for (const Poly& n : monic_polys_of_degree(q, deg)) {
    bool sf = true;
    for (const auto& [p, m] : factorize(n))
      if (m > 1) sf = false;
    if (sf) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_CASE("T_1 is the identity") {
  for (const char* spec : {"1 + T + T^3", "T + T^4", "1 + T^2 + T^3 + T^4"}) {
    LevelData D(2, Poly::parse(2, spec));
    CHECK(is_identity(hecke_T(Poly::one(2), D.graph, D.h0).matrix));
    CHECK(is_identity(hecke_T(Poly::one(2), D.graph, D.h).matrix));
  }
}

TEST_CASE("first coefficient of f|T_m is c_m(f)") {
  for (const char* spec : {"1 + T + T^3", "T^3", "T + T^4", "1 + T + T^4"}) {
    LevelData D(2, Poly::parse(2, spec));
    if (D.h0.empty()) continue;
    FourierPlan plan = FourierPlan::make(D.graph, 3);
    std::vector<FourierCoeffs> fc;
    for (const auto& f : D.h0) fc.push_back(fourier_with_plan(f, D.graph, plan));
    for (const Poly& m : enumerate_polys(2, 3, true)) {
      auto T = hecke_T(m, D.graph, D.h0);
      for (size_t j = 0; j < D.h0.size(); ++j) {
        // c_1 of the image, via linearity over the column
        Rational c1 = 0;
        for (size_t i = 0; i < D.h0.size(); ++i)
          c1 += T.matrix.at(int(i), int(j)) * fc[i].cm.at(Poly::one(2));
        Rational cm = fc[j].cm.at(m);
        CHECK(c1 == cm);
      }
    }
  }
}

TEST_CASE("commutation and prime power recurrence") {
  LevelData D(2, Poly::parse(2, "T + T^4"));
  SUBCASE("coprime commutation") {
    for (const Poly& m1 : enumerate_polys(2, 2, true))
      for (const Poly& m2 : enumerate_polys(2, 2, true)) {
        if (m1.deg() < 1 || m2.deg() < 1) continue;
        if (!poly_gcd(m1, m2).is_one()) continue;
        auto A = hecke_T(m1, D.graph, D.h0).matrix;
        auto B = hecke_T(m2, D.graph, D.h0).matrix;
        CHECK(A * B == B * A);
      }
  }
  SUBCASE("recurrence") {
    for (const Poly& p : monic_primes_up_to(2, 2)) {
      for (int r = 0; r <= 1; ++r) {
        Poly pr = Poly::one(2);
        for (int i = 0; i < r; ++i) pr = pr * p;
        Poly pr1 = pr * p, pr2 = pr1 * p;
        auto Tp = hecke_T(p, D.graph, D.h0).matrix;
        auto T1 = hecke_T(pr1, D.graph, D.h0).matrix;
        auto T2 = hecke_T(pr2, D.graph, D.h0).matrix;
        auto Tr = hecke_T(pr, D.graph, D.h0).matrix;
        int mu = p.divides(D.level.n) ? 0 : 1;
        Rational factor = Rational(mu) * rational_pow(2, p.deg());
        QMat rhs = mat_sub(T1 * Tp, mat_scale(Tr, factor));
        CHECK(T2 == rhs);
      }
    }
  }
}

TEST_CASE("atkin-lehner involutions") {
  for (const char* spec : {"T + T^4", "1 + T + T^3", "T^2 + T^3"}) {
    LevelData D(2, Poly::parse(2, spec));
    for (const Poly& m : enumerate_polys(2, D.level.deg(), true)) {
      if (!m.divides(D.level.n)) continue;
      Poly cof = D.level.n / m;
      if (!m.is_one() && !cof.is_one() && !poly_gcd(m, cof).is_one()) {
        CHECK_THROWS(atkin_lehner_matrix(m, D.level));
        continue;
      }
      if (D.h0.empty()) continue;
      QMat W = atkin_lehner(m, D.graph, D.h0).matrix;
      CHECK(is_identity(W * W));
      auto Wfull = atkin_lehner(m, D.graph, D.h).matrix;
      CHECK(is_identity(Wfull * Wfull));

      // independence of the Bezout solution
      auto [g, s, t] = poly_gcd_bezout(m, cof);
      (void)g;
      for (std::uint64_t code = 1; code <= 2; ++code) {
        Poly k = Poly::decode(2, code);
        Mat2K alt{Rat((s + k * cof) * m), Rat(-(t - k * m)), Rat(D.level.n), Rat(m)};
        Rat det = alt.det();
        REQUIRE(det == Rat(m));
        auto W2 = operator_matrix(D.graph, D.h0, {alt}, "W_alt");
        CHECK(W == W2.matrix);
      }
    }
  }
}

TEST_CASE("petersson product") {
  std::mt19937_64 rng(5150);
  LevelData D(2, Poly::parse(2, "T + T^4"));
  REQUIRE(!D.h0.empty());
  for (const auto& f : D.h0) {
    Rational norm = petersson(f, f, D.graph);
    CHECK(norm > 0);
  }
  for (int iter = 0; iter < 20; ++iter) {
    // random rational combinations
    auto combo = [&](void) -> HarmonicCochain {
      HarmonicCochain f = D.h0[0];
      for (auto& x : f.edge_values) x = 0;
      for (const auto& b : D.h0) {
        long c = long(rng() % 7) - 3;
        for (size_t k = 0; k < f.edge_values.size(); ++k)
          f.edge_values[k] += c * b.edge_values[k];
      }
      return f;
    };
    HarmonicCochain a = combo(), b = combo(), c = combo();
    Rational ab = petersson(a, b, D.graph);
    Rational ba = petersson(b, a, D.graph);
    CHECK(ab == ba);
    HarmonicCochain bc = b;
    for (size_t k = 0; k < bc.edge_values.size(); ++k)
      bc.edge_values[k] += c.edge_values[k];
    Rational lhs = petersson(a, bc, D.graph);
    Rational rhs = petersson(a, b, D.graph) + petersson(a, c, D.graph);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("new subspace") {
  SUBCASE("degree three: everything is new") {
    for (int q : {2, 3}) {
      for (const Poly& n : square_free_levels(q, 3)) {
        LevelData D(q, n);
        auto nw = new_subspace(D.graph, D.h0);
        CHECK(nw.size() == D.h0.size());
        // eigen-relation T_p + W_p = 0 on the new subspace for p || n
        for (const auto& [p, mult] : D.level.factorization) {
          REQUIRE(mult == 1);
          auto Tp = hecke_T(p, D.graph, nw).matrix;
          auto Wp = atkin_lehner(p, D.graph, nw).matrix;
          QMat sum = mat_sub(Tp, mat_scale(Wp, -1));
          CHECK(is_zero(sum));
        }
      }
    }
  }

  SUBCASE("prime levels have no old part") {
    LevelData D(2, Poly::parse(2, "1 + T + T^4"));
    REQUIRE(is_irreducible(D.level.n));
    CHECK(old_subspace(D.graph).empty());
    CHECK(new_subspace(D.graph, D.h0).size() == D.h0.size());
  }

  SUBCASE("dimension split and orthogonality") {
    // T(T+1)(T^2+T+1): plenty of divisors
    LevelData D(2, Poly::parse(2, "T + T^3 + T^4"));
    auto old_b = old_subspace(D.graph);
    auto new_b = new_subspace(D.graph, D.h0);
    CHECK(old_b.size() + new_b.size() == D.h0.size());
    for (const auto& f : new_b)
      for (const auto& g : old_b) {
        Rational ip = petersson(f, g, D.graph);
        CHECK(ip == 0);
      }
    for (const auto& [p, mult] : D.level.factorization) {
      if (mult > 1) continue;
      auto Tp = hecke_T(p, D.graph, new_b).matrix;
      auto Wp = atkin_lehner(p, D.graph, new_b).matrix;
      CHECK(is_zero(mat_sub(Tp, mat_scale(Wp, -1))));
    }
  }
}

TEST_CASE("degeneracy maps") {
  // source H_0(m) with deg m = 3, target n = m * T^2 via steps T then T
  Poly m = Poly::parse(2, "1 + T + T^3");
  Poly th = Poly::parse(2, "T");
  LevelData S(2, m);
  REQUIRE(!S.h0.empty());
  LevelData Mid(2, m * th);
  LevelData Dst(2, m * th * th);
  for (const auto& f : S.h0) {
    auto direct = degeneracy_image(f, S.graph, th * th, Dst.graph);
    auto step1 = degeneracy_image(f, S.graph, th, Mid.graph);
    auto step2 = degeneracy_image(step1, Mid.graph, th, Dst.graph);
    CHECK(direct.edge_values == step2.edge_values);
    // inclusion (m_prime = 1) is harmonic at the target level
    auto incl = degeneracy_image(f, S.graph, Poly::one(2), Mid.graph);
    check_harmonic(incl, Mid.graph);
  }
}

TEST_CASE("pairing rank certificates") {
  LevelData D(2, Poly::parse(2, "T + T^4"));
  // zero space
  std::vector<HarmonicCochain> empty;
  CHECK(pairing_rank(D.graph, empty, 3) == 0);
  // cuspidal space at the coarse bound
  int coarse = 2 * D.level.deg() - 4;
  CHECK(pairing_rank(D.graph, D.h0, coarse) == int(D.h0.size()));
  // full space at the coarse bound max(2 deg n - 3, deg n - 1)
  int coarse_full = std::max(2 * D.level.deg() - 3, D.level.deg() - 1);
  CHECK(pairing_rank(D.graph, D.h, coarse_full) == int(D.h.size()));
}

TEST_CASE("dual route: determining set solve agrees") {
  LevelData D(2, Poly::parse(2, "1 + T^2 + T^3 + T^4"));
  REQUIRE(!D.h0.empty());
  // determining data for cuspidal cochains: stratum-0 finite edges
  std::vector<int> det_edges;
  for (int k = 0; k < D.graph.undirected_edge_count(); ++k)
    if (D.graph.edges()[2 * k].r == 0) det_edges.push_back(k);
  QMat B(int(det_edges.size()), int(D.h0.size()));
  for (size_t j = 0; j < D.h0.size(); ++j)
    for (size_t i = 0; i < det_edges.size(); ++i)
      B.at(int(i), int(j)) = D.h0[j].edge_values[det_edges[i]];
  REQUIRE(rank(B) == int(D.h0.size()));

  for (const Poly& m : enumerate_polys(2, 2, true)) {
    auto terms = hecke_cosets(m, D.level);
    auto T = hecke_T(m, D.graph, D.h0);
    for (size_t j = 0; j < D.h0.size(); ++j) {
      // image values on the determining edges only
      std::vector<Rational> vals;
      for (int k : det_edges) {
        EdgeCoord e{D.graph.edges()[2 * k].rep, 0, +1};
        Mat2K rep = edge_rep(e, D.level);
        Rational sum = 0;
        for (const auto& t : terms)
          sum += located_value(D.h0[j], D.graph, D.graph.locate(t * rep));
        vals.push_back(sum);
      }
      auto x = solve_exact(B, vals);
      for (size_t i = 0; i < D.h0.size(); ++i) {
        Rational expect = T.matrix.at(int(i), int(j));
        CHECK(x[i] == expect);
      }
    }
  }
}

TEST_CASE("twisted fourier identity on the new subspace") {
  // (f|W_{n0})((pi^{deg n0'}, u; 0, 1)) =
  //   (-1)^{t(n0)} q^{-deg n0' + 2} sum c_{n0 m}(f) Psi(m u)
  for (int q : {2, 3}) {
    for (const Poly& n : square_free_levels(q, 3)) {
      LevelData D(q, n);
      auto nw = new_subspace(D.graph, D.h0);
      if (nw.empty()) continue;
      const auto& F = GaloisField::get(q);
      FourierPlan plan = FourierPlan::make(D.graph, D.level.deg());
      for_each_poly(q, D.level.deg(), true, [&](const Poly& n0) {
        if (!n0.divides(D.level.n)) return;
        Poly n0p = D.level.n / n0;
        if (!n0.is_one() && !n0p.is_one() && !poly_gcd(n0, n0p).is_one()) return;
        Mat2K W = atkin_lehner_matrix(n0, D.level);
        int dp = n0p.deg();
        int tn0 = n0.is_one() ? 0 : int(factorize(n0).size());
        for (const auto& f : nw) {
          auto fc = fourier_with_plan(f, D.graph, plan);
          std::uint64_t count = 1;
          for (int i = 0; i < std::max(0, dp - 1); ++i) count *= q;
          for (std::uint64_t uidx = 0; uidx < count; ++uidx) {
            auto digits = tail_digits(q, std::max(0, dp - 1), uidx);
            LaurentTail ut{q, 1, digits};
            Mat2K horo{Rat::pi_pow(q, dp), ut.to_rat(), Rat::zero(q), Rat::one(q)};
            Rational lhs = evaluate(f, D.graph, W * horo);
            Rational rhs = 0;
            for_each_poly(q, dp - 2, true, [&](const Poly& mm) {
              Rational cm = fc.cm.at((n0 * mm).monic());
              rhs += cm * psi_sum(F, mm, digits);
            });
            rhs *= Rational((tn0 % 2) ? -1 : 1) * rational_pow(q, -dp + 2);
            CHECK(lhs == rhs);
          }
        }
      });
    }
  }
}
