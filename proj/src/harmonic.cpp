#include "ffsturm/harmonic.hpp"

#include "ffsturm/factor.hpp"

namespace ffsturm {

namespace {

Rational directed_value(const HarmonicCochain& f, int directed_edge) {
  const Rational& x = f.edge_values[directed_edge / 2];
  return (directed_edge % 2 == 0) ? x : -x;
}

// Rows of the weighted harmonicity system. Unknown layout: one per
// undirected edge, then (when with_ends) one per cusp.
QMat harmonicity_matrix(const QuotientGraph& G, bool with_ends) {
  const int ne = G.undirected_edge_count();
  const int nc = int(G.cusp_list().size());
  const int cols = ne + (with_ends ? nc : 0);
  QMat A(int(G.vertices().size()), cols);
  for (size_t v = 0; v < G.vertices().size(); ++v) {
    long long sv = G.vertices()[v].stab;
    for (int eid : G.edges_by_origin()[v]) {
      long long w = sv / G.edges()[eid].stab;
      A.at(int(v), eid / 2) += (eid % 2 == 0) ? Rational(long(w)) : Rational(-long(w));
    }
    if (with_ends)
      for (int k : G.ends_by_attach()[v]) {
        long long w = sv / G.ends()[k].edge_stab;
        A.at(int(v), ne + G.ends()[k].cusp) += long(w);
      }
  }
  return A;
}

}  // namespace

std::vector<HarmonicCochain> cuspidal_basis(const QuotientGraph& G) {
  auto null = kernel_basis(harmonicity_matrix(G, false));
  std::vector<HarmonicCochain> out;
  for (auto& v : null) {
    HarmonicCochain f;
    f.cuspidal = true;
    f.edge_values = std::move(v);
    f.end_values.assign(G.cusp_list().size(), 0);
    check_harmonic(f, G);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<HarmonicCochain> full_basis(const QuotientGraph& G) {
  // For n = 1 the lone end carries the vertex [v_0], whose harmonicity
  // equation (q+1) f(e_0) = 0 lives outside the finite part; H(1) = 0.
  if (G.level().is_one()) return {};
  const int ne = G.undirected_edge_count();
  auto null = kernel_basis(harmonicity_matrix(G, true));
  std::vector<HarmonicCochain> out;
  for (auto& v : null) {
    HarmonicCochain f;
    f.cuspidal = false;
    f.edge_values.assign(v.begin(), v.begin() + ne);
    f.end_values.assign(v.begin() + ne, v.end());
    check_harmonic(f, G);
    out.push_back(std::move(f));
  }
  return out;
}

void check_harmonic(const HarmonicCochain& f, const QuotientGraph& G) {
  if (int(f.edge_values.size()) != G.undirected_edge_count())
    throw InvariantError("check_harmonic: edge value count mismatch");
  if (int(f.end_values.size()) != int(G.cusp_list().size()))
    throw InvariantError("check_harmonic: end value count mismatch");
  if (f.cuspidal)
    for (const auto& y : f.end_values)
      if (y != 0) throw InvariantError("check_harmonic: cuspidal cochain with end value");
  for (size_t v = 0; v < G.vertices().size(); ++v) {
    Rational total = 0;
    long long sv = G.vertices()[v].stab;
    for (int eid : G.edges_by_origin()[v])
      total += Rational(long(sv / G.edges()[eid].stab)) * directed_value(f, eid);
    for (int k : G.ends_by_attach()[v])
      total += Rational(long(sv / G.ends()[k].edge_stab)) * f.end_values[G.ends()[k].cusp];
    if (total != 0) throw InvariantError("check_harmonic: vertex sum nonzero");
  }
}

Rational located_value(const HarmonicCochain& f, const QuotientGraph& G,
                       const QuotientGraph::Located& loc) {
  if (loc.finite) return directed_value(f, loc.edge);
  const Rational& y = f.end_values[loc.cusp];
  if (y == 0) return 0;
  Rational v = y * rational_pow(G.level().q, loc.depth);
  return loc.sign > 0 ? v : Rational(-v);
}

Rational evaluate(const HarmonicCochain& f, const QuotientGraph& G, const Mat2K& g) {
  return located_value(f, G, G.locate(g));
}

std::vector<FqElem> tail_digits(int q, int len, std::uint64_t uidx) {
  std::vector<FqElem> d(len);
  for (int i = 0; i < len; ++i) {
    d[i] = FqElem(uidx % q);
    uidx /= q;
  }
  return d;
}

FourierPlan FourierPlan::make(const QuotientGraph& G, int max_deg) {
  FourierPlan plan;
  plan.max_deg = max_deg;
  const int q = G.level().q;
  for (int r = 2; r <= max_deg + 2; ++r) {
    std::uint64_t count = 1;
    for (int i = 0; i < r - 1; ++i) count *= q;
    std::vector<QuotientGraph::Located> locs;
    locs.reserve(count);
    for (std::uint64_t uidx = 0; uidx < count; ++uidx) {
      ReducedEdge red = reduce_horocycle(q, r, tail_digits(q, r - 1, uidx));
      EdgeCoord e;
      e.pt = canonicalize(red.gamma.c, red.gamma.d, G.level());
      e.r = red.r;
      e.orient = red.orient;
      locs.push_back(G.locate(e));
    }
    plan.located.push_back(std::move(locs));
  }
  return plan;
}

std::vector<Rational> horocycle_values(const HarmonicCochain& f, const QuotientGraph& G,
                                       const FourierPlan& plan, int r) {
  const auto& locs = plan.located.at(r - 2);
  std::vector<Rational> vals;
  vals.reserve(locs.size());
  for (const auto& loc : locs) vals.push_back(located_value(f, G, loc));
  return vals;
}

int psi_sum(const GaloisField& F, const Poly& m, const std::vector<FqElem>& u_digits) {
  // pi^1-coefficient of m*u is sum_j m_j u_{j+1}
  FqElem a1 = 0;
  for (int j = 0; j <= m.deg(); ++j) {
    if (j >= int(u_digits.size())) break;
    a1 = F.add(a1, F.mul(m.coeff(j), u_digits[j]));
  }
  return a1 == 0 ? F.q() - 1 : -1;
}

FourierCoeffs fourier_with_plan(const HarmonicCochain& f, const QuotientGraph& G,
                                const FourierPlan& plan) {
  const int q = G.level().q;
  const auto& F = GaloisField::get(q);
  FourierCoeffs out;

  {
    auto vals = horocycle_values(f, G, plan, 2);
    Rational sum = 0;
    for (const auto& v : vals) sum += v;
    out.c0 = sum / q;
  }

  for (int d = 0; d <= plan.max_deg; ++d) {
    const int r = d + 2;
    auto vals = horocycle_values(f, G, plan, r);
    Rational scale = rational_pow(q, d) * rational_pow(q, -(r - 1)) / (q - 1);
    for_each_poly(q, d, true, [&](const Poly& m) {
      if (m.deg() != d) return;
      Rational sum = 0;
      for (std::uint64_t uidx = 0; uidx < vals.size(); ++uidx) {
        if (vals[uidx] == 0) continue;
        sum += vals[uidx] * psi_sum(F, m, tail_digits(q, r - 1, uidx));
      }
      out.cm[m] = sum * scale;
    });
  }
  return out;
}

FourierCoeffs fourier(const HarmonicCochain& f, const QuotientGraph& G, int max_deg) {
  return fourier_with_plan(f, G, FourierPlan::make(G, max_deg));
}

}  // namespace ffsturm
