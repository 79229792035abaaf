#include "ffsturm/hecke.hpp"

#include <algorithm>

#include "ffsturm/factor.hpp"

namespace ffsturm {

namespace {

// Coordinate vector (edge values, then end values) of a cochain.
std::vector<Rational> coords_of(const HarmonicCochain& f) {
  std::vector<Rational> v = f.edge_values;
  v.insert(v.end(), f.end_values.begin(), f.end_values.end());
  return v;
}

QMat basis_matrix(const std::vector<HarmonicCochain>& basis) {
  QMat B(0, 0);
  if (basis.empty()) return B;
  const int rows = int(basis[0].edge_values.size() + basis[0].end_values.size());
  B = QMat(rows, int(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j) {
    auto col = coords_of(basis[j]);
    for (int i = 0; i < rows; ++i) B.at(i, int(j)) = col[i];
  }
  return B;
}

// Image of f under e -> sum_t f(M_t e), read off at every finite edge
// and every end attach edge.
HarmonicCochain image_cochain(const QuotientGraph& G, const HarmonicCochain& f,
                              const std::vector<std::vector<QuotientGraph::Located>>&
                                  edge_plans,
                              const std::vector<std::vector<QuotientGraph::Located>>&
                                  end_plans) {
  HarmonicCochain img;
  img.cuspidal = f.cuspidal;
  img.edge_values.resize(G.undirected_edge_count());
  img.end_values.resize(G.cusp_list().size());
  for (int k = 0; k < G.undirected_edge_count(); ++k) {
    Rational sum = 0;
    for (const auto& loc : edge_plans[k]) sum += located_value(f, G, loc);
    img.edge_values[k] = sum;
  }
  for (size_t s = 0; s < G.cusp_list().size(); ++s) {
    Rational sum = 0;
    for (const auto& loc : end_plans[s]) sum += located_value(f, G, loc);
    img.end_values[s] = sum;
  }
  if (img.cuspidal)
    for (const auto& y : img.end_values)
      if (y != 0)
        throw InvariantError("operator image of a cuspidal cochain is not cuspidal");
  return img;
}

Mat2K end_attach_rep(const QuotientGraph& G, int cusp_index) {
  const Cusp& s = G.cusp_list()[cusp_index];
  return Mat2K::from_poly(s.lift) * Mat2K::diag_theta_pow(G.level().q, s.ell_s);
}

}  // namespace

std::vector<Mat2K> hecke_cosets(const Poly& m, const Level& level) {
  if (m.is_zero() || !m.is_monic())
    throw std::invalid_argument("hecke_cosets: m must be monic nonzero");
  const int q = level.q;
  std::vector<Mat2K> terms;
  for (const Poly& a : enumerate_polys(q, m.deg(), true)) {
    if (!(m % a).is_zero()) continue;
    if (!level.is_one() && !poly_gcd(a, level.n).is_one()) continue;
    Poly d = m / a;
    for_each_poly(q, d.deg() - 1, false, [&](const Poly& b) {
      terms.push_back(Mat2K{Rat(a), Rat(b), Rat::zero(q), Rat(d)});
    });
  }
  return terms;
}

OperatorMatrix operator_matrix(const QuotientGraph& G,
                               const std::vector<HarmonicCochain>& basis,
                               const std::vector<Mat2K>& terms,
                               const std::string& label) {
  OperatorMatrix out;
  out.label = label;
  out.matrix = QMat(int(basis.size()), int(basis.size()));
  if (basis.empty()) return out;

  // locate M_t * rep(e) once per (object, term); shared by every basis vector
  std::vector<std::vector<QuotientGraph::Located>> edge_plans(G.undirected_edge_count());
  for (int k = 0; k < G.undirected_edge_count(); ++k) {
    EdgeCoord e{G.edges()[2 * k].rep, G.edges()[2 * k].r, +1};
    Mat2K rep = edge_rep(e, G.level());
    for (const auto& t : terms) edge_plans[k].push_back(G.locate(t * rep));
  }
  std::vector<std::vector<QuotientGraph::Located>> end_plans(G.cusp_list().size());
  for (size_t s = 0; s < G.cusp_list().size(); ++s) {
    Mat2K rep = end_attach_rep(G, int(s));
    for (const auto& t : terms) end_plans[s].push_back(G.locate(t * rep));
  }

  QMat B = basis_matrix(basis);
  for (size_t j = 0; j < basis.size(); ++j) {
    HarmonicCochain img = image_cochain(G, basis[j], edge_plans, end_plans);
    check_harmonic(img, G);
    auto x = solve_exact(B, coords_of(img));
    for (size_t i = 0; i < x.size(); ++i) out.matrix.at(int(i), int(j)) = x[i];
  }
  return out;
}

OperatorMatrix hecke_T(const Poly& m, const QuotientGraph& G,
                       const std::vector<HarmonicCochain>& basis) {
  return operator_matrix(G, basis, hecke_cosets(m, G.level()),
                         "T_" + m.to_string());
}

Mat2K atkin_lehner_matrix(const Poly& m, const Level& level) {
  if (m.is_zero() || !m.is_monic() || !m.divides(level.n))
    throw std::invalid_argument("atkin_lehner: m must divide n");
  Poly cof = level.n / m;
  if (!m.is_one() && !cof.is_one() && !poly_gcd(m, cof).is_one())
    throw std::invalid_argument("atkin_lehner: m must divide n exactly");
  // s m + t (n/m) = 1 gives det (sm, -t; n, m) = m
  auto [g, s, t] = poly_gcd_bezout(m, cof);
  (void)g;
  const int q = level.q;
  return Mat2K{Rat(s * m), Rat(-t), Rat(level.n), Rat(m)};
}

OperatorMatrix atkin_lehner(const Poly& m, const QuotientGraph& G,
                            const std::vector<HarmonicCochain>& basis) {
  return operator_matrix(G, basis, {atkin_lehner_matrix(m, G.level())},
                         "W_" + m.to_string());
}

HarmonicCochain degeneracy_image(const HarmonicCochain& f, const QuotientGraph& src,
                                 const Poly& m_prime, const QuotientGraph& dst) {
  const Poly prod = src.level().n * m_prime;
  if (!prod.divides(dst.level().n) || src.level().n == dst.level().n)
    throw std::invalid_argument("degeneracy_image: requires src * m_prime | n, src != n");
  const int q = dst.level().q;
  // conjugating (m' 0; 0 1) carries Gamma_0(n) into Gamma_0(src) when
  // src * m' | n, which makes the image well defined on the quotient
  Mat2K scale{Rat(m_prime), Rat::zero(q), Rat::zero(q), Rat::one(q)};

  HarmonicCochain img;
  img.cuspidal = f.cuspidal;
  img.edge_values.resize(dst.undirected_edge_count());
  img.end_values.resize(dst.cusp_list().size());
  for (int k = 0; k < dst.undirected_edge_count(); ++k) {
    EdgeCoord e{dst.edges()[2 * k].rep, dst.edges()[2 * k].r, +1};
    img.edge_values[k] = located_value(f, src, src.locate(scale * edge_rep(e, dst.level())));
  }
  for (size_t s = 0; s < dst.cusp_list().size(); ++s)
    img.end_values[s] =
        located_value(f, src, src.locate(scale * end_attach_rep(dst, int(s))));
  if (img.cuspidal)
    for (const auto& y : img.end_values)
      if (y != 0) throw InvariantError("degeneracy image is not cuspidal");
  check_harmonic(img, dst);
  return img;
}

Rational petersson(const HarmonicCochain& f1, const HarmonicCochain& f2,
                   const QuotientGraph& G) {
  if (f1.edge_values.size() != size_t(G.undirected_edge_count()) ||
      f2.edge_values.size() != size_t(G.undirected_edge_count()))
    throw std::invalid_argument("petersson: cochains on a different graph");
  if (!f1.cuspidal || !f2.cuspidal)
    throw std::invalid_argument("petersson: requires cuspidal cochains");
  Rational sum = 0;
  for (int k = 0; k < G.undirected_edge_count(); ++k) {
    if (f1.edge_values[k] == 0 || f2.edge_values[k] == 0) continue;
    // both orientations contribute equally
    sum += 2 * f1.edge_values[k] * f2.edge_values[k] /
           Rational(long(G.edges()[2 * k].stab));
  }
  return sum;
}

std::vector<HarmonicCochain> old_subspace(const QuotientGraph& G) {
  const Level& L = G.level();
  std::vector<HarmonicCochain> images;
  // proper monic divisors d with deg >= 3 (H_0 is trivial below that)
  for_each_poly(L.q, L.deg() - 1, true, [&](const Poly& d) {
    if (d.deg() < 3 || !d.divides(L.n)) return;
    Level sub = Level::make(L.q, d);
    QuotientGraph subG = QuotientGraph::build(sub);
    auto sub_basis = cuspidal_basis(subG);
    if (sub_basis.empty()) return;
    Poly cof = L.n / d;
    for_each_poly(L.q, cof.deg(), true, [&](const Poly& mp) {
      if (!mp.divides(cof)) return;
      for (const auto& f : sub_basis)
        images.push_back(degeneracy_image(f, subG, mp, G));
    });
  });
  if (images.empty()) return {};
  // reduce the spanning set to a basis
  QMat M(0, 0);
  std::vector<HarmonicCochain> basis;
  for (auto& img : images) {
    QMat trial = M;
    trial.append_row(img.edge_values);
    if (rank(trial) > int(basis.size())) {
      M = std::move(trial);
      basis.push_back(std::move(img));
    }
  }
  return basis;
}

std::vector<HarmonicCochain> new_subspace(const QuotientGraph& G,
                                          const std::vector<HarmonicCochain>& cusp_basis) {
  auto old_basis = old_subspace(G);
  if (old_basis.empty()) return cusp_basis;
  QMat gram(int(old_basis.size()), int(cusp_basis.size()));
  for (size_t i = 0; i < old_basis.size(); ++i)
    for (size_t j = 0; j < cusp_basis.size(); ++j)
      gram.at(int(i), int(j)) = petersson(old_basis[i], cusp_basis[j], G);
  auto null = kernel_basis(gram);
  std::vector<HarmonicCochain> out;
  for (const auto& coeffs : null) {
    HarmonicCochain f;
    f.cuspidal = true;
    f.edge_values.assign(G.undirected_edge_count(), 0);
    f.end_values.assign(G.cusp_list().size(), 0);
    for (size_t j = 0; j < cusp_basis.size(); ++j) {
      if (coeffs[j] == 0) continue;
      for (int k = 0; k < G.undirected_edge_count(); ++k)
        f.edge_values[k] += coeffs[j] * cusp_basis[j].edge_values[k];
    }
    out.push_back(std::move(f));
  }
  return out;
}

int pairing_rank(const QuotientGraph& G, const std::vector<HarmonicCochain>& basis,
                 int bound) {
  if (basis.empty()) return 0;
  FourierPlan plan = FourierPlan::make(G, bound);
  std::vector<std::vector<Rational>> cols;
  for (const auto& f : basis) {
    auto fc = fourier_with_plan(f, G, plan);
    std::vector<Rational> col;
    for (const auto& [m, cm] : fc.cm) col.push_back(cm);
    cols.push_back(std::move(col));
  }
  QMat A(int(cols[0].size()), int(cols.size()));
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) A.at(i, j) = cols[j][i];
  return rank(A);
}

std::vector<Rational> coordinates_in_basis(const QuotientGraph& G,
                                           const std::vector<HarmonicCochain>& basis,
                                           const HarmonicCochain& f) {
  (void)G;
  return solve_exact(basis_matrix(basis), coords_of(f));
}

}  // namespace ffsturm
