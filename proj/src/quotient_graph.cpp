#include "ffsturm/quotient_graph.hpp"

#include <algorithm>
#include <numeric>

#include "ffsturm/factor.hpp"

namespace ffsturm {

namespace {

struct UF {
  std::vector<int> parent;
  explicit UF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

int QuotientGraph::point_index(const ProjPoint& pt) const {
  auto it = point_index_.find(pt.key());
  if (it == point_index_.end())
    throw std::invalid_argument("QuotientGraph: unknown point");
  return it->second;
}

int QuotientGraph::vertex_id(int point_idx, int r) const {
  if (r == 0) {
    auto it = vertex_of_root0_.find(vertex0_root_[point_idx]);
    return it == vertex_of_root0_.end() ? -1 : it->second;
  }
  if (r >= int(stratum_root_.size())) return -1;
  int root = stratum_root_[r][point_idx];
  if (root < 0) return -1;
  auto it = vertex_of_root_[r].find(root);
  return it == vertex_of_root_[r].end() ? -1 : it->second;
}

QuotientGraph QuotientGraph::build(const Level& level) {
  QuotientGraph G;
  G.level_ = level;
  const int q = level.q;
  const auto& F = GaloisField::get(q);
  const int n_deg = level.deg();

  G.points_ = enumerate_proj_line(level);
  const int npts = int(G.points_.size());
  for (int i = 0; i < npts; ++i) G.point_index_[G.points_[i].key()] = i;
  G.width_deg_.resize(npts);
  for (int i = 0; i < npts; ++i) G.width_deg_[i] = width_deg(G.points_[i], level);

  G.cusp_id_.assign(npts, 0);
  {
    auto orbit = cusp_orbit_ids(G.points_, level);
    // reorder so that the [0:1] orbit is cusp 0, the rest by orbit rep
    G.cusps_ = cusps(level);
    std::unordered_map<std::uint64_t, int> cusp_by_rep;
    for (size_t k = 0; k < G.cusps_.size(); ++k)
      cusp_by_rep[G.cusps_[k].orbit_rep.key()] = int(k);
    int norb = *std::max_element(orbit.begin(), orbit.end()) + 1;
    std::vector<int> orbit_to_cusp(norb, -1);
    for (int i = 0; i < npts; ++i) {
      if (orbit_to_cusp[orbit[i]] == -1) {
        auto it = cusp_by_rep.find(G.points_[i].key());
        if (it != cusp_by_rep.end()) orbit_to_cusp[orbit[i]] = it->second;
      }
    }
    for (int i = 0; i < npts; ++i) {
      int c = orbit_to_cusp[orbit[i]];
      if (c < 0) throw InvariantError("build: cusp orbit without representative");
      G.cusp_id_[i] = c;
    }
  }

  auto act_index = [&](int i, const Poly& b, FqElem eps) {
    const ProjPoint& pt = G.points_[i];
    ProjPoint moved =
        canonicalize(pt.c(), pt.c() * b + pt.d().scaled(eps), level);
    return G.point_index_.at(moved.key());
  };

  // r = 0 vertex partition: right GL_2(F_q) action, generated by
  // (1 1; 0 1), (1 0; 1 1) and diag(g, 1)
  UF uf0(npts);
  for (int i = 0; i < npts; ++i) {
    const ProjPoint& pt = G.points_[i];
    ProjPoint e1 = canonicalize(pt.c(), pt.c() + pt.d(), level);
    uf0.unite(i, G.point_index_.at(e1.key()));
    ProjPoint e2 = canonicalize(pt.c() + pt.d(), pt.d(), level);
    uf0.unite(i, G.point_index_.at(e2.key()));
    if (q > 2) {
      ProjPoint e3 = canonicalize(pt.c().scaled(F.generator()), pt.d(), level);
      uf0.unite(i, G.point_index_.at(e3.key()));
    }
  }
  G.vertex0_root_.resize(npts);
  for (int i = 0; i < npts; ++i) G.vertex0_root_[i] = uf0.find(i);

  // strata partitions under Gamma_infty^{(r)}, built incrementally
  const int max_stratum = std::max(0, n_deg - 1);  // vertices live at r <= deg n - 1
  std::vector<UF> ufs;
  ufs.reserve(max_stratum + 1);
  ufs.emplace_back(npts);
  {
    UF& u = ufs[0];
    std::vector<Poly> bgens;
    for (int k = 0; k < F.e(); ++k)
      bgens.push_back(Poly::constant(q, F.pow(F.generator(), k)));
    for (int i = 0; i < npts; ++i) {
      if (q > 2) {
        const ProjPoint& pt = G.points_[i];
        ProjPoint sc = canonicalize(pt.c(), pt.d().scaled(F.generator()), level);
        u.unite(i, G.point_index_.at(sc.key()));
      }
      for (const Poly& b : bgens) u.unite(i, act_index(i, b, 1));
    }
  }
  for (int r = 1; r <= max_stratum; ++r) {
    ufs.push_back(ufs[r - 1]);
    if (r <= n_deg - 1) {
      UF& u = ufs[r];
      for (int k = 0; k < F.e(); ++k) {
        Poly b = Poly::constant(q, F.pow(F.generator(), k)).shifted(r);
        for (int i = 0; i < npts; ++i) u.unite(i, act_index(i, b, 1));
      }
    }
  }

  G.stratum_root_.assign(max_stratum + 1, std::vector<int>(npts, -1));
  for (int r = 0; r <= max_stratum; ++r)
    for (int i = 0; i < npts; ++i) G.stratum_root_[r][i] = ufs[r].find(i);

  // end collapse check: beyond the finite part each cusp is one ray
  for (int r = 0; r <= max_stratum; ++r) {
    std::unordered_map<int, int> root_of_cusp;
    for (int i = 0; i < npts; ++i) {
      if (std::max(0, G.width_deg_[i] - 1) > r) continue;
      auto [it, inserted] = root_of_cusp.try_emplace(G.cusp_id_[i], G.stratum_root_[r][i]);
      if (!inserted && it->second != G.stratum_root_[r][i])
        throw InvariantError("build: end stratum splits a cusp orbit");
    }
  }

  // vertices
  G.vertex_of_root_.assign(max_stratum + 1, {});
  for (int i = 0; i < npts; ++i) {
    if (G.width_deg_[i] < 1) continue;
    int root = G.vertex0_root_[i];
    if (!G.vertex_of_root0_.count(root)) {
      int id = int(G.vertices_.size());
      G.vertex_of_root0_[root] = id;
      Vertex v;
      v.r = 0;
      v.rep = G.points_[root];  // roots are least indices, points sorted
      v.stab = stabilizer_order(v.rep, 0, level, StabKind::Vertex);
      G.vertices_.push_back(std::move(v));
    }
  }
  for (int r = 1; r <= max_stratum; ++r) {
    for (int i = 0; i < npts; ++i) {
      if (G.width_deg_[i] < r + 1) continue;
      int root = G.stratum_root_[r][i];
      if (!G.vertex_of_root_[r].count(root)) {
        int id = int(G.vertices_.size());
        G.vertex_of_root_[r][root] = id;
        Vertex v;
        v.r = r;
        v.rep = G.points_[root];
        v.stab = stabilizer_order(v.rep, r, level, StabKind::Vertex);
        G.vertices_.push_back(std::move(v));
      }
    }
  }

  // every r = 0 class of a positive-width point must carry a vertex;
  // ends with ell_s = 0 attach there even when their own width is 0
  for (int i = 0; i < npts; ++i)
    if (n_deg >= 1 && G.vertex_id(i, 0) == -1)
      throw InvariantError("build: r=0 class without a finite vertex");

  // edges per stratum r: classes among points of width >= r + 2
  G.edge_of_root_.assign(max_stratum + 1, {});
  for (int r = 0; r + 2 <= n_deg; ++r) {
    for (int i = 0; i < npts; ++i) {
      if (G.width_deg_[i] < r + 2) continue;
      int root = G.stratum_root_[r][i];
      if (G.edge_of_root_[r].count(root)) continue;
      int id = int(G.edges_.size());
      G.edge_of_root_[r][root] = id;
      Edge fwd;
      fwd.r = r;
      fwd.rep = G.points_[root];
      fwd.origin = G.vertex_id(root, r);
      fwd.terminus = G.vertex_id(root, r + 1);
      if (fwd.origin < 0 || fwd.terminus < 0)
        throw InvariantError("build: edge endpoint missing");
      fwd.stab = stabilizer_order(fwd.rep, r, level, StabKind::Edge);
      fwd.rev = id + 1;
      Edge bwd = fwd;
      std::swap(bwd.origin, bwd.terminus);
      bwd.rev = id;
      G.edges_.push_back(std::move(fwd));
      G.edges_.push_back(std::move(bwd));
    }
  }

  // ends: one per cusp, attached at the stratum-ell_s vertex
  for (size_t k = 0; k < G.cusps_.size(); ++k) {
    End e;
    e.cusp = int(k);
    const Cusp& s = G.cusps_[k];
    int pi = G.point_index_.at(s.orbit_rep.key());
    e.attach_vertex = n_deg == 0 ? -1 : G.vertex_id(pi, s.ell_s);
    if (n_deg >= 1 && e.attach_vertex < 0)
      throw InvariantError("build: end attach vertex missing");
    e.edge_stab = stabilizer_order(s.orbit_rep, s.ell_s, level, StabKind::Edge);
    G.ends_.push_back(e);
  }

  G.edges_by_origin_.assign(G.vertices_.size(), {});
  for (size_t eid = 0; eid < G.edges_.size(); ++eid)
    G.edges_by_origin_[G.edges_[eid].origin].push_back(int(eid));
  G.ends_by_attach_.assign(G.vertices_.size(), {});
  for (size_t k = 0; k < G.ends_.size(); ++k)
    if (G.ends_[k].attach_vertex >= 0)
      G.ends_by_attach_[G.ends_[k].attach_vertex].push_back(int(k));

  return G;
}

int QuotientGraph::genus() const {
  if (vertices_.empty()) return 0;
  UF uf(int(vertices_.size()));
  for (size_t e = 0; e < edges_.size(); e += 2)
    uf.unite(edges_[e].origin, edges_[e].terminus);
  int comps = 0;
  for (size_t v = 0; v < vertices_.size(); ++v)
    if (uf.find(int(v)) == int(v)) ++comps;
  if (comps != 1) throw InvariantError("genus: finite part disconnected");
  return undirected_edge_count() - int(vertices_.size()) + 1;
}

QuotientGraph::Located QuotientGraph::locate(const EdgeCoord& e) const {
  Located out;
  int pi = point_index(e.pt);
  int wd = width_deg_[pi];
  if (e.r <= wd - 2) {
    int root = stratum_root_[e.r][pi];
    auto it = edge_of_root_[e.r].find(root);
    if (it == edge_of_root_[e.r].end())
      throw InvariantError("locate: missing finite edge class");
    out.finite = true;
    out.edge = it->second + (e.orient < 0 ? 1 : 0);
    out.sign = e.orient;
    return out;
  }
  out.finite = false;
  out.cusp = cusp_id_[pi];
  out.depth = e.r - std::max(0, wd - 1);
  out.sign = e.orient;
  return out;
}

int QuotientGraph::betti_of_subgraph(const std::vector<bool>& undirected_removed) const {
  const int nv = int(vertices_.size());
  UF uf(nv);
  std::vector<bool> touched(nv, false);
  int surviving = 0;
  for (int k = 0; k < undirected_edge_count(); ++k) {
    if (undirected_removed[k]) continue;
    ++surviving;
    const Edge& e = edges_[2 * k];
    touched[e.origin] = true;
    touched[e.terminus] = true;
    uf.unite(e.origin, e.terminus);
  }
  int verts = 0, comps = 0;
  for (int v = 0; v < nv; ++v) {
    if (!touched[v]) continue;
    ++verts;
    if (uf.find(v) == v) ++comps;
  }
  return surviving - verts + comps;
}

}  // namespace ffsturm
