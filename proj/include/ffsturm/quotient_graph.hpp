#ifndef FFSTURM_QUOTIENT_GRAPH_HPP
#define FFSTURM_QUOTIENT_GRAPH_HPP

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ffsturm/edge_reduction.hpp"
#include "ffsturm/proj_line.hpp"

namespace ffsturm {

/// Raised when a structural self-check fails; the CLI maps it to exit
/// code 4.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// The finite part G(n)^o of Gamma_0(n)\T plus end metadata.
///
/// Directed edge ids come in reversal pairs: 2k points from stratum r to
/// r+1 (the e_r direction), 2k+1 is its reversal.
class QuotientGraph {
public:
  struct Vertex {
    int r = 0;
    long long stab = 0;
    ProjPoint rep;
  };
  struct Edge {
    int origin = 0;
    int terminus = 0;
    int rev = 0;
    long long stab = 0;
    int r = 0;
    ProjPoint rep;
  };
  struct End {
    int cusp = 0;           // index into cusp_list()
    int attach_vertex = -1;  // -1 only for n = 1
    long long edge_stab = 0;  // stab order of the first end edge
  };

  static QuotientGraph build(const Level& level);

  const Level& level() const { return level_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int undirected_edge_count() const { return int(edges_.size() / 2); }
  const std::vector<Cusp>& cusp_list() const { return cusps_; }
  const std::vector<End>& ends() const { return ends_; }
  const std::vector<ProjPoint>& points() const { return points_; }

  /// First Betti number of the connected finite part; throws
  /// InvariantError if the finite part is disconnected.
  int genus() const;

  /// Where a reduced edge coordinate lands in the quotient.
  struct Located {
    bool finite = false;
    int edge = -1;   // directed edge id (finite case)
    int cusp = -1;   // end index (end case)
    int depth = 0;   // r - ell_s into the end
    int sign = +1;   // orientation: +1 means pointing away from v_0
  };
  Located locate(const EdgeCoord& e) const;
  Located locate(const Mat2K& g) const { return locate(reduce_edge(g, level_)); }

  int point_index(const ProjPoint& pt) const;
  int cusp_of_point(int point_idx) const { return cusp_id_[point_idx]; }
  int width_deg_of(int point_idx) const { return width_deg_[point_idx]; }
  /// Finite vertex id of the class of (points()[point_idx], r); -1 when
  /// that stratum does not meet the finite part.
  int vertex_id(int point_idx, int r) const;

  /// Directed edge ids with the given origin, end attachments included
  /// via ends(); used by the harmonicity assembler.
  const std::vector<std::vector<int>>& edges_by_origin() const {
    return edges_by_origin_;
  }
  const std::vector<std::vector<int>>& ends_by_attach() const {
    return ends_by_attach_;
  }

  /// Betti number of the subgraph on the surviving undirected edges
  /// (isolated vertices dropped); independent of connectivity.
  int betti_of_subgraph(const std::vector<bool>& undirected_removed) const;

private:
  Level level_;
  std::vector<ProjPoint> points_;
  std::unordered_map<std::uint64_t, int> point_index_;
  std::vector<int> width_deg_;
  std::vector<int> cusp_id_;
  std::vector<Cusp> cusps_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<End> ends_;
  // per stratum r: class root per point (-1 when dead), and maps from
  // root point index to vertex / directed edge id
  std::vector<std::vector<int>> stratum_root_;
  std::vector<std::unordered_map<int, int>> vertex_of_root_;  // by stratum
  std::vector<std::unordered_map<int, int>> edge_of_root_;    // by stratum
  std::vector<int> vertex0_root_;  // GL_2(F_q) classes at r = 0
  std::unordered_map<int, int> vertex_of_root0_;
  std::vector<std::vector<int>> edges_by_origin_;
  std::vector<std::vector<int>> ends_by_attach_;
};

}  // namespace ffsturm

#endif
