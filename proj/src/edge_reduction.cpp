#include "ffsturm/edge_reduction.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace ffsturm {

Mat2K Mat2K::identity(int q) {
  return {Rat::one(q), Rat::zero(q), Rat::zero(q), Rat::one(q)};
}

Mat2K Mat2K::from_poly(const Mat2Poly& m) {
  return {Rat(m.a), Rat(m.b), Rat(m.c), Rat(m.d)};
}

Mat2K Mat2K::diag_theta_pow(int q, int r) {
  return {Rat(Poly::theta_pow(q, r)), Rat::zero(q), Rat::zero(q), Rat::one(q)};
}

Mat2K Mat2K::reversal(int q) {
  return {Rat::zero(q), Rat::one(q), Rat::pi_pow(q, 1), Rat::zero(q)};
}

Mat2K Mat2K::atkin_lehner_full(const Poly& n) {
  const int q = n.q();
  return {Rat::zero(q), -Rat::one(q), Rat(n), Rat::zero(q)};
}

Mat2K Mat2K::operator*(const Mat2K& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d,
          c * o.a + d * o.c, c * o.b + d * o.d};
}

Rat Mat2K::det() const { return a * d - b * c; }

Mat2K mat_inverse(const Mat2K& m) {
  Rat dt = m.det();
  if (dt.is_zero()) throw std::domain_error("mat_inverse: singular");
  return {m.d / dt, -m.b / dt, -m.c / dt, m.a / dt};
}

Mat2Poly mat_mul(const Mat2Poly& x, const Mat2Poly& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Poly mat_det(const Mat2Poly& m) { return m.a * m.d - m.b * m.c; }

namespace {

struct ReductionState {
  Mat2K M;
  Mat2Poly gamma;  // accumulated: e_g = gamma * (current class)
  int orient = +1;
};

// gamma <- gamma * L^{-1} for the left op L applied to M.
void push_left(ReductionState& st, const Mat2Poly& l_inv) {
  st.gamma = mat_mul(st.gamma, l_inv);
}

// Core loop shared by the vertex and edge reductions. For edges, right
// operations stay in K^x * Iwahori and column swaps go through the
// reversal matrix, toggling orientation.
ReducedEdge reduce_core(const Mat2K& g, bool edge_mode) {
  const int q = g.q();
  if (g.det().is_zero()) throw std::domain_error("reduce: singular matrix");

  ReductionState st{g,
                    Mat2Poly{Poly::one(q), Poly::zero(q), Poly::zero(q), Poly::one(q)},
                    +1};
  const Rat zero = Rat::zero(q);
  const Mat2K R = Mat2K::reversal(q);

  auto apply_reversal = [&](void) {
    st.M = st.M * R;
    st.orient = -st.orient;
  };

  for (int iter = 0; iter < 4096; ++iter) {
    // triangularize: clear the bottom-left entry by right operations
    if (!st.M.c.is_zero()) {
      if (st.M.d.is_zero()) {
        if (edge_mode) {
          apply_reversal();
        } else {
          std::swap(st.M.a, st.M.b);
          std::swap(st.M.c, st.M.d);
        }
      } else if (st.M.c.valuation() > st.M.d.valuation()) {
        // col1 += lambda * col2, lambda = -c/d with nu >= 1
        Rat lambda = -(st.M.c / st.M.d);
        st.M = Mat2K{st.M.a + st.M.b * lambda, st.M.b, zero, st.M.d};
      } else if (edge_mode) {
        // col2 += mu * col1, mu = -d/c with nu >= 0, then reverse
        Rat mu = -(st.M.d / st.M.c);
        st.M = Mat2K{st.M.a, st.M.b + st.M.a * mu, st.M.c, zero};
        apply_reversal();
      } else {
        // vertex mode: plain column swap lies in GL_2(O_infty)
        std::swap(st.M.a, st.M.b);
        std::swap(st.M.c, st.M.d);
        Rat lambda = -(st.M.c / st.M.d);
        st.M = Mat2K{st.M.a + st.M.b * lambda, st.M.b, zero, st.M.d};
      }
      if (!st.M.c.is_zero()) continue;  // reversal cases retriangularize
    }

    // M = (alpha, u; 0, beta): scale by 1/beta and absorb the unit part
    // of alpha/beta into a right diagonal, leaving (pi^m, u; 0, 1)
    Rat u = st.M.b / st.M.d;
    int m = (st.M.a / st.M.d).valuation();
    st.M = Mat2K{Rat::pi_pow(q, m), u, zero, Rat::one(q)};

    // reduce u modulo A by a left unipotent in Gamma
    Poly upoly = u.poly_part();
    if (!upoly.is_zero()) {
      u = u.proper_part();
      st.M.b = u;
      push_left(st, Mat2Poly{Poly::one(q), upoly, Poly::zero(q), Poly::one(q)});
    }

    if (m <= 0) {
      ReducedEdge out;
      out.gamma = st.gamma;
      out.r = -m;
      out.orient = st.orient;
      return out;
    }
    if (u.valuation() >= m) {
      // (pi^m, 0; 0, 1) is (0 1; 1 0) diag(theta^{m-1}, 1) R * scalar
      Mat2Poly swapm{Poly::zero(q), Poly::one(q), Poly::one(q), Poly::zero(q)};
      push_left(st, swapm);
      ReducedEdge out;
      out.gamma = st.gamma;
      if (edge_mode) {
        out.r = m - 1;
        out.orient = -st.orient;
      } else {
        out.r = m;
        out.orient = st.orient;
      }
      return out;
    }
    // continued-fraction descent: left-multiply by w0 = (0 -1; 1 0)
    Mat2K w0{zero, -Rat::one(q), Rat::one(q), zero};
    st.M = w0 * st.M;
    // w0^{-1} = (0 1; -1 0)
    push_left(st, Mat2Poly{Poly::zero(q), Poly::one(q), -Poly::one(q), Poly::zero(q)});
  }
  throw std::runtime_error("reduce: descent failed to terminate");
}

}  // namespace

WeilDecomposition weil_decompose(const Mat2K& g) {
  ReducedEdge e = reduce_core(g, /*edge_mode=*/false);
  return WeilDecomposition{e.gamma, e.r};
}

ReducedEdge reduce_edge_gamma(const Mat2K& g) { return reduce_core(g, true); }

EdgeCoord reduce_edge(const Mat2K& g, const Level& level) {
  ReducedEdge re = reduce_edge_gamma(g);
  EdgeCoord e;
  e.pt = canonicalize(re.gamma.c, re.gamma.d, level);
  e.r = re.r;
  e.orient = re.orient;
  return e;
}

Mat2K edge_rep(const EdgeCoord& e, const Level& level) {
  Mat2Poly g = gamma_lift(e.pt, level);
  Mat2K m = Mat2K::from_poly(g) * Mat2K::diag_theta_pow(level.q, e.r);
  if (e.orient < 0) m = m * Mat2K::reversal(level.q);
  return m;
}

EdgeCoord act_and_reduce(const Mat2K& m, const EdgeCoord& e, const Level& level) {
  return reduce_edge(m * edge_rep(e, level), level);
}

namespace {

// z * iota integral with unit determinant for some scalar z, i.e. iota
// in K^x GL_2(O_infty); iwahori additionally wants nu(c) > nu of the
// others after the scaling.
bool in_kx_maximal_compact(const Mat2K& iota, bool iwahori) {
  int v = std::min(std::min(iota.a.valuation(), iota.b.valuation()),
                   std::min(iota.c.valuation(), iota.d.valuation()));
  if (v >= kPosInfVal) return false;
  Rat dt = iota.det();
  if (dt.is_zero()) return false;
  if (dt.valuation() != 2 * v) return false;  // determinant a unit after scaling
  if (iwahori && iota.c.valuation() - v < 1) return false;
  return true;
}

}  // namespace

bool verify_weil(const Mat2K& g, const WeilDecomposition& w) {
  if (w.r < 0) return false;
  Poly dt = mat_det(w.gamma);
  if (dt.deg() != 0) return false;
  Mat2K rest = mat_inverse(Mat2K::diag_theta_pow(g.q(), w.r)) *
               mat_inverse(Mat2K::from_poly(w.gamma)) * g;
  return in_kx_maximal_compact(rest, false);
}

ReducedEdge reduce_horocycle(int q, int m, const std::vector<FqElem>& u_digits) {
  std::uint64_t code = 0;
  for (size_t i = u_digits.size(); i-- > 0;) code = code * q + u_digits[i];
  std::uint64_t key1 = (std::uint64_t(q) << 32) | std::uint64_t(std::uint32_t(m));

  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::unordered_map<std::uint64_t, ReducedEdge>>
      cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it1 = cache.find(key1);
    if (it1 != cache.end()) {
      auto it2 = it1->second.find(code);
      if (it2 != it1->second.end()) return it2->second;
    }
  }
  LaurentTail t{q, 1, u_digits};
  Mat2K g{Rat::pi_pow(q, m), t.to_rat(), Rat::zero(q), Rat::one(q)};
  ReducedEdge red = reduce_edge_gamma(g);
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[key1][code] = red;
  }
  return red;
}

bool verify_reduced_edge(const Mat2K& g, const ReducedEdge& e) {
  if (e.r < 0) return false;
  Poly dt = mat_det(e.gamma);
  if (dt.deg() != 0) return false;
  Mat2K rep = Mat2K::from_poly(e.gamma) * Mat2K::diag_theta_pow(g.q(), e.r);
  if (e.orient < 0) rep = rep * Mat2K::reversal(g.q());
  Mat2K rest = mat_inverse(rep) * g;
  return in_kx_maximal_compact(rest, true);
}

}  // namespace ffsturm
