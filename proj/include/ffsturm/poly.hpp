#ifndef FFSTURM_POLY_HPP
#define FFSTURM_POLY_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "ffsturm/fq.hpp"

namespace ffsturm {

/// Degree of the zero polynomial: compares less than any honest degree
/// and survives small additive shifts without overflow.
constexpr int kNegInf = std::numeric_limits<int>::min() / 4;

/// Polynomial in theta over F_q, coefficients stored lowest degree first.
/// The zero polynomial has an empty coefficient vector.
class Poly {
public:
  Poly() : q_(0) {}
  Poly(int q, std::vector<FqElem> coeffs);

  static Poly zero(int q) { return Poly(q, {}); }
  static Poly one(int q) { return Poly(q, {1}); }
  static Poly constant(int q, FqElem c);
  static Poly theta(int q) { return Poly(q, {0, 1}); }
  /// theta^k, k >= 0.
  static Poly theta_pow(int q, int k);

  int q() const { return q_; }
  const GaloisField& field() const { return GaloisField::get(q_); }

  int deg() const { return coeffs_.empty() ? kNegInf : int(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  bool is_unit() const { return coeffs_.size() == 1; }
  FqElem lc() const { return coeffs_.empty() ? FqElem(0) : coeffs_.back(); }
  FqElem coeff(int i) const {
    return (i < 0 || i >= int(coeffs_.size())) ? FqElem(0) : coeffs_[i];
  }
  const std::vector<FqElem>& coeffs() const { return coeffs_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(FqElem c) const;
  /// this * theta^k (k >= 0).
  Poly shifted(int k) const;
  bool operator==(const Poly& o) const { return q_ == o.q_ && coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Degree-lexicographic order: by degree, then coefficient codes from
  /// the top down. Total order; zero first.
  bool operator<(const Poly& o) const;

  /// Quotient and remainder with deg r < deg divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly operator/(const Poly& o) const { return divmod(o).first; }
  Poly operator%(const Poly& o) const { return divmod(o).second; }
  bool divides(const Poly& multiple) const { return (multiple % *this).is_zero(); }

  Poly monic() const;
  Poly derivative() const;
  FqElem eval(FqElem x) const;

  /// Base-q integer encoding (degree-lex order-compatible). Requires
  /// the encoding to fit in 64 bits.
  std::uint64_t encode() const;
  static Poly decode(int q, std::uint64_t code);

  std::string to_string() const;
  /// Accepts "c0 + c1*T + c2*T^2" style and comma-separated coefficient
  /// lists, lowest degree first.
  static Poly parse(int q, const std::string& text);

private:
  void trim();
  int q_;
  std::vector<FqElem> coeffs_;
};

/// Monic gcd; gcd(0, 0) is an error.
Poly poly_gcd(const Poly& a, const Poly& b);
/// (g, s, t) with g monic, s*a + t*b = g.
std::tuple<Poly, Poly, Poly> poly_gcd_bezout(const Poly& a, const Poly& b);
/// base^n mod modulus.
Poly poly_powmod(const Poly& base, std::uint64_t n, const Poly& modulus);
/// Inverse of a modulo m; error if gcd(a, m) != 1.
Poly poly_invmod(const Poly& a, const Poly& m);

/// Rational function over F_q(theta): num/den with den monic and
/// gcd(num, den) = 1.
class Rat {
public:
  Rat() : num_(), den_() {}
  Rat(Poly num, Poly den);
  explicit Rat(const Poly& p) : Rat(p, Poly::one(p.q())) {}
  static Rat zero(int q) { return Rat(Poly::zero(q)); }
  static Rat one(int q) { return Rat(Poly::one(q)); }
  /// pi_infty^k = theta^{-k} for any integer k.
  static Rat pi_pow(int q, int k);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int q() const { return num_.q(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_one(); }

  /// nu_infty = deg den - deg num; a large positive sentinel for 0.
  int valuation() const;

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator-() const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  /// Splits into polynomial part and proper part: x = [x] + {x} with
  /// nu({x}) >= 1. The theta^0 coefficient belongs to the polynomial part.
  Poly poly_part() const;
  Rat proper_part() const;

  std::string to_string() const;

private:
  Poly num_, den_;
};

constexpr int kPosInfVal = std::numeric_limits<int>::max() / 4;

/// Finite tail of a pi_infty-adic expansion: sum of coeffs[i] *
/// pi_infty^(start + i).
struct LaurentTail {
  int q = 0;
  int start = 0;
  std::vector<FqElem> coeffs;

  FqElem coeff_at(int k) const {
    int i = k - start;
    return (i < 0 || i >= int(coeffs.size())) ? FqElem(0) : coeffs[i];
  }
  Rat to_rat() const;
  /// Exact conversion; throws unless the denominator is a power of theta
  /// (up to the monic normalization).
  static LaurentTail from_rat(const Rat& x);
};

struct PolyHash {
  size_t operator()(const Poly& p) const {
    std::uint64_t h = 1469598103934665603ull ^ std::uint64_t(p.q());
    for (FqElem c : p.coeffs()) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};

}  // namespace ffsturm

#endif
