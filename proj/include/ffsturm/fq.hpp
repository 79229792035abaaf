#ifndef FFSTURM_FQ_HPP
#define FFSTURM_FQ_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffsturm {

/// Element of F_q, encoded as an integer in [0, q).
/// For prime q the code is the residue itself; for q = p^e the base-p
/// digits of the code are the coordinates in the power basis of the
/// fixed modulus polynomial.
using FqElem = std::uint8_t;

/// Arithmetic tables for a fixed finite field F_q, q = p^e <= 256.
///
/// The modulus for extension fields is chosen deterministically: the
/// monic irreducible polynomial of degree e over F_p whose coefficient
/// vector, read as a base-p integer (lowest degree first), is least.
class GaloisField {
public:
  static const GaloisField& get(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int e() const { return e_; }

  FqElem add(FqElem a, FqElem b) const { return add_[idx(a, b)]; }
  FqElem sub(FqElem a, FqElem b) const { return add_[idx(a, neg_[b])]; }
  FqElem mul(FqElem a, FqElem b) const { return mul_[idx(a, b)]; }
  FqElem neg(FqElem a) const { return neg_[a]; }
  FqElem inv(FqElem a) const {
    if (a == 0) throw std::domain_error("GaloisField::inv: zero element");
    return inv_[a];
  }
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, long long n) const;

  /// Trace to the prime field F_p, returned as an integer in [0, p).
  int trace_to_prime_field(FqElem a) const { return trace_[a]; }

  /// Least generator of the multiplicative group.
  FqElem generator() const { return gen_; }

  /// Frobenius x -> x^p.
  FqElem frobenius(FqElem a) const { return frob_[a]; }

  std::string elem_name(FqElem a) const;
  /// Parses "0", "17", "g", "g^3". Throws std::invalid_argument on junk.
  FqElem parse_elem(const std::string& token) const;

private:
  explicit GaloisField(int q);
  int idx(FqElem a, FqElem b) const { return int(a) * q_ + int(b); }

  int q_, p_, e_;
  FqElem gen_;
  std::vector<FqElem> add_, mul_, neg_, inv_, frob_;
  std::vector<int> trace_;
  std::vector<int> dlog_;  // dlog_[gen^k] = k, dlog_[0] = -1
};

bool is_prime_power(int q);

}  // namespace ffsturm

#endif
