#ifndef FFSTURM_FACTOR_SIEVE_HPP
#define FFSTURM_FACTOR_SIEVE_HPP

#include <cstdint>
#include <vector>

#include "ffsturm/poly.hpp"

namespace ffsturm {

/// Smallest-prime-factor table over all monic polynomials of degree <=
/// max_deg, indexed by base-q encoding. Supports O(#factors) extraction
/// of the set of distinct primes of any monic in range, with no
/// polynomial arithmetic after construction.
class FactorSieve {
public:
  FactorSieve(int q, int max_deg);

  int q() const { return q_; }
  int max_deg() const { return max_deg_; }
  int prime_count() const { return int(primes_.size()); }
  const Poly& prime(int id) const { return primes_[id]; }

  /// Distinct prime ids of the monic polynomial with this encoding,
  /// strictly increasing.
  std::vector<std::int32_t> prime_set(std::uint64_t monic_encoding) const;

  bool is_unit_encoding(std::uint64_t e) const { return e < std::uint64_t(q_); }

private:
  int q_, max_deg_;
  std::vector<std::int32_t> spf_;    // smallest prime id, -1 for units/unset
  std::vector<std::uint32_t> quot_;  // encoding of f / spf(f)
  std::vector<Poly> primes_;
};

}  // namespace ffsturm

#endif
