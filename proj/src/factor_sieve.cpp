#include "ffsturm/factor_sieve.hpp"

#include <stdexcept>

#include "ffsturm/factor.hpp"

namespace ffsturm {

FactorSieve::FactorSieve(int q, int max_deg) : q_(q), max_deg_(max_deg) {
  // encodings of monic polynomials of degree max_deg reach q^{max_deg+1} - 1
  std::uint64_t size = 1;
  for (int i = 0; i <= max_deg; ++i) {
    size *= std::uint64_t(q);
    if (size > (1u << 27))
      throw std::invalid_argument("FactorSieve: table too large");
  }
  spf_.assign(size_t(size), -1);
  quot_.assign(size_t(size), 0);

  // sweep monic polynomials in encoding order; unmarked => prime
  for (int d = 1; d <= max_deg; ++d) {
    for (const Poly& f : monic_polys_of_degree(q, d)) {
      std::uint64_t ef = f.encode();
      if (spf_[ef] != -1) continue;
      int id = int(primes_.size());
      primes_.push_back(f);
      spf_[ef] = id;
      quot_[ef] = std::uint32_t(Poly::one(q).encode());
      // mark monic multiples f * g up to the degree cap
      for_each_poly(q, max_deg - d, true, [&](const Poly& g) {
        if (g.is_one()) return;
        Poly prod = f * g;
        std::uint64_t ep = prod.encode();
        if (spf_[ep] == -1) {
          spf_[ep] = id;
          quot_[ep] = std::uint32_t(g.encode());
        }
      });
    }
  }
}

std::vector<std::int32_t> FactorSieve::prime_set(std::uint64_t e) const {
  std::vector<std::int32_t> out;
  while (e >= std::uint64_t(q_)) {
    if (e >= spf_.size() || spf_[e] < 0)
      throw std::logic_error("FactorSieve: encoding out of range");
    std::int32_t p = spf_[e];
    if (out.empty() || out.back() != p) out.push_back(p);
    e = quot_[e];
  }
  return out;
}

}  // namespace ffsturm
