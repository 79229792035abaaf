#ifndef FFSTURM_FACTOR_HPP
#define FFSTURM_FACTOR_HPP

#include <functional>
#include <vector>

#include "ffsturm/poly.hpp"

namespace ffsturm {

/// Prime factorization of a monic nonzero polynomial, primes monic,
/// sorted degree-lexicographically. factorize(1) is empty.
std::vector<std::pair<Poly, int>> factorize(const Poly& n);

bool is_irreducible(const Poly& f);

/// Number of distinct prime factors.
int prime_factor_count(const Poly& n);

/// Radical: product of the distinct primes.
Poly radical(const Poly& n);

/// Visits every polynomial of degree <= max_deg exactly once in
/// degree-lexicographic order (zero first unless monic_only).
/// max_deg = -1 yields only zero (or nothing when monic_only).
void for_each_poly(int q, int max_deg, bool monic_only,
                   const std::function<void(const Poly&)>& fn);

std::vector<Poly> enumerate_polys(int q, int max_deg, bool monic_only);

/// Monic polynomials of degree exactly d, degree-lex order.
std::vector<Poly> monic_polys_of_degree(int q, int d);

/// Monic irreducibles of degree exactly d, degree-lex order.
std::vector<Poly> monic_primes_of_degree(int q, int d);

/// Monic irreducibles of degree <= d, degree-lex order.
std::vector<Poly> monic_primes_up_to(int q, int d);

}  // namespace ffsturm

#endif
