#include "ffsturm/drinfeld.hpp"

#include <stdexcept>

namespace ffsturm {

long long index_kappa(const Level& level) {
  return (long long)enumerate_proj_line(level).size();
}

DrinfeldBound drinfeld_sturm(const DrinfeldBoundQuery& query) {
  const int q = query.q;
  if (query.m < 0 || query.m > q - 2)
    throw std::invalid_argument("drinfeld_sturm: type m out of range");
  if (query.k < 0 || query.ell < 0)
    throw std::invalid_argument("drinfeld_sturm: negative weight or order");
  Level level = Level::make(q, query.n);

  DrinfeldBound out;
  out.kappa = index_kappa(level);
  out.type_warning = ((query.k - 2 * query.m) % (q - 1) + (q - 1)) % (q - 1) != 0;

  Rational norm_n = rational_pow(q, level.deg());  // |n|_infty
  Rational denom = Rational(q - 1) * norm_n;
  Rational b = Rational(out.kappa) *
                   (Rational(query.k) / Rational((long)q * q - 1) -
                    Rational(query.ell) / denom) +
               (Rational(query.ell) - Rational(query.m) * norm_n) / denom;
  b.canonicalize();
  out.bound = b;
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), b.get_num().get_mpz_t(), b.get_den().get_mpz_t());
  out.j_max = fl.get_si();
  return out;
}

}  // namespace ffsturm
