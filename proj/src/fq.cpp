#include "ffsturm/fq.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace ffsturm {

namespace {

int smallest_prime_factor(int n) {
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

// Multiplies two polynomials over F_p given as base-p digit vectors,
// reducing modulo the monic polynomial `mod` (degree e, coefficients
// low-first, leading coefficient 1 implicit in mod.size() == e).
std::vector<int> mulmod_fp(const std::vector<int>& a, const std::vector<int>& b,
                           const std::vector<int>& mod, int p) {
  const size_t e = mod.size();
  std::vector<int> prod(2 * e - 1, 0);
  for (size_t i = 0; i < e; ++i)
    for (size_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (size_t k = 2 * e - 2; k >= e; --k) {
    int c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    // x^k = x^(k-e) * (x^e mod `mod`), where x^e = -mod.
    for (size_t i = 0; i < e; ++i)
      prod[k - e + i] = ((prod[k - e + i] - c * mod[i]) % p + p) % p;
  }
  prod.resize(e);
  return prod;
}

int encode_digits(const std::vector<int>& v, int p) {
  int code = 0;
  for (size_t i = v.size(); i-- > 0;) code = code * p + v[i];
  return code;
}

std::vector<int> decode_digits(int code, int p, int e) {
  std::vector<int> v(e);
  for (int i = 0; i < e; ++i) {
    v[i] = code % p;
    code /= p;
  }
  return v;
}

// Irreducibility over F_p by trial division against all monic
// polynomials of degree <= e/2 (e <= 8, p small: trivial cost).
bool irreducible_fp(const std::vector<int>& mod, int p) {
  const int e = int(mod.size());
  // full coefficient vector of the candidate, monic of degree e
  std::vector<int> f(mod);
  f.push_back(1);
  for (int d = 1; 2 * d <= e; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int low = 0; low < count; ++low) {
      std::vector<int> g = decode_digits(low, p, d);
      g.push_back(1);
      // long division remainder f mod g
      std::vector<int> r(f);
      for (int k = e; k >= d; --k) {
        int c = r[k];
        if (c == 0) continue;
        for (int i = 0; i <= d; ++i) r[k - d + i] = ((r[k - d + i] - c * g[i]) % p + p) % p;
      }
      bool zero = true;
      for (int i = 0; i < d; ++i)
        if (r[i] != 0) zero = false;
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime_power(int q) {
  if (q < 2) return false;
  int p = smallest_prime_factor(q);
  while (q % p == 0) q /= p;
  return q == 1;
}

GaloisField::GaloisField(int q) : q_(q) {
  if (!is_prime_power(q) || q > 256)
    throw std::invalid_argument("GaloisField: q must be a prime power <= 256");
  p_ = smallest_prime_factor(q);
  e_ = 0;
  for (int t = q; t > 1; t /= p_) ++e_;

  std::vector<int> mod;  // low e coefficients of the modulus
  if (e_ > 1) {
    int count = 1;
    for (int i = 0; i < e_; ++i) count *= p_;
    for (int low = 0; low < count; ++low) {
      std::vector<int> cand = decode_digits(low, p_, e_);
      if (irreducible_fp(cand, p_)) {
        mod = cand;
        break;
      }
    }
  }

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  frob_.resize(q);
  trace_.resize(q);
  dlog_.assign(q, -1);

  for (int a = 0; a < q; ++a) {
    std::vector<int> va = decode_digits(a, p_, e_);
    std::vector<int> vn(e_);
    for (int i = 0; i < e_; ++i) vn[i] = (p_ - va[i]) % p_;
    neg_[a] = FqElem(encode_digits(vn, p_));
    for (int b = 0; b < q; ++b) {
      std::vector<int> vb = decode_digits(b, p_, e_);
      std::vector<int> vs(e_);
      for (int i = 0; i < e_; ++i) vs[i] = (va[i] + vb[i]) % p_;
      add_[idx(FqElem(a), FqElem(b))] = FqElem(encode_digits(vs, p_));
      std::vector<int> vm =
          e_ == 1 ? std::vector<int>{(va[0] * vb[0]) % p_} : mulmod_fp(va, vb, mod, p_);
      mul_[idx(FqElem(a), FqElem(b))] = FqElem(encode_digits(vm, p_));
    }
  }
  for (int a = 1; a < q; ++a)
    for (int b = 1; b < q; ++b)
      if (mul_[idx(FqElem(a), FqElem(b))] == 1) inv_[a] = FqElem(b);

  for (int a = 0; a < q; ++a) {
    FqElem f = FqElem(a);
    for (int i = 1; i < p_; ++i) f = mul_[idx(f, FqElem(a))];
    frob_[a] = f;
  }
  // trace = a + a^p + ... + a^{p^{e-1}}, an element of F_p
  for (int a = 0; a < q; ++a) {
    FqElem acc = FqElem(a), cur = FqElem(a);
    for (int i = 1; i < e_; ++i) {
      cur = frob_[cur];
      acc = add_[idx(acc, cur)];
    }
    trace_[a] = int(acc);  // lies in F_p: code < p
  }

  gen_ = 0;
  for (int a = 2; a < q && gen_ == 0; ++a) {
    int ordcount = 0;
    FqElem x = 1;
    do {
      x = mul_[idx(x, FqElem(a))];
      ++ordcount;
    } while (x != 1);
    if (ordcount == q - 1) gen_ = FqElem(a);
  }
  if (q == 2) gen_ = 1;
  if (gen_ != 0) {
    FqElem x = 1;
    for (int k = 0; k < q - 1; ++k) {
      dlog_[x] = k;
      x = mul_[idx(x, gen_)];
    }
  }
}

FqElem GaloisField::pow(FqElem a, long long n) const {
  if (a == 0) {
    if (n < 0) throw std::domain_error("GaloisField::pow: 0^negative");
    return n == 0 ? FqElem(1) : FqElem(0);
  }
  long long m = n % (q_ - 1);
  if (m < 0) m += q_ - 1;
  FqElem r = 1, base = a;
  while (m) {
    if (m & 1) r = mul(r, base);
    base = mul(base, base);
    m >>= 1;
  }
  return r;
}

std::string GaloisField::elem_name(FqElem a) const {
  if (e_ == 1 || a <= 1) return std::to_string(int(a));
  int k = dlog_[a];
  if (k == 1) return "g";
  return "g^" + std::to_string(k);
}

FqElem GaloisField::parse_elem(const std::string& token) const {
  if (token.empty()) throw std::invalid_argument("empty field element");
  if (token[0] == 'g') {
    if (e_ == 1) throw std::invalid_argument("generator notation needs non-prime q");
    long long k = 1;
    if (token.size() > 1) {
      if (token[1] != '^') throw std::invalid_argument("bad element: " + token);
      k = std::stoll(token.substr(2));
    }
    return pow(gen_, k);
  }
  size_t pos = 0;
  long long v = std::stoll(token, &pos);
  if (pos != token.size()) throw std::invalid_argument("bad element: " + token);
  if (e_ == 1) {
    v %= p_;
    if (v < 0) v += p_;
    return FqElem(v);
  }
  if (v < 0 || v >= q_) throw std::invalid_argument("element code out of range: " + token);
  return FqElem(v);
}

const GaloisField& GaloisField::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, std::unique_ptr<GaloisField>(new GaloisField(q))).first;
  return *it->second;
}

}  // namespace ffsturm
