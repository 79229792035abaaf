#include "ffsturm/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ffsturm {

Poly::Poly(int q, std::vector<FqElem> coeffs) : q_(q), coeffs_(std::move(coeffs)) {
  trim();
}

Poly Poly::constant(int q, FqElem c) {
  return c == 0 ? zero(q) : Poly(q, {c});
}

Poly Poly::theta_pow(int q, int k) {
  if (k < 0) throw std::invalid_argument("theta_pow: negative exponent");
  std::vector<FqElem> c(k + 1, 0);
  c[k] = 1;
  return Poly(q, std::move(c));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::operator-() const {
  const auto& F = field();
  std::vector<FqElem> c(coeffs_);
  for (auto& x : c) x = F.neg(x);
  return Poly(q_, std::move(c));
}

Poly Poly::operator+(const Poly& o) const {
  const auto& F = field();
  std::vector<FqElem> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = F.add(coeff(int(i)), o.coeff(int(i)));
  return Poly(q_, std::move(c));
}

Poly Poly::operator-(const Poly& o) const {
  const auto& F = field();
  std::vector<FqElem> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) c[i] = F.sub(coeff(int(i)), o.coeff(int(i)));
  return Poly(q_, std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return zero(q_);
  const auto& F = field();
  std::vector<FqElem> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(coeffs_[i], o.coeffs_[j]));
  }
  return Poly(q_, std::move(c));
}

Poly Poly::scaled(FqElem s) const {
  if (s == 0) return zero(q_);
  const auto& F = field();
  std::vector<FqElem> c(coeffs_);
  for (auto& x : c) x = F.mul(x, s);
  return Poly(q_, std::move(c));
}

Poly Poly::shifted(int k) const {
  if (is_zero()) return *this;
  std::vector<FqElem> c(coeffs_.size() + k, 0);
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin() + k);
  return Poly(q_, std::move(c));
}

bool Poly::operator<(const Poly& o) const {
  if (deg() != o.deg()) return deg() < o.deg();
  for (int i = deg(); i >= 0; --i)
    if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
  return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
  const auto& F = field();
  if (deg() < divisor.deg()) return {zero(q_), *this};
  std::vector<FqElem> rem(coeffs_);
  std::vector<FqElem> quot(deg() - divisor.deg() + 1, 0);
  FqElem lc_inv = F.inv(divisor.lc());
  for (int k = deg(); k >= divisor.deg(); --k) {
    FqElem c = rem[k];
    if (c == 0) continue;
    FqElem factor = F.mul(c, lc_inv);
    quot[k - divisor.deg()] = factor;
    for (int i = 0; i <= divisor.deg(); ++i)
      rem[k - divisor.deg() + i] =
          F.sub(rem[k - divisor.deg() + i], F.mul(factor, divisor.coeff(i)));
  }
  return {Poly(q_, std::move(quot)), Poly(q_, std::move(rem))};
}

Poly Poly::monic() const {
  if (is_zero()) throw std::domain_error("Poly::monic: zero polynomial");
  return scaled(field().inv(lc()));
}

Poly Poly::derivative() const {
  if (deg() < 1) return zero(q_);
  const auto& F = field();
  std::vector<FqElem> c(coeffs_.size() - 1, 0);
  for (size_t i = 1; i < coeffs_.size(); ++i) {
    FqElem factor = 0;  // i mod p as a field element
    for (size_t k = 0; k < i % size_t(F.p()); ++k) factor = F.add(factor, 1);
    c[i - 1] = F.mul(coeffs_[i], factor);
  }
  return Poly(q_, std::move(c));
}

FqElem Poly::eval(FqElem x) const {
  const auto& F = field();
  FqElem acc = 0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs_[i]);
  return acc;
}

std::uint64_t Poly::encode() const {
  std::uint64_t code = 0, pw = 1;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) {
      if (pw > std::numeric_limits<std::uint64_t>::max() / q_)
        throw std::overflow_error("Poly::encode: degree too large");
      pw *= q_;
    }
    code += pw * coeffs_[i];
  }
  return code;
}

Poly Poly::decode(int q, std::uint64_t code) {
  std::vector<FqElem> c;
  while (code) {
    c.push_back(FqElem(code % q));
    code /= q;
  }
  return Poly(q, std::move(c));
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  const auto& F = field();
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= deg(); ++i) {
    FqElem c = coeff(i);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << F.elem_name(c);
    } else {
      if (c != 1) os << F.elem_name(c) << "*";
      os << "T";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Poly Poly::parse(int q, const std::string& text) {
  const auto& F = GaloisField::get(q);
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("Poly::parse: empty input");

  if (s.find(',') != std::string::npos) {
    std::vector<FqElem> c;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(F.parse_elem(tok));
    return Poly(q, std::move(c));
  }

  std::vector<FqElem> c;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('+', pos);
    if (next == std::string::npos) next = s.size();
    std::string term = s.substr(pos, next - pos);
    pos = next + 1;
    if (term.empty()) throw std::invalid_argument("Poly::parse: empty term");

    std::string coeff_tok = "1";
    int power = 0;
    size_t tpos = term.find('T');
    if (tpos == std::string::npos) {
      coeff_tok = term;
    } else {
      if (tpos > 0) {
        coeff_tok = term.substr(0, tpos);
        if (!coeff_tok.empty() && coeff_tok.back() == '*') coeff_tok.pop_back();
        if (coeff_tok.empty()) throw std::invalid_argument("Poly::parse: bad term " + term);
      }
      power = 1;
      if (tpos + 1 < term.size()) {
        if (term[tpos + 1] != '^')
          throw std::invalid_argument("Poly::parse: bad term " + term);
        power = std::stoi(term.substr(tpos + 2));
        if (power < 0) throw std::invalid_argument("Poly::parse: negative power");
      }
    }
    FqElem cv = F.parse_elem(coeff_tok);
    if (int(c.size()) <= power) c.resize(power + 1, 0);
    c[power] = F.add(c[power], cv);
  }
  return Poly(q, std::move(c));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd(0, 0)");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = y;
    y = r;
  }
  return x.monic();
}

std::tuple<Poly, Poly, Poly> poly_gcd_bezout(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("poly_gcd_bezout(0, 0)");
  const int q = a.q();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(q), s1 = Poly::zero(q);
  Poly t0 = Poly::zero(q), t1 = Poly::one(q);
  while (!r1.is_zero()) {
    auto [qt, rem] = r0.divmod(r1);
    r0 = r1;
    r1 = rem;
    Poly s2 = s0 - qt * s1;
    s0 = s1;
    s1 = s2;
    Poly t2 = t0 - qt * t1;
    t0 = t1;
    t1 = t2;
  }
  FqElem u = r0.field().inv(r0.lc());
  return {r0.scaled(u), s0.scaled(u), t0.scaled(u)};
}

Poly poly_powmod(const Poly& base, std::uint64_t n, const Poly& modulus) {
  Poly result = Poly::one(base.q()) % modulus;
  Poly b = base % modulus;
  while (n) {
    if (n & 1) result = (result * b) % modulus;
    b = (b * b) % modulus;
    n >>= 1;
  }
  return result;
}

Poly poly_invmod(const Poly& a, const Poly& m) {
  auto [g, s, t] = poly_gcd_bezout(a, m);
  (void)t;
  if (!g.is_one()) throw std::domain_error("poly_invmod: not invertible");
  return s % m;
}

Rat::Rat(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::one(num_.q());
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FqElem u = den_.field().inv(den_.lc());
  num_ = num_.scaled(u);
  den_ = den_.scaled(u);
}

Rat Rat::pi_pow(int q, int k) {
  if (k >= 0) return Rat(Poly::one(q), Poly::theta_pow(q, k));
  return Rat(Poly::theta_pow(q, -k));
}

int Rat::valuation() const {
  if (is_zero()) return kPosInfVal;
  return den_.deg() - num_.deg();
}

Rat Rat::operator+(const Rat& o) const {
  return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
  return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator-() const { return Rat(-num_, den_); }

Rat Rat::operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  return Rat(num_ * o.den_, den_ * o.num_);
}

Poly Rat::poly_part() const { return num_ / den_; }

Rat Rat::proper_part() const { return Rat(num_ % den_, den_); }

std::string Rat::to_string() const {
  if (is_poly()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Rat LaurentTail::to_rat() const {
  // sum c_i theta^{-(start+i)}: collect over the common denominator
  // theta^{max(0, start + len - 1)}.
  if (coeffs.empty()) return Rat::zero(q);
  int last = start + int(coeffs.size()) - 1;
  int denpow = std::max(0, last);
  std::vector<FqElem> num(denpow - std::min(start, 0) + 1, 0);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    int k = start + int(i);  // exponent of pi = -exponent of theta
    num[denpow - k] = coeffs[i];
  }
  return Rat(Poly(q, std::move(num)), Poly::theta_pow(q, denpow));
}

LaurentTail LaurentTail::from_rat(const Rat& x) {
  LaurentTail t;
  t.q = x.q();
  if (x.is_zero()) return t;
  const Poly& den = x.den();
  for (int i = 0; i < den.deg(); ++i)
    if (den.coeff(i) != 0)
      throw std::invalid_argument("LaurentTail::from_rat: denominator not a theta power");
  int k = den.deg();  // x = num / theta^k
  const Poly& num = x.num();
  t.start = k - num.deg();
  t.coeffs.resize(num.deg() + 1);
  for (int i = 0; i <= num.deg(); ++i) t.coeffs[i] = num.coeff(num.deg() - i);
  return t;
}

}  // namespace ffsturm
