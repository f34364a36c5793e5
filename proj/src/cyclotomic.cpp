#include "bisetlab/cyclotomic.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bisetlab {

std::string rat_str(Rat const &q)
{
  std::ostringstream os;
  os << q;
  return os.str();
}

Rat rat_parse(std::string const &s)
{
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

unsigned long euler_phi(unsigned n)
{
  unsigned long res = n;
  unsigned m = n;
  for (unsigned p = 2; (unsigned long)p * p <= m; ++p) {
    if (m % p == 0) {
      res -= res / p;
      while (m % p == 0)
        m /= p;
    }
  }
  if (m > 1)
    res -= res / m;
  return res;
}

namespace {

// Quotient of exact division a / b for integer polynomials, b monic.
std::vector<Int> poly_div_exact(std::vector<Int> a, std::vector<Int> const &b)
{
  assert(!b.empty() && b.back() == 1);
  if (a.size() < b.size())
    return {Int(0)};
  std::vector<Int> q(a.size() - b.size() + 1);
  size_t db = b.size() - 1;
  for (size_t i = a.size() - 1; i + 1 > db; --i) {
    Int c = a[i];
    if (c == 0)
      continue;
    size_t shift = i - db;
    q[shift] = c;
    for (size_t j = 0; j <= db; ++j)
      a[shift + j] -= c * b[j];
  }
  for (auto const &c : a)
    assert(c == 0);
  (void)a;
  return q;
}

} // namespace

std::vector<Int> const &cyclotomic_polynomial(unsigned n)
{
  // Recursive through the divisor loop below, and shared across threads.
  static std::recursive_mutex mx;
  static std::map<unsigned, std::vector<Int>> cache;
  std::lock_guard<std::recursive_mutex> hold(mx);
  auto it = cache.find(n);
  if (it != cache.end())
    return it->second;

  // x^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<Int> poly(n + 1);
  poly[0] = -1;
  poly[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0)
      poly = poly_div_exact(poly, cyclotomic_polynomial(d));
  assert(poly.size() == euler_phi(n) + 1);
  return cache.emplace(n, std::move(poly)).first->second;
}

// In-place reduction of a coefficient vector (any length) modulo Phi_n,
// leaving exactly phi(n) coefficients.
void Cyclotomic::reduce_tail(std::vector<Rat> &poly) const
{
  auto const &phi = cyclotomic_polynomial(n_);
  size_t deg = phi.size() - 1;
  while (poly.size() > deg) {
    Rat c = poly.back();
    poly.pop_back();
    if (c == 0)
      continue;
    size_t shift = poly.size() - deg;
    for (size_t j = 0; j < deg; ++j)
      poly[shift + j] -= c * Rat(phi[j]);
  }
  poly.resize(deg);
}

Cyclotomic Cyclotomic::zeta(unsigned n, unsigned long k)
{
  if (n == 0)
    throw std::invalid_argument("zeta: conductor must be positive");
  Cyclotomic z;
  z.n_ = n;
  std::vector<Rat> poly(k % n + 1);
  poly[k % n] = 1;
  z.reduce_tail(poly);
  z.c_ = std::move(poly);
  return z;
}

bool Cyclotomic::is_zero() const
{
  for (auto const &q : c_)
    if (q != 0)
      return false;
  return true;
}

bool Cyclotomic::is_rational() const
{
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0)
      return false;
  return true;
}

Rat Cyclotomic::to_rational() const
{
  if (!is_rational())
    throw std::domain_error("cyclotomic value is not rational: " + str());
  return c_[0];
}

Cyclotomic Cyclotomic::promoted(unsigned m) const
{
  if (m == n_)
    return *this;
  if (m % n_ != 0)
    throw std::invalid_argument("promoted: target conductor not a multiple");
  Cyclotomic r;
  r.n_ = m;
  unsigned long step = m / n_;
  std::vector<Rat> poly((c_.size() - 1) * step + 1);
  for (size_t i = 0; i < c_.size(); ++i)
    poly[i * step] = c_[i];
  r.reduce_tail(poly);
  r.c_ = std::move(poly);
  return r;
}

Cyclotomic Cyclotomic::galois(unsigned long t) const
{
  if (std::gcd(t % n_, (unsigned long)n_) != 1)
    throw std::invalid_argument("galois: exponent not coprime to conductor");
  Cyclotomic r;
  r.n_ = n_;
  std::vector<Rat> poly(1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0)
      continue;
    size_t e = (i * (t % n_)) % n_;
    if (e >= poly.size())
      poly.resize(e + 1);
    poly[e] += c_[i];
  }
  r.reduce_tail(poly);
  r.c_ = std::move(poly);
  return r;
}

Cyclotomic Cyclotomic::conj() const
{
  if (n_ <= 2)
    return *this;
  return galois(n_ - 1);
}

Cyclotomic Cyclotomic::operator-() const
{
  Cyclotomic r = *this;
  for (auto &q : r.c_)
    q = -q;
  return r;
}

Cyclotomic &Cyclotomic::operator+=(Cyclotomic const &o)
{
  if (n_ == o.n_) {
    for (size_t i = 0; i < c_.size(); ++i)
      c_[i] += o.c_[i];
    return *this;
  }
  unsigned m = (unsigned)std::lcm((unsigned long)n_, (unsigned long)o.n_);
  *this = promoted(m);
  return *this += o.promoted(m);
}

Cyclotomic &Cyclotomic::operator-=(Cyclotomic const &o)
{
  return *this += -o;
}

Cyclotomic &Cyclotomic::operator*=(Cyclotomic const &o)
{
  if (n_ != o.n_) {
    unsigned m = (unsigned)std::lcm((unsigned long)n_, (unsigned long)o.n_);
    *this = promoted(m);
    return *this *= o.promoted(m);
  }
  std::vector<Rat> poly(2 * c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0)
      continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0)
        poly[i + j] += c_[i] * o.c_[j];
  }
  reduce_tail(poly);
  c_ = std::move(poly);
  return *this;
}

Cyclotomic Cyclotomic::inverse() const
{
  if (is_zero())
    throw std::domain_error("division by zero cyclotomic");
  if (is_rational()) {
    Cyclotomic r;
    r.n_ = n_;
    r.c_.assign(c_.size(), Rat(0));
    r.c_[0] = 1 / c_[0];
    return r;
  }
  // Extended Euclid in Q[x] for gcd(this, Phi_n) = 1.
  auto const &phi_int = cyclotomic_polynomial(n_);
  std::vector<Rat> r0(phi_int.size()), r1(c_.begin(), c_.end());
  for (size_t i = 0; i < phi_int.size(); ++i)
    r0[i] = Rat(phi_int[i]);
  std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};

  auto deg = [](std::vector<Rat> const &p) {
    for (size_t i = p.size(); i-- > 0;)
      if (p[i] != 0)
        return (long)i;
    return -1L;
  };

  while (true) {
    long d1 = deg(r1);
    assert(d1 >= 0 && "Phi_n must be coprime to any nonzero residue");
    if (d1 == 0)
      break;
    long d0 = deg(r0);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    Rat f = r0[d0] / r1[d1];
    long shift = d0 - d1;
    for (long j = 0; j <= d1; ++j)
      r0[j + shift] -= f * r1[j];
    if (s0.size() < s1.size() + shift)
      s0.resize(s1.size() + shift);
    for (size_t j = 0; j < s1.size(); ++j)
      s0[j + shift] -= f * s1[j];
  }

  Rat unit = r1[0];
  std::vector<Rat> inv = s1;
  for (auto &q : inv)
    q /= unit;
  Cyclotomic r;
  r.n_ = n_;
  r.reduce_tail(inv);
  r.c_ = std::move(inv);
  assert((*this * r).to_rational() == 1);
  return r;
}

bool Cyclotomic::operator==(Cyclotomic const &o) const
{
  if (n_ == o.n_)
    return c_ == o.c_;
  unsigned m = (unsigned)std::lcm((unsigned long)n_, (unsigned long)o.n_);
  return promoted(m).c_ == o.promoted(m).c_;
}

int Cyclotomic::cmp(Cyclotomic const &a, Cyclotomic const &b)
{
  unsigned m = (unsigned)std::lcm((unsigned long)a.n_, (unsigned long)b.n_);
  auto ca = a.promoted(m).c_, cb = b.promoted(m).c_;
  for (size_t i = 0; i < ca.size(); ++i) {
    int s = ::cmp(ca[i], cb[i]);
    if (s != 0)
      return s;
  }
  return 0;
}

std::string Cyclotomic::str() const
{
  if (n_ == 1)
    return rat_str(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0)
      continue;
    if (!first)
      os << " + ";
    os << "(" << c_[k] << ")*z" << n_ << "^" << k;
    first = false;
  }
  if (first)
    return "0";
  return os.str();
}

Cyclotomic Cyclotomic::parse(std::string const &s)
{
  if (s.find('z') == std::string::npos) {
    std::string t;
    for (char ch : s)
      if (!isspace((unsigned char)ch))
        t += ch;
    return Cyclotomic(rat_parse(t));
  }
  Cyclotomic total;
  size_t pos = 0;
  auto fail = [&](std::string const &why) {
    throw std::invalid_argument("cyclotomic parse error at position " +
                                std::to_string(pos) + ": " + why);
  };
  while (pos < s.size()) {
    while (pos < s.size() && isspace((unsigned char)s[pos]))
      ++pos;
    if (pos >= s.size())
      break;
    if (s[pos] != '(')
      fail("expected '('");
    size_t close = s.find(')', pos);
    if (close == std::string::npos)
      fail("unterminated coefficient");
    Rat coeff = rat_parse(s.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    if (pos + 1 >= s.size() || s[pos] != '*' || s[pos + 1] != 'z')
      fail("expected '*z'");
    pos += 2;
    size_t caret = s.find('^', pos);
    if (caret == std::string::npos)
      fail("expected '^'");
    unsigned n = (unsigned)std::stoul(s.substr(pos, caret - pos));
    pos = caret + 1;
    size_t end = pos;
    while (end < s.size() && isdigit((unsigned char)s[end]))
      ++end;
    if (end == pos)
      fail("expected exponent");
    unsigned long k = std::stoul(s.substr(pos, end - pos));
    pos = end;
    total += Cyclotomic(coeff) * zeta(n, k);
    while (pos < s.size() && isspace((unsigned char)s[pos]))
      ++pos;
    if (pos < s.size()) {
      if (s[pos] != '+')
        fail("expected '+'");
      ++pos;
    }
  }
  return total;
}

} // namespace bisetlab
