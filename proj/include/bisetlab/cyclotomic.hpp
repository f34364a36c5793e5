#ifndef BISETLAB_CYCLOTOMIC_HPP
#define BISETLAB_CYCLOTOMIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bisetlab {

using Int = mpz_class;
using Rat = mpq_class;

std::string rat_str(Rat const &q);
Rat rat_parse(std::string const &s);

// The two-argument mpq_class constructor does not canonicalize; always build
// fractions through this helper.
inline Rat make_rat(Int const &num, Int const &den)
{
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Element of the cyclotomic field Q(zeta_n), stored as a coefficient vector
// of length phi(n) over the power basis 1, zeta_n, ..., zeta_n^{phi(n)-1},
// i.e. reduced modulo the n-th cyclotomic polynomial.  The conductor n is
// whatever the value was built with; representations are unique per
// conductor but values are never demoted to a smaller conductor.
class Cyclotomic {
public:
  Cyclotomic() : n_(1), c_(1) {}
  Cyclotomic(Rat const &q) : n_(1), c_(1, q) {}
  Cyclotomic(long v) : n_(1), c_(1, Rat(v)) {}

  static Cyclotomic zeta(unsigned n, unsigned long k = 1);

  unsigned conductor() const { return n_; }
  std::vector<Rat> const &coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Throws std::domain_error if the value has nonzero non-constant part.
  Rat to_rational() const;

  // Returns an equal value represented in Q(zeta_m); m must be a multiple
  // of the current conductor.
  Cyclotomic promoted(unsigned m) const;

  // Image under the Galois map zeta_n -> zeta_n^t; t must be coprime to n.
  Cyclotomic galois(unsigned long t) const;
  // Complex conjugate, i.e. galois(n - 1).
  Cyclotomic conj() const;

  Cyclotomic operator-() const;
  Cyclotomic &operator+=(Cyclotomic const &o);
  Cyclotomic &operator-=(Cyclotomic const &o);
  Cyclotomic &operator*=(Cyclotomic const &o);
  friend Cyclotomic operator+(Cyclotomic a, Cyclotomic const &b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, Cyclotomic const &b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, Cyclotomic const &b) { return a *= b; }

  Cyclotomic inverse() const;
  Cyclotomic operator/(Cyclotomic const &o) const { return *this * o.inverse(); }

  bool operator==(Cyclotomic const &o) const;
  bool operator!=(Cyclotomic const &o) const { return !(*this == o); }

  // Total order used wherever a deterministic choice among values is needed
  // (canonical kernel bases, sorted character rows).  Compares the two
  // values through a common conductor, coefficient vectors lexicographically.
  static int cmp(Cyclotomic const &a, Cyclotomic const &b);

  // Serialization.  Rational values print as "a/b" (or "a"); proper
  // cyclotomics print as a sum of terms "(a/b)*z<n>^k".  parse() accepts
  // exactly the emitted grammar and round-trips every value.
  std::string str() const;
  static Cyclotomic parse(std::string const &s);

private:
  unsigned n_;
  std::vector<Rat> c_;

  void reduce_tail(std::vector<Rat> &poly) const;
};

// Coefficient vector of the n-th cyclotomic polynomial Phi_n (degree phi(n),
// monic, index = exponent).  Cached across calls.
std::vector<Int> const &cyclotomic_polynomial(unsigned n);

unsigned long euler_phi(unsigned n);

} // namespace bisetlab

#endif
