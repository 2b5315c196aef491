#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tcert/ball.hpp"

namespace tcert {

/// Dense univariate polynomial over Z, ascending coefficients, no trailing
/// zeros (the zero polynomial has no coefficients and degree -1).
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<mpz_class> coeffs);
  ZPoly(std::initializer_list<long> coeffs);
  static ZPoly monomial(unsigned long d, const mpz_class& c = 1);
  static ZPoly from_string(const std::string& csv);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  mpz_class coeff(long i) const;
  const mpz_class& lead() const { return c_.back(); }

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  friend ZPoly operator*(const ZPoly& a, const mpz_class& s);
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
  ZPoly operator-() const;

  ZPoly derivative() const;
  mpz_class content() const;
  /// Content removed and leading coefficient made positive.
  ZPoly primitive() const;
  /// x^deg f(1/x)
  ZPoly reversed() const;
  /// f(-x)
  ZPoly negated_arg() const;
  /// Sum of |coefficients| and max |coefficient|.
  mpz_class length() const;
  mpz_class height() const;

  mpz_class eval(const mpz_class& x) const;
  mpq_class eval(const mpq_class& x) const;
  Ball eval(const Ball& z) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

/// Exact quotient a / b in Z[x]; throws InternalInvariant when b does not divide a.
ZPoly exact_div(const ZPoly& a, const ZPoly& b);
/// Primitive gcd over Q, normalized to positive leading coefficient.
ZPoly gcd(const ZPoly& a, const ZPoly& b);
/// True when d divides f in Q[x].
bool divides(const ZPoly& d, const ZPoly& f);
/// Primitive squarefree part.
ZPoly squarefree_part(const ZPoly& f);
/// Yun decomposition: f = c * prod g_i^i with g_i squarefree, pairwise coprime.
/// Entry i-1 holds g_i (possibly constant 1).
std::vector<ZPoly> squarefree_decomposition(const ZPoly& f);

/// Determinant by fraction-free (Bareiss) elimination.
mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m);
/// Rank by fraction-free elimination.
std::size_t rank_bareiss(std::vector<std::vector<mpz_class>> m);
/// Resultant through the Sylvester matrix.
mpz_class resultant(const ZPoly& f, const ZPoly& g);
mpz_class discriminant(const ZPoly& f);

/// Characteristic polynomial det(x I - A) of a rational square matrix
/// (Hessenberg reduction). Returned scaled to a primitive integer polynomial.
ZPoly charpoly(std::vector<std::vector<mpq_class>> a);

/// Degrees of the irreducible factors of f mod p (f squarefree mod p and
/// p not dividing the leading coefficient; otherwise empty).
std::vector<long> factor_degrees_mod_p(const ZPoly& f, std::uint64_t p);

/// Admissible degrees of a factor of squarefree f over Z, from the
/// intersection of mod-p subset sums over `primes` good primes. Element d is
/// true when a factor of degree d is not ruled out.
std::vector<bool> admissible_factor_degrees(const ZPoly& f, int primes = 12);
/// True when the degree patterns prove f irreducible over Q.
bool certify_irreducible(const ZPoly& f, int primes = 12);

bool is_probable_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);

}  // namespace tcert
