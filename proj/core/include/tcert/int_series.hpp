#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace tcert {

/// Truncated Laurent series with exact integer coefficients, known modulo
/// q^trunc. Coefficient k of `coeffs()` belongs to q^(valuation + k).
///
/// The zero series is a flagged state with no stored coefficients; its
/// valuation is reported as `trunc` (nothing nonzero is known below it).
class IntSeries {
 public:
  IntSeries() = default;

  static IntSeries zero(long trunc);
  static IntSeries one(long trunc);
  static IntSeries monomial(long exponent, const mpz_class& c, long trunc);
  /// `coeffs.size()` must equal trunc - valuation. Leading zeros are stripped.
  static IntSeries from_coeffs(long valuation, long trunc, std::vector<mpz_class> coeffs);

  long valuation() const { return valuation_; }
  long trunc() const { return trunc_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const mpz_class> coeffs() const { return coeffs_; }
  /// Coefficient of q^e. Throws InvalidTruncation for e >= trunc.
  mpz_class coeff(long e) const;
  const mpz_class& leading() const { return coeffs_.front(); }

  IntSeries operator-() const;
  friend IntSeries operator+(const IntSeries& a, const IntSeries& b);
  friend IntSeries operator-(const IntSeries& a, const IntSeries& b);
  friend IntSeries operator*(const IntSeries& a, const IntSeries& b);
  friend IntSeries operator*(const IntSeries& a, const mpz_class& c);
  friend bool operator==(const IntSeries& a, const IntSeries& b);

  IntSeries pow(unsigned long e) const;
  /// Multiplication by q^i.
  IntSeries shift(long i) const;
  /// Drops knowledge beyond q^new_trunc; new_trunc may not exceed trunc().
  IntSeries truncated(long new_trunc) const;
  /// q -> q^p.
  IntSeries substitute_power(long p) const;
  /// Inverse of a series whose leading coefficient is +1 or -1.
  IntSeries inverse() const;

 private:
  void normalize();

  long valuation_ = 0;
  long trunc_ = 0;
  std::vector<mpz_class> coeffs_;
};

/// Exact product of two coefficient vectors truncated to `n` terms.
/// Above an internal size threshold this uses Kronecker substitution; the
/// result is identical to the schoolbook product.
std::vector<mpz_class> mul_truncated(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                     std::size_t n);
std::vector<mpz_class> mul_schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                      std::size_t n);
std::vector<mpz_class> mul_kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                     std::size_t n);

/// Exponent of the first nonzero coefficient, or nullopt when every known
/// coefficient vanishes ("below truncation").
std::optional<long> vanishing_order(const IntSeries& s);

/// Delta = q prod (1 - q^n)^24 modulo q^K; requires K >= 2.
IntSeries delta_expansion(long K);
/// E4 = 1 + 240 sum sigma_3(n) q^n modulo q^K; requires K >= 1.
IntSeries e4_expansion(long K);
/// J = E4^3 / Delta modulo q^K; requires K >= 0.
IntSeries j_expansion(long K);

/// Text format: "valuation trunc" then one decimal coefficient per line.
void write_series(std::ostream& out, const IntSeries& s);
IntSeries read_series(std::istream& in);

}  // namespace tcert
