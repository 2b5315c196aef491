#include "tcert/int_series.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <string>

#include "tcert/error.hpp"

namespace tcert {

namespace {

constexpr std::size_t kKroneckerThreshold = 32;

std::size_t max_bits(std::span<const mpz_class> v) {
  std::size_t bits = 0;
  for (const auto& c : v) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return bits;
}

// sum_{i in [lo,hi)} v[i] 2^{k (i - lo)}
mpz_class pack(std::span<const mpz_class> v, std::size_t lo, std::size_t hi, std::size_t k) {
  if (hi - lo == 1) return v[lo];
  if (hi - lo <= 8) {
    mpz_class acc = 0;
    for (std::size_t i = hi; i-- > lo;) {
      mpz_mul_2exp(acc.get_mpz_t(), acc.get_mpz_t(), k);
      acc += v[i];
    }
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  mpz_class high = pack(v, mid, hi, k);
  mpz_mul_2exp(high.get_mpz_t(), high.get_mpz_t(), k * (mid - lo));
  return high + pack(v, lo, mid, k);
}

// Splits x = sum_{i < count} d_i 2^{k i} with balanced digits |d_i| < 2^{k-1}.
void unpack(const mpz_class& x, std::size_t count, std::size_t k, std::vector<mpz_class>& out,
            std::size_t offset) {
  if (count == 1) {
    out[offset] = x;
    return;
  }
  const std::size_t half = count / 2;
  const std::size_t shift = k * half;
  mpz_class low;
  mpz_fdiv_r_2exp(low.get_mpz_t(), x.get_mpz_t(), shift);
  if (mpz_tstbit(low.get_mpz_t(), shift - 1)) {
    mpz_class full;
    mpz_setbit(full.get_mpz_t(), shift);
    low -= full;
  }
  mpz_class high = x - low;
  mpz_fdiv_q_2exp(high.get_mpz_t(), high.get_mpz_t(), shift);
  unpack(low, half, k, out, offset);
  unpack(high, count - half, k, out, offset + half);
}

}  // namespace

std::vector<mpz_class> mul_schoolbook(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                      std::size_t n) {
  std::vector<mpz_class> out(n);
  const std::size_t na = std::min(a.size(), n);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    const std::size_t nb = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < nb; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return out;
}

std::vector<mpz_class> mul_kronecker(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                     std::size_t n) {
  a = a.first(std::min(a.size(), n));
  b = b.first(std::min(b.size(), n));
  std::vector<mpz_class> out(n);
  if (a.empty() || b.empty()) return out;
  const std::size_t terms = std::min(a.size(), b.size());
  std::size_t log_terms = 1;
  while ((std::size_t{1} << log_terms) < terms) ++log_terms;
  // Each product coefficient is below 2^(ba + bb + log_terms); one sign bit
  // and one guard bit keep balanced digits unambiguous.
  const std::size_t k = max_bits(a) + max_bits(b) + log_terms + 2;
  mpz_class pa = pack(a, 0, a.size(), k);
  mpz_class pb = pack(b, 0, b.size(), k);
  mpz_class prod = pa * pb;
  const std::size_t full = a.size() + b.size() - 1;
  std::vector<mpz_class> digits(full);
  unpack(prod, full, k, digits, 0);
  for (std::size_t i = 0; i < std::min(n, full); ++i) out[i] = std::move(digits[i]);
  return out;
}

std::vector<mpz_class> mul_truncated(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                     std::size_t n) {
  if (std::min({a.size(), b.size(), n}) < kKroneckerThreshold) return mul_schoolbook(a, b, n);
  return mul_kronecker(a, b, n);
}

IntSeries IntSeries::zero(long trunc) {
  IntSeries s;
  s.valuation_ = trunc;
  s.trunc_ = trunc;
  return s;
}

IntSeries IntSeries::one(long trunc) { return monomial(0, 1, trunc); }

IntSeries IntSeries::monomial(long exponent, const mpz_class& c, long trunc) {
  if (exponent >= trunc || c == 0) return zero(trunc);
  std::vector<mpz_class> v(static_cast<std::size_t>(trunc - exponent));
  v[0] = c;
  return from_coeffs(exponent, trunc, std::move(v));
}

IntSeries IntSeries::from_coeffs(long valuation, long trunc, std::vector<mpz_class> coeffs) {
  if (trunc < valuation || coeffs.size() != static_cast<std::size_t>(trunc - valuation)) {
    throw Error(ErrorKind::InvalidTruncation,
                "coefficient count must equal trunc - valuation");
  }
  IntSeries s;
  s.valuation_ = valuation;
  s.trunc_ = trunc;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

void IntSeries::normalize() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    valuation_ = trunc_;
    return;
  }
  const auto skip = std::distance(coeffs_.begin(), first);
  if (skip > 0) {
    coeffs_.erase(coeffs_.begin(), first);
    valuation_ += skip;
  }
}

mpz_class IntSeries::coeff(long e) const {
  if (e >= trunc_) {
    throw Error(ErrorKind::InvalidTruncation,
                "coefficient of q^" + std::to_string(e) + " beyond truncation q^" + std::to_string(trunc_));
  }
  if (is_zero() || e < valuation_) return 0;
  return coeffs_[static_cast<std::size_t>(e - valuation_)];
}

IntSeries IntSeries::operator-() const {
  IntSeries s = *this;
  for (auto& c : s.coeffs_) c = -c;
  return s;
}

namespace {

IntSeries add_sub(const IntSeries& a, const IntSeries& b, bool subtract) {
  const long trunc = std::min(a.trunc(), b.trunc());
  const long val = std::min(a.valuation(), b.valuation());
  if (val >= trunc) return IntSeries::zero(trunc);
  std::vector<mpz_class> v(static_cast<std::size_t>(trunc - val));
  auto acc = [&](const IntSeries& s, bool neg) {
    const auto c = s.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      const long e = s.valuation() + static_cast<long>(k);
      if (e >= trunc) break;
      auto& slot = v[static_cast<std::size_t>(e - val)];
      if (neg) {
        slot -= c[k];
      } else {
        slot += c[k];
      }
    }
  };
  acc(a, false);
  acc(b, subtract);
  return IntSeries::from_coeffs(val, trunc, std::move(v));
}

}  // namespace

IntSeries operator+(const IntSeries& a, const IntSeries& b) { return add_sub(a, b, false); }
IntSeries operator-(const IntSeries& a, const IntSeries& b) { return add_sub(a, b, true); }

IntSeries operator*(const IntSeries& a, const IntSeries& b) {
  const long val = a.valuation_ + b.valuation_;
  const long trunc = std::min(a.trunc_ + b.valuation_, b.trunc_ + a.valuation_);
  if (a.is_zero() || b.is_zero() || val >= trunc) return IntSeries::zero(trunc);
  const auto n = static_cast<std::size_t>(trunc - val);
  return IntSeries::from_coeffs(val, trunc, mul_truncated(a.coeffs_, b.coeffs_, n));
}

IntSeries operator*(const IntSeries& a, const mpz_class& c) {
  if (c == 0) return IntSeries::zero(a.trunc_);
  IntSeries s = a;
  for (auto& x : s.coeffs_) x *= c;
  return s;
}

bool operator==(const IntSeries& a, const IntSeries& b) {
  return a.trunc_ == b.trunc_ && a.valuation_ == b.valuation_ && a.coeffs_ == b.coeffs_;
}

IntSeries IntSeries::pow(unsigned long e) const {
  if (e == 0) return one(trunc_ - valuation_);
  IntSeries result;
  bool have = false;
  IntSeries base = *this;
  while (e > 0) {
    if (e & 1UL) {
      result = have ? result * base : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

IntSeries IntSeries::shift(long i) const {
  IntSeries s = *this;
  s.valuation_ += i;
  s.trunc_ += i;
  return s;
}

IntSeries IntSeries::truncated(long new_trunc) const {
  if (new_trunc > trunc_) {
    throw Error(ErrorKind::InvalidTruncation, "cannot extend a truncated series");
  }
  if (is_zero() || new_trunc <= valuation_) return zero(new_trunc);
  IntSeries s = *this;
  s.trunc_ = new_trunc;
  s.coeffs_.resize(static_cast<std::size_t>(new_trunc - valuation_));
  s.normalize();
  return s;
}

IntSeries IntSeries::substitute_power(long p) const {
  if (p <= 0) throw Error(ErrorKind::InvalidArgument, "substitution exponent must be positive");
  if (is_zero()) return zero(trunc_ * p);
  std::vector<mpz_class> v(static_cast<std::size_t>((trunc_ - valuation_) * p));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) v[k * static_cast<std::size_t>(p)] = coeffs_[k];
  return from_coeffs(valuation_ * p, trunc_ * p, std::move(v));
}

IntSeries IntSeries::inverse() const {
  if (is_zero() || (leading() != 1 && leading() != -1)) {
    throw Error(ErrorKind::InvalidArgument, "series inverse needs a leading coefficient of +-1");
  }
  const std::size_t n = coeffs_.size();
  const mpz_class& c0 = coeffs_[0];
  std::vector<mpz_class> b(n);
  b[0] = c0;
  mpz_class acc;
  for (std::size_t k = 1; k < n; ++k) {
    acc = 0;
    for (std::size_t j = 1; j <= k; ++j) mpz_addmul(acc.get_mpz_t(), coeffs_[j].get_mpz_t(), b[k - j].get_mpz_t());
    b[k] = -c0 * acc;
  }
  return from_coeffs(-valuation_, static_cast<long>(n) - valuation_, std::move(b));
}

std::optional<long> vanishing_order(const IntSeries& s) {
  if (s.is_zero()) return std::nullopt;
  return s.valuation();
}

namespace {

// prod_{n >= 1} (1 - q^n) modulo q^len via Euler's pentagonal theorem.
IntSeries euler_product(long len) {
  std::vector<mpz_class> v(static_cast<std::size_t>(len));
  for (long k = 0;; ++k) {
    bool any = false;
    for (long sign : {1L, -1L}) {
      if (k == 0 && sign == -1) continue;
      const long kk = sign * k;
      const long e = kk * (3 * kk - 1) / 2;
      if (e < len) {
        v[static_cast<std::size_t>(e)] += (k % 2 == 0) ? 1 : -1;
        any = true;
      }
    }
    if (!any) break;
  }
  return IntSeries::from_coeffs(0, len, std::move(v));
}

}  // namespace

IntSeries delta_expansion(long K) {
  if (K < 2) throw Error(ErrorKind::InvalidTruncation, "delta_expansion needs K >= 2");
  return euler_product(K - 1).pow(24).shift(1);
}

IntSeries e4_expansion(long K) {
  if (K < 1) throw Error(ErrorKind::InvalidTruncation, "e4_expansion needs K >= 1");
  std::vector<mpz_class> sigma(static_cast<std::size_t>(K));
  for (long d = 1; d < K; ++d) {
    mpz_class cube = mpz_class(d) * d * d;
    for (long m = d; m < K; m += d) sigma[static_cast<std::size_t>(m)] += cube;
  }
  sigma[0] = 1;
  for (long n = 1; n < K; ++n) sigma[static_cast<std::size_t>(n)] *= 240;
  return IntSeries::from_coeffs(0, K, std::move(sigma));
}

IntSeries j_expansion(long K) {
  if (K < 0) throw Error(ErrorKind::InvalidTruncation, "j_expansion needs K >= 0");
  IntSeries e4 = e4_expansion(K + 1);
  return e4.pow(3) * delta_expansion(K + 2).inverse();
}

void write_series(std::ostream& out, const IntSeries& s) {
  out << s.valuation() << ' ' << s.trunc() << '\n';
  for (const auto& c : s.coeffs()) out << c.get_str() << '\n';
}

IntSeries read_series(std::istream& in) {
  long val = 0, trunc = 0;
  if (!(in >> val >> trunc) || trunc < val) {
    throw Error(ErrorKind::Parse, "series header must be 'valuation trunc'");
  }
  std::vector<mpz_class> v;
  v.reserve(static_cast<std::size_t>(trunc - val));
  std::string tok;
  for (long k = val; k < trunc; ++k) {
    if (!(in >> tok)) throw Error(ErrorKind::Parse, "series file ends early");
    mpz_class c;
    if (c.set_str(tok, 10) != 0) throw Error(ErrorKind::Parse, "bad coefficient '" + tok + "'");
    v.push_back(std::move(c));
  }
  return IntSeries::from_coeffs(val, trunc, std::move(v));
}

}  // namespace tcert
