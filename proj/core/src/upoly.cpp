#include "tcert/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "tcert/error.hpp"

namespace tcert {

ZPoly::ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly::ZPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

ZPoly ZPoly::monomial(unsigned long d, const mpz_class& c) {
  std::vector<mpz_class> v(d + 1);
  v[d] = c;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::from_string(const std::string& csv) {
  std::vector<mpz_class> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    mpz_class c;
    if (tok.empty() || c.set_str(tok, 10) != 0) {
      throw Error(ErrorKind::Parse, "bad polynomial coefficient '" + tok + "'");
    }
    v.push_back(c);
  }
  return ZPoly(std::move(v));
}

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class ZPoly::coeff(long i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
  std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return ZPoly(std::move(v));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ZPoly(std::move(v));
}

ZPoly operator*(const ZPoly& a, const mpz_class& s) {
  std::vector<mpz_class> v = a.c_;
  for (auto& c : v) c *= s;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<mpz_class> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(v));
}

mpz_class ZPoly::content() const {
  mpz_class g = 0;
  for (const auto& c : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly ZPoly::primitive() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (lead() < 0) g = -g;
  std::vector<mpz_class> v = c_;
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return ZPoly(std::move(v));
}

ZPoly ZPoly::reversed() const {
  std::vector<mpz_class> v(c_.rbegin(), c_.rend());
  return ZPoly(std::move(v));
}

ZPoly ZPoly::negated_arg() const {
  std::vector<mpz_class> v = c_;
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return ZPoly(std::move(v));
}

mpz_class ZPoly::length() const {
  mpz_class s = 0;
  for (const auto& c : c_) s += abs(c);
  return s;
}

mpz_class ZPoly::height() const {
  mpz_class h = 0;
  for (const auto& c : c_) h = std::max<mpz_class>(h, abs(c));
  return h;
}

mpz_class ZPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpq_class ZPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

Ball ZPoly::eval(const Ball& z) const {
  Ball acc = Ball::from_int(0, z.prec());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::string ZPoly::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ',';
    s += c_[i].get_str();
  }
  return s.empty() ? "0" : s;
}

namespace {

using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly to_q(const ZPoly& f) {
  QPoly r;
  for (const auto& c : f.coeffs()) r.emplace_back(c);
  return r;
}

ZPoly from_q(const QPoly& a) {
  mpz_class l = 1;
  for (const auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> v;
  for (const auto& c : a) {
    mpq_class t = c * l;
    v.push_back(t.get_num());
  }
  return ZPoly(std::move(v)).primitive();
}

// a = q b + r over Q
void qdivmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  qtrim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const mpq_class& lb = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    mpq_class t = a.back() / lb;
    q[shift] = t;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= t * b[i];
    a.pop_back();
    qtrim(a);
  }
  r = std::move(a);
}

}  // namespace

ZPoly exact_div(const ZPoly& a, const ZPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  std::vector<mpz_class> rem = a.coeffs();
  const long db = b.degree();
  if (a.degree() < db) {
    if (a.is_zero()) return {};
    throw Error(ErrorKind::InternalInvariant, "inexact polynomial division");
  }
  std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (long k = a.degree() - db; k >= 0; --k) {
    mpz_class& top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) {
      throw Error(ErrorKind::InternalInvariant, "inexact polynomial division");
    }
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    q[static_cast<std::size_t>(k)] = t;
    for (long i = 0; i <= db; ++i) {
      mpz_submul(rem[static_cast<std::size_t>(k + i)].get_mpz_t(), t.get_mpz_t(),
                 b.coeffs()[static_cast<std::size_t>(i)].get_mpz_t());
    }
  }
  for (const auto& c : rem) {
    if (c != 0) throw Error(ErrorKind::InternalInvariant, "inexact polynomial division");
  }
  return ZPoly(std::move(q));
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  ZPoly x = a.primitive(), y = b.primitive();
  while (!y.is_zero()) {
    QPoly q, r;
    qdivmod(to_q(x), to_q(y), q, r);
    x = y;
    y = r.empty() ? ZPoly() : from_q(r);
  }
  return x.primitive();
}

bool divides(const ZPoly& d, const ZPoly& f) {
  if (d.is_zero()) return f.is_zero();
  if (f.is_zero()) return true;
  QPoly q, r;
  qdivmod(to_q(f), to_q(d), q, r);
  return r.empty();
}

ZPoly squarefree_part(const ZPoly& f) {
  if (f.degree() <= 0) return f.primitive();
  return exact_div(f.primitive(), gcd(f, f.derivative())).primitive();
}

std::vector<ZPoly> squarefree_decomposition(const ZPoly& f) {
  std::vector<ZPoly> out;
  if (f.degree() <= 0) return out;
  ZPoly a = f.primitive();
  ZPoly c = gcd(a, a.derivative());
  ZPoly w = exact_div(a, c).primitive();
  while (w.degree() > 0) {
    ZPoly y = gcd(w, c);
    out.push_back(exact_div(w, y).primitive());
    c = exact_div(c, y).primitive();
    w = y;
  }
  return out;
}

mpz_class det_bareiss(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t i = k + 1;
      while (i < n && m[i][k] == 0) ++i;
      if (i == n) return 0;
      std::swap(m[i], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::size_t rank_bareiss(std::vector<std::vector<mpz_class>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        m[i][j] = m[i][j] * m[r][col] - m[i][col] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[r][col];
    ++r;
  }
  return r;
}

mpz_class resultant(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const auto m = static_cast<std::size_t>(f.degree());
  const auto n = static_cast<std::size_t>(g.degree());
  const std::size_t size = m + n;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f.coeffs()[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g.coeffs()[n - i];
  }
  return det_bareiss(std::move(s));
}

mpz_class discriminant(const ZPoly& f) {
  const long n = f.degree();
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "discriminant of a constant");
  mpz_class r = resultant(f, f.derivative());
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
  return ((n * (n - 1) / 2) % 2 == 0) ? r : mpz_class(-r);
}

ZPoly charpoly(std::vector<std::vector<mpq_class>> h) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (auto& row : h) std::swap(row[i], row[m]);
    }
    for (std::size_t j = m + 1; j < n; ++j) {
      if (h[j][m - 1] == 0) continue;
      mpq_class u = h[j][m - 1] / h[m][m - 1];
      for (std::size_t k = 0; k < n; ++k) h[j][k] -= u * h[m][k];
      for (std::size_t k = 0; k < n; ++k) h[k][m] += u * h[k][j];
    }
  }
  std::vector<QPoly> p(n + 1);
  p[0] = {mpq_class(1)};
  for (std::size_t k = 0; k < n; ++k) {
    QPoly next(k + 2);
    for (std::size_t d = 0; d < p[k].size(); ++d) {
      next[d + 1] += p[k][d];
      next[d] -= h[k][k] * p[k][d];
    }
    mpq_class t = 1;
    for (std::size_t i = k; i-- > 0;) {
      t *= h[i + 1][i];
      if (t == 0) break;
      mpq_class coef = h[i][k] * t;
      if (coef == 0) continue;
      for (std::size_t d = 0; d < p[i].size(); ++d) next[d] -= coef * p[i][d];
    }
    p[k + 1] = std::move(next);
  }
  return from_q(p[n]);
}

// --- arithmetic modulo a word-size prime -----------------------------------

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using PPoly = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void ptrim(PPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PPoly reduce(const ZPoly& f, u64 p) {
  PPoly r;
  for (const auto& c : f.coeffs()) {
    mpz_class t;
    mpz_fdiv_r_ui(t.get_mpz_t(), c.get_mpz_t(), p);
    r.push_back(t.get_ui());
  }
  ptrim(r);
  return r;
}

void pmonic(PPoly& a, u64 p) {
  if (a.empty()) return;
  u64 inv = invmod(a.back(), p);
  for (auto& c : a) c = mulmod(c, inv, p);
}

PPoly pmod(PPoly a, const PPoly& b, u64 p) {
  const u64 inv = invmod(b.back(), p);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const u64 t = mulmod(a.back(), inv, p);
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(t, b[i], p)) % p;
    }
    ptrim(a);
  }
  return a;
}

PPoly pdiv(PPoly a, const PPoly& b, u64 p) {
  const u64 inv = invmod(b.back(), p);
  PPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const u64 t = mulmod(a.back(), inv, p);
    q[shift] = t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(t, b[i], p)) % p;
    }
    ptrim(a);
  }
  ptrim(q);
  return q;
}

PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  ptrim(r);
  return pmod(std::move(r), m, p);
}

PPoly pgcd(PPoly a, PPoly b, u64 p) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  pmonic(a, p);
  return a;
}

PPoly ppowmod(PPoly base, u64 e, const PPoly& m, u64 p) {
  PPoly r{1};
  base = pmod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = pmulmod(r, base, m, p);
    base = pmulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

PPoly pderiv(const PPoly& a, u64 p) {
  PPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
  ptrim(r);
  return r;
}

}  // namespace

std::vector<long> factor_degrees_mod_p(const ZPoly& f, std::uint64_t p) {
  PPoly a = reduce(f, p);
  if (static_cast<long>(a.size()) - 1 != f.degree() || f.degree() < 1) return {};
  pmonic(a, p);
  if (pgcd(a, pderiv(a, p), p).size() != 1) return {};
  std::vector<long> degs;
  PPoly h{0, 1};
  for (long i = 1; static_cast<long>(a.size()) - 1 >= 2 * i; ++i) {
    h = ppowmod(h, p, a, p);
    PPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    ptrim(hx);
    PPoly g = pgcd(a, hx, p);
    if (g.size() > 1) {
      const long dg = static_cast<long>(g.size()) - 1;
      for (long k = 0; k < dg / i; ++k) degs.push_back(i);
      a = pdiv(a, g, p);
      h = pmod(h, a, p);
    }
  }
  if (a.size() > 1) degs.push_back(static_cast<long>(a.size()) - 1);
  std::sort(degs.begin(), degs.end());
  return degs;
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t n) {
  while (!is_probable_prime(n)) ++n;
  return n;
}

std::vector<bool> admissible_factor_degrees(const ZPoly& f, int primes) {
  const long n = f.degree();
  std::vector<bool> allowed(static_cast<std::size_t>(std::max(n, 0L) + 1), true);
  if (n < 2) return allowed;
  int used = 0;
  u64 p = 1000003;
  for (int tries = 0; used < primes && tries < 40 * primes; ++tries) {
    p = next_prime(p + 1);
    auto degs = factor_degrees_mod_p(f, p);
    if (degs.empty()) continue;
    ++used;
    std::vector<bool> sums(allowed.size(), false);
    sums[0] = true;
    for (long d : degs) {
      for (long s = n; s >= d; --s) {
        if (sums[static_cast<std::size_t>(s - d)]) sums[static_cast<std::size_t>(s)] = true;
      }
    }
    bool only_trivial = true;
    for (std::size_t d = 0; d < allowed.size(); ++d) {
      allowed[d] = allowed[d] && sums[d];
      if (allowed[d] && d != 0 && static_cast<long>(d) != n) only_trivial = false;
    }
    if (only_trivial) break;
  }
  return allowed;
}

bool certify_irreducible(const ZPoly& f, int primes) {
  const long n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  if (f.content() != 1) return false;
  auto allowed = admissible_factor_degrees(f, primes);
  for (long d = 1; d < n; ++d) {
    if (allowed[static_cast<std::size_t>(d)]) return false;
  }
  return true;
}

}  // namespace tcert
