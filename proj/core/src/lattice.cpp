#include "tcert/lattice.hpp"

#include "tcert/error.hpp"
#include "tcert/upoly.hpp"

namespace tcert {

namespace {

mpz_class dot(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

// Nearest integer to a/b, b > 0, ties rounded up.
mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  mpz_class num = 2 * a + b;
  mpz_class den = 2 * b;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

void lll_reduce(IntMatrix& b, long delta_num, long delta_den) {
  const std::size_t n = b.size();
  if (n < 2) return;
  // 1-based bookkeeping as in the integral algorithm; d[0] = 1.
  std::vector<mpz_class> d(n + 1);
  std::vector<std::vector<mpz_class>> lam(n + 1, std::vector<mpz_class>(n + 1));
  d[0] = 1;
  d[1] = dot(b[0], b[0]);
  if (d[1] == 0) throw Error(ErrorKind::InvalidArgument, "LLL basis rows must be independent");
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t kk, std::size_t l) {
    mpz_class twice = 2 * abs(lam[kk][l]);
    if (twice <= d[l]) return;
    mpz_class q = round_div(lam[kk][l], d[l]);
    auto& bk = b[kk - 1];
    const auto& bl = b[l - 1];
    for (std::size_t c = 0; c < bk.size(); ++c) mpz_submul(bk[c].get_mpz_t(), q.get_mpz_t(), bl[c].get_mpz_t());
    lam[kk][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };

  auto swap_k = [&](std::size_t kk) {
    std::swap(b[kk - 1], b[kk - 2]);
    for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    mpz_class l = lam[kk][kk - 1];
    mpz_class bb = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      mpz_class t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (bb * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = bb;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(b[k - 1], b[j - 1]);
        for (std::size_t i = 1; i < j; ++i) {
          u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        }
        if (j < k) {
          lam[k][j] = u;
        } else {
          d[k] = u;
          if (u == 0) throw Error(ErrorKind::InvalidArgument, "LLL basis rows must be independent");
        }
      }
    }
    red(k, k - 1);
    mpz_class lhs = delta_den * d[k] * d[k - 2];
    mpz_class rhs = delta_num * d[k - 1] * d[k - 1] - delta_den * lam[k][k - 1] * lam[k][k - 1];
    if (lhs < rhs) {
      swap_k(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) red(k, l);
      ++k;
    }
  }
}

std::vector<std::vector<mpq_class>> rref(const IntMatrix& m, std::vector<std::size_t>& pivots) {
  pivots.clear();
  std::vector<std::vector<mpq_class>> a;
  for (const auto& row : m) a.emplace_back(row.begin(), row.end());
  if (a.empty()) return a;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  return a;
}

IntMatrix integer_kernel_basis(const IntMatrix& m) {
  if (m.empty()) return {};
  const std::size_t rows = m.size(), cols = m[0].size();
  const std::size_t dim = cols - rank_bareiss(m);
  if (dim == 0) return {};
  mpz_class bmax = 1;
  for (const auto& row : m) {
    for (const auto& x : row) bmax = std::max<mpz_class>(bmax, abs(x));
  }
  mpz_class w = bmax;
  mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), cols / 2 + 4);
  for (int attempt = 0; attempt < 64; ++attempt) {
    IntMatrix basis(cols, std::vector<mpz_class>(cols + rows));
    for (std::size_t j = 0; j < cols; ++j) {
      basis[j][j] = 1;
      for (std::size_t i = 0; i < rows; ++i) basis[j][cols + i] = w * m[i][j];
    }
    lll_reduce(basis);
    IntMatrix kernel;
    for (const auto& v : basis) {
      bool zero_tail = true;
      for (std::size_t i = 0; i < rows && zero_tail; ++i) zero_tail = v[cols + i] == 0;
      if (zero_tail) kernel.emplace_back(v.begin(), v.begin() + static_cast<long>(cols));
    }
    if (kernel.size() == dim) return kernel;
    w *= 2;
  }
  throw Error(ErrorKind::InternalInvariant, "kernel embedding did not separate the kernel lattice");
}

}  // namespace tcert
