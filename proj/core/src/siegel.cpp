#include "tcert/siegel.hpp"

#include <algorithm>
#include <functional>

#include "tcert/error.hpp"

namespace tcert {

mpz_class sup_norm(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s = std::max<mpz_class>(s, abs(x));
  return s;
}

bool in_kernel(const IntMatrix& m, const std::vector<mpz_class>& v) {
  for (const auto& row : m) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < row.size(); ++j) mpz_addmul(s.get_mpz_t(), row[j].get_mpz_t(), v[j].get_mpz_t());
    if (s != 0) return false;
  }
  return true;
}

namespace {

mpz_class max_entry(const IntMatrix& m) {
  mpz_class b = 0;
  for (const auto& row : m) {
    for (const auto& x : row) b = std::max<mpz_class>(b, abs(x));
  }
  return b;
}

void normalize_sign(std::vector<mpz_class>& v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : v) y = -y;
    }
    return;
  }
}

// Candidate order: smaller sup-norm first, then lexicographically greater
// (so the earliest nonzero position wins, e.g. e_0 before e_1).
bool better(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
  mpz_class na = sup_norm(a), nb = sup_norm(b);
  if (na != nb) return na < nb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool siegel_bound_met(const mpz_class& sup, std::size_t x, std::size_t y, const mpz_class& b) {
  if (x <= y) throw Error(ErrorKind::Underdetermined, "Siegel bound needs X > Y");
  mpz_class base = mpz_class(static_cast<unsigned long>(x)) * std::max<mpz_class>(b, 1);
  mpz_class lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), sup.get_mpz_t(), x - y);
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), y);
  return lhs <= rhs;
}

Real siegel_bound(std::size_t x, std::size_t y, const mpz_class& b, mpfr_prec_t prec) {
  if (x <= y) throw Error(ErrorKind::Underdetermined, "Siegel bound needs X > Y");
  Real base = Real::from_mpz(mpz_class(static_cast<unsigned long>(x)) * std::max<mpz_class>(b, 1), prec);
  if (y == 0) return Real::from_int(1, prec);
  return pow(base, Real::from_mpq(mpq_class(static_cast<long>(y), static_cast<long>(x - y)), prec));
}

mpz_class siegel_bound_floor(std::size_t x, std::size_t y, const mpz_class& b) {
  mpz_class base = mpz_class(static_cast<unsigned long>(x)) * std::max<mpz_class>(b, 1);
  mpz_class p, r;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), y);
  mpz_root(r.get_mpz_t(), p.get_mpz_t(), x - y);
  return r;
}

std::optional<std::vector<mpz_class>> exhaustive_small_solution(const IntMatrix& m, const mpz_class& bound,
                                                                std::uint64_t budget) {
  if (m.empty() || m[0].empty()) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  if (bound < 1) return std::nullopt;
  const std::size_t cols = m[0].size();
  std::vector<std::size_t> pivots;
  auto r = rref(m, pivots);
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
  }
  if (free.empty()) return std::nullopt;
  // Budget check on the full box of free coordinates.
  {
    mpz_class side = 2 * bound + 1, total;
    mpz_pow_ui(total.get_mpz_t(), side.get_mpz_t(), free.size());
    if (total > mpz_class(static_cast<unsigned long>(budget))) {
      throw Error(ErrorKind::EnumerationTooLarge, "exhaustive search exceeds budget");
    }
  }
  // Integer form of x_pivot = -(sum num_f x_f) / den per row.
  std::vector<mpz_class> den(r.size());
  std::vector<std::vector<mpz_class>> num(r.size(), std::vector<mpz_class>(free.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    mpz_class l = 1;
    for (std::size_t f = 0; f < free.size(); ++f) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r[i][free[f]].get_den_mpz_t());
    }
    den[i] = l;
    for (std::size_t f = 0; f < free.size(); ++f) {
      mpq_class t = r[i][free[f]] * l;
      num[i][f] = t.get_num();
    }
  }
  const long b = bound.get_si();
  std::optional<std::vector<mpz_class>> best;
  std::vector<long> xf(free.size());
  std::vector<mpz_class> full(cols);
  mpz_class s, q;
  auto test_point = [&] {
    for (std::size_t f = 0; f < free.size(); ++f) full[free[f]] = xf[f];
    for (std::size_t i = 0; i < r.size(); ++i) {
      s = 0;
      for (std::size_t f = 0; f < free.size(); ++f) {
        if (xf[f] != 0) s += num[i][f] * xf[f];
      }
      if (!mpz_divisible_p(s.get_mpz_t(), den[i].get_mpz_t())) return;
      mpz_divexact(q.get_mpz_t(), s.get_mpz_t(), den[i].get_mpz_t());
      if (abs(q) > bound) return;
      full[pivots[i]] = -q;
    }
    std::vector<mpz_class> cand = full;
    normalize_sign(cand);
    if (!best || better(cand, *best)) best = std::move(cand);
  };
  // Points of the free box with sup-norm exactly `shell`.
  std::function<void(std::size_t, long, bool)> walk = [&](std::size_t pos, long shell, bool on_shell) {
    if (pos == xf.size()) {
      if (on_shell) test_point();
      return;
    }
    if (pos + 1 == xf.size() && !on_shell) {
      for (long v : {-shell, shell}) {
        xf[pos] = v;
        test_point();
      }
      return;
    }
    for (long v = -shell; v <= shell; ++v) {
      xf[pos] = v;
      walk(pos + 1, shell, on_shell || v == shell || v == -shell);
    }
  };
  for (long shell = 1; shell <= b; ++shell) {
    if (best && sup_norm(*best) <= shell) break;
    walk(0, shell, false);
  }
  return best;
}

KernelResult kernel_small_vector(const IntMatrix& m, const SiegelOptions& opts) {
  if (m.empty() || m[0].empty()) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  const std::size_t y = m.size(), x = m[0].size();
  if (x <= y) throw Error(ErrorKind::Underdetermined, "Siegel's lemma needs more unknowns than equations");
  const mpz_class b = max_entry(m);
  KernelResult out;
  out.report.siegel_bound = siegel_bound(x, y, b);
  if (b == 0) {
    out.vector.assign(x, 0);
    out.vector[0] = 1;
    out.report.kernel_dim = x;
  } else {
    IntMatrix basis = integer_kernel_basis(m);
    out.report.kernel_dim = basis.size();
    if (basis.empty()) throw Error(ErrorKind::InternalInvariant, "empty kernel with X > Y");
    std::vector<std::vector<mpz_class>> cands;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      cands.push_back(basis[i]);
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        std::vector<mpz_class> s(x), d(x);
        for (std::size_t c = 0; c < x; ++c) {
          s[c] = basis[i][c] + basis[j][c];
          d[c] = basis[i][c] - basis[j][c];
        }
        cands.push_back(std::move(s));
        cands.push_back(std::move(d));
      }
    }
    for (auto& c : cands) normalize_sign(c);
    std::vector<mpz_class>* best = nullptr;
    for (auto& c : cands) {
      if (sup_norm(c) == 0) continue;
      if (best == nullptr || better(c, *best)) best = &c;
    }
    out.vector = *best;
  }
  out.report.sup_norm = sup_norm(out.vector);
  out.report.bound_met = siegel_bound_met(out.report.sup_norm, x, y, b);
  if (!out.report.bound_met && x >= 2 * y) {
    try {
      if (auto v = exhaustive_small_solution(m, siegel_bound_floor(x, y, b), opts.fallback_budget)) {
        out.vector = *v;
        out.report.sup_norm = sup_norm(*v);
        out.report.bound_met = true;
        out.report.used_fallback = true;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EnumerationTooLarge) throw;
    }
  }
  if (!in_kernel(m, out.vector)) throw Error(ErrorKind::InternalInvariant, "returned vector is not in the kernel");
  return out;
}

}  // namespace tcert
