#include "tcert/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tcert/error.hpp"

namespace tcert {

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit), composite_(limit + 1, false) {
  if (limit < 2) throw Error(ErrorKind::InvalidArgument, "sieve limit must be at least 2");
  composite_[0] = composite_[1] = true;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite_[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
  }
  prefix_.push_back(0);
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (composite_[n]) continue;
    primes_.push_back(n);
    prefix_.push_back(prefix_.back() + mpz_class(static_cast<unsigned long>(n)));
  }
}

bool PrimeTable::is_prime(std::uint64_t n) const {
  if (n > limit_) throw Error(ErrorKind::Budget, "value beyond sieve limit");
  return !composite_[n];
}

std::size_t PrimeTable::index_below(std::uint64_t x, bool inclusive) const {
  if (x > limit_) throw Error(ErrorKind::Budget, "value beyond sieve limit");
  auto it = inclusive ? std::upper_bound(primes_.begin(), primes_.end(), x)
                      : std::lower_bound(primes_.begin(), primes_.end(), x);
  return static_cast<std::size_t>(it - primes_.begin());
}

std::uint64_t PrimeTable::pi(std::uint64_t x, bool inclusive) const { return index_below(x, inclusive); }

const mpz_class& PrimeTable::sigma(std::uint64_t x, bool inclusive) const { return prefix_[index_below(x, inclusive)]; }

long euler_phi(long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "phi needs n >= 1");
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

void check_progression(const Progression& pr) {
  if (pr.second < 1 || std::gcd(pr.first, pr.second) != 1) {
    throw Error(ErrorKind::InvalidArgument, "progression needs delta >= 1 and gcd(a, delta) = 1");
  }
}

long residue(long a, long d) { return ((a % d) + d) % d; }

}  // namespace

PrimeStats prime_stats(const PrimeTable& t, std::uint64_t x, std::optional<Progression> prog, bool inclusive) {
  PrimeStats s;
  if (!prog) {
    s.pi = t.pi(x, inclusive);
    s.sigma = t.sigma(x, inclusive);
    return s;
  }
  check_progression(*prog);
  const long a = residue(prog->first, prog->second);
  const std::size_t end = t.pi(x, inclusive);
  for (std::size_t k = 0; k < end; ++k) {
    std::uint64_t p = t.primes()[k];
    if (static_cast<long>(p % static_cast<std::uint64_t>(prog->second)) != a) continue;
    ++s.pi;
    s.sigma += mpz_class(static_cast<unsigned long>(p));
  }
  return s;
}

PrimeStats prime_stats(std::uint64_t x, std::optional<Progression> prog, bool inclusive) {
  PrimeTable t(std::max<std::uint64_t>(x, 2));
  return prime_stats(t, x, prog, inclusive);
}

Real chebyshev_c14(mpfr_prec_t prec) { return Real::from_decimal("1.25506", prec); }

bool PrimeBoundsReport::claim_violated() const {
  return std::any_of(findings.begin(), findings.end(),
                     [](const ThresholdFinding& f) { return f.sum_claim && f.violation_count > 0; });
}

namespace {

struct Tracker {
  ThresholdFinding f;
  std::uint64_t last_bad = 0;
  std::size_t max_listed = 64;

  void record(std::uint64_t x, Status st) {
    if (st == Status::Holds) return;
    last_bad = x;
    if (st == Status::Undetermined) {
      ++f.undetermined;
      return;
    }
    if (x >= f.claimed_from) {
      ++f.violation_count;
      if (f.violations.size() < max_listed) f.violations.push_back(x);
    }
  }

  ThresholdFinding finish(std::uint64_t limit) {
    if (last_bad < limit) f.threshold = std::max<std::uint64_t>(last_bad + 1, 3);
    return f;
  }
};

}  // namespace

PrimeBoundsReport certify_prime_bounds(std::uint64_t limit, std::optional<Progression> prog, std::size_t max_listed) {
  if (limit < 100) throw Error(ErrorKind::InvalidArgument, "limit must be at least 100");
  if (prog) check_progression(*prog);
  PrimeBoundsReport out;
  out.limit = limit;
  out.progression = prog;
  PrimeTable t(limit);
  const mpfr_prec_t p = kDefaultPrecision;

  std::vector<Tracker> tr;
  auto add = [&](std::string id, std::string st, bool inc) {
    Tracker k;
    k.f.sum_claim = id.rfind("sum-", 0) == 0;
    k.f.claimed_from = id.rfind("pi-", 0) == 0 ? 2 : 11;
    k.f.id = std::move(id);
    k.f.statement = std::move(st);
    k.f.inclusive = inc;
    k.max_listed = max_listed;
    tr.push_back(std::move(k));
  };
  for (bool inc : {false, true}) {
    const std::string s = inc ? "p <= x" : "p < x";
    add(std::string("sum-lower") + (inc ? "-inclusive" : "-strict"), "x^2/(2 log x) <= sum_{" + s + "} p", inc);
    add(std::string("sum-upper") + (inc ? "-inclusive" : "-strict"), "sum_{" + s + "} p <= x^2/log x", inc);
    add(std::string("pi-lower") + (inc ? "-inclusive" : "-strict"), "x/log x <= #{" + s + "}", inc);
    if (prog) {
      add(std::string("ap-sum-lower") + (inc ? "-inclusive" : "-strict"),
          "x^2/(2 phi(d) log x) <= sum_{" + s + ", p = a mod d} p", inc);
      add(std::string("ap-sum-upper") + (inc ? "-inclusive" : "-strict"),
          "sum_{" + s + ", p = a mod d} p <= x^2/(phi(d) log x)", inc);
    }
  }

  long phi = prog ? euler_phi(prog->second) : 1;
  long a = prog ? residue(prog->first, prog->second) : 0;
  Real c14 = Real::from_int(0, p);
  Real c14ap = Real::from_int(0, p);
  std::uint64_t ap_count[2] = {0, 0};
  mpz_class ap_sum[2] = {0, 0};
  double best_d = 0, best_ap_d = 0;
  // ap counters are maintained incrementally: [0] strict (p < x), [1] inclusive.
  for (std::uint64_t x = 3; x <= limit; ++x) {
    const bool xp = t.is_prime(x);
    const bool x_in_ap = prog && xp && static_cast<long>(x % static_cast<std::uint64_t>(prog->second)) == a;
    if (prog && x_in_ap) {
      ap_count[1] += 1;
      ap_sum[1] += mpz_class(static_cast<unsigned long>(x));
    }
    if (prog) {
      const std::uint64_t prev = x - 1;
      if (t.is_prime(prev) && static_cast<long>(prev % static_cast<std::uint64_t>(prog->second)) == a) {
        ap_count[0] += 1;
        ap_sum[0] += mpz_class(static_cast<unsigned long>(prev));
      }
    }
    // Double screening: every quantity below is within a relative 1e-12 of
    // its exact value, so gaps above 1e-9 decide the comparison; close calls
    // are recomputed with outward-rounded intervals.
    const double xd = static_cast<double>(x);
    const double lxd = std::log(xd);
    const double x2d = xd * xd;
    std::optional<Real> X, lx, x2;
    auto exact = [&] {
      if (!X) {
        X = Real::from_mpz(mpz_class(static_cast<unsigned long>(x)), p);
        lx = log(*X);
        x2 = *X * *X;
      }
    };
    auto decide = [&](double lhs, double rhs, auto&& certified) {
      const double gap = rhs - lhs;
      const double scale = std::max(std::abs(lhs), std::abs(rhs));
      if (gap > 1e-9 * scale) return Status::Holds;
      if (gap < -1e-9 * scale) return Status::Fails;
      exact();
      return certified();
    };
    std::size_t k = 0;
    for (int inc = 0; inc < 2; ++inc) {
      const std::uint64_t pic = t.pi(x, inc);
      const mpz_class& sg = t.sigma(x, inc);
      const double sd = sg.get_d();
      const double pd = static_cast<double>(pic);
      auto sig = [&] { return Real::from_mpz(sg, p); };
      tr[k++].record(x, decide(x2d / (2 * lxd), sd, [&] { return compare_le(*x2 / (*lx * 2), sig()); }));
      tr[k++].record(x, decide(sd, x2d / lxd, [&] { return compare_le(sig(), *x2 / *lx); }));
      tr[k++].record(x, decide(xd / lxd, pd, [&] {
        return compare_le(*X / *lx, Real::from_int(static_cast<long>(pic), p));
      }));
      if (prog) {
        const double ad = ap_sum[inc].get_d();
        auto s_ap = [&] { return Real::from_mpz(ap_sum[inc], p); };
        tr[k++].record(x, decide(x2d / (2 * phi * lxd), ad,
                                 [&] { return compare_le(*x2 / (*lx * (2 * phi)), s_ap()); }));
        tr[k++].record(x, decide(ad, x2d / (phi * lxd), [&] { return compare_le(s_ap(), *x2 / (*lx * phi)); }));
      }
    }
    const double rd = static_cast<double>(t.pi(x, true)) * lxd / xd;
    if (rd > best_d - 1e-9) {
      exact();
      Real ratio = Real::from_int(static_cast<long>(t.pi(x, true)), p) * *lx / *X;
      if (ratio.lower() > c14.lower()) {
        c14 = ratio;
        out.c14_at = x;
      }
      best_d = std::max(best_d, rd);
    }
    if (prog) {
      const double r2d = static_cast<double>(ap_count[1]) * lxd * phi / xd;
      if (r2d > best_ap_d - 1e-9) {
        exact();
        Real r2 = Real::from_int(static_cast<long>(ap_count[1]), p) * *lx * phi / *X;
        if (r2.lower() > c14ap.lower()) c14ap = r2;
        best_ap_d = std::max(best_ap_d, r2d);
      }
    }
  }
  out.c14 = c14;
  if (prog) out.c14_progression = c14ap;
  for (auto& k : tr) out.findings.push_back(k.finish(limit));
  return out;
}

json to_json(const PrimeBoundsReport& r) {
  json j;
  j["limit"] = r.limit;
  j["c14_empirical"] = to_json(r.c14);
  j["c14_argmax"] = r.c14_at;
  j["c14_literature"] = to_json(chebyshev_c14());
  if (r.progression) {
    j["progression"] = {{"a", r.progression->first}, {"delta", r.progression->second}};
    j["c14_progression_empirical"] = to_json(*r.c14_progression);
  }
  json arr = json::array();
  for (const auto& f : r.findings) {
    json e;
    e["id"] = f.id;
    e["statement"] = f.statement;
    e["inclusive"] = f.inclusive;
    e["claimed_from"] = f.claimed_from;
    e["sum_claim"] = f.sum_claim;
    e["threshold"] = f.threshold ? json(*f.threshold) : json(nullptr);
    e["violations_from_claim"] = f.violations;
    e["violation_count"] = f.violation_count;
    e["undetermined"] = f.undetermined;
    arr.push_back(e);
  }
  j["findings"] = arr;
  j["claim_violated"] = r.claim_violated();
  return j;
}

}  // namespace tcert
