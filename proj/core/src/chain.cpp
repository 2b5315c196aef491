#include "tcert/chain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tcert/error.hpp"
#include "tcert/modforms.hpp"
#include "tcert/primes.hpp"
#include "tcert/upoly.hpp"

namespace tcert {

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::CertifiedComputed: return "certified-computed";
    case Provenance::ReconstructedClosedForm: return "reconstructed-closed-form";
    case Provenance::UserConfigured: return "user-configured";
  }
  return "unknown";
}

void ConstantLedger::set(const std::string& name, Real value, Provenance prov, std::string derivation) {
  entries_[name] = LedgerConstant{std::move(value), prov, std::move(derivation)};
}

const LedgerConstant& ConstantLedger::entry(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorKind::Precondition, "constant " + name + " missing from the ledger");
  return it->second;
}

const Real& ConstantLedger::get(const std::string& name) const { return entry(name).value; }

json to_json(const ConstantLedger& l) {
  json j = json::object();
  for (const auto& [name, c] : l.entries()) {
    j[name] = {{"value", to_json(c.value)}, {"provenance", to_string(c.provenance)}, {"derivation", c.derivation}};
  }
  return j;
}

long ProofInstance::M() const {
  if (!aux) throw Error(ErrorKind::Precondition, "instance has no auxiliary function");
  return aux->M;
}

Real ProofInstance::r() const { return (q_abs + 1) / 2; }

namespace {

void check_q_abs(const Real& q_abs, bool allow_zero) {
  const bool low_ok = allow_zero ? q_abs.is_nonnegative() : q_abs.is_positive();
  if (!low_ok || !q_abs.certainly_lt(Real::from_int(1, q_abs.prec()))) {
    throw Error(ErrorKind::InvalidArgument, "|q| must lie in (0, 1)");
  }
}

// (12N + 1) log(1/(1 - r)) <= N log(N^2/2)
Status radius_condition(long N, const Real& q_abs) {
  const mpfr_prec_t pr = q_abs.prec();
  Real a = -log((1 - q_abs) / 2);
  Real n = Real::from_int(N, pr);
  return compare_le(a * (12 * N + 1), n * log(n * n / 2));
}

}  // namespace

long min_N_for_radius(const Real& q_abs_in) {
  check_q_abs(q_abs_in, true);
  for (mpfr_prec_t pr = std::max<mpfr_prec_t>(q_abs_in.prec(), kDefaultPrecision); pr <= 1024; pr *= 2) {
    const Real q_abs = q_abs_in.with_prec(pr);
    bool undetermined = false;
    auto holds = [&](long N) {
      Status s = radius_condition(N, q_abs);
      if (s == Status::Undetermined) undetermined = true;
      return s == Status::Holds;
    };
    // N log(N^2/2) - (12N+1) a is convex and negative at N = 1, so the
    // condition is monotone in N.
    long hi = 1;
    while (!holds(hi) && !undetermined) hi *= 2;
    if (undetermined) continue;
    long lo = hi / 2;  // fails at lo (or lo == 0)
    while (hi - lo > 1 && !undetermined) {
      long mid = lo + (hi - lo) / 2;
      (holds(mid) ? hi : lo) = mid;
    }
    if (!undetermined) return hi;
  }
  throw Error(ErrorKind::PrecisionInsufficient, "radius condition undetermined up to 1024 bits");
}

Real certify_c6(const Real& r, int initial_arcs, int max_depth) {
  const mpfr_prec_t pr = r.prec();
  Real R = r.upper_only();
  if (!R.is_positive() || !R.certainly_lt(Real::from_int(1, pr))) {
    throw Error(ErrorKind::InvalidArgument, "radius must lie in (0, 1)");
  }
  // Real coefficients: the upper half circle suffices.
  const Real pi = Real::pi(pr);
  std::optional<Real> best;
  struct Arc {
    Real a, b;
    int depth;
  };
  std::vector<Arc> stack;
  for (int k = initial_arcs - 1; k >= 0; --k) {
    stack.push_back({pi * k / initial_arcs, pi * (k + 1) / initial_arcs, 0});
  }
  while (!stack.empty()) {
    Arc arc = stack.back();
    stack.pop_back();
    Real mid = (arc.a + arc.b) / 2;
    Real half = (arc.b - arc.a) / 2;
    Ball z = Ball::polar(R, mid).inflated((R * half).upper_only());
    Real v = eta24_product(z).abs();
    const bool loose = !v.is_positive() || v.upper() > 2 * v.lower();
    if (loose && arc.depth < max_depth) {
      stack.push_back({mid, arc.b, arc.depth + 1});
      stack.push_back({arc.a, mid, arc.depth + 1});
      continue;
    }
    if (!v.is_positive()) throw Error(ErrorKind::CannotCertify, "eta product enclosure reaches zero on the circle");
    Real lo = v.lower_only();
    best = best ? min(*best, lo) : lo;
  }
  return best->lower_only();
}

namespace {

Real lg(long v, mpfr_prec_t pr) { return log(Real::from_int(v, pr)); }

void fill_closed_forms(ConstantLedger& led, const Real& q_abs, const ChainInputs& in, mpfr_prec_t pr,
                       const std::optional<ArithmeticData>& arith) {
  const Real lq = -log(q_abs);
  const Real one = Real::from_int(1, pr);
  led.set("C1", in.c1.with_prec(pr), Provenance::CertifiedComputed,
          "branch-and-bound sup of |f(z)| Im(z)^6 over the fundamental domain (Hecke bound)");
  led.set("C2", in.c2.with_prec(pr), Provenance::UserConfigured,
          "isogeny height constant in h(J(q^P)) <= 2h(J(q)) + 6 log(1+P) + C2");
  led.set("C14", in.c14.with_prec(pr), Provenance::CertifiedComputed,
          "pi(x) <= C14 x/log x; checked against an exact sieve");
  const Real c1 = led.get("C1");
  led.set("C3", exp(Real::from_int(4, pr) / exp(one)) * c1, Provenance::ReconstructedClosedForm,
          "C3 = e^{4/e} C1 so that N^4 C1^N <= C3^N");
  led.set("C4", c4_from_c1(c1), Provenance::ReconstructedClosedForm, "C4 = e^{4/e} C1^2");
  led.set("C5", c5_from_c4(led.get("C4")), Provenance::ReconstructedClosedForm,
          "C5 = 12^12 C4 (Stirling: (12N)! (M+1)^{12N} <= (12N M)^{12N})");
  const Real c6 = led.get("C6");
  Real c7a = Real::from_int(2, pr) + max(Real::from_int(0, pr), -log(c6)) * 2 / lq;
  led.set("C7a", c7a, Provenance::ReconstructedClosedForm,
          "C7a = 2 + 2 max(0, log(1/C6))/log(1/|q|): C6^{2N}|q|^{2NP} >= exp(-C7a log(1/|q|) N P) for P >= 1");
  led.set("C15", Real::from_int(4, pr), Provenance::ReconstructedClosedForm,
          "C15 = 4: P/2 - C14 >= P/4 whenever P >= 4 C14");
  led.set("C16", sqrt(Real::from_int(3, pr)) * 31 * led.get("C15") / lq, Provenance::ReconstructedClosedForm,
          "C16 = 31 sqrt(3) C15/log(1/|q|) using N <= sqrt(3M)");
  if (!arith) return;
  const Real l2 = Real::log2(pr);
  // Rounded up to an integer so that the P = 2 case is a strict inequality.
  Real raw = (lg(3, pr) * 6 + max(Real::from_int(0, pr), led.get("C2"))) / l2;
  Real c7b = Real::from_double(std::floor(raw.upper()) + 1, pr);
  led.set("C7b", c7b, Provenance::ReconstructedClosedForm,
          "C7b = floor((6 log 3 + max(0, C2))/log 2) + 1: 6 log(1+P) + C2 <= C7b log P for P >= 2");
  Real inner = max(max(max(one, Real::from_int(25, pr)), max(c7b, arith->h_q.with_prec(pr))),
                   arith->h_j.with_prec(pr) * 2);
  Real c8 = inner * (arith->deg_q * arith->deg_j);
  led.set("C8", c8, Provenance::ReconstructedClosedForm,
          "C8 = deg(q) deg(J(q)) max{1, 25, C7b, h(q), 2h(J(q))}");
  Real c9 = c8 * Real::from_mpq(mpq_class(3, 2), pr) * (lg(2, pr) + 3) / 2;
  led.set("C9", c9, Provenance::ReconstructedClosedForm,
          "C9 = C8 (3/2)(3 + log 2)/2: (P+1) <= 3P/2 and P + log P + 1 <= (3 + log 2)/2 P for P >= 2");
  Real c10 = c9 + c7a * lq;
  led.set("C10", c10, Provenance::ReconstructedClosedForm, "C10 = C9 + C7a log(1/|q|)");
  led.set("C11", c10, Provenance::ReconstructedClosedForm, "C11 = C10");
  Real c12 = max(c10, one) / lq;
  led.set("C12", c12, Provenance::ReconstructedClosedForm, "C12 = max(C11, 1)/log(1/|q|)");
  Real c13 = c12 * sqrt(Real::from_int(3, pr)) * Real::from_mpq(mpq_class(33, 2), pr);
  led.set("C13", c13, Provenance::ReconstructedClosedForm,
          "C13 = 16.5 sqrt(3) C12: N <= sqrt(3M), log P <= P, log N <= log M, 31 log M/P <= 15.5 log M");
  Real c16 = led.get("C16");
  Real c17 = c13 * max(one, pow(c16, Real::from_mpq(mpq_class(2, 3), pr)));
  led.set("C17", c17, Provenance::ReconstructedClosedForm, "C17 = C13 max(1, C16^{2/3})");
  led.set("C18", c17 * 2, Provenance::ReconstructedClosedForm,
          "C18 = 2 C17 since log M <= (sqrt(M) log M)^{2/3}");
}

}  // namespace

LowerBoundLedger lower_bound_ledger(const ProofInstance& inst, const ChainInputs& in) {
  if (!inst.P) throw Error(ErrorKind::Precondition, "lower bound ledger needs the prime P");
  if (!inst.aux) throw Error(ErrorKind::Precondition, "lower bound ledger needs a built auxiliary function");
  check_q_abs(inst.q_abs, false);
  const long P = *inst.P, N = inst.N;
  if (P < 2) throw Error(ErrorKind::Precondition, "P must be a prime >= 2");
  const mpfr_prec_t pr = inst.q_abs.prec();
  const Real q_abs = inst.q_abs;
  const Real lq = -log(q_abs);
  LowerBoundLedger out;
  auto& led = out.constants;

  const Real c6 = certify_c6(inst.r());
  led.set("C6", c6, Provenance::CertifiedComputed,
          "certified min of |prod(1 - z^n)^24| on |z| = r = (1+|q|)/2 (minimum principle)");
  fill_closed_forms(led, q_abs, in, pr, inst.arith);
  auto& rep = out.report;
  const Real n = Real::from_int(N, pr), p = Real::from_int(P, pr);
  const Real logN = log(n), logP = log(p);

  rep.add_le("c6-le-one", "C6 <= |eta^24(0)| = 1", c6, Real::from_int(1, pr));
  rep.add_le("delta-lower", "-C7a log(1/|q|) N P <= 2N log C6 - 2NP log(1/|q|)",
             -(led.get("C7a") * lq * n * p), n * log(c6) * 2 - n * p * lq * 2);

  const Real logLA = log(Real::from_mpz(inst.aux->poly.length(), pr));
  const Real closed = n * log(led.get("C3")) + n * log(n * n / 2) * 12;
  rep.add_le("log-length-closed-form", "log L(A) <= N log C3 + 12N log(N^2/2)", logLA, closed);
  rep.add_le("log-length-25", "N log C3 + 12N log(N^2/2) <= 25 N log N", closed, n * logN * 25);
  rep.add_le("log-length-actual", "log L(A) <= 25 N log N", logLA, n * logN * 25);

  if (inst.arith) {
    const auto& ar = *inst.arith;
    out.deg_alpha_bound = (P + 1) * ar.deg_q * ar.deg_j;
    const Real deg = Real::from_int(out.deg_alpha_bound, pr);
    const Real hq = ar.h_q.with_prec(pr), hj = ar.h_j.with_prec(pr);
    const Real c2 = led.get("C2"), c7b = led.get("C7b"), c8 = led.get("C8"), c9 = led.get("C9");
    const Real iso = lg(P + 1, pr) * 6 + c2;
    rep.add_le("isogeny-c7b", "6 log(1+P) + C2 <= C7b log P", iso, c7b * logP);
    const Real h_alpha = logLA + n * p * hq + n * (hj * 2 + iso);
    out.mahler_bound = deg * h_alpha;
    const Real via25 = deg * (n * logN * 25 + n * p * hq + n * c7b * logP + n * hj * 2);
    rep.add_le("mahler-assembled", "deg(alpha) h(alpha) <= (P+1) dq dJ (25 N log N + NP h(q) + N C7b log P + 2N h(J))",
               *out.mahler_bound, via25);
    const Real c8form = c8 * n * (p + 1) * (p + logN + logP + 1);
    rep.add_le("mahler-c8", "(P+1) dq dJ (...) <= C8 N (P+1)(P + log N + log P + 1)", via25, c8form);
    const Real c9form = c9 * n * p * (p + logN);
    rep.add_le("mahler-c9", "C8 N (P+1)(P + log N + log P + 1) <= C9 N P (P + log N)", c8form, c9form);
    out.log_lower_bound = -(led.get("C10") * n * p * (p + logN));
    rep.add_le("lower-f-c10", "-C10 N P (P + log N) <= -C7a log(1/|q|) N P - C9 N P (P + log N)",
               *out.log_lower_bound, -(led.get("C7a") * lq * n * p) - c9form);
  }
  if (inst.q) {
    Ball qp = inst.q->with_prec(pr).pow(static_cast<unsigned long>(P));
    Real absF = eval_aux_product(inst.aux->poly, qp).abs();
    rep.add_lt("f-nonzero", "0 < |F(q^P)|", Real::from_int(0, pr), absF);
    if (absF.is_positive()) {
      out.log_abs_f = log(absF);
      if (out.log_lower_bound) {
        rep.add_le("lower-f-consistency", "-C10 N P (P + log N) <= log |F(q^P)|", *out.log_lower_bound,
                   *out.log_abs_f);
      }
    }
  }
  return out;
}

namespace {

// M0 with c M^{5/6}(log M)^{2/3} < M for all integers M >= M0, at precision pr.
std::optional<mpz_class> threshold_at(const Real& c, mpfr_prec_t pr) {
  bool undetermined = false;
  auto holds = [&](const mpz_class& M) {
    if (M == 1) return true;
    const mpfr_prec_t wp = std::max<mpfr_prec_t>(pr, static_cast<mpfr_prec_t>(mpz_sizeinbase(M.get_mpz_t(), 2)) + 64);
    Real m = Real::from_mpz(M, wp);
    Real rhs = c.upper_only().with_prec(wp) * pow(m, Real::from_mpq(mpq_class(5, 6), wp)) *
               pow(log(m), Real::from_mpq(mpq_class(2, 3), wp));
    Status s = compare_lt(rhs, m);
    if (s == Status::Undetermined) undetermined = true;
    return s == Status::Holds;
  };
  // In t = log M the condition reads t/6 - log c - (2/3) log t > 0, convex
  // in t with its minimum at t = 4: monotone for M >= 55.
  mpz_class lo = 54, hi = 55;
  while (!holds(hi) && !undetermined) {
    lo = hi;
    if (mpz_sizeinbase(hi.get_mpz_t(), 2) > 4096) throw Error(ErrorKind::Budget, "threshold beyond 2^4096");
    hi *= 2;
  }
  while (hi - lo > 1 && !undetermined) {
    mpz_class mid = (lo + hi) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  if (undetermined) return std::nullopt;
  // Below t = 4 the left side decreases in t, so holding at 54 means holding for all M <= 54.
  if (hi == 55) {
    const bool h54 = holds(mpz_class(54));
    if (undetermined) return std::nullopt;
    if (h54) return mpz_class(1);
  }
  return hi;
}

}  // namespace

mpz_class contradiction_threshold(const Real& c18) {
  if (!c18.is_positive()) throw Error(ErrorKind::InvalidArgument, "c18 must be positive");
  for (mpfr_prec_t pr = std::max<mpfr_prec_t>(c18.prec(), kDefaultPrecision); pr <= 1024; pr *= 2) {
    if (auto t = threshold_at(c18, pr)) return *t;
  }
  throw Error(ErrorKind::PrecisionInsufficient, "threshold undetermined up to 1024 bits");
}

ChainReport contradiction_chain(const ProofInstance& inst, const ConstantLedger& led) {
  if (!inst.P) throw Error(ErrorKind::Precondition, "chain needs the prime P");
  const long N = inst.N, L = inst.L(), M = inst.M(), P = *inst.P;
  if (M < 2) throw Error(ErrorKind::Precondition, "chain needs M >= 2");
  const mpfr_prec_t pr = inst.q_abs.prec();
  const Real q_abs = inst.q_abs;
  const Real lq = -log(q_abs);
  const Real r = inst.r();
  const Real n = Real::from_int(N, pr), m = Real::from_int(M, pr), l = Real::from_int(L, pr),
             p = Real::from_int(P, pr);
  const Real logN = log(n), logM = log(m), logP = log(p);
  const Real sqrtM = sqrt(m);
  ChainReport out;
  auto& rep = out.report;

  rep.add_le("dependence-on-q", "(1/(1-r))^{12N+1} <= (N^2/2)^N", -log(1 - r) * (12 * N + 1),
             n * log(n * n / 2), "log form; fails below min_N_for_radius");
  rep.add_le("params-2L-le-N2", "2L <= N^2", l * 2, n * n);
  rep.add_lt("params-N2-lt-2L2", "N^2 < 2(L+1)", n * n, (l + 1) * 2);
  rep.add_le("params-L-le-M", "L <= M", l, m);
  rep.add_le("params-2M2-le-3M", "2(M+1) <= 3M", (m + 1) * 2, m * 3);
  rep.add_le("n-le-sqrt3m", "N <= sqrt(3M)", n, sqrt(m * 3));
  rep.add_le("logn-le-logm", "log N <= log M", logN, logM);
  rep.add_le("power-gathering", "(LMN)^{12N} <= M^{31N}", n * log(l * m * n) * 12, n * logM * 31, "log form");

  const Real c11 = led.get("C11"), c12 = led.get("C12"), c13 = led.get("C13"), c14 = led.get("C14"),
             c15 = led.get("C15"), c16 = led.get("C16"), c17 = led.get("C17"), c18 = led.get("C18");
  rep.add_le("combined-bounds", "log(1/|q|) P M <= C11 N P (P + log N) + 31 N log M", lq * p * m,
             c11 * n * p * (p + logN) + n * logM * 31);
  rep.add_le("m-bound-c12", "M <= C12 N (P + log P + log N + 31 log M / P)", m,
             c12 * n * (p + logP + logN + logM * 31 / p));
  rep.add_le("contradiction-on-m", "M <= C13 sqrt(M) (P + log M)", m, c13 * sqrtM * (p + logM));

  PrimeTable table(static_cast<std::uint64_t>(std::max<long>(P, 2)));
  const long piP = static_cast<long>(table.pi(static_cast<std::uint64_t>(P)));
  const Real sigma = Real::from_mpz(table.sigma(static_cast<std::uint64_t>(P)), pr);
  rep.add_le("blaschke-primes", "r^{pi(P)} |q|^{-sum_{p<P} p} <= M^{31N}", log(r) * piP + sigma * lq,
             n * logM * 31, "log form");
  rep.add_le("prime-count-upper", "pi(P) <= C14 P / log P", Real::from_int(piP, pr), c14 * p / logP);
  rep.add_le("prime-sum-lower", "P^2/(2 log P) <= sum_{p<P} p", p * p / (logP * 2), sigma,
             "certified to hold only from P = 348");
  rep.add_le("c15-range", "4 C14 <= P", c14 * 4, p);
  rep.add_le("bound-on-P", "P^2/log P <= C15 31 N log M / log(1/|q|)", p * p / logP, c15 * n * logM * 31 / lq);
  rep.add_le("p-three-halves", "P^{3/2} <= C16 sqrt(M) log M", p * sqrt(p), c16 * sqrtM * logM);
  const Real two3 = Real::from_mpq(mpq_class(2, 3), pr);
  rep.add_le("m-bound-c17", "M <= C17 sqrt(M) (log M + (sqrt(M) log M)^{2/3})", m,
             c17 * sqrtM * (logM + pow(sqrtM * logM, two3)));
  rep.add_le("final", "M <= C18 M^{5/6} (log M)^{2/3}", m,
             c18 * pow(m, Real::from_mpq(mpq_class(5, 6), pr)) * pow(logM, two3),
             "a failure is the contradiction");
  out.contradiction = rep.find("final")->status == Status::Fails;
  out.threshold = contradiction_threshold(c18);
  return out;
}

CutoffResult algebraic_cutoff(long deg_q, long n, long prime_floor) {
  if (deg_q < 1 || n < 1 || prime_floor < 1) throw Error(ErrorKind::InvalidArgument, "arguments must be positive");
  // (p - 1)/3 > deg_q n  <=>  p >= 3 deg_q n + 2
  const long start = std::max(prime_floor, 3 * deg_q * n + 2);
  CutoffResult out;
  out.prime = static_cast<long>(is_probable_prime(static_cast<std::uint64_t>(start))
                                    ? static_cast<std::uint64_t>(start)
                                    : next_prime(static_cast<std::uint64_t>(start)));
  out.growth_ratio = static_cast<double>(out.prime) / static_cast<double>(3 * deg_q * n + 1);
  return out;
}

namespace {

// Largest P with P^2/log P <= K (the map is increasing for P > sqrt(e)).
double solve_blaschke(double K) {
  double lo = std::sqrt(std::exp(1.0)), hi = std::max(4.0, K);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (mid * mid / std::log(mid) <= K ? lo : hi) = mid;
  }
  return lo;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

RouteComparison compare_p_routes(const Real& q_abs, const ConstantLedger& led, long deg_q, long N_inst,
                                 long M_inst) {
  check_q_abs(q_abs, false);
  const double lq = -std::log(q_abs.approx());
  const double r = (1 + q_abs.approx()) / 2;
  const double lrq = std::log(r / q_abs.approx());
  const double c15 = led.get("C15").upper();
  auto sec6 = [&](double N, double M) { return solve_blaschke(c15 * 31 * N * std::log(M) / lq); };
  auto jensen = [&](double N, double M) { return 31 * N * std::log(M) / lrq; };
  auto algebraic = [&](double N, double) {
    return static_cast<double>(algebraic_cutoff(deg_q, static_cast<long>(N)).prime);
  };
  RouteComparison out;
  const std::vector<std::pair<std::string, std::function<double(double, double)>>> defs = {
      {"blaschke", sec6}, {"jensen", jensen}, {"algebraic", algebraic}};
  for (const auto& [name, fn] : defs) {
    RouteFit fit;
    fit.route = name;
    for (int k = 6; k <= 20; ++k) {
      const double N = std::ldexp(1.0, k);
      const double M = std::floor(N * N / 2);
      fit.n_values.push_back(N);
      fit.p_values.push_back(fn(N, M));
    }
    fit.exponent = slope(fit.n_values, fit.p_values);
    out.at_instance[name] = fn(static_cast<double>(N_inst), static_cast<double>(std::max<long>(M_inst, 2)));
    out.routes.push_back(std::move(fit));
  }
  std::stable_sort(out.routes.begin(), out.routes.end(),
                   [](const RouteFit& a, const RouteFit& b) { return a.exponent < b.exponent; });
  out.blaschke_smallest = out.routes.front().route == "blaschke";
  return out;
}

ChainRun run_chain(const ProofInstance& inst_in, const ChainInputs& in) {
  if (!inst_in.aux) throw Error(ErrorKind::Precondition, "instance has no auxiliary function");
  ProofInstance inst = inst_in;
  if (!inst.P) {
    if (!inst.q) throw Error(ErrorKind::Precondition, "P is required when q is not supplied");
    inst.P = first_good_prime(*inst.q, *inst.aux, 1000);
  }
  ChainRun out;
  for (mpfr_prec_t pr = std::max<mpfr_prec_t>(inst_in.q_abs.prec(), kDefaultPrecision);; pr *= 2) {
    inst.q_abs = inst_in.q_abs.with_prec(pr);
    if (inst_in.q) inst.q = inst_in.q->with_prec(pr);
    out.lower = lower_bound_ledger(inst, in);
    out.chain.reset();
    if (inst.arith) out.chain = contradiction_chain(inst, out.lower.constants);
    const bool undetermined =
        out.lower.report.any_undetermined() || (out.chain && out.chain->report.any_undetermined());
    if (!undetermined || pr >= 1024) break;
  }
  out.routes = compare_p_routes(inst.q_abs, out.lower.constants, inst.arith ? inst.arith->deg_q : 1, inst.N,
                                inst.M());
  out.min_N = min_N_for_radius(inst.q_abs);
  return out;
}

json to_json(const ChainRun& r) {
  json j;
  json lower;
  lower["report"] = to_json(r.lower.report);
  lower["deg_alpha_bound"] = r.lower.deg_alpha_bound;
  if (r.lower.mahler_bound) lower["mahler_bound"] = to_json(*r.lower.mahler_bound);
  if (r.lower.log_lower_bound) lower["log_lower_bound"] = to_json(*r.lower.log_lower_bound);
  if (r.lower.log_abs_f) lower["log_abs_f"] = to_json(*r.lower.log_abs_f);
  j["lower_bound"] = lower;
  j["provenance"] = to_json(r.lower.constants);
  if (r.chain) {
    j["chain"] = {{"report", to_json(r.chain->report)},
                  {"contradiction", r.chain->contradiction},
                  {"threshold_M", r.chain->threshold.get_str()}};
  } else {
    j["chain"] = nullptr;
  }
  json routes = json::array();
  for (const auto& f : r.routes.routes) {
    routes.push_back({{"route", f.route}, {"exponent", f.exponent}, {"n", f.n_values}, {"p", f.p_values}});
  }
  j["p_routes"] = {{"ordered", routes},
                   {"at_instance", r.routes.at_instance},
                   {"blaschke_smallest", r.routes.blaschke_smallest}};
  j["min_N_for_radius"] = r.min_N;
  return j;
}

}  // namespace tcert
