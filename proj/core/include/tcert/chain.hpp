#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcert/auxfn.hpp"
#include "tcert/ball.hpp"
#include "tcert/real.hpp"
#include "tcert/report.hpp"

namespace tcert {

enum class Provenance { CertifiedComputed, ReconstructedClosedForm, UserConfigured };

const char* to_string(Provenance p) noexcept;

struct LedgerConstant {
  Real value;
  Provenance provenance = Provenance::ReconstructedClosedForm;
  std::string derivation;
};

/// Named constants with provenance. `get` aborts on a missing name.
class ConstantLedger {
 public:
  void set(const std::string& name, Real value, Provenance prov, std::string derivation);
  bool has(const std::string& name) const { return entries_.count(name) != 0; }
  const Real& get(const std::string& name) const;
  const LedgerConstant& entry(const std::string& name) const;
  const std::map<std::string, LedgerConstant>& entries() const { return entries_; }

 private:
  std::map<std::string, LedgerConstant> entries_;
};

json to_json(const ConstantLedger& l);

/// Degrees and heights of q and J(q) under the (absurd) algebraicity hypothesis.
struct ArithmeticData {
  long deg_q = 1;
  Real h_q;
  long deg_j = 1;
  Real h_j;
};

struct ProofInstance {
  Real q_abs;
  /// Actual point; enables the analytic checks on F(q^P).
  std::optional<Ball> q;
  std::optional<ArithmeticData> arith;
  long N = 0;
  std::shared_ptr<const AuxFunction> aux;
  std::optional<long> P;

  long L() const { return N * N / 2; }
  long M() const;
  /// r = (1 + |q|)/2.
  Real r() const;
};

/// Constants taken from configuration.
struct ChainInputs {
  Real c1;
  Real c2;
  Real c14;
};

/// Smallest N with (1/(1-r))^{12N+1} <= (N^2/2)^N, r = (1 + q_abs)/2.
long min_N_for_radius(const Real& q_abs);

/// Certified lower bound of |prod (1 - z^n)^24| on |z| <= r (minimum principle on |z| = r).
Real certify_c6(const Real& r, int initial_arcs = 256, int max_depth = 12);

struct LowerBoundLedger {
  BoundReport report;
  ConstantLedger constants;
  long deg_alpha_bound = 0;
  /// Bound for deg(alpha) h(alpha).
  std::optional<Real> mahler_bound;
  /// -C10 N P (P + log N).
  std::optional<Real> log_lower_bound;
  std::optional<Real> log_abs_f;
};

LowerBoundLedger lower_bound_ledger(const ProofInstance& inst, const ChainInputs& in);

struct ChainReport {
  BoundReport report;
  /// The final inequality M <= C18 M^{5/6} (log M)^{2/3} fails.
  bool contradiction = false;
  mpz_class threshold;
};

ChainReport contradiction_chain(const ProofInstance& inst, const ConstantLedger& ledger);

/// Minimal M0 with M > c18 M^{5/6} (log M)^{2/3} for every integer M >= M0
/// (upper end of the c18 enclosure).
mpz_class contradiction_threshold(const Real& c18);

struct CutoffResult {
  long prime = 0;
  /// p / (3 deg_q n + 1).
  double growth_ratio = 0;
};

/// Smallest prime p >= prime_floor with (p - 1)/3 > deg_q n.
CutoffResult algebraic_cutoff(long deg_q, long n, long prime_floor = 2);

struct RouteFit {
  std::string route;
  std::vector<double> n_values;
  std::vector<double> p_values;
  double exponent = 0;
};

struct RouteComparison {
  std::vector<RouteFit> routes;  // sorted by exponent
  /// P at the instance itself for each route: Blaschke, Jensen, algebraic.
  std::map<std::string, double> at_instance;
  bool blaschke_smallest = false;
};

/// Growth of P in N for the three bounds with M = floor(N^2/2).
RouteComparison compare_p_routes(const Real& q_abs, const ConstantLedger& ledger, long deg_q, long N_instance,
                                 long M_instance);

struct ChainRun {
  LowerBoundLedger lower;
  std::optional<ChainReport> chain;
  RouteComparison routes;
  long min_N = 0;
};

/// Full evaluation: lower ledger, contradiction chain (needs arithmetic data), routes.
ChainRun run_chain(const ProofInstance& inst, const ChainInputs& in);

json to_json(const ChainRun& r);

}  // namespace tcert
