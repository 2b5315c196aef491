#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "tcert/auxfn.hpp"
#include "tcert/chain.hpp"
#include "tcert/error.hpp"
#include "tcert/heights.hpp"
#include "tcert/int_series.hpp"
#include "tcert/modforms.hpp"
#include "tcert/modpoly.hpp"
#include "tcert/primes.hpp"
#include "tcert/report.hpp"

#ifndef TCERT_DEFAULT_CONSTANTS
#define TCERT_DEFAULT_CONSTANTS "config/constants.json"
#endif

namespace tcert::cli {

using nlohmann::json;
namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (precision < 53 || precision > 4096) throw Error(ErrorKind::InvalidArgument, "precision must be in [53, 4096]");
  if (sieve_limit < 100 || sieve_limit > 2000000000ULL) {
    throw Error(ErrorKind::InvalidArgument, "sieve_limit must be in [100, 2e9]");
  }
  if (trunc.expand < 1 || trunc.hecke < 2 || trunc.identity < 1 || trunc.aux < 0) {
    throw Error(ErrorKind::InvalidArgument, "truncations must be positive");
  }
  if (constants_path.empty()) throw Error(ErrorKind::InvalidArgument, "constants_path must be set");
}

json to_json(const RunConfig& c) {
  return {{"precision", c.precision},
          {"sieve_limit", c.sieve_limit},
          {"truncations", {{"expand", c.trunc.expand}, {"hecke", c.trunc.hecke}, {"identity", c.trunc.identity},
                           {"aux", c.trunc.aux}}},
          {"constants_path", c.constants_path},
          {"output_path", c.output_path}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.constants_path = default_constants_path();
  try {
    if (j.contains("precision")) c.precision = j.at("precision").get<long>();
    if (j.contains("sieve_limit")) c.sieve_limit = j.at("sieve_limit").get<std::uint64_t>();
    if (j.contains("truncations")) {
      const json& t = j.at("truncations");
      if (t.contains("expand")) c.trunc.expand = t.at("expand").get<long>();
      if (t.contains("hecke")) c.trunc.hecke = t.at("hecke").get<long>();
      if (t.contains("identity")) c.trunc.identity = t.at("identity").get<long>();
      if (t.contains("aux")) c.trunc.aux = t.at("aux").get<long>();
    }
    if (j.contains("constants_path")) c.constants_path = j.at("constants_path").get<std::string>();
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, "config " + path + ": " + e.what());
  }
  RunConfig c = config_from_json(j);
  // Relative constant paths are resolved against the config file.
  fs::path cp(c.constants_path);
  if (cp.is_relative() && j.contains("constants_path")) c.constants_path = (fs::path(path).parent_path() / cp).string();
  return c;
}

std::string default_constants_path() { return TCERT_DEFAULT_CONSTANTS; }

namespace {

struct Constants {
  std::string path;
  HeckeConstant hecke;
  Real c2;
  Real c14;
  std::string c2_note;
};

Constants load_constants(const std::string& path, mpfr_prec_t prec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open constants file " + path);
  json j;
  try {
    in >> j;
    Constants c;
    c.path = path;
    c.hecke = hecke_constant_from_json(j.at("hecke"));
    c.c2 = Real::from_decimal(j.at("C2").at("value").get<std::string>(), prec);
    c.c14 = Real::from_decimal(j.at("C14").at("value").get<std::string>(), prec).upper_only();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, "constants file " + path + ": " + e.what());
  }
}

json provenance(const RunConfig& cfg, const Constants& k) {
  return {{"tool", "tcert"},
          {"version", "0.1.0"},
          {"precision", cfg.precision},
          {"constants_file", fs::path(k.path).filename().string()},
          {"constants",
           {{"C1", {{"value", k.hecke.c1.hi_string(12)}, {"provenance", "certified-computed"},
                    {"grid_depth", k.hecke.grid_depth}, {"grid_precision", k.hecke.precision}}},
            {"C2", {{"value", k.c2.hi_string(12)}, {"provenance", "user-configured"}}},
            {"C14", {{"value", k.c14.hi_string(12)}, {"provenance", "certified-computed"}}}}}};
}

int status_exit(const BoundReport& r) {
  if (r.any_fail()) return kExitViolation;
  if (r.any_undetermined()) return kExitUndetermined;
  return kExitPass;
}

const char* exit_label(int code) {
  switch (code) {
    case kExitPass: return "pass";
    case kExitViolation: return "violation";
    default: return "undetermined";
  }
}

int error_exit(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Parse:
    case ErrorKind::InvalidTruncation:
    case ErrorKind::Domain:
    case ErrorKind::Precondition:
      return kExitUsage;
    default:
      return kExitUndetermined;
  }
}

mpq_class parse_rational(const std::string& s) {
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw Error(ErrorKind::Parse, "bad rational '" + s + "'");
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      digits += ch;
      any = true;
      if (seen_dot) --exp10;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    try {
      std::size_t used = 0;
      exp10 += std::stol(s.substr(i + 1), &used);
      i += 1 + used;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad exponent in '" + s + "'");
    }
  }
  if (!any || i != s.size()) throw Error(ErrorKind::Parse, "bad number '" + s + "'");
  mpz_class num(digits, 10), p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  mpq_class q = exp10 < 0 ? mpq_class(num, p10) : mpq_class(num * p10);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::pair<long, long> parse_pair(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::Parse, "expected 'a,d' but got '" + s + "'");
  try {
    return {std::stol(s.substr(0, comma)), std::stol(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, "bad integer pair '" + s + "'");
  }
}

json series_head(const IntSeries& s, int count) {
  json a = json::array();
  for (long e = s.valuation(); e < s.trunc() && e < s.valuation() + count; ++e) a.push_back(s.coeff(e).get_str());
  return a;
}

void write_aux_file(const std::string& path, const AuxFunction& f) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << "N " << f.N << '\n';
  for (const auto& row : f.poly.a) {
    for (std::size_t l = 0; l < row.size(); ++l) out << (l ? " " : "") << row[l].get_str();
    out << '\n';
  }
  write_series(out, f.series);
}

json report_json(const BoundReport& r) { return to_json(r); }

// Options shared by every subcommand.
struct Options {
  std::string config_path;
  std::string report_path;

  std::string form;
  long trunc = -1;
  std::string out_file;
  std::string in_file;
  long N = 4, l = 0;
  int estimate_depth = -1;
  std::string q;
  long pmax = 200;
  std::string residue;
  std::string minpoly;
  long root_index = 0;
  long p = 2;
  bool compute = false, verify = false, certify = false;
  long K = -1;
  std::string j0, cm;
  std::uint64_t limit = 0;
  std::string progression;
  long P = 0;
  long deg_q = 1, deg_j = 1;
  std::string h_q, h_j;
  long floor = 2;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified computations for the modular transcendence argument", "tcert"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);
  Options o;
  app.add_option("--config", o.config_path, "Run configuration (JSON); overrides $TCERT_CONFIG");
  app.add_option("--report", o.report_path, "Write the JSON report here instead of stdout");

  auto* expand = app.add_subcommand("expand", "Exact q-expansion of delta, j or e4");
  expand->add_option("--form", o.form)->required()->check(CLI::IsMember({"delta", "j", "e4"}));
  expand->add_option("--trunc", o.trunc, "Coefficients of q^e for e < trunc");
  expand->add_option("--out", o.out_file)->required();

  auto* hecke = app.add_subcommand("certify-hecke", "Check |c_{N,l}(k)| <= C1^N k^{12N}");
  hecke->add_option("--N", o.N)->check(CLI::Range(1, 64));
  hecke->add_option("--l", o.l)->check(CLI::Range(0, 64));
  hecke->add_option("--trunc", o.trunc);
  hecke->add_option("--estimate-depth", o.estimate_depth, "Recompute C1 by branch and bound")
      ->check(CLI::Range(0, 12));

  auto* aux = app.add_subcommand("build-aux", "Build A and F = Delta^{2N} A(z, J(z))");
  aux->add_option("--N", o.N)->check(CLI::Range(1, 12));
  aux->add_option("--trunc", o.trunc);
  aux->add_option("--out", o.out_file);

  auto* scan = app.add_subcommand("scan-primes", "First prime P with F(q^P) certified nonzero");
  scan->add_option("--q", o.q)->required();
  scan->add_option("--pmax", o.pmax)->check(CLI::Range(2L, 100000L));
  scan->add_option("--residue", o.residue, "a,d");
  scan->add_option("--N", o.N)->check(CLI::Range(1, 12));

  auto* height = app.add_subcommand("height", "Heights and Liouville check of an algebraic number");
  height->add_option("--minpoly", o.minpoly, "c0,c1,...")->required();
  height->add_option("--root-index", o.root_index)->check(CLI::NonNegativeNumber);

  auto* modp = app.add_subcommand("modpoly", "Classical modular polynomial of prime level");
  modp->add_option("--p", o.p)->check(CLI::IsMember({2, 3, 5, 7}));
  auto* g = modp->add_option_group("mode");
  g->add_flag("--compute", o.compute);
  g->add_flag("--verify", o.verify);
  g->add_flag("--certify", o.certify);
  g->require_option(1);
  modp->add_option("--K", o.K);
  modp->add_option("--out", o.out_file);
  modp->add_option("--in", o.in_file);
  modp->add_option("--j0", o.j0, "Rational j0 for the specialization degree");
  modp->add_option("--cm", o.cm, "a,b,c with a tau^2 + b tau + c = 0");

  auto* primes = app.add_subcommand("primes", "Prime-sum and prime-count bounds");
  auto* pcert = primes->add_subcommand("certify", "Certify the bounds on [3, limit]");
  primes->require_subcommand(1);
  pcert->add_option("--limit", o.limit);
  pcert->add_option("--progression", o.progression, "a,d");

  auto* chain = app.add_subcommand("chain", "Inequality chain and P cutoffs");
  chain->require_subcommand(1);
  auto* crun = chain->add_subcommand("run", "Evaluate the full chain");
  crun->add_option("--q", o.q)->required();
  crun->add_option("--N", o.N)->check(CLI::Range(2, 8));
  crun->add_option("--P", o.P);
  crun->add_option("--deg-q", o.deg_q)->check(CLI::PositiveNumber);
  crun->add_option("--h-q", o.h_q);
  crun->add_option("--deg-j", o.deg_j)->check(CLI::PositiveNumber);
  crun->add_option("--h-j", o.h_j);
  auto* ccut = chain->add_subcommand("cutoff", "Algebraic cutoff prime");
  ccut->add_option("--deg-q", o.deg_q)->check(CLI::PositiveNumber);
  ccut->add_option("--N", o.N)->required()->check(CLI::PositiveNumber);
  ccut->add_option("--floor", o.floor)->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    RunConfig cfg;
    cfg.constants_path = default_constants_path();
    std::string cfg_path = o.config_path;
    if (cfg_path.empty()) {
      if (const char* env = std::getenv("TCERT_CONFIG"); env && *env) cfg_path = env;
    }
    if (!cfg_path.empty()) cfg = load_config(cfg_path);
    cfg.validate();
    const mpfr_prec_t prec = cfg.precision;
    const Constants k = load_constants(cfg.constants_path, prec);

    json result;
    std::string command;
    int code = kExitPass;

    if (*expand) {
      command = "expand";
      const long K = o.trunc >= 0 ? o.trunc : cfg.trunc.expand;
      IntSeries s = o.form == "j" ? j_expansion(K) : o.form == "e4" ? e4_expansion(K) : delta_expansion(K);
      std::ofstream f(o.out_file);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out_file);
      write_series(f, s);
      result = {{"form", o.form}, {"trunc", s.trunc()}, {"valuation", s.valuation()}, {"head", series_head(s, 3)},
                {"out", fs::path(o.out_file).filename().string()}};
    } else if (*hecke) {
      command = "certify-hecke";
      if (o.estimate_depth >= 0) {
        HeckeConstant h = estimate_hecke_constant(o.estimate_depth, prec);
        result = {{"hecke", tcert::to_json(h)}};
      } else {
        if (o.l > o.N) throw Error(ErrorKind::InvalidArgument, "need 0 <= l <= N");
        const long K = o.trunc >= 0 ? o.trunc : cfg.trunc.hecke;
        HeckeReport r = certify_hecke(cusp_coeffs(o.N, o.l, K), k.hecke.c1);
        result = {{"N", o.N}, {"l", o.l}, {"trunc", K}, {"max_ratio", to_json(r.max_ratio)},
                  {"argmax_k", r.argmax_k}, {"violations", r.violations}, {"pass", r.pass}};
        code = r.pass ? kExitPass : kExitViolation;
      }
    } else if (*aux) {
      command = "build-aux";
      AuxOptions opts;
      opts.trunc = o.trunc >= 0 ? o.trunc : cfg.trunc.aux;
      opts.c1 = k.hecke.c1;
      AuxFunction f = build_auxiliary(o.N, opts);
      const bool dual = assemble_from_tables(f.poly, f.series.trunc()) == f.series;
      BoundReport checks;
      checks.add_le("order-at-least-L", "L <= M", Real::from_int(f.L, prec), Real::from_int(f.M, prec));
      checks.add_lt("d0-nonzero", "0 < |d0|", Real::from_int(0, prec), Real::from_mpz(abs(f.d0), prec));
      if (!o.out_file.empty()) write_aux_file(o.out_file, f);
      result = {{"N", f.N},
                {"L", f.L},
                {"M", f.M},
                {"d0", f.d0.get_str()},
                {"length", f.poly.length().get_str()},
                {"height", f.poly.height().get_str()},
                {"series_trunc", f.series.trunc()},
                {"dual_assembly_equal", dual},
                {"siegel",
                 {{"sup_norm", f.siegel.sup_norm.get_str()},
                  {"bound", to_json(f.siegel.siegel_bound)},
                  {"bound_met", f.siegel.bound_met},
                  {"used_fallback", f.siegel.used_fallback}}},
                {"checks", report_json(checks)}};
      code = status_exit(checks);
      if (!dual) code = kExitViolation;
    } else if (*scan) {
      command = "scan-primes";
      Ball q = Ball::from_mpq(parse_rational(o.q), 0, prec);
      std::optional<std::pair<long, long>> residue;
      if (!o.residue.empty()) residue = parse_pair(o.residue);
      AuxOptions opts;
      opts.c1 = k.hecke.c1;
      AuxFunction f = build_auxiliary(o.N, opts);
      PrimeScan s = scan_primes(q, f, o.pmax, residue);
      json unc = json::array();
      for (const auto& [p, rad] : s.uncertain) unc.push_back({{"p", p}, {"radius", rad.hi_string(6)}});
      result = {{"N", o.N}, {"M", f.M}, {"pmax", o.pmax}, {"uncertain", unc}};
      result["prime"] = s.prime ? json(*s.prime) : json(nullptr);
      if (s.value) result["abs_value"] = to_json(s.value->abs());
      if (residue) result["residue"] = {{"a", residue->first}, {"delta", residue->second}};
      code = s.prime ? kExitPass : kExitUndetermined;
    } else if (*height) {
      command = "height";
      AlgebraicNumber a = AlgebraicNumber::from_index(ZPoly::from_string(o.minpoly), static_cast<std::size_t>(o.root_index));
      HeightMeasures hm = height_measures(a, prec);
      BoundReport lv = liouville_check(a);
      result = {{"degree", a.degree()},
                {"minimal", a.minimal()},
                {"root", to_json(a.root())},
                {"mahler", to_json(hm.mahler)},
                {"h", to_json(hm.weil_h)},
                {"m", to_json(hm.log_mahler)},
                {"liouville", report_json(lv)}};
      code = status_exit(lv);
      if (!a.minimal() && code == kExitPass) code = kExitUndetermined;
    } else if (*modp) {
      command = "modpoly";
      ModularPolynomial phi;
      if (!o.in_file.empty()) {
        std::ifstream in(o.in_file);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + o.in_file);
        phi = read_modpoly(in, o.p);
      } else {
        phi = compute_phi_p(o.p);
      }
      result = {{"p", o.p},
                {"degree_x", phi.degree_x()},
                {"degree_y", phi.degree_y()},
                {"symmetric", phi.symmetric()},
                {"monic", phi.monic_in_x()},
                {"terms", phi.coeffs.terms().size()}};
      if (o.p == 2) result["matches_reference"] = phi.coeffs == phi2_reference().coeffs;
      bool ok = phi.symmetric() && phi.monic_in_x() && phi.degree_x() == static_cast<unsigned>(o.p + 1);
      if (o.compute) {
        if (!o.out_file.empty()) {
          std::ofstream f(o.out_file);
          if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + o.out_file);
          write_modpoly(f, phi);
          result["out"] = fs::path(o.out_file).filename().string();
        }
        code = ok ? kExitPass : kExitViolation;
      } else if (o.verify) {
        const long K = o.K > 0 ? o.K : cfg.trunc.identity;
        IdentityReport r = verify_phi_identity(phi, K);
        result["identity"] = {{"holds", r.holds}, {"checked_to", r.checked_to}};
        if (r.first_nonzero) result["identity"]["first_nonzero"] = *r.first_nonzero;
        code = ok && r.holds ? kExitPass : kExitViolation;
      } else {
        PhiHeightReport r = certify_phi_height(phi);
        result["height"] = {{"H", r.height.get_str()},
                            {"L", r.length.get_str()},
                            {"cohen_constant", to_json(r.cohen_constant)},
                            {"report", report_json(r.report)}};
        code = status_exit(r.report);
        if (!ok) code = kExitViolation;
      }
      if (!o.j0.empty()) {
        std::optional<CmData> cm;
        if (!o.cm.empty()) {
          std::stringstream ss(o.cm);
          std::string t;
          std::vector<long> v;
          while (std::getline(ss, t, ',')) v.push_back(std::stol(t));
          if (v.size() != 3) throw Error(ErrorKind::Parse, "--cm expects a,b,c");
          cm = CmData{v[0], v[1], v[2]};
        }
        SpecializationReport s = specialization_degree(phi, AlgebraicNumber::rational(parse_rational(o.j0)), cm);
        json roots = json::array();
        for (const auto& r : s.rational_roots) roots.push_back(r.get_str());
        result["specialization"] = {{"j0", parse_rational(o.j0).get_str()},
                                    {"rational_roots", roots},
                                    {"residual_degrees", s.residual_degrees},
                                    {"min_degree_lower", s.min_degree_lower},
                                    {"report", report_json(s.report)}};
        if (s.relevant_degree_lower) result["specialization"]["relevant_degree_lower"] = *s.relevant_degree_lower;
        const int sc = status_exit(s.report);
        code = std::max(code, sc);
      }
    } else if (*primes) {
      command = "primes certify";
      const std::uint64_t limit = o.limit ? o.limit : cfg.sieve_limit;
      std::optional<Progression> prog;
      if (!o.progression.empty()) prog = parse_pair(o.progression);
      PrimeBoundsReport r = certify_prime_bounds(limit, prog);
      result = tcert::to_json(r);
      bool undetermined = false;
      for (const auto& f : r.findings) undetermined = undetermined || f.undetermined > 0;
      code = r.claim_violated() ? kExitViolation : undetermined ? kExitUndetermined : kExitPass;
    } else if (*chain) {
      if (*ccut) {
        command = "chain cutoff";
        CutoffResult c = algebraic_cutoff(o.deg_q, o.N, o.floor);
        result = {{"deg_q", o.deg_q}, {"N", o.N}, {"floor", o.floor}, {"prime", c.prime},
                  {"growth_ratio", c.growth_ratio}};
      } else {
        command = "chain run";
        const mpq_class qv = parse_rational(o.q);
        ProofInstance inst;
        inst.q_abs = Real::from_mpq(abs(qv), prec);
        inst.q = Ball::from_mpq(qv, 0, prec);
        inst.N = o.N;
        AuxOptions opts;
        opts.c1 = k.hecke.c1;
        inst.aux = std::make_shared<AuxFunction>(build_auxiliary(o.N, opts));
        if (o.P > 0) inst.P = o.P;
        if (o.h_q.empty() != o.h_j.empty()) throw Error(ErrorKind::InvalidArgument, "--h-q and --h-j go together");
        if (!o.h_q.empty()) {
          inst.arith = ArithmeticData{o.deg_q, Real::from_mpq(parse_rational(o.h_q), prec), o.deg_j,
                                      Real::from_mpq(parse_rational(o.h_j), prec)};
        }
        ChainRun run = run_chain(inst, ChainInputs{k.hecke.c1, k.c2, k.c14});
        result = tcert::to_json(run);
        result["mode"] = inst.arith ? "hypothetical" : "analytic";
        result["N"] = inst.N;
        result["M"] = inst.aux->M;
        code = status_exit(run.lower.report);
        if (run.chain) code = std::max(code, status_exit(run.chain->report));
      }
    }

    json report = {{"schema_version", kSchemaVersion},
                   {"command", command},
                   {"provenance", provenance(cfg, k)},
                   {"result", result},
                   {"status", exit_label(code)},
                   {"exit_code", code}};
    const std::string text = report.dump(2) + "\n";
    const std::string path = !o.report_path.empty() ? o.report_path : cfg.output_path;
    if (path.empty()) {
      out << text;
    } else {
      std::ofstream f(path);
      if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write report " + path);
      f << text;
    }
    return code;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return error_exit(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndetermined;
  }
}

}  // namespace tcert::cli
