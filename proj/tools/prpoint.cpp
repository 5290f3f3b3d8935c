// prpoint: command-line front end.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "prpoint/errors.hpp"
#include "prpoint/json_io.hpp"
#include "prpoint/parallel.hpp"

using namespace prpoint;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitDomain = 1;
constexpr int kExitNotASquare = 2;
constexpr int kExitReconstruction = 3;

struct Config {
  std::string curve;
  std::string curve_file;
  unsigned long p = 0;
  long depth = 5;
  long prec = 0;
  long terms = 0;
  std::string gen;
  double tol = 1e-6;
  bool json = false;
  unsigned threads = 1;
  unsigned long seed = 0;
  std::string root = "alpha";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned env_threads() {
  if (const char* s = std::getenv("PRPOINT_THREADS")) {
    try {
      long v = std::stol(s);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

CurveSpec load_curve(const Config& c) {
  if (c.curve.empty() == c.curve_file.empty()) throw UsageError("exactly one of --curve and --curve-file is required");
  return c.curve.empty() ? load_curve_file(c.curve_file) : parse_curve_spec(c.curve);
}

CurvePoint require_gen(const Config& c, const CurveSpec& s) {
  if (!c.gen.empty()) return parse_point(s.curve, c.gen);
  if (s.generator) return *s.generator;
  throw UsageError("--gen is required (or a \"generator\" in the curve JSON)");
}

unsigned long require_prime(const Config& c, const CurveData& E) {
  if (c.p < 5 || !is_prime(c.p)) throw UsageError("--p must be a prime >= 5");
  if (E.conductor % c.p == 0) throw BadReductionPrime("p = " + std::to_string(c.p) + " divides the conductor");
  return c.p;
}

long kedlaya_precision(const Config& c) {
  long m = c.prec > 0 ? c.prec : c.depth + 6;
  if (m < c.depth + 4) throw UsageError("--prec must be at least depth + 4");
  return m;
}

GZOptions gz_options(const Config& c) {
  GZOptions o;
  o.terms = c.terms;
  o.tolerance = static_cast<Real>(c.tol);
  return o;
}

PlusSymbol plus_symbol(const CurveData& E) {
  return PlusSymbol::build(ManinSpace::build(E.conductor.get_si()), E);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string fmt(Real x, int digits = 12) {
  std::ostringstream s;
  s << std::setprecision(digits) << static_cast<double>(x);
  return s.str();
}

int cmd_curve_info(const Config& c) {
  CurveSpec s = load_curve(c);
  const CurveData& E = s.curve;
  std::optional<CurvePoint> gen;
  if (!c.gen.empty() || s.generator) gen = require_gen(c, s);
  std::vector<unsigned long> ss = supersingular_primes(E, 5, 100);
  if (c.json) {
    Json j;
    j["schema"] = "prpoint/curve-info/v1";
    j["curve"] = curve_to_json(E);
    j["supersingular_primes_below_100"] = ss;
    j["generator"] = gen ? point_to_json(*gen) : Json(nullptr);
    j["gz"] = gen ? gz_to_json(gross_zagier_constant(E, *gen, gz_options(c))) : Json(nullptr);
    emit(j);
    return 0;
  }
  std::cout << "curve          " << E.label() << "\n"
            << "conductor      " << to_string(E.conductor) << "\n"
            << "discriminant   " << to_string(E.disc) << "\n"
            << "supersingular  ";
  for (auto q : ss) std::cout << q << " ";
  std::cout << "(5 <= p < 100)\n";
  if (!gen) return 0;
  GZConstant gz = gross_zagier_constant(E, *gen, gz_options(c));
  std::cout << "generator      (" << to_string(gen->x) << ", " << to_string(gen->y) << ")\n"
            << "L'(E,1)        " << fmt(gz.l_derivative) << "\n"
            << "Omega+         " << fmt(gz.omega) << "\n"
            << "height         " << fmt(gz.height) << "\n"
            << "ratio          " << fmt(gz.ratio) << "\n"
            << "C(E)           " << to_string(gz.value) << "  (residual " << fmt(gz.float_residual, 3) << ")\n";
  if (gz.suspect_multiple) std::cout << "warning        the generator looks like a proper multiple\n";
  return 0;
}

int cmd_ap(const Config& c) {
  CurveSpec s = load_curve(c);
  if (c.p < 2 || !is_prime(c.p)) throw UsageError("--p must be prime");
  long a = ap(s.curve, c.p);
  ReductionType t = reduction_type(s.curve, c.p);
  if (c.json) {
    emit({{"schema", "prpoint/ap/v1"}, {"p", c.p}, {"ap", a}, {"reduction", to_string(t)}});
  } else {
    std::cout << a << "\n";
  }
  return 0;
}

int cmd_modsym(const Config& c) {
  CurveSpec s = load_curve(c);
  const CurveData& E = s.curve;
  auto space = ManinSpace::build(E.conductor.get_si());
  PlusSymbol phi = PlusSymbol::build(space, E);
  std::vector<long> primes;
  for (long l = 2; primes.size() < 3; ++l)
    if (is_prime(static_cast<unsigned long>(l)) && E.conductor % l != 0) primes.push_back(l);
  auto matrix_json = [](const QMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rat_to_json(m(r, k)));
      rows.push_back(row);
    }
    return rows;
  };
  Json basis = Json::array();
  for (auto i : space->basis()) basis.push_back({space->representatives()[i].first, space->representatives()[i].second});
  Json hecke = Json::object();
  for (long l : primes) hecke["T" + std::to_string(l)] = matrix_json(space->hecke_matrix(l));
  Json values = Json::array();
  for (const auto& v : phi.symbol_values()) values.push_back(rat_to_json(v));
  const Normalization& nm = phi.normalization();
  if (c.json) {
    Json j;
    j["schema"] = "prpoint/modsym/v1";
    j["level"] = space->level();
    j["num_symbols"] = space->num_symbols();
    j["dimension"] = space->dimension();
    j["basis"] = basis;
    j["hecke"] = hecke;
    j["phi_manin_symbols"] = values;
    j["phi_at_zero"] = rat_to_json(phi.eval(Rat(0)));
    j["normalization"] = {{"scalar", rat_to_json(nm.scalar)},
                          {"test_cusp", rat_to_json(nm.test_cusp)},
                          {"numeric_ratio", static_cast<double>(nm.numeric_ratio)},
                          {"residual", static_cast<double>(nm.residual)}};
    emit(j);
    return 0;
  }
  std::cout << "level " << space->level() << ", " << space->num_symbols() << " Manin symbols, dimension "
            << space->dimension() << "\n";
  std::cout << "basis " << basis.dump() << "\n";
  for (auto& [name, m] : hecke.items()) std::cout << name << " " << m.dump() << "\n";
  std::cout << "phi on Manin symbols " << values.dump() << "\n";
  std::cout << "phi(0) = " << to_string(phi.eval(Rat(0))) << "  scalar " << to_string(nm.scalar) << "  residual "
            << fmt(nm.residual, 3) << "\n";
  return 0;
}

int cmd_theta(const Config& c) {
  CurveSpec s = load_curve(c);
  unsigned long p = require_prime(c, s.curve);
  if (c.depth < 0) throw UsageError("--depth must be non-negative");
  MazurTateOptions o;
  o.threads = c.threads;
  MazurTateElement t = mazur_tate(plus_symbol(s.curve), p, c.depth, o);
  Json j = theta_to_json(t);
  if (c.json) {
    emit(j);
    return 0;
  }
  std::cout << "theta_" << c.depth << " modulo " << t.modulus() << ", denominator " << to_string(t.denominator())
            << "\n";
  if (t.has_full_table()) {
    for (const auto& e : j["coefficients"]) std::cout << "  [" << e[0] << "] " << e[1].get<std::string>() << "\n";
  } else {
    std::cout << "  modulus above the table limit; tame projection only\n";
    for (std::size_t i = 0; i < j["tame_projection"].size(); ++i)
      std::cout << "  gamma^" << i << " " << j["tame_projection"][i].get<std::string>() << "\n";
  }
  return 0;
}

int cmd_plseries(const Config& c) {
  CurveSpec s = load_curve(c);
  unsigned long p = require_prime(c, s.curve);
  if (c.depth < 1) throw UsageError("--depth must be at least 1");
  long a_p = ap(s.curve, p);
  PadicElement root;
  if (a_p == 0) {
    auto roots = supersingular_roots(p);
    root = c.root == "alpha" ? roots.first : roots.second;
  } else if (c.root == "alpha") {
    root = unit_root(a_p, p, c.depth + 4);
  } else {
    throw UnsupportedStabilization("at the ordinary prime " + std::to_string(p) +
                                   " the beta root has slope 1; the critical-slope series is not computed because "
                                   "beta^-(n+1) removes all precision");
  }
  MazurTateOptions o;
  o.threads = c.threads;
  PadicLSeries L = padic_l_series(plus_symbol(s.curve), p, c.depth, root, 4, o);
  if (c.json) {
    emit(series_to_json(L));
    return 0;
  }
  VanishingOrder v = order_of_vanishing(L);
  std::cout << "L_p(E, " << c.root << ", T) at p = " << p << ", depth " << c.depth << ", root "
            << L.root().to_string() << "\n";
  for (long k = 0; k <= L.degree(); ++k)
    std::cout << "  T^" << k << "  " << L.coefficients()[static_cast<std::size_t>(k)].to_string() << "\n";
  std::cout << "order of vanishing " << (v.lower_bound ? ">= " : "") << v.order << "\n";
  return 0;
}

int cmd_frobenius(const Config& c) {
  CurveSpec s = load_curve(c);
  unsigned long p = require_prime(c, s.curve);
  long m = c.prec > 0 ? c.prec : 10;
  KedlayaOptions ko;
  ko.threads = c.threads;
  ko.series_terms = 0;
  FrobeniusData F = kedlaya_frobenius(s.curve, p, m, ko);
  long a_p = ap(s.curve, p);
  bool trace_ok = (F.trace() - PadicElement::exact(p, a_p)).is_zero();
  bool det_ok = (F.det() - PadicElement::exact(p, static_cast<long>(p))).is_zero();
  std::optional<EigenData> eig;
  std::optional<GZConstant> gz;
  if (a_p == 0) {
    if (!c.gen.empty() || s.generator) {
      gz = gross_zagier_constant(s.curve, require_gen(c, s), gz_options(c));
      eig = eigen_data(F, *gz);
    } else {
      eig = eigen_data(F, Rat(1));
    }
  }
  if (c.json) {
    Json j;
    j["schema"] = "prpoint/frobenius-report/v1";
    j["frobenius"] = frobenius_to_json(F);
    j["ap"] = a_p;
    j["trace_matches_ap"] = trace_ok;
    j["det_matches_p"] = det_ok;
    j["eigen"] = eig ? eigen_to_json(*eig) : Json(nullptr);
    emit(j);
    return 0;
  }
  std::cout << "Frobenius on H^1_dR, p = " << p << ", precision O(p^" << F.precision << "), " << F.series_terms
            << " series terms\n";
  for (int r = 0; r < 2; ++r)
    std::cout << "  [ " << F.matrix[r][0].to_string() << "   " << F.matrix[r][1].to_string() << " ]\n";
  std::cout << "trace " << F.trace().to_string() << (trace_ok ? "  = a_p" : "  != a_p") << " (" << a_p << ")\n";
  std::cout << "det   " << F.det().to_string() << (det_ok ? "  = p" : "  != p") << "\n";
  if (eig) {
    std::cout << "alpha        " << eig->alpha.to_string() << "\n"
              << "omega_alpha  (" << eig->omega_alpha[0].to_string() << ", " << eig->omega_alpha[1].to_string()
              << ")\n"
              << "omega_beta   (" << eig->omega_beta[0].to_string() << ", " << eig->omega_beta[1].to_string() << ")\n"
              << "[w_b, w_a]   " << eig->bracket.to_string() << "\n"
              << "delta        " << eig->delta.to_string() << "  (C(E) = " << to_string(eig->c_e)
              << (gz ? ")\n" : ", no generator given)\n");
  } else {
    std::cout << "ordinary prime: no supersingular eigen-data\n";
  }
  return 0;
}

RecoveryOptions recovery_options(const Config& c) {
  RecoveryOptions o;
  if (c.depth < 1) throw UsageError("--depth must be at least 1");
  o.depth = c.depth;
  o.kedlaya_precision = kedlaya_precision(c);
  o.threads = c.threads;
  o.gz = gz_options(c);
  return o;
}

void print_report(const RecoveryReport& r) {
  std::cout << "curve        " << r.curve << "  p = " << r.p << "  depth " << r.depth << "  Kedlaya O(p^"
            << r.kedlaya_precision << ")\n"
            << "generator    (" << to_string(r.gen.x) << ", " << to_string(r.gen.y) << ")\n"
            << "L'_alpha     " << r.l_alpha.to_string() << "\n"
            << "L'_beta      " << r.l_beta.to_string() << "\n"
            << "delta        " << r.delta.to_string() << "  C(E) = " << to_string(r.c_e) << "\n"
            << "A            " << r.A.to_string() << "  (pi-part valuation >= " << to_string(r.pi_part_valuation)
            << ")\n";
  if (r.A_square)
    std::cout << "sqrt(" << (r.square_sign < 0 ? "-A" : "A") << ")     " << r.ell_plus.to_string() << "\n"
              << "log_E(gen)   " << r.log_gen.to_string() << "\n";
  if (r.lambda_reconstructed)
    std::cout << "lambda       " << to_string(r.lambda) << "  (" << r.lambda_precision << " digits, check valuation "
              << to_string(r.check_valuation) << ")\n";
  if (!r.diagnostic.empty()) std::cout << "note         " << r.diagnostic << "\n";
}

int recovery_exit(const RecoveryReport& r) {
  if (r.lambda_reconstructed) return 0;
  if (!r.A_rational) return kExitDomain;
  return r.A_square ? kExitReconstruction : kExitNotASquare;
}

int cmd_recover(const Config& c, bool verify) {
  CurveSpec s = load_curve(c);
  unsigned long p = require_prime(c, s.curve);
  CurvePoint gen = require_gen(c, s);
  RecoveryOptions o = recovery_options(c);
  o.throw_on_failure = false;
  PlusSymbol phi = plus_symbol(s.curve);
  RecoveryReport r = recover_point(phi, gen, p, o);
  if (!verify) {
    if (c.json)
      emit(report_to_json(r));
    else
      print_report(r);
    return recovery_exit(r);
  }
  GZConstant gz = gross_zagier_constant(s.curve, gen, o.gz);
  Verdict v = verify_supersingular_identity(r, gz, o.max_height);
  Json sign_check = nullptr;
  if (c.seed != 0 && r.lambda_reconstructed) {
    std::mt19937_64 rng(c.seed);
    bool flip = rng() & 1;
    CurvePoint g2 = flip ? negate(s.curve, gen) : gen;
    RecoveryReport r2 = recover_point(phi, g2, p, o);
    Rat expected = flip ? -r.lambda : r.lambda;
    sign_check = {{"seed", c.seed}, {"negated", flip}, {"lambda", rat_to_json(r2.lambda)},
                  {"ok", r2.lambda_reconstructed && r2.lambda == expected}};
    if (!(r2.lambda_reconstructed && r2.lambda == expected)) v.kind = VerdictKind::Fail;
  }
  if (c.json) {
    Json j;
    j["schema"] = "prpoint/verify/v1";
    j["report"] = report_to_json(r);
    j["verdict"] = verdict_to_json(v);
    j["sign_check"] = sign_check;
    emit(j);
  } else {
    print_report(r);
    std::cout << "theorem      -(1 + 1/p) C(E) = " << to_string(v.theorem_scalar) << "\n";
    if (v.kind == VerdictKind::Pass || v.kind == VerdictKind::PassExact)
      std::cout << "constant     " << to_string(v.constant) << "  (normalization " << to_string(v.normalization)
                << ")\n";
    if (!sign_check.is_null())
      std::cout << "sign check   " << (sign_check["ok"].get<bool>() ? "ok" : "FAILED") << " (seed " << c.seed
                << ")\n";
    std::cout << "verdict      " << to_string(v.kind) << "  " << v.detail << "\n";
  }
  if (!r.lambda_reconstructed) return recovery_exit(r);
  return v.kind == VerdictKind::Fail ? kExitDomain : 0;
}

void add_common(CLI::App* sub, Config& c, bool needs_p) {
  sub->add_option("--curve", c.curve, "\"a1,a2,a3,a4,a6;N\" or a JSON object");
  sub->add_option("--curve-file", c.curve_file, "file holding a curve description");
  auto* po = sub->add_option("--p", c.p, "prime");
  if (needs_p) po->required();
  sub->add_option("--depth", c.depth, "Mazur-Tate depth n")->capture_default_str();
  sub->add_option("--prec", c.prec, "p-adic precision of the Frobenius matrix");
  sub->add_option("--terms", c.terms, "number of Dirichlet terms for L'(E,1) (0: automatic)");
  sub->add_option("--gen", c.gen, "generator \"x,y\"");
  sub->add_option("--tol", c.tol, "tolerance of the archimedean checks")->capture_default_str();
  sub->add_flag("--json", c.json, "JSON output");
  sub->add_option("--threads", c.threads, "worker threads (default: PRPOINT_THREADS or 1)");
  sub->add_option("--seed", c.seed, "seed for randomized checks (0: none)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic L-functions at supersingular primes and point recovery"};
  app.require_subcommand(1);
  Config c;
  c.threads = env_threads();
  auto* info = app.add_subcommand("curve-info", "invariants, L'(E,1), period, height and C(E)");
  auto* apc = app.add_subcommand("ap", "trace of Frobenius a_p");
  auto* ms = app.add_subcommand("modsym", "modular symbol basis, Hecke matrices and Phi");
  auto* th = app.add_subcommand("theta", "Mazur-Tate element theta_n");
  auto* pl = app.add_subcommand("plseries", "p-adic L-series coefficients");
  auto* fr = app.add_subcommand("frobenius", "crystalline Frobenius and eigen-data");
  auto* rc = app.add_subcommand("recover", "recover lambda with sqrt(A) = lambda log_E(gen)");
  auto* vf = app.add_subcommand("verify", "recover and test A = c (lambda log_E(gen))^2");
  add_common(info, c, false);
  add_common(apc, c, true);
  add_common(ms, c, false);
  add_common(th, c, true);
  add_common(pl, c, true);
  pl->add_option("--root", c.root, "alpha or beta")->check(CLI::IsMember({"alpha", "beta"}))->capture_default_str();
  add_common(fr, c, true);
  add_common(rc, c, true);
  add_common(vf, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (c.threads == 0) c.threads = default_thread_count();

  try {
    if (*info) return cmd_curve_info(c);
    if (*apc) return cmd_ap(c);
    if (*ms) return cmd_modsym(c);
    if (*th) return cmd_theta(c);
    if (*pl) return cmd_plseries(c);
    if (*fr) return cmd_frobenius(c);
    if (*rc) return cmd_recover(c, false);
    if (*vf) return cmd_recover(c, true);
  } catch (const UsageError& e) {
    std::cerr << "prpoint: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotASquare& e) {
    std::cerr << "prpoint: " << e.what() << "\n";
    return kExitNotASquare;
  } catch (const ReconstructionFailed& e) {
    std::cerr << "prpoint: " << e.what() << "\n";
    return kExitReconstruction;
  } catch (const Error& e) {
    std::cerr << "prpoint: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "prpoint: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
