#include "prpoint/recover.hpp"

#include <cmath>
#include <optional>

#include "prpoint/errors.hpp"

namespace prpoint {

namespace {

PadicElement one_minus_inverse_squared_inverse(const PadicElement& root, long N) {
  PadicElement one = PadicElement::exact(root.prime(), 1, root.ramification());
  PadicElement f = (one - root.inverse()).with_precision(N);
  return (f * f).inverse();
}

// A in Q_p(pi), before the rationality check.
PadicElement raw_argument(const PadicElement& delta, const PadicElement& l_alpha, const PadicElement& l_beta,
                          const PadicElement& alpha) {
  long N = std::max(l_alpha.precision2(), l_beta.precision2()) / 2 + 4;
  if (l_alpha.is_exact() && l_beta.is_exact()) N = delta.is_exact() ? 60 : delta.precision2() / 2 + 4;
  PadicElement beta = alpha.galois_conjugate();
  PadicElement x = one_minus_inverse_squared_inverse(alpha, N) * l_alpha;
  PadicElement y = one_minus_inverse_squared_inverse(beta, N) * l_beta;
  return delta * (x - y);
}

Rat capped_valuation(const PadicElement& x) { return x.is_zero() ? x.precision() : x.valuation(); }

// Small-height rational equal to the Q_p value x to its precision.
std::optional<Rat> reconstruct(const PadicElement& x, long guard, long max_height, long* digits = nullptr) {
  if (x.is_zero()) return std::nullopt;
  const unsigned long p = x.prime();
  const long v = x.valuation2() / 2;
  const long k = (x.precision2() - x.valuation2()) / 2;
  if (digits) *digits = k;
  if (k - guard < 1) return std::nullopt;
  Rat pv = v >= 0 ? Rat(ipow(Integer(p), static_cast<unsigned long>(v))) : make_rat(1, ipow(Integer(p), static_cast<unsigned long>(-v)));
  PadicElement unit = x * (1 / pv);
  Integer modulus = ipow(Integer(p), static_cast<unsigned long>(k));
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(ipow(Integer(p), static_cast<unsigned long>(k - guard)) / 2).get_mpz_t());
  try {
    Rat r = rational_reconstruct(unit.residue(k), modulus, bound) * pv;
    if (abs(r.get_num()) >= max_height || r.get_den() >= max_height) return std::nullopt;
    return r;
  } catch (const NoReconstruction&) {
    return std::nullopt;
  }
}

std::string digits_of(const PadicElement& x) { return x.to_string(); }

}  // namespace

PadicElement sqrt_argument(const PadicElement& delta, const PadicElement& l_alpha, const PadicElement& l_beta,
                           const PadicElement& alpha) {
  PadicElement A = raw_argument(delta, l_alpha, l_beta, alpha);
  PadicElement odd = A - A.even_part();
  if (!odd.is_zero())
    throw NotRational("square-root argument " + A.to_string() + " has a nonzero pi-part");
  return A.even_part().as_unramified();
}

void recover_lambda(RecoveryReport& r, const CurveData& E, const RecoveryOptions& opts) {
  const unsigned long p = r.p;
  r.guard = opts.guard;
  r.A_precision = r.A.precision();
  if (r.A.is_zero()) {
    r.diagnostic = "A is indistinguishable from 0 at precision " + to_string(r.A_precision);
    if (opts.throw_on_failure) throw NotASquare(r.diagnostic);
    return;
  }
  const long N = r.A.precision2() / 2 + 4;
  std::optional<Rat> q;
  PadicElement lambda;
  long digits = 0;
  // The sign of A depends on the eigenline labeling, so both are tried.
  for (int sign : {1, -1}) {
    std::pair<PadicElement, PadicElement> roots;
    try {
      roots = (r.A * Rat(sign)).sqrt();
    } catch (const OddValuation&) {
      continue;
    } catch (const NonResidue&) {
      continue;
    }
    if (!r.A_square) r.log_gen = padic_log_point(E, r.gen, p, N);
    PadicElement l = roots.first / r.log_gen;
    long d = 0;
    auto candidate = reconstruct(l, opts.guard, opts.max_height, &d);
    if (!r.A_square || candidate) {
      r.ell_plus = roots.first;
      r.ell_minus = roots.second;
      r.square_sign = sign;
      lambda = l;
      digits = d;
      q = candidate;
    }
    r.A_square = true;
    if (q) break;
  }
  if (!r.A_square) {
    r.diagnostic = "neither A nor -A is a square in Q_p: " + digits_of(r.A);
    if (opts.throw_on_failure) throw NotASquare(r.diagnostic);
    return;
  }
  r.lambda_precision = digits;
  if (!q) {
    r.diagnostic = "lambda = " + digits_of(lambda) + " is not a rational of height < " +
                   std::to_string(opts.max_height) + " with " + std::to_string(digits) + " digits and guard " +
                   std::to_string(opts.guard);
    if (opts.throw_on_failure) throw ReconstructionFailed(r.diagnostic);
    return;
  }
  r.lambda = *q;
  r.lambda_reconstructed = true;
  PadicElement diff = r.ell_plus * Rat(r.lambda.get_den()) - r.log_gen * Rat(r.lambda.get_num());
  r.check_valuation = capped_valuation(diff);
  r.exact_multiple_check = diff.is_zero();
  PadicElement scaled_log = r.log_gen * r.lambda;
  r.observed_ratio = r.A / (scaled_log * scaled_log);
}

RecoveryReport recover_point(const PlusSymbol& phi, const CurvePoint& gen, unsigned long p, const RecoveryOptions& opts) {
  const CurveData& E = phi.curve();
  if (p < 5 || !is_prime(p)) throw OutOfScope("recovery needs a prime p >= 5");
  const long a_p = ap(E, p);
  if (a_p != 0)
    throw OutOfScope("recovery is supersingular-only (a_p = 0); a_" + std::to_string(p) + " = " + std::to_string(a_p));
  if (opts.depth < 1) throw std::invalid_argument("depth must be at least 1");
  RecoveryReport r;
  r.curve = E.label();
  r.p = p;
  r.depth = opts.depth;
  r.kedlaya_precision = opts.kedlaya_precision > 0 ? opts.kedlaya_precision : opts.depth + 6;
  r.guard = opts.guard;
  r.gen = gen;

  MazurTateOptions mt;
  mt.threads = opts.threads;
  mt.full_table_limit = 0;
  std::vector<MazurTateElement> thetas;
  thetas.push_back(mazur_tate(phi, p, opts.depth - 1, mt));
  thetas.push_back(mazur_tate(phi, p, opts.depth, mt));
  auto [alpha, beta] = supersingular_roots(p);
  PadicLSeries la = stabilize(thetas, alpha, a_p, opts.degree);
  PadicLSeries lb = stabilize(thetas, beta, a_p, opts.degree);
  VanishingOrder oa = order_of_vanishing(la), ob = order_of_vanishing(lb);
  r.order_alpha = oa.order;
  r.order_beta = ob.order;
  if (oa.order == 0 || ob.order == 0)
    throw OutOfScope("the p-adic L-series do not vanish at T = 0; recovery needs analytic rank one");
  r.l_alpha = derivative_at_triv(la);
  r.l_beta = derivative_at_triv(lb);

  GZConstant gz = gross_zagier_constant(E, gen, opts.gz);
  r.c_e = gz.value;
  r.theorem_scalar = -(1 + make_rat(1, static_cast<long>(p))) * gz.value;
  KedlayaOptions ko;
  ko.threads = opts.threads;
  FrobeniusData F = kedlaya_frobenius(E, p, r.kedlaya_precision, ko);
  EigenData eig = eigen_data(F, gz);
  r.bracket = eig.bracket;
  r.delta = eig.delta;

  PadicElement raw = raw_argument(r.delta, r.l_alpha, r.l_beta, alpha);
  r.pi_part_valuation = capped_valuation(raw - raw.even_part());
  try {
    r.A = sqrt_argument(r.delta, r.l_alpha, r.l_beta, alpha);
    r.A_rational = true;
  } catch (const NotRational& e) {
    r.diagnostic = e.what();
    if (opts.throw_on_failure) throw;
    return r;
  }
  recover_lambda(r, E, opts);
  return r;
}

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Pass: return "PASS";
    case VerdictKind::PassExact: return "PASS-EXACT";
    case VerdictKind::Fail: return "FAIL";
    case VerdictKind::Skipped: return "SKIPPED";
  }
  return "?";
}

Verdict verify_supersingular_identity(const RecoveryReport& report, const GZConstant& c_e, long max_height) {
  Verdict v;
  v.theorem_scalar = -(1 + make_rat(1, static_cast<long>(report.p))) * c_e.value;
  if (!report.lambda_reconstructed) {
    v.kind = VerdictKind::Skipped;
    v.detail = report.A_square ? "lambda was not reconstructed" : "A is not a square";
    return v;
  }
  auto k = reconstruct(report.observed_ratio, report.guard, max_height);
  if (!k) {
    v.kind = VerdictKind::Fail;
    v.detail = "ratio " + report.observed_ratio.to_string() + " is not a small rational";
    return v;
  }
  v.constant = *k;
  v.normalization = v.constant / v.theorem_scalar;
  v.kind = v.constant == 1 ? VerdictKind::PassExact : VerdictKind::Pass;
  v.detail = "A = " + to_string(v.constant) + " (lambda log_E(gen))^2";
  return v;
}

}  // namespace prpoint
