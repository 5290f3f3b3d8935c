// Acceptance suite: one PASS/FAIL line per criterion, preceded by the
// per-fixture measurements. Always exits 0 once every criterion has run;
// the verdict is in the output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prpoint/crystalline.hpp"
#include "prpoint/errors.hpp"
#include "prpoint/parallel.hpp"
#include "prpoint/recover.hpp"

using namespace prpoint;

namespace {

CurveData curve(std::array<long, 5> a, long N) {
  return CurveData::make({Integer(a[0]), Integer(a[1]), Integer(a[2]), Integer(a[3]), Integer(a[4])}, Integer(N));
}

struct Fixture {
  std::string name;
  CurveData E;
  CurvePoint gen;
  unsigned long p;
  long depth;
};

struct Run {
  const Fixture* fx;
  std::optional<RecoveryReport> report;
  std::optional<GZConstant> gz;
  std::string error;
  double seconds = 0;
};

std::map<long, PlusSymbol>& symbols() {
  static std::map<long, PlusSymbol> s;
  return s;
}

const PlusSymbol& symbol(const CurveData& E) {
  long N = E.conductor.get_si();
  auto it = symbols().find(N);
  if (it == symbols().end()) it = symbols().emplace(N, PlusSymbol::build(ManinSpace::build(N), E)).first;
  return it->second;
}

void detail(const std::string& s) { std::cout << "  " << s << "\n"; }

struct Tally {
  bool ok = true;
  std::vector<std::string> notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::vector<std::pair<int, std::string>> summary;

void verdict(int n, const std::string& title, const Tally& t) {
  std::ostringstream s;
  s << (t.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title;
  if (!t.ok) {
    s << " (";
    for (std::size_t i = 0; i < t.notes.size(); ++i) s << (i ? "; " : "") << t.notes[i];
    s << ")";
  }
  summary.emplace_back(n, s.str());
  std::cout << s.str() << "\n";
}

void run_criterion(int n, const std::string& title, const std::function<void(Tally&)>& body) {
  std::cout << "criterion " << n << ": " << title << "\n";
  Tally t;
  try {
    body(t);
  } catch (const std::exception& e) {
    t.require(false, std::string("exception: ") + e.what());
  }
  verdict(n, title, t);
}

Run recover(const Fixture& f, unsigned threads) {
  Run r{&f, std::nullopt, std::nullopt, "", 0};
  auto t0 = std::chrono::steady_clock::now();
  try {
    RecoveryOptions o;
    o.depth = f.depth;
    o.threads = threads;
    o.throw_on_failure = false;
    r.report = recover_point(symbol(f.E), f.gen, f.p, o);
    r.gz = gross_zagier_constant(f.E, f.gen);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string rat(const Rat& q) { return to_string(q); }

}  // namespace

int main() {
  const unsigned threads = default_thread_count();
  const CurveData e11 = curve({0, -1, 1, -10, -20}, 11);
  const CurveData e37 = curve({0, 0, 1, -1, 0}, 37);
  const CurveData e43 = curve({0, 1, 1, 0, 0}, 43);
  const CurveData e53 = curve({1, -1, 1, 0, 0}, 53);
  const CurveData e58 = curve({1, -1, 0, -1, 1}, 58);
  const CurveData e65 = curve({1, 0, 0, -1, 0}, 65);
  const CurveData e389 = curve({0, 1, 1, -2, 0}, 389);

  auto smallest_ss = [](const CurveData& E) {
    auto v = supersingular_primes(E, 5, 60);
    return v.empty() ? 0ul : v.front();
  };

  // Criterion 1 fixtures at depth 5, plus depth-6 fixtures used by 4, 6 and 10.
  std::vector<Fixture> primary = {{"37a", e37, make_point(e37, 0, 0), smallest_ss(e37), 5},
                                  {"58a", e58, make_point(e58, 0, -1), smallest_ss(e58), 5}};
  std::vector<Fixture> extra = {{"53a", e53, make_point(e53, 0, 0), smallest_ss(e53), 6},
                                {"43a", e43, make_point(e43, 0, 0), smallest_ss(e43), 6}};

  std::vector<Run> runs;
  std::cout << "end-to-end runs\n";
  for (const auto* list : {&primary, &extra})
    for (const auto& f : *list) {
      runs.push_back(recover(f, threads));
      const Run& r = runs.back();
      std::ostringstream s;
      s << f.name << " p=" << f.p << " n=" << f.depth << " (" << std::fixed;
      s.precision(1);
      s << r.seconds << " s): ";
      if (!r.report) {
        s << "error " << r.error;
      } else {
        const RecoveryReport& rep = *r.report;
        s << "orders " << rep.order_alpha << "/" << rep.order_beta << ", A " << rep.A.to_string();
        if (rep.lambda_reconstructed)
          s << ", lambda " << rat(rep.lambda) << ", check valuation " << rat(rep.check_valuation);
        else
          s << ", " << rep.diagnostic;
      }
      detail(s.str());
    }
  auto primary_runs = [&] { return std::vector<const Run*>{&runs[0], &runs[1]}; };

  run_criterion(1, "end-to-end recovery at depth 5 with check valuation >= n - 1", [&](Tally& t) {
    for (const Run* r : primary_runs()) {
      const Fixture& f = *r->fx;
      if (f.p == 0) {
        t.require(false, f.name + ": no supersingular prime below 60");
        continue;
      }
      if (!r->report) {
        t.require(false, f.name + ": " + r->error);
        continue;
      }
      const RecoveryReport& rep = *r->report;
      t.require(rep.lambda_reconstructed, f.name + ": lambda not reconstructed");
      if (!rep.lambda_reconstructed) continue;
      t.require(abs(rep.lambda.get_num()) < 1000 && rep.lambda.get_den() < 1000, f.name + ": height");
      t.require(rep.check_valuation >= f.depth - 1,
                f.name + ": check valuation " + rat(rep.check_valuation) + " < " + std::to_string(f.depth - 1));
    }
  });

  run_criterion(2, "(1 - 1/alpha)(1 - 1/beta) = 1 + 1/p exactly", [&](Tally& t) {
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
      auto [alpha, beta] = supersingular_roots(p);
      PadicElement one = PadicElement::exact(p, 1, 2);
      PadicElement lhs = (one - alpha.inverse()) * (one - beta.inverse());
      PadicElement rhs = one + PadicElement::exact(p, static_cast<long>(p), 2).inverse();
      detail("p=" + std::to_string(p) + ": " + lhs.to_string());
      t.require(lhs.is_exact() && (lhs - rhs).is_zero(),
                "p=" + std::to_string(p));
    }
  });

  run_criterion(3, "interpolation at T = 0 for 11a at p = 19", [&](Tally& t) {
    const unsigned long p = 19;
    t.require(ap(e11, p) == 0, "a_19(11a) != 0");
    const PlusSymbol& phi = symbol(e11);
    Rat phi0 = phi.eval(Rat(0));
    auto [alpha, beta] = supersingular_roots(p);
    MazurTateOptions o;
    o.threads = threads;
    for (long n : {3L, 4L, 5L}) {
      std::vector<MazurTateElement> th = {mazur_tate(phi, p, n - 1, o), mazur_tate(phi, p, n, o)};
      PadicLSeries la = stabilize(th, alpha, 0), lb = stabilize(th, beta, 0);
      for (const auto& [L, root] : {std::pair{&la, alpha}, std::pair{&lb, beta}}) {
        PadicElement v = L->value_at_zero();
        PadicElement one = PadicElement::exact(p, 1, 2);
        PadicElement f = one - root.inverse();
        PadicElement expected = f * f * PadicElement::from_rat(p, phi0, v.precision2() / 2 + 2, 2);
        bool ok = (v - expected).is_zero() && v.precision2() >= guaranteed_precision2(p, n, 0, 0, true);
        detail("n=" + std::to_string(n) + " root " + root.to_string() + ": " + v.to_string());
        t.require(ok, "n=" + std::to_string(n) + " root " + root.to_string());
      }
      t.require(la.value_at_zero().galois_conjugate().equals(lb.value_at_zero()),
                "n=" + std::to_string(n) + ": values not conjugate");
    }
  });

  run_criterion(4, "rank-1 fixtures: both series vanish at T = 0, one to order 1", [&](Tally& t) {
    for (const Run& r : runs) {
      if (!r.report) {
        t.require(false, r.fx->name + ": " + r.error);
        continue;
      }
      long a = r.report->order_alpha, b = r.report->order_beta;
      detail(r.fx->name + ": orders " + std::to_string(a) + ", " + std::to_string(b));
      t.require(a >= 1 && b >= 1 && std::min(a, b) == 1, r.fx->name);
    }
  });

  run_criterion(5, "Kedlaya: trace = a_p, det = p, [Fx, Fy] = p[x, y] at m = 6", [&](Tally& t) {
    int cases = 0;
    std::vector<std::pair<std::string, const CurveData*>> curves = {
        {"37a", &e37}, {"43a", &e43}, {"53a", &e53}, {"58a", &e58}, {"389a", &e389}};
    for (const auto& [name, E] : curves)
      for (unsigned long p : {5ul, 7ul, 11ul, 13ul}) {
        if (E->conductor % p == 0) continue;
        KedlayaOptions ko;
        ko.threads = threads;
        FrobeniusData F = kedlaya_frobenius(*E, p, 6, ko);
        long a_p = ap(*E, p);
        bool tr = (F.trace() - PadicElement::exact(p, a_p)).is_zero();
        bool det = (F.det() - PadicElement::exact(p, static_cast<long>(p))).is_zero();
        PadicVector2 x{PadicElement::exact(p, 1), PadicElement::exact(p, 0)};
        PadicVector2 y{PadicElement::exact(p, 0), PadicElement::exact(p, 1)};
        PadicElement lhs = pairing(F.apply(x), F.apply(y));
        PadicElement rhs = pairing(x, y) * Rat(static_cast<long>(p));
        bool pair = (lhs - rhs).is_zero();
        ++cases;
        t.require(tr && det && pair && F.precision >= 6,
                  name + " p=" + std::to_string(p) + (tr ? "" : " trace") + (det ? "" : " det") + (pair ? "" : " pairing"));
      }
    detail(std::to_string(cases) + " curve/prime pairs over 5 curves");
    t.require(cases >= 16, "too few cases");
  });

  run_criterion(6, "v(pi-part of A) >= precision - 1 on every run", [&](Tally& t) {
    for (const Run& r : runs) {
      if (!r.report) {
        t.require(false, r.fx->name + ": " + r.error);
        continue;
      }
      const RecoveryReport& rep = *r.report;
      detail(r.fx->name + ": pi-part valuation " + rat(rep.pi_part_valuation) + ", precision " + rat(rep.A_precision));
      t.require(rep.A_rational && rep.pi_part_valuation >= rep.A_precision - 1, r.fx->name);
    }
  });

  run_criterion(7, "norm relation proj(theta_n) = -theta_(n-2) exactly for n <= 3", [&](Tally& t) {
    struct Case {
      std::string name;
      const CurveData* E;
      unsigned long p;
    };
    for (const Case& c : {Case{"11a", &e11, 19}, Case{"37a", &e37, 17}, Case{"43a", &e43, 7}, Case{"53a", &e53, 5},
                          Case{"58a", &e58, 23}}) {
      t.require(ap(*c.E, c.p) == 0, c.name + ": not supersingular");
      MazurTateOptions o;
      o.threads = threads;
      for (long n = 1; n <= 3; ++n) {
        auto defect = norm_relation_defect(symbol(*c.E), c.p, n, o);
        bool zero = std::all_of(defect.begin(), defect.end(), [](const Rat& r) { return r == 0; });
        t.require(zero, c.name + " p=" + std::to_string(c.p) + " n=" + std::to_string(n));
      }
      detail(c.name + " p=" + std::to_string(c.p) + ": n = 1, 2, 3 checked");
    }
  });

  run_criterion(8, "Gross-Zagier constant: small rational, sign and torsion invariant", [&](Tally& t) {
    struct Case {
      std::string name;
      const CurveData* E;
      CurvePoint gen;
      std::optional<CurvePoint> torsion;
    };
    std::vector<Case> cases = {{"37a", &e37, make_point(e37, 0, 0), std::nullopt},
                               {"43a", &e43, make_point(e43, 0, 0), std::nullopt},
                               {"53a", &e53, make_point(e53, 0, 0), std::nullopt},
                               {"58a", &e58, make_point(e58, 0, -1), std::nullopt},
                               {"65a", &e65, make_point(e65, 1, 0), make_point(e65, 0, 0)}};
    for (const Case& c : cases) {
      GZConstant g = gross_zagier_constant(*c.E, c.gen);
      GZConstant neg = gross_zagier_constant(*c.E, negate(*c.E, c.gen));
      std::ostringstream s;
      s << c.name << ": C = " << rat(g.value) << ", residual " << static_cast<double>(g.float_residual);
      bool ok = g.value.get_den() <= 100 && g.float_residual < 1e-6L && neg.value == g.value;
      if (c.torsion) {
        GZConstant tt = gross_zagier_constant(*c.E, add(*c.E, c.gen, *c.torsion));
        s << ", gen + torsion C = " << rat(tt.value);
        ok = ok && tt.value == g.value;
      }
      detail(s.str());
      t.require(ok, c.name);
    }
  });

  run_criterion(9, "formal group: exp(log t) = t + O(t^21), log_E additive and multiplier independent", [&](Tally& t) {
    for (const CurveData* E : {&e11, &e37, &e43, &e53, &e58}) {
      FormalLog L = formal_log(*E, 20);
      RatSeries id = series_compose(formal_exp(L), L.coeffs, 20);
      for (long k = 0; k <= 20; ++k) t.require(id[static_cast<std::size_t>(k)] == (k == 1 ? 1 : 0), E->label() + " exp(log)");
    }
    struct Case {
      const CurveData* E;
      CurvePoint P;
      unsigned long p;
    };
    for (const Case& c : {Case{&e37, make_point(e37, 0, 0), 17}, Case{&e58, make_point(e58, 0, -1), 23},
                          Case{&e53, make_point(e53, 0, 0), 5}, Case{&e43, make_point(e43, 0, 0), 7}}) {
      PadicElement l1 = padic_log_point(*c.E, c.P, c.p, 10);
      for (long n = 2; n <= 5; ++n)
        t.require(padic_log_point(*c.E, scalar_mul(*c.E, n, c.P), c.p, 10).equals(l1 * Rat(n)),
                  c.E->label() + " n=" + std::to_string(n));
      t.require(padic_log_point(*c.E, c.P, c.p, 10, 2).equals(l1) && padic_log_point(*c.E, c.P, c.p, 10, 3).equals(l1),
                c.E->label() + " multiplier");
      detail(c.E->label() + " p=" + std::to_string(c.p) + ": log_E(P) = " + l1.to_string());
    }
  });

  run_criterion(10, "identity constant is the same rational on every passing fixture", [&](Tally& t) {
    std::optional<Rat> common;
    int passing = 0;
    for (const Run& r : runs) {
      if (!r.report || !r.gz) continue;
      Verdict v = verify_supersingular_identity(*r.report, *r.gz);
      std::string line = r.fx->name + ": " + to_string(v.kind) + " " + v.detail;
      if (v.kind == VerdictKind::Pass || v.kind == VerdictKind::PassExact)
        line += ", normalization " + rat(v.normalization);
      detail(line);
      if (v.kind != VerdictKind::Pass && v.kind != VerdictKind::PassExact) continue;
      ++passing;
      if (!common) common = v.constant;
      t.require(*common == v.constant, r.fx->name + " constant " + rat(v.constant));
    }
    t.require(passing >= 2, "fewer than two passing fixtures");
  });

  std::cout << "\nsummary\n";
  for (const auto& [n, line] : summary) std::cout << line << "\n";
  return 0;
}
