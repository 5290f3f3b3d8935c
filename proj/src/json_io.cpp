#include "prpoint/json_io.hpp"

#include <fstream>
#include <sstream>

#include "prpoint/errors.hpp"

namespace prpoint {

namespace {

long ceil_half(long x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }

Json digit_array(const Integer& z, unsigned long p, long count) {
  Json out = Json::array();
  std::vector<long> d = base_p_digits(z, p);
  for (long i = 0; i < count; ++i) out.push_back(i < static_cast<long>(d.size()) ? d[static_cast<std::size_t>(i)] : 0);
  return out;
}

Integer from_digits(const Json& digits, unsigned long p) {
  Integer z = 0;
  for (std::size_t i = digits.size(); i-- > 0;) z = z * Integer(p) + Integer(digits[i].get<long>());
  return z;
}

Json vector_to_json(const PadicVector2& v) { return Json::array({padic_to_json(v[0]), padic_to_json(v[1])}); }

PadicVector2 vector_from_json(const Json& j) { return {padic_from_json(j.at(0)), padic_from_json(j.at(1))}; }

Json real_to_json(Real x) { return static_cast<double>(x); }

void check_schema(const Json& j, const char* name) {
  if (!j.contains("schema") || j.at("schema").get<std::string>() != name)
    throw std::invalid_argument(std::string("expected a ") + name + " object");
}

}  // namespace

Json rat_to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  return parse_rat(j.get<std::string>());
}

Json padic_to_json(const PadicElement& x) {
  const unsigned long p = x.prime();
  Json j;
  j["p"] = p;
  j["e"] = x.ramification();
  j["valuation"] = x.is_zero() ? Json(nullptr) : rat_to_json(x.valuation());
  j["shift"] = x.shift();
  if (x.is_exact()) {
    j["a"] = x.a().get_str();
    if (x.ramification() == 2) j["b"] = x.b().get_str();
    j["precision"] = "exact";
    return j;
  }
  const long P = x.precision2();
  j["digits"] = digit_array(x.a(), p, std::max(0L, ceil_half(P) - x.shift()));
  if (x.ramification() == 2) j["pi_digits"] = digit_array(x.b(), p, std::max(0L, ceil_half(P - 1) - x.shift()));
  j["precision"] = rat_to_json(x.precision());
  return j;
}

PadicElement padic_from_json(const Json& j) {
  const unsigned long p = j.at("p").get<unsigned long>();
  const int e = j.at("e").get<int>();
  const long shift = j.at("shift").get<long>();
  if (j.at("precision") == "exact") {
    Integer a(j.at("a").get<std::string>());
    Integer b = e == 2 ? Integer(j.at("b").get<std::string>()) : Integer(0);
    return PadicElement::from_parts(p, e, shift, a, b, kExactPrecision);
  }
  Rat prec = rat_from_json(j.at("precision"));
  Rat twice = prec * 2;
  long prec2 = twice.get_num().get_si();
  Integer a = from_digits(j.at("digits"), p);
  Integer b = e == 2 ? from_digits(j.at("pi_digits"), p) : Integer(0);
  return PadicElement::from_parts(p, e, shift, a, b, prec2);
}

Json point_to_json(const CurvePoint& P) {
  if (P.infinity) return nullptr;
  return Json::array({rat_to_json(P.x), rat_to_json(P.y)});
}

CurvePoint point_from_json(const CurveData& E, const Json& j) {
  if (j.is_null()) return CurvePoint::at_infinity();
  return make_point(E, rat_from_json(j.at(0)), rat_from_json(j.at(1)));
}

Json curve_to_json(const CurveData& E) {
  Json a = Json::array();
  for (const auto& c : E.coefficients()) a.push_back(c.get_si());
  Json j;
  j["a"] = a;
  j["N"] = E.conductor.get_si();
  j["discriminant"] = E.disc.get_str();
  return j;
}

Json gz_to_json(const GZConstant& c) {
  Json j;
  j["schema"] = "prpoint/gz-constant/v1";
  j["value"] = rat_to_json(c.value);
  j["float_residual"] = real_to_json(c.float_residual);
  j["ratio"] = real_to_json(c.ratio);
  j["l_derivative"] = real_to_json(c.l_derivative);
  j["omega"] = real_to_json(c.omega);
  j["height"] = real_to_json(c.height);
  j["suspect_multiple"] = c.suspect_multiple;
  return j;
}

GZConstant gz_from_json(const Json& j) {
  check_schema(j, "prpoint/gz-constant/v1");
  GZConstant c;
  c.value = rat_from_json(j.at("value"));
  c.float_residual = j.at("float_residual").get<double>();
  c.ratio = j.at("ratio").get<double>();
  c.l_derivative = j.at("l_derivative").get<double>();
  c.omega = j.at("omega").get<double>();
  c.height = j.at("height").get<double>();
  c.suspect_multiple = j.at("suspect_multiple").get<bool>();
  return c;
}

Json series_to_json(const PadicLSeries& s) {
  Json j;
  j["schema"] = "prpoint/padic-l-series/v1";
  j["p"] = s.prime();
  j["depth"] = s.depth();
  j["root"] = padic_to_json(s.root());
  Json c = Json::array();
  for (const auto& x : s.coefficients()) c.push_back(padic_to_json(x));
  j["coefficients"] = c;
  VanishingOrder v = order_of_vanishing(s);
  j["order_of_vanishing"] = v.order;
  j["order_is_lower_bound"] = v.lower_bound;
  return j;
}

PadicLSeries series_from_json(const Json& j) {
  check_schema(j, "prpoint/padic-l-series/v1");
  std::vector<PadicElement> c;
  for (const auto& x : j.at("coefficients")) c.push_back(padic_from_json(x));
  return PadicLSeries(j.at("p").get<unsigned long>(), padic_from_json(j.at("root")), j.at("depth").get<long>(),
                      std::move(c));
}

Json theta_to_json(const MazurTateElement& t) {
  Json j;
  j["schema"] = "prpoint/mazur-tate/v1";
  j["p"] = t.prime();
  j["depth"] = t.depth();
  j["modulus"] = t.modulus();
  j["denominator"] = t.denominator().get_str();
  if (t.has_full_table()) {
    Json c = Json::array();
    for (int64_t a = 0; a < t.modulus(); ++a)
      if (t.depth() < 0 || a % static_cast<int64_t>(t.prime()) != 0) c.push_back(Json::array({a, rat_to_json(t.coefficient(a))}));
    j["coefficients"] = c;
  } else {
    j["coefficients"] = nullptr;
  }
  Json proj = Json::array();
  for (auto v : t.tame_projection()) proj.push_back(rat_to_json(make_rat(v, t.denominator())));
  j["tame_projection"] = proj;
  return j;
}

Json frobenius_to_json(const FrobeniusData& F) {
  Json j;
  j["schema"] = "prpoint/frobenius/v1";
  j["p"] = F.p;
  j["precision"] = F.precision;
  j["A"] = F.model.A.get_str();
  j["B"] = F.model.B.get_str();
  j["u"] = rat_to_json(F.model.u);
  j["matrix"] = Json::array({vector_to_json(F.matrix[0]), vector_to_json(F.matrix[1])});
  j["series_terms"] = F.series_terms;
  j["working_digits"] = F.working_digits;
  j["precision_loss"] = F.precision_loss;
  j["trace"] = padic_to_json(F.trace());
  j["det"] = padic_to_json(F.det());
  return j;
}

FrobeniusData frobenius_from_json(const Json& j) {
  check_schema(j, "prpoint/frobenius/v1");
  FrobeniusData F;
  F.p = j.at("p").get<unsigned long>();
  F.precision = j.at("precision").get<long>();
  F.model = {Integer(j.at("A").get<std::string>()), Integer(j.at("B").get<std::string>()), rat_from_json(j.at("u"))};
  F.matrix = {vector_from_json(j.at("matrix").at(0)), vector_from_json(j.at("matrix").at(1))};
  F.series_terms = j.at("series_terms").get<long>();
  F.working_digits = j.at("working_digits").get<long>();
  F.precision_loss = j.at("precision_loss").get<long>();
  return F;
}

Json eigen_to_json(const EigenData& d) {
  Json j;
  j["schema"] = "prpoint/eigen-data/v1";
  j["alpha"] = padic_to_json(d.alpha);
  j["beta"] = padic_to_json(d.beta);
  j["omega_cris"] = vector_to_json(d.omega_cris);
  j["omega_alpha"] = vector_to_json(d.omega_alpha);
  j["omega_beta"] = vector_to_json(d.omega_beta);
  j["omega_star"] = vector_to_json(d.omega_star);
  j["bracket"] = padic_to_json(d.bracket);
  j["delta"] = padic_to_json(d.delta);
  j["c_e"] = rat_to_json(d.c_e);
  return j;
}

EigenData eigen_from_json(const Json& j) {
  check_schema(j, "prpoint/eigen-data/v1");
  EigenData d;
  d.alpha = padic_from_json(j.at("alpha"));
  d.beta = padic_from_json(j.at("beta"));
  d.omega_cris = vector_from_json(j.at("omega_cris"));
  d.omega_alpha = vector_from_json(j.at("omega_alpha"));
  d.omega_beta = vector_from_json(j.at("omega_beta"));
  d.omega_star = vector_from_json(j.at("omega_star"));
  d.bracket = padic_from_json(j.at("bracket"));
  d.delta = padic_from_json(j.at("delta"));
  d.c_e = rat_from_json(j.at("c_e"));
  return d;
}

Json report_to_json(const RecoveryReport& r) {
  auto opt_padic = [](const PadicElement& x) { return x.prime() == 0 ? Json(nullptr) : padic_to_json(x); };
  Json j;
  j["schema"] = "prpoint/recovery-report/v1";
  j["inputs"] = {{"curve", r.curve},
                 {"p", r.p},
                 {"depth", r.depth},
                 {"kedlaya_precision", r.kedlaya_precision},
                 {"guard", r.guard},
                 {"generator", point_to_json(r.gen)}};
  j["l_alpha"] = opt_padic(r.l_alpha);
  j["l_beta"] = opt_padic(r.l_beta);
  j["order_alpha"] = r.order_alpha;
  j["order_beta"] = r.order_beta;
  j["bracket"] = opt_padic(r.bracket);
  j["delta"] = opt_padic(r.delta);
  j["c_e"] = rat_to_json(r.c_e);
  j["A"] = opt_padic(r.A);
  j["A_precision"] = rat_to_json(r.A_precision);
  j["pi_part_valuation"] = rat_to_json(r.pi_part_valuation);
  j["square_sign"] = r.square_sign;
  j["ell_plus"] = opt_padic(r.ell_plus);
  j["ell_minus"] = opt_padic(r.ell_minus);
  j["log_gen"] = opt_padic(r.log_gen);
  j["lambda"] = rat_to_json(r.lambda);
  j["lambda_minus"] = rat_to_json(-r.lambda);
  j["lambda_precision"] = r.lambda_precision;
  j["check_valuation"] = rat_to_json(r.check_valuation);
  j["flags"] = {{"A_rational", r.A_rational},
                {"A_square", r.A_square},
                {"lambda_reconstructed", r.lambda_reconstructed},
                {"exact_multiple_check", r.exact_multiple_check}};
  j["observed_ratio"] = opt_padic(r.observed_ratio);
  j["theorem_scalar"] = rat_to_json(r.theorem_scalar);
  j["diagnostic"] = r.diagnostic;
  return j;
}

RecoveryReport report_from_json(const CurveData& E, const Json& j) {
  check_schema(j, "prpoint/recovery-report/v1");
  auto opt_padic = [](const Json& x) { return x.is_null() ? PadicElement() : padic_from_json(x); };
  RecoveryReport r;
  const Json& in = j.at("inputs");
  r.curve = in.at("curve").get<std::string>();
  r.p = in.at("p").get<unsigned long>();
  r.depth = in.at("depth").get<long>();
  r.kedlaya_precision = in.at("kedlaya_precision").get<long>();
  r.guard = in.at("guard").get<long>();
  r.gen = point_from_json(E, in.at("generator"));
  r.l_alpha = opt_padic(j.at("l_alpha"));
  r.l_beta = opt_padic(j.at("l_beta"));
  r.order_alpha = j.at("order_alpha").get<long>();
  r.order_beta = j.at("order_beta").get<long>();
  r.bracket = opt_padic(j.at("bracket"));
  r.delta = opt_padic(j.at("delta"));
  r.c_e = rat_from_json(j.at("c_e"));
  r.A = opt_padic(j.at("A"));
  r.A_precision = rat_from_json(j.at("A_precision"));
  r.pi_part_valuation = rat_from_json(j.at("pi_part_valuation"));
  r.square_sign = j.at("square_sign").get<int>();
  r.ell_plus = opt_padic(j.at("ell_plus"));
  r.ell_minus = opt_padic(j.at("ell_minus"));
  r.log_gen = opt_padic(j.at("log_gen"));
  r.lambda = rat_from_json(j.at("lambda"));
  r.lambda_precision = j.at("lambda_precision").get<long>();
  r.check_valuation = rat_from_json(j.at("check_valuation"));
  const Json& f = j.at("flags");
  r.A_rational = f.at("A_rational").get<bool>();
  r.A_square = f.at("A_square").get<bool>();
  r.lambda_reconstructed = f.at("lambda_reconstructed").get<bool>();
  r.exact_multiple_check = f.at("exact_multiple_check").get<bool>();
  r.observed_ratio = opt_padic(j.at("observed_ratio"));
  r.theorem_scalar = rat_from_json(j.at("theorem_scalar"));
  r.diagnostic = j.at("diagnostic").get<std::string>();
  return r;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["schema"] = "prpoint/verdict/v1";
  j["verdict"] = to_string(v.kind);
  j["constant"] = rat_to_json(v.constant);
  j["theorem_scalar"] = rat_to_json(v.theorem_scalar);
  j["normalization"] = rat_to_json(v.normalization);
  j["detail"] = v.detail;
  return j;
}

Verdict verdict_from_json(const Json& j) {
  check_schema(j, "prpoint/verdict/v1");
  Verdict v;
  const std::string k = j.at("verdict").get<std::string>();
  for (VerdictKind kind : {VerdictKind::Pass, VerdictKind::PassExact, VerdictKind::Fail, VerdictKind::Skipped})
    if (to_string(kind) == k) v.kind = kind;
  v.constant = rat_from_json(j.at("constant"));
  v.theorem_scalar = rat_from_json(j.at("theorem_scalar"));
  v.normalization = rat_from_json(j.at("normalization"));
  v.detail = j.at("detail").get<std::string>();
  return v;
}

CurveSpec parse_curve_spec(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InvalidCurve("empty curve description");
  try {
    if (text[first] == '{') {
      Json j = Json::parse(text);
      const Json& a = j.at("a");
      if (!a.is_array() || a.size() != 5) throw InvalidCurve("\"a\" must hold five coefficients");
      std::array<Integer, 5> c;
      for (std::size_t i = 0; i < 5; ++i)
        c[i] = a[i].is_string() ? Integer(a[i].get<std::string>()) : Integer(a[i].get<long>());
      Integer N = j.at("N").is_string() ? Integer(j.at("N").get<std::string>()) : Integer(j.at("N").get<long>());
      CurveSpec s{CurveData::make(c, N), std::nullopt};
      if (j.contains("generator") && !j.at("generator").is_null()) s.generator = point_from_json(s.curve, j.at("generator"));
      return s;
    }
    auto semi = text.find(';');
    if (semi == std::string::npos) throw InvalidCurve("expected \"a1,a2,a3,a4,a6;N\"");
    std::array<Integer, 5> c;
    std::stringstream ss(text.substr(0, semi));
    std::string item;
    std::size_t i = 0;
    while (std::getline(ss, item, ',')) {
      if (i >= 5) throw InvalidCurve("more than five coefficients");
      c[i++] = parse_rat(item).get_num();
      if (parse_rat(item).get_den() != 1) throw InvalidCurve("coefficients must be integers");
    }
    if (i != 5) throw InvalidCurve("expected five coefficients");
    Rat N = parse_rat(text.substr(semi + 1));
    if (N.get_den() != 1 || N <= 0) throw InvalidCurve("conductor must be a positive integer");
    return {CurveData::make(c, N.get_num()), std::nullopt};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidCurve(std::string("malformed curve JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InvalidCurve(e.what());
  }
}

CurveSpec load_curve_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidCurve("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_curve_spec(buf.str());
}

CurvePoint parse_point(const CurveData& E, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw PointNotOnCurve("expected \"x,y\"");
  return make_point(E, parse_rat(text.substr(0, comma)), parse_rat(text.substr(comma + 1)));
}

}  // namespace prpoint
