#include "doctest.h"
#include "prpoint/errors.hpp"
#include "prpoint/json_io.hpp"

using namespace prpoint;

namespace {

CurveData curve53() { return CurveData::make({1, -1, 1, 0, 0}, 53); }

void check_same(const PadicElement& x, const PadicElement& y) {
  CHECK(x.prime() == y.prime());
  CHECK(x.ramification() == y.ramification());
  CHECK(x.precision2() == y.precision2());
  CHECK(x.to_string() == y.to_string());
}

PadicElement round_trip(const PadicElement& x) { return padic_from_json(Json::parse(padic_to_json(x).dump())); }

}  // namespace

TEST_CASE("p-adic digits") {
  PadicElement x = PadicElement::from_rat(7, make_rat(3, 49), 5);
  Json j = padic_to_json(x);
  CHECK(j["shift"] == -2);
  CHECK(j["valuation"] == "-2");
  CHECK(j["precision"] == "5");
  CHECK(j["digits"].size() == 7);
  CHECK(j["digits"][0] == 3);
  CHECK(j["digits"][1] == 0);
  check_same(round_trip(x), x);

  PadicElement y = PadicElement::from_parts(5, 2, 1, 7, 3, 9);
  Json k = padic_to_json(y);
  CHECK(k["precision"] == "9/2");
  CHECK(k["digits"].size() == 4);
  CHECK(k["pi_digits"].size() == 3);
  CHECK(k["digits"][0] == 2);
  CHECK(k["digits"][1] == 1);
  CHECK(k["pi_digits"][0] == 3);
  check_same(round_trip(y), y);

  check_same(round_trip(PadicElement::zero(11, 6, 2)), PadicElement::zero(11, 6, 2));
  CHECK(padic_to_json(PadicElement::zero(11, 6)).at("valuation").is_null());

  PadicElement ex = PadicElement::exact(13, -40, 2);
  Json e = padic_to_json(ex);
  CHECK(e["precision"] == "exact");
  CHECK(e["a"] == "-40");
  check_same(round_trip(ex), ex);
}

TEST_CASE("curve descriptions") {
  CurveSpec s = parse_curve_spec("0,0,1,-1,0;37");
  CHECK(s.curve.conductor == 37);
  CHECK(!s.generator);
  CurveSpec t = parse_curve_spec(R"({"a": [1, -1, 1, 0, 0], "N": 53, "generator": ["0", "0"]})");
  CHECK(t.curve.conductor == 53);
  REQUIRE(t.generator);
  CHECK(t.generator->x == 0);
  Json c = curve_to_json(t.curve);
  CHECK(c["a"][1] == -1);
  CHECK(parse_curve_spec(c.dump()).curve.label() == t.curve.label());

  CHECK_THROWS_AS(parse_curve_spec("0,0,1,-1;37"), InvalidCurve);
  CHECK_THROWS_AS(parse_curve_spec("0,0,1,-1,0"), InvalidCurve);
  CHECK_THROWS_AS(parse_curve_spec("{\"a\": [0, 0]}"), InvalidCurve);
  CHECK_THROWS_AS(parse_curve_spec("{oops"), InvalidCurve);
  CHECK_THROWS_AS(parse_curve_spec(""), InvalidCurve);

  CHECK(parse_point(s.curve, "0,-1").y == -1);
  CHECK_THROWS_AS(parse_point(s.curve, "1,1"), PointNotOnCurve);
  CHECK(point_from_json(s.curve, point_to_json(CurvePoint::at_infinity())).infinity);
}

TEST_CASE("report round trips") {
  CurveData E = curve53();
  PlusSymbol phi = PlusSymbol::build(ManinSpace::build(53), E);
  RecoveryOptions o;
  o.depth = 6;
  RecoveryReport r = recover_point(phi, make_point(E, 0, 0), 5, o);
  Json j = Json::parse(report_to_json(r).dump(2));
  CHECK(j["schema"] == "prpoint/recovery-report/v1");
  CHECK(j["lambda"] == "-1/2");
  RecoveryReport back = report_from_json(E, j);
  CHECK(back.lambda == r.lambda);
  CHECK(back.check_valuation == r.check_valuation);
  CHECK(back.square_sign == r.square_sign);
  CHECK(back.lambda_reconstructed);
  check_same(back.A, r.A);
  check_same(back.l_alpha, r.l_alpha);
  check_same(back.delta, r.delta);
  check_same(back.observed_ratio, r.observed_ratio);
  CHECK(report_to_json(back) == report_to_json(r));

  GZConstant gz = gross_zagier_constant(E, r.gen);
  GZConstant gz2 = gz_from_json(gz_to_json(gz));
  CHECK(gz2.value == gz.value);
  CHECK(gz2.height == doctest::Approx(static_cast<double>(gz.height)));

  Verdict v = verify_supersingular_identity(r, gz);
  Verdict v2 = verdict_from_json(verdict_to_json(v));
  CHECK(v2.kind == v.kind);
  CHECK(v2.constant == v.constant);
  CHECK(v2.normalization == v.normalization);
  CHECK_THROWS(verdict_from_json(gz_to_json(gz)));

  FrobeniusData F = kedlaya_frobenius(E, 5, 6);
  FrobeniusData F2 = frobenius_from_json(frobenius_to_json(F));
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) check_same(F2.matrix[i][k], F.matrix[i][k]);
  check_same(F2.trace(), F.trace());

  EigenData d = eigen_data(F, gz);
  EigenData d2 = eigen_from_json(eigen_to_json(d));
  check_same(d2.bracket, d.bracket);
  check_same(d2.omega_alpha[1], d.omega_alpha[1]);
  CHECK(d2.c_e == d.c_e);

  auto thetas = std::vector<MazurTateElement>{mazur_tate(phi, 5, 2), mazur_tate(phi, 5, 3)};
  PadicLSeries s = stabilize(thetas, supersingular_roots(5).first, 0, 3);
  PadicLSeries s2 = series_from_json(series_to_json(s));
  CHECK(s2.degree() == s.degree());
  for (std::size_t i = 0; i < s.coefficients().size(); ++i) check_same(s2.coefficients()[i], s.coefficients()[i]);

  Json t = theta_to_json(thetas[0]);
  CHECK(t["modulus"] == 125);
  CHECK(t["coefficients"].size() == 100);
  CHECK(t["tame_projection"].size() == 25);
}
