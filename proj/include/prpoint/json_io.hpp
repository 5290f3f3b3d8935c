#pragma once

// JSON encodings of values and reports. Layouts are documented in
// docs/json-schemas.md; every report object carries a "schema" tag.

#include <optional>
#include <string>

#include "json.hpp"
#include "prpoint/archlfun.hpp"
#include "prpoint/crystalline.hpp"
#include "prpoint/elliptic.hpp"
#include "prpoint/padic.hpp"
#include "prpoint/padiclfun.hpp"
#include "prpoint/recover.hpp"

namespace prpoint {

using Json = nlohmann::ordered_json;

// PadicElement:
//   { "p", "e", "valuation": "num/den" | null, "shift", "digits",
//     "pi_digits" (e = 2), "precision": "num/den" }
// with value p^shift (sum digits[i] p^i + pi * sum pi_digits[i] p^i).
// Exact values replace digits by decimal strings "a", "b" and have
// "precision": "exact".
Json padic_to_json(const PadicElement& x);
PadicElement padic_from_json(const Json& j);

Json rat_to_json(const Rat& q);
Rat rat_from_json(const Json& j);

Json point_to_json(const CurvePoint& P);
CurvePoint point_from_json(const CurveData& E, const Json& j);

Json curve_to_json(const CurveData& E);

Json gz_to_json(const GZConstant& c);
GZConstant gz_from_json(const Json& j);

Json series_to_json(const PadicLSeries& s);
PadicLSeries series_from_json(const Json& j);

Json theta_to_json(const MazurTateElement& t);

Json frobenius_to_json(const FrobeniusData& F);
FrobeniusData frobenius_from_json(const Json& j);

Json eigen_to_json(const EigenData& d);
EigenData eigen_from_json(const Json& j);

Json report_to_json(const RecoveryReport& r);
RecoveryReport report_from_json(const CurveData& E, const Json& j);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

struct CurveSpec {
  CurveData curve;
  std::optional<CurvePoint> generator;
};

// "a1,a2,a3,a4,a6;N" or { "a": [...], "N": N, "generator": ["x", "y"] }.
// Throws InvalidCurve.
CurveSpec parse_curve_spec(const std::string& text);
CurveSpec load_curve_file(const std::string& path);

// "x,y" with rational coordinates.
CurvePoint parse_point(const CurveData& E, const std::string& text);

}  // namespace prpoint
