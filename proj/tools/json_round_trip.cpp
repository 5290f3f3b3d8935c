// Reads CLI JSON output and checks that decoding and re-encoding by schema
// reproduces it. Exit 0 on success.

#include <fstream>
#include <iostream>

#include "prpoint/json_io.hpp"

using namespace prpoint;

namespace {

Json recode(const Json& j, const CurveData* E) {
  const std::string s = j.at("schema").get<std::string>();
  if (s == "prpoint/recovery-report/v1") return report_to_json(report_from_json(*E, j));
  if (s == "prpoint/verify/v1") {
    Json out = j;
    out["report"] = recode(j.at("report"), E);
    out["verdict"] = verdict_to_json(verdict_from_json(j.at("verdict")));
    return out;
  }
  if (s == "prpoint/padic-l-series/v1") return series_to_json(series_from_json(j));
  if (s == "prpoint/gz-constant/v1") return gz_to_json(gz_from_json(j));
  if (s == "prpoint/frobenius-report/v1") {
    Json out = j;
    out["frobenius"] = frobenius_to_json(frobenius_from_json(j.at("frobenius")));
    if (!j.at("eigen").is_null()) out["eigen"] = eigen_to_json(eigen_from_json(j.at("eigen")));
    return out;
  }
  if (s == "prpoint/curve-info/v1") {
    Json out = j;
    out["curve"] = curve_to_json(parse_curve_spec(j.at("curve").dump()).curve);
    if (!j.at("gz").is_null()) out["gz"] = gz_to_json(gz_from_json(j.at("gz")));
    return out;
  }
  throw std::invalid_argument("unknown schema " + s);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: json_round_trip FILE [CURVE]\n";
    return 64;
  }
  try {
    std::ifstream in(argv[1]);
    Json j = Json::parse(in);
    std::optional<CurveData> E;
    if (argc > 2) E = parse_curve_spec(argv[2]).curve;
    Json back = recode(j, E ? &*E : nullptr);
    if (back != j) {
      std::cerr << "mismatch\n" << back.dump(2) << "\n";
      return 1;
    }
    std::cout << j.at("schema").get<std::string>() << " round trip ok\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
