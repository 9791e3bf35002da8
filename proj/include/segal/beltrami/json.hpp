#ifndef SEGAL_BELTRAMI_JSON_HPP
#define SEGAL_BELTRAMI_JSON_HPP

// Field file format (schema "segal.field/1"):
//   {"schema": "segal.field/1", "x0": 0, "x1": 1, "y0": 0, "y1": 1,
//    "nx": 2, "ny": 1, "values": [[re, im], [re, im]]}
// values are row-major (x fastest), one per cell centre.

#include <sstream>
#include <string>

#include <json.hpp>

#include "segal/beltrami/field.hpp"

namespace segal::beltrami {

inline constexpr const char* kFieldSchema = "segal.field/1";

inline nlohmann::json to_json(const DilatationField& f) {
  nlohmann::json values = nlohmann::json::array();
  for (const cplx& v : f.values()) values.push_back({v.real(), v.imag()});
  const Rect& d = f.domain();
  return {{"schema", kFieldSchema}, {"x0", d.x0}, {"x1", d.x1}, {"y0", d.y0}, {"y1", d.y1},
          {"nx", f.nx()},           {"ny", f.ny()}, {"values", values}};
}

inline DilatationField field_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("schema") && j.at("schema") != kFieldSchema)
      throw Error(ErrorKind::ParseError, "unsupported schema " + j.at("schema").dump());
    Rect d{j.at("x0").get<double>(), j.at("x1").get<double>(), j.at("y0").get<double>(),
           j.at("y1").get<double>()};
    std::vector<cplx> values;
    for (const auto& v : j.at("values")) values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    return {d, j.at("nx").get<int>(), j.at("ny").get<int>(), std::move(values)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline DilatationField parse_field(const std::string& text) {
  try {
    return field_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

/// One line per cell: i,j,x,y,re,im.
inline std::string to_csv(const DilatationField& f) {
  std::ostringstream os;
  os.precision(17);
  os << "i,j,x,y,re,im\n";
  for (int j = 0; j < f.ny(); ++j)
    for (int i = 0; i < f.nx(); ++i) {
      const cplx v = f.at(i, j);
      os << i << ',' << j << ',' << f.x_center(i) << ',' << f.y_center(j) << ',' << v.real() << ','
         << v.imag() << '\n';
    }
  return os.str();
}

}  // namespace segal::beltrami

#endif  // SEGAL_BELTRAMI_JSON_HPP
