#ifndef SEGAL_COBORDISM_JSON_HPP
#define SEGAL_COBORDISM_JSON_HPP

// Wire format (schema "segal.octype/1"):
//   {"schema": "segal.octype/1", "labels": 1,
//    "in":  {"C": 1, "O": 0, "s": [], "t": []},
//    "out": {"C": 1, "O": 0, "s": [], "t": []},
//    "components": [{"genus": 0, "boundary_circles": 2,
//                    "closed_in": [0], "closed_out": [0],
//                    "cycles": [{"entries": [["in", 0], ["out", 1]], "labels": [0, 0]}],
//                    "free_circles": []}]}
// "schema", "labels" and "boundary_circles" are optional on input; a missing
// boundary count is filled in from the assigned data.

#include <string>

#include <json.hpp>

#include "segal/cobordism/types.hpp"
#include "segal/error.hpp"

namespace segal::cobordism {

inline constexpr const char* kTypeSchema = "segal.octype/1";

inline nlohmann::json signature_to_json(const ObjectSignature& s) {
  return {{"C", s.closed_count}, {"O", s.open_count}, {"s", s.source_labels}, {"t", s.target_labels}};
}

inline nlohmann::json to_json(const OCType& t) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : t.components) {
    nlohmann::json cycles = nlohmann::json::array();
    for (const auto& cyc : c.cycles) {
      nlohmann::json entries = nlohmann::json::array();
      for (const auto& e : cyc.entries)
        entries.push_back({e.dir == Direction::In ? "in" : "out", e.id});
      cycles.push_back({{"entries", entries}, {"labels", cyc.free_arc_labels}});
    }
    comps.push_back({{"genus", c.genus},
                     {"boundary_circles", c.boundary_circles},
                     {"closed_in", c.closed_in},
                     {"closed_out", c.closed_out},
                     {"cycles", cycles},
                     {"free_circles", c.free_circles}});
  }
  return {{"schema", kTypeSchema},
          {"labels", t.label_count},
          {"in", signature_to_json(t.in)},
          {"out", signature_to_json(t.out)},
          {"components", comps}};
}

namespace detail {

inline ObjectSignature signature_from_json(const nlohmann::json& j) {
  ObjectSignature s;
  s.closed_count = j.value("C", 0);
  s.open_count = j.value("O", 0);
  s.source_labels = j.value("s", std::vector<Label>{});
  s.target_labels = j.value("t", std::vector<Label>{});
  if (s.open_count > 0 && !j.contains("s") && !j.contains("t")) {
    s.source_labels.assign(static_cast<std::size_t>(s.open_count), 0);
    s.target_labels.assign(static_cast<std::size_t>(s.open_count), 0);
  }
  return s;
}

}  // namespace detail

/// Structural decoding only; semantic checks are left to validate_type so a
/// malformed-but-parseable type can still be reported on.
inline OCType from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "type must be a JSON object");
    if (j.contains("schema") && j.at("schema") != kTypeSchema)
      throw Error(ErrorKind::ParseError, "unsupported schema " + j.at("schema").dump());
    OCType t;
    t.label_count = j.value("labels", 1);
    t.in = detail::signature_from_json(j.at("in"));
    t.out = detail::signature_from_json(j.at("out"));
    for (const auto& jc : j.at("components")) {
      ComponentData c;
      c.genus = jc.value("genus", 0);
      c.closed_in = jc.value("closed_in", std::vector<int>{});
      c.closed_out = jc.value("closed_out", std::vector<int>{});
      c.free_circles = jc.value("free_circles", std::vector<Label>{});
      for (const auto& jy : jc.value("cycles", nlohmann::json::array())) {
        BoundaryCycle cyc;
        for (const auto& je : jy.at("entries")) {
          const std::string dir = je.at(0).get<std::string>();
          if (dir != "in" && dir != "out")
            throw Error(ErrorKind::ParseError, "cycle entry direction must be \"in\" or \"out\"");
          cyc.entries.push_back({dir == "in" ? Direction::In : Direction::Out, je.at(1).get<int>()});
        }
        cyc.free_arc_labels = jy.at("labels").get<std::vector<Label>>();
        c.cycles.push_back(std::move(cyc));
      }
      c.boundary_circles = jc.contains("boundary_circles") ? jc.at("boundary_circles").get<int>()
                                                            : c.assigned_circles();
      t.components.push_back(std::move(c));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline OCType parse_type(const std::string& text) {
  try {
    return from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace segal::cobordism

#endif  // SEGAL_COBORDISM_JSON_HPP
