#ifndef SEGAL_MODULE_GEOMETRIC_QC_HPP
#define SEGAL_MODULE_GEOMETRIC_QC_HPP

// Geometric K-quasiconformality check for the horizontal stretch
// (x, y) -> (K x, y): every quadrilateral Q must satisfy
//   M(Q) / K <= M(Q') <= K M(Q).
// Half-plane quadrilaterals map to half-plane quadrilaterals with vertices
// K z_i (a real Mobius image, so the ratio is 1); axis-parallel rectangles
// (0, a, a + ib, ib) map to (0, Ka, Ka + ib, ib).

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "segal/beltrami/dilatation.hpp"
#include "segal/error.hpp"
#include "segal/module/quadrilateral.hpp"
#include "segal/module/schwarz_christoffel.hpp"

namespace segal::module {

struct Rectangle {
  double a = 1.0;
  double b = 1.0;
};

using CorpusEntry = std::variant<Quadrilateral, Rectangle>;

inline constexpr double kQcSlack = 1e-6;

struct QcRow {
  std::string kind;
  double module = 0.0;
  double image_module = 0.0;
  double ratio = 0.0;
};

struct QcReport {
  double K = 1.0;
  double analytic_K = 1.0;  // dilatation_K of the stretch's Beltrami coefficient
  std::vector<QcRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
  bool ok = true;
};

inline QcReport check_geometric_qc(double K, const std::vector<CorpusEntry>& corpus) {
  if (!(K >= 1.0)) throw Error(ErrorKind::DomainError, "K must be at least 1");
  QcReport rep;
  rep.K = K;
  rep.analytic_K = beltrami::dilatation_K(beltrami::mu_of_linear(beltrami::linear_from_real(K, 0.0, 0.0, 1.0)));
  rep.max_ratio = 0.0;
  rep.min_ratio = kInf;
  for (const CorpusEntry& e : corpus) {
    QcRow row;
    if (const auto* q = std::get_if<Quadrilateral>(&e)) {
      Quadrilateral image;
      for (int i = 0; i < 4; ++i) image.z[i] = K * q->z[i];
      row.kind = "quad";
      row.module = module_of_quad(*q);
      row.image_module = module_of_quad(image);
    } else {
      const auto& r = std::get<Rectangle>(e);
      row.kind = "rectangle";
      row.module = module_rect(r.a, r.b);
      row.image_module = module_rect(K * r.a, r.b);
    }
    row.ratio = row.image_module / row.module;
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    rep.min_ratio = std::min(rep.min_ratio, row.ratio);
    if (row.ratio > K + kQcSlack || row.ratio < 1.0 / K - kQcSlack) rep.ok = false;
    rep.rows.push_back(row);
  }
  return rep;
}

// Corpus JSON: a list whose entries are either a vertex 4-tuple (infinity
// written "inf", "-inf" or null) or {"rectangle": [a, b]}.

inline double vertex_from_json(const nlohmann::json& v) {
  if (v.is_null()) return kInf;
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw Error(ErrorKind::ParseError, "bad vertex " + v.dump());
}

inline nlohmann::json vertex_to_json(double z) {
  if (std::isinf(z)) return z > 0 ? "inf" : "-inf";
  return z;
}

inline Quadrilateral quad_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::ParseError, "a quadrilateral needs 4 vertices");
  Quadrilateral q;
  for (int i = 0; i < 4; ++i) q.z[i] = vertex_from_json(j[i]);
  return q;
}

inline std::vector<CorpusEntry> corpus_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "corpus must be a JSON list");
  std::vector<CorpusEntry> out;
  for (const auto& e : j) {
    if (e.is_object()) {
      const auto it = e.find("rectangle");
      if (it == e.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
        throw Error(ErrorKind::ParseError, "rectangle entry needs [a, b]");
      out.push_back(Rectangle{(*it)[0].get<double>(), (*it)[1].get<double>()});
    } else {
      out.push_back(quad_from_json(e));
    }
  }
  return out;
}

inline std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return corpus_from_json(j);
}

inline nlohmann::json to_json(const QcReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"kind", row.kind}, {"M", row.module}, {"M_image", row.image_module}, {"ratio", row.ratio}});
  return {{"K", r.K},           {"analytic_K", r.analytic_K}, {"max_ratio", r.max_ratio},
          {"min_ratio", r.min_ratio}, {"ok", r.ok},           {"rows", rows}};
}

}  // namespace segal::module

#endif  // SEGAL_MODULE_GEOMETRIC_QC_HPP
