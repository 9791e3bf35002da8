#ifndef SEGAL_TOOLS_APP_HPP
#define SEGAL_TOOLS_APP_HPP

// The `segal` command line. Every subcommand is a row of the dispatch table
// (commands()), naming the library operations it reaches; run() parses the
// arguments with CLI11, calls the row's handler and renders its Output as
// json, csv or text.
//
// Exit status: 0 success / all checks pass, 1 a check failed (or a numeric
// routine gave up), 2 the input was unusable.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance/suite.hpp"
#include "segal/appb/flatten.hpp"
#include "segal/appb/glue_map.hpp"
#include "segal/appb/order.hpp"
#include "segal/appb/verify.hpp"
#include "segal/beltrami/dilatation.hpp"
#include "segal/beltrami/field.hpp"
#include "segal/beltrami/json.hpp"
#include "segal/chains/chain.hpp"
#include "segal/chains/checks.hpp"
#include "segal/chains/shuffle.hpp"
#include "segal/cobordism/compose.hpp"
#include "segal/cobordism/json.hpp"
#include "segal/module/geometric_qc.hpp"
#include "segal/module/quadrilateral.hpp"
#include "segal/module/schwarz_christoffel.hpp"
#include "segal/qs/circle_diffeo.hpp"
#include "segal/qs/corner.hpp"
#include "segal/qs/quasisymmetry.hpp"
#include "segal/qs/twist.hpp"

namespace segal::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kCheckFailed = 1, kInputError = 2 };

enum class Format { Json, Csv, Text };

struct Output {
  nlohmann::json json;
  std::vector<std::string> header;             // csv / text table
  std::vector<std::vector<std::string>> rows;
  std::string text;                            // text override
  std::string csv;                             // csv override
  bool ok = true;
};

struct RunConfig {
  Format format = Format::Text;
  std::string out;
  std::uint64_t seed = 0;
};

struct Command {
  std::string group;
  std::string name;
  std::string summary;
  std::vector<std::string> operations;
};

/// The dispatch table: every subcommand and the library operations it uses.
inline const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"types", "validate", "validate OC type files", {"validate_type", "euler_characteristic", "boundary_items"}},
      {"types", "compose", "compose types left to right", {"compose_types"}},
      {"types", "union", "disjoint union of types", {"disjoint_union"}},
      {"types", "stability", "per-component stability flags", {"is_stable"}},
      {"belt", "distance", "Teichmuller distance of two fields", {"field_distance", "teichmuller_distance"}},
      {"belt", "transform", "push a field through a chart map", {"transform_mu"}},
      {"belt", "pullback", "pull a field back through a chart map", {"pullback_mu"}},
      {"belt", "sew", "sew two fields along a common edge", {"sew_sections"}},
      {"belt", "mu", "dilatation of a real linear map", {"mu_of_linear", "dilatation_K"}},
      {"belt", "acs", "almost complex structure from a frame", {"acs_from_frame", "mu_from_acs", "dilatation_K"}},
      {"qs", "bound", "sampled quasisymmetry constant", {"qs_bound"}},
      {"qs", "corner", "corner-introducing map and its dilatation", {"corner_map"}},
      {"qs", "twist", "smooth twist on an annulus", {"smooth_twist", "bump"}},
      {"module", "compute", "conformal module of a quadrilateral or rectangle",
       {"normalize_quad", "module_sc", "module_rect"}},
      {"module", "check-qc", "module distortion under a horizontal stretch", {"check_geometric_qc"}},
      {"chains", "product", "shuffle product of two generators", {"shuffle_product", "boundary"}},
      {"chains", "check", "exact chain identities up to a total degree", {"check_chain_map", "check_associativity"}},
      {"appb", "orders", "vanishing-order recursion", {"order_step", "order_sequence"}},
      {"appb", "flatten", "flattening step and order fits", {"flatten_step", "verify_orders"}},
      {"appb", "tau", "boundary reparametrisation tau_{-1}", {"tau_minus1"}},
      {"", "accept", "run the acceptance criteria", {"run_acceptance"}},
  };
  return table;
}

namespace detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::string v = tok;
    v.erase(0, v.find_first_not_of(" \t"));
    v.erase(v.find_last_not_of(" \t\r") + 1);
    if (v == "inf" || v == "+inf" || v == "infinity") {
      out.push_back(module::kInf);
      continue;
    }
    try {
      std::size_t used = 0;
      out.push_back(std::stod(v, &used));
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad number '" + v + "' in " + what);
    }
  }
  if (expected != 0 && out.size() != expected)
    throw Error(ErrorKind::ParseError, what + " needs " + std::to_string(expected) + " comma-separated numbers");
  return out;
}

inline nlohmann::json cplx_json(std::complex<double> z) { return {z.real(), z.imag()}; }

inline cobordism::OCType load_type(const std::string& path) {
  const auto t = cobordism::parse_type(read_file(path));
  const auto v = cobordism::validate_type(t);
  if (!v.ok())
    throw Error(ErrorKind::InvalidType, path + ": " + v.violations.front().code + " (" + v.violations.front().detail + ")");
  return t;
}

inline Output type_output(const cobordism::OCType& t) {
  Output o;
  o.json = cobordism::to_json(t);
  o.text = o.json.dump(2) + "\n";
  o.header = {"component", "genus", "boundary_circles", "closed_in", "closed_out", "cycles", "free_circles", "euler"};
  for (std::size_t i = 0; i < t.components.size(); ++i) {
    const auto& c = t.components[i];
    o.rows.push_back({std::to_string(i), std::to_string(c.genus), std::to_string(c.boundary_circles),
                      std::to_string(c.closed_in.size()), std::to_string(c.closed_out.size()),
                      std::to_string(c.cycles.size()), std::to_string(c.free_circles.size()),
                      std::to_string(cobordism::euler_characteristic(c))});
  }
  return o;
}

/// Chart maps for belt transform / pullback:
///   linear:p,q,r,s   (x, y) -> (p x + q y, r x + s y)
///   poly:a,b,c       z -> a z + b conj(z) + c z^2   (real a, b, c)
inline std::function<std::complex<double>(std::complex<double>)> parse_chart_map(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "linear") {
    const auto v = parse_numbers(rest, 4, "linear map");
    return [v](std::complex<double> z) {
      return std::complex<double>(v[0] * z.real() + v[1] * z.imag(), v[2] * z.real() + v[3] * z.imag());
    };
  }
  if (head == "poly") {
    const auto v = parse_numbers(rest, 3, "poly map");
    return [v](std::complex<double> z) { return v[0] * z + v[1] * std::conj(z) + v[2] * z * z; };
  }
  throw Error(ErrorKind::ParseError, "unknown chart map '" + spec + "' (linear:p,q,r,s | poly:a,b,c)");
}

inline Output field_output(const beltrami::DilatationField& f) {
  Output o;
  o.json = beltrami::to_json(f);
  o.text = o.json.dump() + "\n";
  o.csv = beltrami::to_csv(f);
  return o;
}

/// Increasing functions for qs bound: identity, exp, piecewise-linear:k
/// (slope 1 on x <= 0, k beyond).
inline std::function<double(double)> parse_real_function(const std::string& spec) {
  if (spec == "identity") return [](double x) { return x; };
  if (spec == "exp") return [](double x) { return std::exp(x); };
  if (spec.rfind("piecewise-linear:", 0) == 0) {
    const double k = parse_numbers(spec.substr(17), 1, "piecewise-linear slope")[0];
    if (!(k > 0.0)) throw Error(ErrorKind::ParseError, "piecewise-linear slope must be positive");
    return [k](double x) { return x <= 0 ? x : k * x; };
  }
  throw Error(ErrorKind::ParseError, "unknown function '" + spec + "' (identity | exp | piecewise-linear:k)");
}

inline qs::SampledIncreasingFunction<double> parse_samples_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  qs::SampledIncreasingFunction<double> h;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto v = parse_numbers(line, 2, "sample row '" + line + "'");
    h.xs.push_back(v[0]);
    h.ys.push_back(v[1]);
  }
  return h;
}

inline qs::CircleDiffeo load_circle_map(const std::string& spec) {
  if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".csv") return qs::CircleDiffeo::from_csv(read_file(spec));
  return qs::CircleDiffeo::named(spec);
}

inline std::string cell_string(const chains::Cell& c) {
  std::string s;
  for (std::size_t i = 0; i < c.factors.size(); ++i) {
    if (i) s += " x ";
    s += c.factors[i].label + "[";
    for (std::size_t k = 0; k < c.factors[i].vertices.size(); ++k)
      s += (k ? "," : "") + std::to_string(c.factors[i].vertices[k]);
    s += "]";
  }
  return s;
}

inline std::string coeff_string(const chains::Coeff& c) {
  return c.denominator() == 1 ? std::to_string(c.numerator())
                              : std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

inline Output chain_output(const chains::Chain& ch, const std::string& what) {
  Output o;
  nlohmann::json terms = nlohmann::json::array();
  o.header = {"coefficient", "path", "cell"};
  for (const auto& [cell, c] : ch.terms()) {
    const std::string path = cell.factors.size() == 2 ? chains::path_of(cell) : "";
    terms.push_back({{"coefficient", coeff_string(c)}, {"path", path}, {"cell", cell_string(cell)}});
    o.rows.push_back({coeff_string(c), path, cell_string(cell)});
  }
  o.json = {{"schema", "segal.chain/1"}, {"chain", what}, {"terms", terms}};
  return o;
}

inline std::string render(const Output& o, Format f) {
  if (f == Format::Json) return o.json.dump(2) + "\n";
  auto csv_field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  if (f == Format::Csv) {
    if (!o.csv.empty()) return o.csv;
    std::string out;
    if (o.header.empty()) {
      out = "key,value\n";
      for (const auto& [k, v] : o.json.items())
        out += csv_field(k) + "," + csv_field(v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      return out;
    }
    for (std::size_t i = 0; i < o.header.size(); ++i) out += (i ? "," : "") + csv_field(o.header[i]);
    out += "\n";
    for (const auto& row : o.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
      out += "\n";
    }
    return out;
  }
  if (!o.text.empty()) return o.text;
  if (o.header.empty()) {
    std::string out;
    for (const auto& [k, v] : o.json.items()) out += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    return out;
  }
  std::vector<std::size_t> width(o.header.size());
  for (std::size_t i = 0; i < o.header.size(); ++i) width[i] = o.header[i].size();
  for (const auto& row : o.rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      s += cells[i];
      if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    return s + "\n";
  };
  std::string out = line(o.header);
  for (const auto& row : o.rows) out += line(row);
  return out;
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InternalInconsistency:
    case ErrorKind::QuadratureFailure:
    case ErrorKind::CurveEscape:
    case ErrorKind::InversionFailure: return kCheckFailed;
    default: return kInputError;
  }
}

}  // namespace detail

inline std::string group_summary(const std::string& group) {
  static const std::map<std::string, std::string> names{
      {"types", "open-closed cobordism types"},  {"belt", "Beltrami coefficients and dilatation fields"},
      {"qs", "quasisymmetric maps"},             {"module", "conformal modules of quadrilaterals"},
      {"chains", "shuffle products of chains"},  {"appb", "boundary flattening recursion"}};
  return names.at(group);
}

/// Parses argv-style arguments (without the program name), runs one
/// subcommand and writes its report to `out` (or the --out file).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Executable checks for open-closed conformal field theory constructions", "segal"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  RunConfig cfg;
  std::string format = "text";
  app.add_option("--format", format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out, "write the report to this file");
  app.add_option("--seed", cfg.seed, "seed for randomised checks (default 0)");

  std::function<Output()> handler;
  std::map<std::string, CLI::App*> groups;
  auto sub = [&](const std::string& group, const std::string& name) {
    const auto& table = commands();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Command& c) { return c.group == group && c.name == name; });
    if (it == table.end()) throw std::logic_error("command missing from dispatch table: " + group + " " + name);
    CLI::App* parent = &app;
    if (!group.empty()) {
      if (!groups.contains(group)) {
        groups[group] = app.add_subcommand(group, group_summary(group));
        groups[group]->require_subcommand(1);
      }
      parent = groups[group];
    }
    return parent->add_subcommand(name, it->summary);
  };

  // -- types ----------------------------------------------------------------
  std::vector<std::string> files;
  {
    auto* c = sub("types", "validate");
    c->add_option("files", files, "type JSON files")->required();
    c->callback([&] {
      handler = [&] {
        Output o;
        o.header = {"file", "valid", "components", "euler", "boundary_items", "violations"};
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& f : files) {
          const auto t = cobordism::parse_type(read_file(f));
          const auto v = cobordism::validate_type(t);
          std::string codes;
          nlohmann::json vj = nlohmann::json::array();
          for (const auto& x : v.violations) {
            codes += (codes.empty() ? "" : ";") + x.code;
            vj.push_back({{"code", x.code}, {"detail", x.detail}});
          }
          const int chi = cobordism::euler_characteristic(t);
          rows.push_back({{"file", f},
                          {"valid", v.ok()},
                          {"components", t.components.size()},
                          {"euler", chi},
                          {"boundary_items", cobordism::boundary_items(t)},
                          {"violations", vj}});
          o.rows.push_back({f, v.ok() ? "yes" : "no", std::to_string(t.components.size()), std::to_string(chi),
                            std::to_string(cobordism::boundary_items(t)), codes});
          o.ok = o.ok && v.ok();
        }
        o.json = {{"schema", "segal.types.validate/1"}, {"files", rows}, {"ok", o.ok}};
        return o;
      };
    });
  }
  {
    auto* c = sub("types", "compose");
    c->add_option("files", files, "two or more type JSON files, applied left to right")->required()->expected(2, -1);
    c->callback([&] {
      handler = [&] {
        auto t = load_type(files.front());
        for (std::size_t i = 1; i < files.size(); ++i) t = cobordism::compose_types(t, load_type(files[i]));
        return type_output(t);
      };
    });
  }
  {
    auto* c = sub("types", "union");
    c->add_option("files", files, "two or more type JSON files")->required()->expected(2, -1);
    c->callback([&] {
      handler = [&] {
        auto t = load_type(files.front());
        for (std::size_t i = 1; i < files.size(); ++i) t = cobordism::disjoint_union(t, load_type(files[i]));
        return type_output(cobordism::canonical(t));
      };
    });
  }
  {
    auto* c = sub("types", "stability");
    c->add_option("files", files, "type JSON files")->required();
    c->callback([&] {
      handler = [&] {
        Output o;
        o.header = {"file", "component", "genus", "euler", "stability"};
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& f : files) {
          const auto t = load_type(f);
          const auto rep = cobordism::is_stable(t);
          for (std::size_t i = 0; i < t.components.size(); ++i) {
            const auto& comp = t.components[i];
            const std::string s = cobordism::to_string(rep.components[i]);
            rows.push_back({{"file", f}, {"component", i}, {"genus", comp.genus},
                            {"euler", cobordism::euler_characteristic(comp)}, {"stability", s}});
            o.rows.push_back({f, std::to_string(i), std::to_string(comp.genus),
                              std::to_string(cobordism::euler_characteristic(comp)), s});
          }
        }
        o.json = {{"schema", "segal.types.stability/1"}, {"components", rows}};
        return o;
      };
    });
  }

  // -- belt -----------------------------------------------------------------
  std::string map_spec, axis = "vertical", matrix, frame;
  {
    auto* c = sub("belt", "distance");
    c->add_option("files", files, "two field JSON files")->required()->expected(2);
    c->callback([&] {
      handler = [&] {
        const auto a = beltrami::parse_field(read_file(files[0]));
        const auto b = beltrami::parse_field(read_file(files[1]));
        Output o;
        o.json = {{"schema", "segal.belt.distance/1"}, {"distance", beltrami::field_distance(a, b)}};
        return o;
      };
    });
  }
  for (const char* name : {"transform", "pullback"}) {
    auto* c = sub("belt", name);
    c->add_option("file", files, "field JSON file")->required()->expected(1);
    c->add_option("--map", map_spec, "chart map: linear:p,q,r,s | poly:a,b,c")->required();
    const bool forward = std::string(name) == "transform";
    c->callback([&, forward] {
      handler = [&, forward] {
        const auto field = beltrami::parse_field(read_file(files[0]));
        const auto f = beltrami::SampledChartMap::from_function(field.domain(), field.nx(), field.ny(),
                                                                parse_chart_map(map_spec));
        return field_output(forward ? beltrami::transform_field(field, f) : beltrami::pullback_field(field, f));
      };
    });
  }
  {
    auto* c = sub("belt", "sew");
    c->add_option("files", files, "two field JSON files")->required()->expected(2);
    c->add_option("--axis", axis, "vertical | horizontal")->check(CLI::IsMember({"vertical", "horizontal"}));
    c->callback([&] {
      handler = [&] {
        const auto a = beltrami::parse_field(read_file(files[0]));
        const auto b = beltrami::parse_field(read_file(files[1]));
        return field_output(beltrami::sew_sections(
            a, b, axis == "vertical" ? beltrami::SeamAxis::Vertical : beltrami::SeamAxis::Horizontal));
      };
    });
  }
  {
    auto* c = sub("belt", "mu");
    c->add_option("--matrix", matrix, "real matrix p,q,r,s of (x, y) -> (p x + q y, r x + s y)")->required();
    c->callback([&] {
      handler = [&] {
        const auto v = parse_numbers(matrix, 4, "--matrix");
        const auto m = beltrami::linear_from_real(v[0], v[1], v[2], v[3]);
        const auto mu = beltrami::mu_of_linear(m);
        Output o;
        o.json = {{"schema", "segal.belt.mu/1"},
                  {"mu", cplx_json(mu)},
                  {"abs_mu", std::abs(mu)},
                  {"K", beltrami::dilatation_K(mu)},
                  {"fz", cplx_json(m.a)},
                  {"fzbar", cplx_json(m.b)}};
        return o;
      };
    });
  }
  {
    auto* c = sub("belt", "acs");
    c->add_option("--frame", frame, "A,B: the structure sending (A, B) to (0, 1), A > 0")->required();
    c->callback([&] {
      handler = [&] {
        const auto v = parse_numbers(frame, 2, "--frame");
        const auto J = beltrami::acs_from_frame(v[0], v[1]);
        const auto mu = beltrami::mu_from_acs(J);
        Output o;
        o.json = {{"schema", "segal.belt.acs/1"},
                  {"J", {{J.j11, J.j12}, {J.j21, J.j22}}},
                  {"defect", beltrami::acs_defect(J)},
                  {"mu", cplx_json(mu)},
                  {"K", beltrami::dilatation_K(mu)}};
        return o;
      };
    });
  }

  // -- qs -------------------------------------------------------------------
  std::string fn_spec, window = "-1,1", phi_spec;
  int refine = 8, nr = 33, ntheta = 256, fd_angles = 400;
  double r1 = 1.0, r2 = 2.0;
  {
    auto* c = sub("qs", "bound");
    c->add_option("file", files, "CSV with header x,y")->expected(0, 1);
    c->add_option("--fn", fn_spec, "identity | exp | piecewise-linear:k");
    c->add_option("--window", window, "a,b sampling window for --fn");
    c->add_option("--refine", refine, "--fn grid has 2^refine cells")->check(CLI::Range(1, 16));
    c->callback([&] {
      handler = [&] {
        qs::SampledIncreasingFunction<double> h;
        if (!fn_spec.empty() == !files.empty())
          throw Error(ErrorKind::ParseError, "give exactly one of a CSV file or --fn");
        if (!files.empty()) {
          h = parse_samples_csv(read_file(files[0]));
        } else {
          const auto w = parse_numbers(window, 2, "--window");
          if (!(w[0] < w[1])) throw Error(ErrorKind::ParseError, "--window needs a < b");
          h = qs::sample_uniform(parse_real_function(fn_spec), w[0], w[1], 1 << refine);
        }
        const auto b = qs::qs_bound_detail(h);
        Output o;
        o.json = {{"schema", "segal.qs.bound/1"}, {"k", b.k},         {"worst_x", b.x},
                  {"worst_t", b.t},               {"triples", b.triples}, {"samples", h.xs.size()}};
        return o;
      };
    });
  }
  {
    auto* c = sub("qs", "corner");
    c->add_option("--phi", phi_spec, "circle map: named built-in or theta,phi CSV file")->required();
    c->add_option("--fd-angles", fd_angles, "angles per radius for the finite-difference estimate")
        ->check(CLI::Range(8, 100000));
    c->callback([&] {
      handler = [&] {
        const auto phi = load_circle_map(phi_spec);
        const auto r = qs::corner_map(phi, {});
        const double fd = qs::estimate_dilatation_fd([&](qs::cplx z) { return qs::corner_point(phi, z); },
                                                     qs::corner_probe_points(5, fd_angles));
        Output o;
        o.json = {{"schema", "segal.qs.corner/1"}, {"phi", phi.name()},
                  {"K", r.K},                      {"alt_formula_K", r.alt_formula_K},
                  {"min_slope", r.min_slope},      {"max_slope", r.max_slope},
                  {"fd_K", fd},                    {"fd_relative_error", std::abs(fd - r.K) / r.K}};
        return o;
      };
    });
  }
  {
    auto* c = sub("qs", "twist");
    c->add_option("--phi", phi_spec, "circle map: named built-in or theta,phi CSV file")->required();
    c->add_option("--r1", r1, "inner radius");
    c->add_option("--r2", r2, "outer radius");
    c->add_option("--nr", nr, "radial samples")->check(CLI::Range(2, 100000));
    c->add_option("--ntheta", ntheta, "angular samples")->check(CLI::Range(1, 1000000));
    c->callback([&] {
      handler = [&] {
        const qs::SmoothTwist tw(load_circle_map(phi_spec), r1, r2);
        const auto rep = tw.sample(nr, ntheta);
        Output o;
        o.ok = rep.inner_error == 0.0 && rep.outer_error == 0.0 && rep.min_jacobian > 0.0;
        o.json = {{"schema", "segal.qs.twist/1"},
                  {"nodes", rep.nodes},
                  {"inner_error", rep.inner_error},
                  {"outer_error", rep.outer_error},
                  {"min_jacobian", rep.min_jacobian},
                  {"max_end_t_derivative", rep.max_end_t_derivative},
                  {"max_displacement", rep.max_displacement},
                  {"fixes_basepoint", tw.fixes_basepoint()},
                  {"bump_midpoint", qs::bump(0.5)},
                  {"ok", o.ok}};
        return o;
      };
    });
  }

  // -- module ---------------------------------------------------------------
  std::string quad, rect, corpus;
  double K = 2.0;
  {
    auto* c = sub("module", "compute");
    auto* q = c->add_option("--quad", quad, "z0,z1,z2,z3 on the real line (inf allowed)");
    auto* r = c->add_option("--rect", rect, "a,b: rectangle R(0, a, a + ib, ib)");
    q->excludes(r);
    c->callback([&] {
      handler = [&] {
        Output o;
        if (!rect.empty()) {
          const auto v = parse_numbers(rect, 2, "--rect");
          o.json = {{"schema", "segal.module/1"}, {"rect", v}, {"module", module::module_rect(v[0], v[1])}};
          return o;
        }
        if (quad.empty()) throw Error(ErrorKind::ParseError, "give --quad or --rect");
        const auto v = parse_numbers(quad, 4, "--quad");
        const module::Quadrilateral qd{{v[0], v[1], v[2], v[3]}};
        const auto n = module::normalize_quad(qd);
        nlohmann::json verts = nlohmann::json::array();
        for (double z : v) verts.push_back(module::vertex_to_json(z));
        o.json = {{"schema", "segal.module/1"},
                  {"quad", verts},
                  {"x", module::vertex_to_json(n.x)},
                  {"rotated", n.rotated},
                  {"module", module::module_of_quad(qd)}};
        return o;
      };
    });
  }
  {
    auto* c = sub("module", "check-qc");
    c->add_option("K", K, "stretch factor K >= 1")->required();
    c->add_option("--corpus", corpus, "JSON list of vertex 4-tuples or {\"rectangle\": [a, b]}")->required();
    c->callback([&] {
      handler = [&] {
        const auto rep = module::check_geometric_qc(K, module::parse_corpus(read_file(corpus)));
        Output o;
        o.ok = rep.ok;
        o.json = module::to_json(rep);
        o.json["schema"] = "segal.module.check-qc/1";
        o.header = {"index", "kind", "module", "image_module", "ratio"};
        for (std::size_t i = 0; i < rep.rows.size(); ++i)
          o.rows.push_back({std::to_string(i), rep.rows[i].kind, num(rep.rows[i].module),
                            num(rep.rows[i].image_module), num(rep.rows[i].ratio)});
        return o;
      };
    });
  }

  // -- chains ---------------------------------------------------------------
  int deg_i = 0, deg_j = 0, max_degree = 4;
  bool with_boundary = false;
  {
    auto* c = sub("chains", "product");
    c->add_option("i", deg_i, "dimension of the first generator")->required()->check(CLI::Range(0, 6));
    c->add_option("j", deg_j, "dimension of the second generator")->required()->check(CLI::Range(0, 6));
    c->add_flag("--boundary", with_boundary, "print the boundary of the product instead");
    c->callback([&] {
      handler = [&] {
        if (deg_i + deg_j > chains::kMaxTotalDegree)
          throw Error(ErrorKind::DomainError, "total degree exceeds " + std::to_string(chains::kMaxTotalDegree));
        const auto p = chains::shuffle_product(chains::generator({deg_i, "f"}), chains::generator({deg_j, "g"}));
        return with_boundary ? chain_output(chains::boundary(p), "d(f x g)") : chain_output(p, "f x g");
      };
    });
  }
  {
    auto* c = sub("chains", "check");
    c->add_option("--max-degree", max_degree, "largest total degree (0..6)");
    c->callback([&] {
      handler = [&] {
        const auto rows = chains::run_checks(max_degree);
        Output o;
        o.header = {"check", "degrees", "result", "lhs_terms", "rhs_terms", "expected_terms"};
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : rows) {
          std::string d;
          for (int v : r.degrees) d += (d.empty() ? "" : ",") + std::to_string(v);
          o.rows.push_back({r.name, d, r.ok ? "pass" : "FAIL", std::to_string(r.lhs_terms),
                            std::to_string(r.rhs_terms), std::to_string(r.expected_terms)});
          jr.push_back({{"check", r.name},
                        {"degrees", r.degrees},
                        {"ok", r.ok},
                        {"lhs_terms", r.lhs_terms},
                        {"rhs_terms", r.rhs_terms},
                        {"expected_terms", r.expected_terms}});
          o.ok = o.ok && r.ok;
        }
        o.json = {{"schema", "segal.chains.check/1"}, {"max_degree", max_degree}, {"checks", jr}, {"ok", o.ok}};
        return o;
      };
    });
  }

  // -- appb -----------------------------------------------------------------
  int order_k = 5, flat_k = 1, nx = 16, ny = 8, j_max = 0;
  std::string rho_spec, points;
  double y_max = 0.25, x0 = -1.0, x1 = 1.0;
  {
    auto* c = sub("appb", "orders");
    c->add_option("--k", order_k, "number of steps")->check(CLI::Range(0, 100000));
    c->callback([&] {
      handler = [&] {
        const auto seq = appb::order_sequence(order_k);
        Output o;
        o.header = {"step", "m", "n", "min"};
        nlohmann::json jr = nlohmann::json::array();
        for (std::size_t k = 0; k < seq.size(); ++k) {
          const auto& p = seq[k];
          o.rows.push_back({std::to_string(k), appb::order_string(p.m), appb::order_string(p.n),
                            appb::order_string(p.min())});
          jr.push_back({{"step", k}, {"m", appb::order_string(p.m)}, {"n", p.n}});
          if (k + 1 < seq.size() && !(appb::order_step(p) == seq[k + 1])) o.ok = false;
        }
        o.json = {{"schema", "segal.appb.orders/1"}, {"sequence", jr}};
        return o;
      };
    });
  }
  {
    auto* c = sub("appb", "flatten");
    c->add_option("--rho", rho_spec, "identity | linear:a | sine:a[,b]")->required();
    c->add_option("--k", flat_k, "flattening level 0..2")->check(CLI::Range(0, appb::kMaxVerifyLevel));
    c->add_option("--nx", nx, "grid cells along x")->check(CLI::Range(2, 4096));
    c->add_option("--ny", ny, "grid cells along y")->check(CLI::Range(2, 4096));
    c->add_option("--x0", x0, "strip left end");
    c->add_option("--x1", x1, "strip right end");
    c->add_option("--ymax", y_max, "strip height");
    c->add_option("--j-max", j_max, "finest rung y = 2^-j of the order fit (default 12, 8 at k = 2)")
        ->check(CLI::Range(6, 20));
    c->callback([&] {
      handler = [&] {
        const auto rho = appb::parse_glue_map(rho_spec);
        const appb::StripGrid grid{x0, x1, nx, y_max, ny};
        appb::FlattenReport flat;
        switch (flat_k) {
          case 0: flat = appb::flatten_step(appb::LevelField<-1>{&rho, {}}, grid); break;
          case 1: flat = appb::flatten_step(appb::LevelField<0>{&rho, {}}, grid); break;
          default: flat = appb::flatten_step(appb::LevelField<1>{&rho, {}}, grid); break;
        }
        appb::VerifyOptions vopt;
        vopt.j_max = j_max != 0 ? j_max : (flat_k == 2 ? 8 : 12);
        const auto rep = appb::verify_orders(rho, flat_k, vopt);
        Output o;
        o.ok = rep.ok && flat.ok;
        o.header = {"k", "component", "x", "predicted", "slope", "points", "exact", "meets", "matches"};
        nlohmann::json fits = nlohmann::json::array();
        for (const auto& r : rep.rows) {
          const std::string comp = r.component == 0 ? "A" : "B-1";
          o.rows.push_back({std::to_string(r.k), comp, num(r.x), std::to_string(r.predicted),
                            r.exact ? "exact" : num(r.slope), std::to_string(r.points), r.exact ? "yes" : "no",
                            r.meets ? "yes" : "no", r.matches ? "yes" : "no"});
          fits.push_back({{"k", r.k}, {"component", comp}, {"x", r.x}, {"predicted", r.predicted},
                          {"slope", r.exact ? nlohmann::json(nullptr) : nlohmann::json(r.slope)},
                          {"points", r.points}, {"exact", r.exact}, {"meets", r.meets}, {"matches", r.matches}});
        }
        o.json = {{"schema", "segal.appb.flatten/1"},
                  {"rho", rep.rho},
                  {"k", flat_k},
                  {"flatten",
                   {{"nx", nx}, {"ny", ny}, {"x0", x0}, {"x1", x1}, {"y_max", y_max},
                    {"boundary_error", flat.boundary_error}, {"pushforward_error", flat.pushforward_error},
                    {"grid_tolerance", flat.grid_tolerance}, {"max_dilatation", flat.max_dilatation},
                    {"interior_nodes", flat.interior_nodes}, {"ok", flat.ok}}},
                  {"order_fits", fits},
                  {"slack", rep.slack},
                  {"ok", o.ok}};
        return o;
      };
    });
  }
  {
    auto* c = sub("appb", "tau");
    c->add_option("--rho", rho_spec, "identity | linear:a | sine:a[,b]")->required();
    c->add_option("--points", points, "x,y;x,y;...")->required();
    c->add_option("--ymax", y_max, "strip height");
    c->callback([&] {
      handler = [&] {
        const auto rho = appb::parse_glue_map(rho_spec);
        std::vector<appb::Vec2<double>> pts;
        std::stringstream ss(points);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
          const auto v = parse_numbers(tok, 2, "point '" + tok + "'");
          pts.push_back({v[0], v[1]});
        }
        const auto img = appb::tau_minus1(rho, pts, y_max);
        Output o;
        o.header = {"x", "y", "X", "Y"};
        nlohmann::json jr = nlohmann::json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          o.rows.push_back({num(pts[i][0]), num(pts[i][1]), num(img[i][0]), num(img[i][1])});
          jr.push_back({{"point", pts[i]}, {"image", img[i]}});
        }
        o.json = {{"schema", "segal.appb.tau/1"}, {"rho", rho.spec()}, {"points", jr}};
        return o;
      };
    });
  }

  // -- accept ---------------------------------------------------------------
  std::string accept_corpus = SEGAL_CORPUS_DIR;
  std::vector<int> only;
  std::vector<std::string> tol_overrides;
  {
    auto* c = sub("", "accept");
    c->add_option("--corpus", accept_corpus, "corpus directory");
    c->add_option("--only", only, "run only these criteria")->delimiter(',');
    c->add_option("--tol", tol_overrides, "override a tolerance: name=value (repeatable)");
    c->callback([&] {
      handler = [&] {
        acceptance::Config acfg;
        acfg.corpus = accept_corpus;
        acfg.seed = cfg.seed;
        acfg.only = only;
        for (const auto& t : tol_overrides) {
          const auto eq = t.find('=');
          if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "--tol expects name=value");
          acfg.tolerances[t.substr(0, eq)] = parse_numbers(t.substr(eq + 1), 1, "--tol " + t)[0];
        }
        const auto rep = acceptance::run_acceptance(acfg);
        Output o;
        o.ok = rep.ok();
        o.json = acceptance::to_json(rep);
        o.text = acceptance::to_text(rep);
        o.csv = acceptance::to_csv(rep);
        return o;
      };
    });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

  Output result;
  try {
    result = handler();
  } catch (const Error& e) {
    err << "segal: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "segal: " << e.what() << "\n";
    return kInputError;
  }

  const std::string text = render(result, cfg.format);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      err << "segal: cannot write '" << cfg.out << "'\n";
      return kInputError;
    }
    f << text;
  }
  return result.ok ? kOk : kCheckFailed;
}

}  // namespace segal::cli

#endif  // SEGAL_TOOLS_APP_HPP
