#ifndef SEGAL_APPB_GLUE_MAP_HPP
#define SEGAL_APPB_GLUE_MAP_HPP

// Boundary gluing map rho on a window [x0, x1], given in closed form so it
// can be evaluated on nested dual numbers:
//   identity      rho(x) = x
//   linear:a      rho(x) = a x                (a > 0)
//   sine:a[,b]    rho(x) = x + a sin(b x)     (|a b| < 1)

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "segal/appb/dual.hpp"
#include "segal/error.hpp"

namespace segal::appb {

struct BoundaryGlueMap {
  enum class Kind { Identity, Linear, Sine };
  Kind kind = Kind::Identity;
  double a = 1.0;
  double b = 1.0;
  double x0 = -4.0;
  double x1 = 4.0;

  template <class T>
  T operator()(const T& x) const {
    using std::sin;
    switch (kind) {
      case Kind::Identity: return x;
      case Kind::Linear: return a * x;
      case Kind::Sine: return x + a * sin(b * x);
    }
    return x;
  }

  template <class T>
  T derivative(const T& x) const {
    using std::cos;
    switch (kind) {
      case Kind::Identity: return T(1.0);
      case Kind::Linear: return T(a);
      case Kind::Sine: return 1.0 + a * b * cos(b * x);
    }
    return T(1.0);
  }

  /// Lower bound of rho' on the whole line.
  double min_derivative() const {
    switch (kind) {
      case Kind::Identity: return 1.0;
      case Kind::Linear: return a;
      case Kind::Sine: return 1.0 - std::abs(a * b);
    }
    return 1.0;
  }

  double image_lo() const { return (*this)(x0); }
  double image_hi() const { return (*this)(x1); }

  /// rho^{-1} by Newton in T. Iterating past value convergence also
  /// converges the dual parts, one derivative order per extra pass.
  template <class T>
  T inverse(const T& X) const {
    const double Xv = value(X);
    if (!(Xv >= image_lo() && Xv <= image_hi()))
      throw Error(ErrorKind::OutOfWindow, "point " + std::to_string(Xv) + " outside rho(window)");
    T x = X;
    if (kind == Kind::Linear) return X / a;
    if (kind == Kind::Identity) return X;
    int extra = 0;
    for (int it = 0; it < 100 && extra < 6; ++it) {
      const T step = ((*this)(x) - X) / derivative(x);
      x = x - step;
      if (std::abs(value(step)) <= 1e-15 * (1.0 + std::abs(value(x)))) ++extra;
    }
    if (extra == 0) throw Error(ErrorKind::DomainError, "rho inverse did not converge");
    return x;
  }

  std::string spec() const {
    switch (kind) {
      case Kind::Identity: return "identity";
      case Kind::Linear: return "linear:" + std::to_string(a);
      case Kind::Sine: return "sine:" + std::to_string(a) + "," + std::to_string(b);
    }
    return "identity";
  }
};

inline void validate(const BoundaryGlueMap& rho) {
  if (!(rho.x0 < rho.x1) || !std::isfinite(rho.x0) || !std::isfinite(rho.x1))
    throw Error(ErrorKind::DomainError, "glue map window must be a finite interval");
  if (!(rho.min_derivative() > 0.0) || !std::isfinite(rho.a) || !std::isfinite(rho.b))
    throw Error(ErrorKind::NonMonotone, "rho' must be bounded away from zero");
}

/// Parses "identity", "id", "linear:a", "sine:a" or "sine:a,b".
inline BoundaryGlueMap parse_glue_map(const std::string& spec) {
  BoundaryGlueMap rho;
  auto numbers = [&](const std::string& rest) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const std::size_t comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad number '" + tok + "' in rho spec '" + spec + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::vector<double> args = colon == std::string::npos ? std::vector<double>{} : numbers(spec.substr(colon + 1));
  if ((name == "identity" || name == "id") && args.empty()) {
    rho.kind = BoundaryGlueMap::Kind::Identity;
  } else if (name == "linear" && args.size() == 1) {
    rho.kind = BoundaryGlueMap::Kind::Linear;
    rho.a = args[0];
  } else if (name == "sine" && (args.size() == 1 || args.size() == 2)) {
    rho.kind = BoundaryGlueMap::Kind::Sine;
    rho.a = args[0];
    rho.b = args.size() == 2 ? args[1] : 1.0;
  } else {
    throw Error(ErrorKind::ParseError, "unknown rho spec '" + spec + "' (identity | linear:a | sine:a[,b])");
  }
  validate(rho);
  return rho;
}

/// tau_{-1}(x, y) = (rho(x), y) on window x [0, y_max].
inline std::vector<Vec2<double>> tau_minus1(const BoundaryGlueMap& rho, const std::vector<Vec2<double>>& points,
                                           double y_max) {
  validate(rho);
  std::vector<Vec2<double>> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (!(p[0] >= rho.x0 && p[0] <= rho.x1 && p[1] >= 0.0 && p[1] <= y_max))
      throw Error(ErrorKind::OutOfWindow, "point outside window x [0, y_max]");
    out.push_back({rho(p[0]), p[1]});
  }
  return out;
}

}  // namespace segal::appb

#endif  // SEGAL_APPB_GLUE_MAP_HPP
