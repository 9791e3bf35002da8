#ifndef SEGAL_TOLERANCE_HPP
#define SEGAL_TOLERANCE_HPP

#include <cstdlib>
#include <string>

namespace segal {

/// Multiplier applied to every check tolerance, read once from
/// SEGAL_TOLERANCE_SCALE. Non-positive or unparsable values fall back to 1.
inline double tolerance_scale() {
  static const double scale = [] {
    const char* raw = std::getenv("SEGAL_TOLERANCE_SCALE");
    if (raw == nullptr) return 1.0;
    try {
      double v = std::stod(raw);
      return v > 0.0 ? v : 1.0;
    } catch (...) {
      return 1.0;
    }
  }();
  return scale;
}

inline double scaled(double tol) { return tol * tolerance_scale(); }

}  // namespace segal

#endif  // SEGAL_TOLERANCE_HPP
