#ifndef SEGAL_QS_CIRCLE_DIFFEO_HPP
#define SEGAL_QS_CIRCLE_DIFFEO_HPP

// Orientation-preserving circle diffeomorphisms, stored as a lift
// Phi : [0, 2pi] -> R with Phi(2pi) = Phi(0) + 2pi and Phi' > 0, extended to R
// by Phi(theta + 2pi) = Phi(theta) + 2pi.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "segal/error.hpp"

namespace segal::qs {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class CircleDiffeo {
 public:
  using Fn = std::function<double(double)>;

  CircleDiffeo(Fn lift, Fn derivative, std::string name)
      : lift_(std::move(lift)), derivative_(std::move(derivative)), name_(std::move(name)) {}

  /// Lift evaluated anywhere on R.
  double operator()(double theta) const {
    const double turns = std::floor(theta / kTwoPi);
    double base = theta - turns * kTwoPi;
    if (base >= kTwoPi) base -= kTwoPi;
    return lift_(base) + turns * kTwoPi;
  }

  double derivative(double theta) const {
    double base = std::fmod(theta, kTwoPi);
    if (base < 0.0) base += kTwoPi;
    return derivative_(base);
  }

  const std::string& name() const { return name_; }

  /// Checks Phi' > 0 and winding number one on `samples` points.
  void validate(int samples = 4096) const {
    if (std::abs(lift_(kTwoPi) - lift_(0.0) - kTwoPi) > 1e-9)
      throw Error(ErrorKind::InvalidPhi, name_ + ": winding number is not 1");
    double prev = lift_(0.0);
    for (int k = 0; k < samples; ++k) {
      const double theta = (k + 0.5) * kTwoPi / samples;
      if (!(derivative_(theta) > 0.0))
        throw Error(ErrorKind::InvalidPhi, name_ + ": derivative not positive at " + std::to_string(theta));
      const double v = lift_(theta);
      if (!(v > prev)) throw Error(ErrorKind::InvalidPhi, name_ + ": not increasing");
      prev = v;
    }
  }

  static CircleDiffeo identity() {
    return {[](double t) { return t; }, [](double) { return 1.0; }, "identity"};
  }

  static CircleDiffeo rotation(double delta) {
    return {[delta](double t) { return t + delta; }, [](double) { return 1.0; },
            "rotation:" + std::to_string(delta)};
  }

  /// Slope k on [0, pi] and 2 - k on [pi, 2pi]; 0 < k < 2. With k = 1/2 this
  /// is theta/2 on the upper semicircle, as the corner map requires.
  static CircleDiffeo piecewise_linear(double k) {
    if (!(k > 0.0 && k < 2.0)) throw Error(ErrorKind::InvalidPhi, "piecewise-linear slope must lie in (0, 2)");
    constexpr double pi = std::numbers::pi;
    return {[k](double t) { return t <= pi ? k * t : k * pi + (2.0 - k) * (t - pi); },
            [k](double t) { return t < pi ? k : 2.0 - k; }, "piecewise-linear:" + std::to_string(k)};
  }

  /// theta/2 on [0, pi]; on [pi, 2pi] slope 1/2 + 2 sin^2 theta, which joins
  /// the upper half C^1 at both ends and covers the remaining 3pi/2.
  static CircleDiffeo smooth_corner() {
    constexpr double pi = std::numbers::pi;
    return {[](double t) {
              if (t <= pi) return t / 2.0;
              const double s = t - pi;
              return pi / 2.0 + s / 2.0 + s - std::sin(2.0 * s) / 2.0;
            },
            [](double t) {
              if (t <= pi) return 0.5;
              const double sn = std::sin(t);
              return 0.5 + 2.0 * sn * sn;
            },
            "smooth-corner"};
  }

  /// Piecewise-linear interpolation of samples (theta_i, Phi_i) covering
  /// [0, 2pi] with Phi_last - Phi_first = 2pi.
  static CircleDiffeo sampled(std::vector<double> theta, std::vector<double> phi) {
    if (theta.size() != phi.size() || theta.size() < 3)
      throw Error(ErrorKind::InvalidPhi, "need at least 3 (theta, phi) samples");
    if (std::abs(theta.front()) > 1e-12 || std::abs(theta.back() - kTwoPi) > 1e-9)
      throw Error(ErrorKind::InvalidPhi, "samples must span theta in [0, 2pi]");
    for (std::size_t i = 1; i < theta.size(); ++i)
      if (!(theta[i] > theta[i - 1]) || !(phi[i] > phi[i - 1]))
        throw Error(ErrorKind::InvalidPhi, "samples must be strictly increasing");
    if (std::abs(phi.back() - phi.front() - kTwoPi) > 1e-9)
      throw Error(ErrorKind::InvalidPhi, "sampled map must wind exactly once");
    theta.front() = 0.0;
    theta.back() = kTwoPi;
    auto segment = [theta](double t) {
      const auto it = std::upper_bound(theta.begin(), theta.end(), t);
      std::size_t i = it == theta.begin() ? 0 : static_cast<std::size_t>(it - theta.begin()) - 1;
      return std::min(i, theta.size() - 2);
    };
    auto lift = [theta, phi, segment](double t) {
      const std::size_t i = segment(t);
      const double w = (t - theta[i]) / (theta[i + 1] - theta[i]);
      return phi[i] + w * (phi[i + 1] - phi[i]);
    };
    auto slope = [theta, phi, segment](double t) {
      const std::size_t i = segment(t);
      return (phi[i + 1] - phi[i]) / (theta[i + 1] - theta[i]);
    };
    return {lift, slope, "sampled"};
  }

  /// Named built-ins: identity, rotation:<delta>, piecewise-linear:<k>,
  /// smooth-corner.
  static CircleDiffeo named(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    auto arg = [&]() {
      if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "'" + head + "' needs a parameter");
      try {
        std::size_t used = 0;
        const double v = std::stod(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) throw std::invalid_argument(spec);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad numeric parameter in '" + spec + "'");
      }
    };
    if (head == "identity") return identity();
    if (head == "rotation") return rotation(arg());
    if (head == "piecewise-linear") return piecewise_linear(arg());
    if (head == "smooth-corner") return smooth_corner();
    throw Error(ErrorKind::ParseError, "unknown circle map '" + spec + "'");
  }

  /// CSV with header theta,phi.
  static CircleDiffeo from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> t, p;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      std::string a, b;
      if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
        throw Error(ErrorKind::ParseError, "expected theta,phi rows");
      try {
        t.push_back(std::stod(a));
        p.push_back(std::stod(b));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "non-numeric value in '" + line + "'");
      }
    }
    return sampled(std::move(t), std::move(p));
  }

 private:
  Fn lift_;
  Fn derivative_;
  std::string name_;
};

/// phi2 after phi1.
inline CircleDiffeo compose(const CircleDiffeo& phi2, const CircleDiffeo& phi1) {
  return {[phi2, phi1](double t) { return phi2(phi1(t)); },
          [phi2, phi1](double t) { return phi2.derivative(phi1(t)) * phi1.derivative(t); },
          phi2.name() + " o " + phi1.name()};
}

}  // namespace segal::qs

#endif  // SEGAL_QS_CIRCLE_DIFFEO_HPP
