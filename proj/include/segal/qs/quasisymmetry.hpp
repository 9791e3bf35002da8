#ifndef SEGAL_QS_QUASISYMMETRY_HPP
#define SEGAL_QS_QUASISYMMETRY_HPP

// Sampled quasisymmetry constant: the largest ratio
//   max(rho, 1/rho),  rho = (h(x+t) - h(x)) / (h(x) - h(x-t)),
// over symmetric triples (x-t, x, x+t) that all lie on the sample grid. Being
// a max over finitely many triples, it is a lower bound for the true
// constant of the underlying function.

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <vector>

#include "segal/error.hpp"

namespace segal::qs {

template <class T>
struct SampledIncreasingFunction {
  std::vector<T> xs;
  std::vector<T> ys;
};

template <class T>
struct QsBound {
  T k;
  // worst triple
  T x;
  T t;
  std::size_t triples = 0;
};

namespace detail {

template <class T>
bool same_point(const T& a, const T& b, const T& span) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(a - b) <= T(1e-12) * span;
  } else {
    (void)span;
    return a == b;
  }
}

}  // namespace detail

template <class T>
void validate_sampled(const SampledIncreasingFunction<T>& h) {
  if (h.xs.size() != h.ys.size()) throw Error(ErrorKind::DomainError, "xs and ys differ in length");
  if (h.xs.size() < 3) throw Error(ErrorKind::DomainError, "need at least 3 samples");
  for (std::size_t i = 1; i < h.xs.size(); ++i) {
    if (!(h.xs[i - 1] < h.xs[i])) throw Error(ErrorKind::NonMonotone, "xs not strictly increasing");
    if (!(h.ys[i - 1] < h.ys[i])) throw Error(ErrorKind::NonMonotone, "ys not strictly increasing");
  }
}

template <class T>
QsBound<T> qs_bound_detail(const SampledIncreasingFunction<T>& h) {
  validate_sampled(h);
  const auto& xs = h.xs;
  const auto& ys = h.ys;
  const T span = xs.back() - xs.front();
  QsBound<T> best{T(1), xs.front(), T(0), 0};
  bool found = false;
  for (std::size_t c = 1; c + 1 < xs.size(); ++c) {
    std::size_t hi = c + 1;
    for (std::size_t lo = c; lo-- > 0;) {
      const T t = xs[c] - xs[lo];
      const T target = xs[c] + t;
      while (hi < xs.size() && xs[hi] < target && !detail::same_point(xs[hi], target, span)) ++hi;
      if (hi == xs.size()) break;
      if (!detail::same_point(xs[hi], target, span)) continue;
      const T rho = (ys[hi] - ys[c]) / (ys[c] - ys[lo]);
      const T k = rho < T(1) ? T(1) / rho : rho;
      ++best.triples;
      if (!found || best.k < k) {
        best.k = k;
        best.x = xs[c];
        best.t = t;
        found = true;
      }
    }
  }
  if (!found) throw Error(ErrorKind::DomainError, "sample grid contains no symmetric triple");
  return best;
}

template <class T>
T qs_bound(const SampledIncreasingFunction<T>& h) {
  return qs_bound_detail(h).k;
}

/// Samples f at n+1 uniformly spaced points of [a, b].
template <class F>
SampledIncreasingFunction<double> sample_uniform(F f, double a, double b, int n) {
  SampledIncreasingFunction<double> h;
  for (int i = 0; i <= n; ++i) {
    const double x = i == n ? b : a + (b - a) * i / n;
    h.xs.push_back(x);
    h.ys.push_back(f(x));
  }
  return h;
}

/// Swaps the roles of xs and ys: samples of the inverse function.
template <class T>
SampledIncreasingFunction<T> inverse(const SampledIncreasingFunction<T>& h) {
  return {h.ys, h.xs};
}

}  // namespace segal::qs

#endif  // SEGAL_QS_QUASISYMMETRY_HPP
