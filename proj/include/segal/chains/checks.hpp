#ifndef SEGAL_CHAINS_CHECKS_HPP
#define SEGAL_CHAINS_CHECKS_HPP

// Exact verification harness for the cross product on formal generators
// f, g, h of dimensions i, j, k.

#include <algorithm>
#include <string>
#include <vector>

#include "segal/chains/chain.hpp"
#include "segal/chains/shuffle.hpp"

namespace segal::chains {

inline constexpr int kMaxTotalDegree = 6;

struct CheckResult {
  std::string name;
  std::vector<int> degrees;
  bool ok = false;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  std::size_t expected_terms = 0;
};

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

inline long long multinomial(const std::vector<int>& parts) {
  long long r = 1;
  int total = 0;
  for (int p : parts) {
    total += p;
    r *= binomial(total, p);
  }
  return r;
}

namespace detail {

inline void require_degrees(const std::vector<int>& d) {
  int total = 0;
  for (int v : d) {
    if (v < 0) throw Error(ErrorKind::DomainError, "negative degree");
    total += v;
  }
  if (total > kMaxTotalDegree)
    throw Error(ErrorKind::DomainError, "total degree exceeds " + std::to_string(kMaxTotalDegree));
}

inline Chain gen(const char* label, int dim) { return generator({dim, label}); }

inline bool unit_coefficients(const Chain& c) {
  return std::all_of(c.terms().begin(), c.terms().end(),
                     [](const auto& t) { return t.second == Coeff(1) || t.second == Coeff(-1); });
}

inline Chain map_factors(const Chain& c, auto&& fn) {
  Chain out;
  for (const auto& [cell, coeff] : c.terms()) out.add(fn(cell), coeff);
  return out;
}

}  // namespace detail

/// d(f x g) = (df) x g + (-1)^i f x (dg), the right side computed as the
/// cross product of the tensor boundary.
inline CheckResult check_chain_map(int i, int j) {
  detail::require_degrees({i, j});
  const TensorChain t = tensor(detail::gen("f", i), detail::gen("g", j));
  const Chain product = shuffle_product(t);
  const Chain lhs = boundary(product);
  const Chain rhs = shuffle_product(tensor_boundary(t));
  CheckResult r{"chain_map", {i, j}};
  r.lhs_terms = lhs.size();
  r.rhs_terms = rhs.size();
  r.expected_terms = static_cast<std::size_t>(binomial(i + j, i));
  r.ok = lhs == rhs && product.size() == r.expected_terms && detail::unit_coefficients(product);
  return r;
}

/// (f x g) x h = f x (g x h) under the identification of both with cells
/// of X x Y x Z.
inline CheckResult check_associativity(int i, int j, int k) {
  detail::require_degrees({i, j, k});
  const Chain f = detail::gen("f", i), g = detail::gen("g", j), h = detail::gen("h", k);
  const Chain lhs = shuffle_product(shuffle_product(f, g), h);
  const Chain rhs = shuffle_product(f, shuffle_product(g, h));
  CheckResult r{"associativity", {i, j, k}};
  r.lhs_terms = lhs.size();
  r.rhs_terms = rhs.size();
  r.expected_terms = static_cast<std::size_t>(multinomial({i, j, k}));
  r.ok = lhs == rhs && lhs.size() == r.expected_terms && detail::unit_coefficients(lhs);
  return r;
}

/// Crossing with the point generator on either side, then forgetting the
/// point factor, is the identity.
inline CheckResult check_unit(int i) {
  detail::require_degrees({i});
  const Chain f = detail::gen("f", i), pt = detail::gen("pt", 0);
  auto drop = [](std::size_t index) {
    return [index](const Cell& c) {
      Cell out = c;
      out.factors.erase(out.factors.begin() + static_cast<long>(index));
      return out;
    };
  };
  const Chain right = detail::map_factors(shuffle_product(f, pt), drop(1));
  const Chain left = detail::map_factors(shuffle_product(pt, f), drop(0));
  CheckResult r{"unit", {i}};
  r.lhs_terms = right.size();
  r.rhs_terms = left.size();
  r.expected_terms = 1;
  r.ok = right == f && left == f;
  return r;
}

/// Swapping the factors of g x f gives (-1)^(ij) f x g.
inline CheckResult check_symmetry(int i, int j) {
  detail::require_degrees({i, j});
  const Chain f = detail::gen("f", i), g = detail::gen("g", j);
  const Chain swapped = detail::map_factors(shuffle_product(g, f), [](const Cell& c) {
    Cell out = c;
    std::reverse(out.factors.begin(), out.factors.end());
    return out;
  });
  const Chain fg = shuffle_product(f, g);
  const Coeff sign = (i * j) % 2 == 0 ? Coeff(1) : Coeff(-1);
  CheckResult r{"symmetry", {i, j}};
  r.lhs_terms = swapped.size();
  r.rhs_terms = fg.size();
  r.expected_terms = static_cast<std::size_t>(binomial(i + j, i));
  r.ok = swapped == sign * fg;
  return r;
}

/// d d = 0 on the binary and ternary products.
inline CheckResult check_d_squared(int i, int j, int k) {
  detail::require_degrees({i, j, k});
  const Chain c = shuffle_product(shuffle_product(detail::gen("f", i), detail::gen("g", j)), detail::gen("h", k));
  const Chain dd = boundary(boundary(c));
  CheckResult r{"d_squared", {i, j, k}};
  r.lhs_terms = dd.size();
  r.rhs_terms = 0;
  r.expected_terms = 0;
  r.ok = dd.empty();
  return r;
}

/// Every check for every degree tuple of total at most max_degree.
inline std::vector<CheckResult> run_checks(int max_degree) {
  if (max_degree < 0 || max_degree > kMaxTotalDegree)
    throw Error(ErrorKind::DomainError, "max degree must lie in [0, " + std::to_string(kMaxTotalDegree) + "]");
  std::vector<CheckResult> out;
  for (int i = 0; i <= max_degree; ++i) out.push_back(check_unit(i));
  for (int i = 0; i <= max_degree; ++i)
    for (int j = 0; i + j <= max_degree; ++j) {
      out.push_back(check_chain_map(i, j));
      out.push_back(check_symmetry(i, j));
    }
  for (int i = 0; i <= max_degree; ++i)
    for (int j = 0; i + j <= max_degree; ++j)
      for (int k = 0; i + j + k <= max_degree; ++k) {
        out.push_back(check_associativity(i, j, k));
        out.push_back(check_d_squared(i, j, k));
      }
  return out;
}

}  // namespace segal::chains

#endif  // SEGAL_CHAINS_CHECKS_HPP
