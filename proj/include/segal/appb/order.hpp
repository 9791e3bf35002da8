#ifndef SEGAL_APPB_ORDER_HPP
#define SEGAL_APPB_ORDER_HPP

// Vanishing orders (m, n) of J x-hat = (Theta(y^m), 1 + Theta(y^n)) and the
// step taken by one flattening: (m, n) -> (n + 1, min(2n + 2, m + 1)).
// m may be infinite; infinity saturates under + 1 and loses every min.

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "segal/error.hpp"

namespace segal::appb {

inline constexpr long kInfiniteOrder = std::numeric_limits<long>::max();

struct OrderPair {
  long m = kInfiniteOrder;
  long n = 0;

  bool m_infinite() const { return m == kInfiniteOrder; }
  long min() const { return std::min(m, n); }
  auto operator<=>(const OrderPair&) const = default;
};

inline long plus_one(long v) { return v == kInfiniteOrder ? v : v + 1; }

inline std::string order_string(long v) { return v == kInfiniteOrder ? "inf" : std::to_string(v); }

inline std::string to_string(const OrderPair& p) { return "(" + order_string(p.m) + "," + order_string(p.n) + ")"; }

inline void validate(const OrderPair& p) {
  if (!(p.m >= 1) || p.n < 0 || p.n == kInfiniteOrder)
    throw Error(ErrorKind::DomainError, "order pair needs m >= 1 (or inf) and finite n >= 0");
}

inline OrderPair order_step(const OrderPair& p) {
  validate(p);
  return {plus_one(p.n), std::min(2 * p.n + 2, plus_one(p.m))};
}

/// The first k + 1 pairs starting from (inf, 0).
inline std::vector<OrderPair> order_sequence(int k) {
  if (k < 0) throw Error(ErrorKind::DomainError, "k must be non-negative");
  std::vector<OrderPair> out{OrderPair{}};
  for (int i = 0; i < k; ++i) out.push_back(order_step(out.back()));
  return out;
}

/// Predicted orders of J_k x-hat; J_{-1} is (inf, 0).
inline OrderPair predicted_orders(int k) {
  if (k < -1) throw Error(ErrorKind::DomainError, "k must be at least -1");
  return order_sequence(k + 1).back();
}

}  // namespace segal::appb

#endif  // SEGAL_APPB_ORDER_HPP
