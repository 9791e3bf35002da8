#ifndef SEGAL_CHAINS_CHAIN_HPP
#define SEGAL_CHAINS_CHAIN_HPP

// Formal simplicial chains with exact rational coefficients.
//
// A formal generator f of dimension i stands for a singular simplex
// Delta^i -> X. Its faces and degeneracies are written as f composed with a
// monotone vertex map [n] -> [i], stored as the list of images. A cell of a
// product X_1 x ... x X_m is a tuple of such simplices of one common
// dimension; a plain simplex of X is a cell with one factor. Face k deletes
// vertex k from every factor.

#include <boost/rational.hpp>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "segal/error.hpp"

namespace segal::chains {

using Coeff = boost::rational<long long>;

struct FormalSimplex {
  int dimension = 0;
  std::string label;
};

struct Simplex {
  std::string label;
  std::vector<int> vertices;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  auto operator<=>(const Simplex&) const = default;
};

struct Cell {
  std::vector<Simplex> factors;

  int dim() const { return factors.empty() ? 0 : factors.front().dim(); }
  auto operator<=>(const Cell&) const = default;
};

inline Simplex face(const Simplex& s, int k) {
  Simplex out{s.label, {}};
  for (int v = 0; v <= s.dim(); ++v)
    if (v != k) out.vertices.push_back(s.vertices[v]);
  return out;
}

inline Cell face(const Cell& c, int k) {
  Cell out;
  for (const Simplex& s : c.factors) out.factors.push_back(face(s, k));
  return out;
}

/// Degenerate when two consecutive vertices repeat in every factor.
inline bool is_degenerate(const Cell& c) {
  for (int k = 0; k < c.dim(); ++k) {
    bool repeat = true;
    for (const Simplex& s : c.factors) repeat = repeat && s.vertices[k] == s.vertices[k + 1];
    if (repeat) return true;
  }
  return false;
}

/// Formal sum with like terms merged and zero coefficients dropped.
template <class Key>
class FormalSum {
 public:
  using Terms = std::map<Key, Coeff>;

  FormalSum() = default;
  FormalSum(Key k, Coeff c = Coeff(1)) { add(std::move(k), c); }

  void add(const Key& k, Coeff c) {
    if (c.numerator() == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.numerator() == 0) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  FormalSum& operator+=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  FormalSum& operator-=(const FormalSum& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) { return a -= b; }
  friend FormalSum operator*(Coeff s, const FormalSum& a) {
    FormalSum out;
    for (const auto& [k, c] : a.terms_) out.add(k, s * c);
    return out;
  }
  bool operator==(const FormalSum&) const = default;

 private:
  Terms terms_;
};

using Chain = FormalSum<Cell>;
using TensorChain = FormalSum<std::pair<Cell, Cell>>;

/// The chain consisting of the generator f itself: vertex map the identity.
inline Cell generator_cell(const FormalSimplex& f) {
  if (f.dimension < 0) throw Error(ErrorKind::DomainError, "negative simplex dimension");
  Simplex s{f.label, std::vector<int>(f.dimension + 1)};
  std::iota(s.vertices.begin(), s.vertices.end(), 0);
  return Cell{{s}};
}

inline Chain generator(const FormalSimplex& f) { return Chain(generator_cell(f)); }

/// d = sum_k (-1)^k d_k.
inline Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& [cell, coeff] : c.terms()) {
    const int n = cell.dim();
    if (n == 0) continue;
    for (int k = 0; k <= n; ++k) out.add(face(cell, k), k % 2 == 0 ? coeff : -coeff);
  }
  return out;
}

inline TensorChain tensor(const Chain& a, const Chain& b) {
  TensorChain out;
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) out.add({x, y}, cx * cy);
  return out;
}

/// d(a (x) b) = da (x) b + (-1)^p a (x) db with p = deg a.
inline TensorChain tensor_boundary(const TensorChain& t) {
  TensorChain out;
  for (const auto& [xy, c] : t.terms()) {
    const auto& [x, y] = xy;
    const Coeff sign = x.dim() % 2 == 0 ? Coeff(1) : Coeff(-1);
    const Chain dx = boundary(Chain(x)), dy = boundary(Chain(y));
    for (const auto& [fx, cx] : dx.terms()) out.add({fx, y}, c * cx);
    for (const auto& [fy, cy] : dy.terms()) out.add({x, fy}, sign * c * cy);
  }
  return out;
}

}  // namespace segal::chains

#endif  // SEGAL_CHAINS_CHAIN_HPP
