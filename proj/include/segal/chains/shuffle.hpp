#ifndef SEGAL_CHAINS_SHUFFLE_HPP
#define SEGAL_CHAINS_SHUFFLE_HPP

// Shuffle (Eilenberg-Zilber) cross product. A (p, q)-shuffle is a monotone
// lattice path from (0, 0) to (p, q) written as a word of p 'h' and q 'v'
// steps; its vertices (P(k), Q(k)) index one (p+q)-simplex of the prism
// Delta^p x Delta^q. The sign is the parity of the permutation sorting the
// step word (all h steps before all v steps), i.e. (-1)^(number of v steps
// preceding an h step).

#include <string>
#include <vector>

#include "segal/chains/chain.hpp"

namespace segal::chains {

struct Shuffle {
  std::string path;
  int sign = 1;
};

inline int shuffle_sign(const std::string& path) {
  long inversions = 0, vs = 0;
  for (char c : path) {
    if (c == 'v')
      ++vs;
    else
      inversions += vs;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// All (p, q)-shuffles in lexicographic path order ('h' < 'v').
inline std::vector<Shuffle> shuffles(int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorKind::DomainError, "negative shuffle degree");
  std::vector<Shuffle> out;
  std::string path;
  auto rec = [&](auto&& self, int h, int v) -> void {
    if (h == 0 && v == 0) {
      out.push_back({path, shuffle_sign(path)});
      return;
    }
    if (h > 0) {
      path.push_back('h');
      self(self, h - 1, v);
      path.pop_back();
    }
    if (v > 0) {
      path.push_back('v');
      self(self, h, v - 1);
      path.pop_back();
    }
  };
  rec(rec, p, q);
  return out;
}

/// The cell of X x Y indexed by `path`: every factor of x is composed with
/// the horizontal coordinate P, every factor of y with the vertical one Q.
inline Cell shuffle_cell(const Cell& x, const Cell& y, const std::string& path) {
  std::vector<int> P{0}, Q{0};
  for (char c : path) {
    P.push_back(P.back() + (c == 'h'));
    Q.push_back(Q.back() + (c == 'v'));
  }
  Cell out;
  auto push = [&out](const Cell& src, const std::vector<int>& map) {
    for (const Simplex& s : src.factors) {
      Simplex t{s.label, {}};
      for (int k : map) t.vertices.push_back(s.vertices[k]);
      out.factors.push_back(std::move(t));
    }
  };
  push(x, P);
  push(y, Q);
  return out;
}

/// Bilinear extension of x (x) y -> sum over shuffles of sign * shuffle_cell.
inline Chain shuffle_product(const TensorChain& t) {
  Chain out;
  for (const auto& [xy, c] : t.terms()) {
    const auto& [x, y] = xy;
    for (const Shuffle& s : shuffles(x.dim(), y.dim())) out.add(shuffle_cell(x, y, s.path), s.sign * c);
  }
  return out;
}

inline Chain shuffle_product(const Chain& a, const Chain& b) { return shuffle_product(tensor(a, b)); }

/// Lattice path of a binary product cell whose factors are full simplices
/// composed with monotone coordinate maps; empty when a step is diagonal.
inline std::string path_of(const Cell& c) {
  if (c.factors.size() != 2) throw Error(ErrorKind::DomainError, "path_of needs a two-factor cell");
  std::string path;
  const auto& a = c.factors[0].vertices;
  const auto& b = c.factors[1].vertices;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const int da = a[k] - a[k - 1], db = b[k] - b[k - 1];
    if (da == 1 && db == 0)
      path.push_back('h');
    else if (da == 0 && db == 1)
      path.push_back('v');
    else
      return {};
  }
  return path;
}

}  // namespace segal::chains

#endif  // SEGAL_CHAINS_SHUFFLE_HPP
