#ifndef SEGAL_BELTRAMI_FIELD_HPP
#define SEGAL_BELTRAMI_FIELD_HPP

// Grid-sampled Beltrami coefficients on a chart rectangle.
//
// Samples are cell-centred: sample (i, j) sits at the centre of cell
// [x0 + i dx, x0 + (i+1) dx] x [y0 + j dy, y0 + (j+1) dy] and stands for the
// coefficient on that whole cell. Sewing two rectangles along a common edge
// therefore just juxtaposes the sample arrays; the seam itself carries no
// sample and, when queried, reports the value of the first section.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "segal/beltrami/dilatation.hpp"
#include "segal/error.hpp"

namespace segal::beltrami {

struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  bool operator==(const Rect&) const = default;
};

enum class SeamAxis {
  Vertical,    // sections side by side, seam x = const
  Horizontal,  // sections stacked, seam y = const
};

struct Seam {
  SeamAxis axis;
  double coordinate;
  bool first_is_lower;  // first section lies at smaller x (or y)
};

inline bool close(double a, double b, double scale = 1.0) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b), scale});
}

class DilatationField {
 public:
  DilatationField(Rect domain, int nx, int ny, std::vector<cplx> values)
      : domain_(domain), nx_(nx), ny_(ny), values_(std::move(values)) {
    if (nx < 1 || ny < 1) throw Error(ErrorKind::GridMismatch, "grid needs nx, ny >= 1");
    if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
      throw Error(ErrorKind::GridMismatch, "empty domain rectangle");
    if (values_.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
      throw Error(ErrorKind::GridMismatch, "value count differs from nx * ny");
    for (const cplx& v : values_) require_in_disc(v, "field sample");
  }

  static DilatationField constant(Rect domain, int nx, int ny, cplx value) {
    return {domain, nx, ny,
            std::vector<cplx>(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), value)};
  }

  static DilatationField sample(Rect domain, int nx, int ny, const std::function<cplx(double, double)>& mu) {
    std::vector<cplx> v;
    v.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    const double dx = (domain.x1 - domain.x0) / nx, dy = (domain.y1 - domain.y0) / ny;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) v.push_back(mu(domain.x0 + (i + 0.5) * dx, domain.y0 + (j + 0.5) * dy));
    return {domain, nx, ny, std::move(v)};
  }

  const Rect& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return (domain_.x1 - domain_.x0) / nx_; }
  double dy() const { return (domain_.y1 - domain_.y0) / ny_; }
  const std::vector<cplx>& values() const { return values_; }
  const std::optional<Seam>& seam() const { return seam_; }

  cplx at(int i, int j) const { return values_[index(i, j)]; }
  double x_center(int i) const { return domain_.x0 + (i + 0.5) * dx(); }
  double y_center(int j) const { return domain_.y0 + (j + 0.5) * dy(); }

  /// Value of the cell containing (x, y); cell edges belong to the upper
  /// cell except on a sewing seam, which belongs to the first section.
  cplx value_at(double x, double y) const {
    const Rect& d = domain_;
    if (x < d.x0 || x > d.x1 || y < d.y0 || y > d.y1)
      throw Error(ErrorKind::DomainError, "point outside the field's rectangle");
    int i = std::min(nx_ - 1, static_cast<int>(std::floor((x - d.x0) / dx())));
    int j = std::min(ny_ - 1, static_cast<int>(std::floor((y - d.y0) / dy())));
    if (seam_) {
      const bool vertical = seam_->axis == SeamAxis::Vertical;
      const double origin = vertical ? d.x0 : d.y0, step = vertical ? dx() : dy();
      if (close(vertical ? x : y, seam_->coordinate, vertical ? d.x1 - d.x0 : d.y1 - d.y0)) {
        const int above = static_cast<int>(std::lround((seam_->coordinate - origin) / step));
        (vertical ? i : j) = seam_->first_is_lower ? above - 1 : above;
      }
    }
    return at(i, j);
  }

  double sup_norm() const {
    double s = 0.0;
    for (const cplx& v : values_) s = std::max(s, std::abs(v));
    return s;
  }

  bool same_grid(const DilatationField& o) const {
    const double w = domain_.x1 - domain_.x0, h = domain_.y1 - domain_.y0;
    return nx_ == o.nx_ && ny_ == o.ny_ && close(domain_.x0, o.domain_.x0, w) &&
           close(domain_.x1, o.domain_.x1, w) && close(domain_.y0, o.domain_.y0, h) &&
           close(domain_.y1, o.domain_.y1, h);
  }

  void set_seam(Seam s) { seam_ = s; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(i);
  }

  Rect domain_;
  int nx_, ny_;
  std::vector<cplx> values_;
  std::optional<Seam> seam_;
};

/// Sup over the grid of the pointwise Teichmuller distance.
inline double field_distance(const DilatationField& s1, const DilatationField& s2) {
  if (!s1.same_grid(s2)) throw Error(ErrorKind::GridMismatch, "fields live on different grids");
  double d = 0.0;
  for (std::size_t k = 0; k < s1.values().size(); ++k)
    d = std::max(d, teichmuller_distance(s1.values()[k], s2.values()[k]));
  return d;
}

/// Juxtaposes two sections sharing a full edge. The grids must agree along
/// the seam and have the same spacing across it so the union is again a
/// uniform grid.
inline DilatationField sew_sections(const DilatationField& s1, const DilatationField& s2, SeamAxis axis) {
  const Rect& a = s1.domain();
  const Rect& b = s2.domain();
  const double w = std::max(a.x1 - a.x0, b.x1 - b.x0), h = std::max(a.y1 - a.y0, b.y1 - b.y0);
  if (axis == SeamAxis::Vertical) {
    if (!(s1.ny() == s2.ny() && close(a.y0, b.y0, h) && close(a.y1, b.y1, h)))
      throw Error(ErrorKind::GridMismatch, "seam edges do not match");
    if (!close(s1.dx(), s2.dx(), w)) throw Error(ErrorKind::GridMismatch, "x spacing differs across the seam");
    const bool first_left = close(a.x1, b.x0, w);
    if (!first_left && !close(b.x1, a.x0, w)) throw Error(ErrorKind::GridMismatch, "rectangles do not share a vertical edge");
    const DilatationField& left = first_left ? s1 : s2;
    const DilatationField& right = first_left ? s2 : s1;
    std::vector<cplx> v;
    v.reserve(s1.values().size() + s2.values().size());
    for (int j = 0; j < s1.ny(); ++j) {
      for (int i = 0; i < left.nx(); ++i) v.push_back(left.at(i, j));
      for (int i = 0; i < right.nx(); ++i) v.push_back(right.at(i, j));
    }
    DilatationField out({left.domain().x0, right.domain().x1, a.y0, a.y1}, left.nx() + right.nx(), s1.ny(), std::move(v));
    out.set_seam({axis, left.domain().x1, first_left});
    return out;
  }
  if (!(s1.nx() == s2.nx() && close(a.x0, b.x0, w) && close(a.x1, b.x1, w)))
    throw Error(ErrorKind::GridMismatch, "seam edges do not match");
  if (!close(s1.dy(), s2.dy(), h)) throw Error(ErrorKind::GridMismatch, "y spacing differs across the seam");
  const bool first_below = close(a.y1, b.y0, h);
  if (!first_below && !close(b.y1, a.y0, h)) throw Error(ErrorKind::GridMismatch, "rectangles do not share a horizontal edge");
  const DilatationField& lower = first_below ? s1 : s2;
  const DilatationField& upper = first_below ? s2 : s1;
  std::vector<cplx> v(lower.values());
  v.insert(v.end(), upper.values().begin(), upper.values().end());
  DilatationField out({a.x0, a.x1, lower.domain().y0, upper.domain().y1}, s1.nx(), lower.ny() + upper.ny(), std::move(v));
  out.set_seam({axis, lower.domain().y1, first_below});
  return out;
}

// ---------------------------------------------------------------------------
// Sampled chart maps

/// A map of the plane sampled at the cell centres of a grid, with its
/// Wirtinger derivatives.
class SampledChartMap {
 public:
  SampledChartMap(Rect domain, int nx, int ny, std::vector<cplx> image, std::vector<cplx> fz,
                  std::vector<cplx> fzbar)
      : domain_(domain), nx_(nx), ny_(ny), image_(std::move(image)), fz_(std::move(fz)), fzbar_(std::move(fzbar)) {
    const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    if (image_.size() != n || fz_.size() != n || fzbar_.size() != n)
      throw Error(ErrorKind::GridMismatch, "chart map arrays differ from nx * ny");
    for (std::size_t k = 0; k < n; ++k)
      if (!(std::norm(fz_[k]) - std::norm(fzbar_[k]) > 0.0))
        throw Error(ErrorKind::NotOrientationPreserving, "Jacobian <= 0 at a sample node");
  }

  /// Partials by centred finite differences with step h.
  static SampledChartMap from_function(Rect domain, int nx, int ny, const std::function<cplx(cplx)>& f,
                                       double h = 1e-5) {
    std::vector<cplx> image, fz, fzbar;
    const double dx = (domain.x1 - domain.x0) / nx, dy = (domain.y1 - domain.y0) / ny;
    const cplx I(0.0, 1.0);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const cplx z(domain.x0 + (i + 0.5) * dx, domain.y0 + (j + 0.5) * dy);
        const cplx fx = (f(z + h) - f(z - h)) / (2.0 * h);
        const cplx fy = (f(z + I * h) - f(z - I * h)) / (2.0 * h);
        image.push_back(f(z));
        fz.push_back((fx - I * fy) / 2.0);
        fzbar.push_back((fx + I * fy) / 2.0);
      }
    return {domain, nx, ny, std::move(image), std::move(fz), std::move(fzbar)};
  }

  const Rect& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const std::vector<cplx>& image() const { return image_; }
  const std::vector<cplx>& fz() const { return fz_; }
  const std::vector<cplx>& fzbar() const { return fzbar_; }

  DilatationField dilatation() const {
    std::vector<cplx> mu(fz_.size());
    for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = fzbar_[k] / fz_[k];
    return {domain_, nx_, ny_, std::move(mu)};
  }

  /// u = f_z / conj(f_z) at each node.
  std::vector<cplx> phase() const {
    std::vector<cplx> u(fz_.size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = fz_[k] / std::conj(fz_[k]);
    return u;
  }

 private:
  Rect domain_;
  int nx_, ny_;
  std::vector<cplx> image_, fz_, fzbar_;
};

/// Node-wise transform_mu: given the dilatation of g o f on f's grid, the
/// dilatation of g at the image nodes f(z_ij), stored on the same grid.
inline DilatationField transform_field(const DilatationField& mu_gf, const SampledChartMap& f) {
  if (!(mu_gf.nx() == f.nx() && mu_gf.ny() == f.ny() && mu_gf.domain() == f.domain()))
    throw Error(ErrorKind::GridMismatch, "field and chart map grids differ");
  std::vector<cplx> out(mu_gf.values().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const cplx mu_f = f.fzbar()[k] / f.fz()[k];
    out[k] = transform_mu(mu_gf.values()[k], mu_f, f.fz()[k], f.fzbar()[k]);
  }
  return {mu_gf.domain(), mu_gf.nx(), mu_gf.ny(), std::move(out)};
}

/// Node-wise pullback_mu with the chart map's dilatation and phase; the
/// inverse of transform_field.
inline DilatationField pullback_field(const DilatationField& nu_Y, const SampledChartMap& f) {
  if (!(nu_Y.nx() == f.nx() && nu_Y.ny() == f.ny() && nu_Y.domain() == f.domain()))
    throw Error(ErrorKind::GridMismatch, "field and chart map grids differ");
  std::vector<cplx> out(nu_Y.values().size());
  const auto u = f.phase();
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = pullback_mu(nu_Y.values()[k], f.fzbar()[k] / f.fz()[k], u[k]);
  return {nu_Y.domain(), nu_Y.nx(), nu_Y.ny(), std::move(out)};
}

}  // namespace segal::beltrami

#endif  // SEGAL_BELTRAMI_FIELD_HPP
