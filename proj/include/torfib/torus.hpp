#pragma once

// The complex torus C / (Z + tau Z) as a torsor instance.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "errors.hpp"

namespace torfib {

using complex = std::complex<double>;

class lattice {
public:
  explicit lattice(complex tau) : tau_(tau) {
    if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag())) {
      throw domain_error("lattice: tau must have strictly positive imaginary part");
    }
  }

  [[nodiscard]] complex tau() const noexcept { return tau_; }

  /// Real coordinates (x, y) with z = x + y * tau.
  [[nodiscard]] std::pair<double, double> coordinates(complex z) const noexcept {
    const double y = z.imag() / tau_.imag();
    const double x = z.real() - y * tau_.real();
    return {x, y};
  }

  [[nodiscard]] complex from_coordinates(double x, double y) const noexcept { return x + y * tau_; }

  friend bool operator==(const lattice&, const lattice&) = default;

private:
  complex tau_;
};

struct torus_point {
  complex rep;
  lattice lat;
};

namespace detail {

// x - floor(x) in [0, 1); a result that rounds up to 1 is sent to 0.
inline double wrap_unit(double x) noexcept {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

} // namespace detail

/// Representative of z in the half-open fundamental parallelogram
/// {x + y tau : 0 <= x, y < 1}.
inline torus_point reduce_mod_lattice(complex z, const lattice& lat) {
  auto [x, y] = lat.coordinates(z);
  return torus_point{lat.from_coordinates(detail::wrap_unit(x), detail::wrap_unit(y)), lat};
}

/// Flat distance between the classes of a and b on C / lat, taking the
/// nearest lattice translate.
inline double torus_distance(const lattice& lat, complex a, complex b) noexcept {
  auto [dx, dy] = lat.coordinates(a - b);
  dx -= std::round(dx);
  dy -= std::round(dy);
  double best = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      best = std::min(best, std::abs(lat.from_coordinates(dx + i, dy + j)));
    }
  }
  return best;
}

/// Distance from p to the origin of the torus.
inline double torus_norm(const torus_point& p) noexcept { return torus_distance(p.lat, p.rep, 0.0); }

inline void require_same_lattice(const torus_point& p, const torus_point& q) {
  if (!(p.lat == q.lat)) throw lattice_mismatch("torus points live on different lattices");
}

inline torus_point torus_add(const torus_point& p, const torus_point& q) {
  require_same_lattice(p, q);
  return reduce_mod_lattice(p.rep + q.rep, p.lat);
}

inline torus_point torus_neg(const torus_point& p) { return reduce_mod_lattice(-p.rep, p.lat); }

inline torus_point torus_sub(const torus_point& p, const torus_point& q) {
  require_same_lattice(p, q);
  return reduce_mod_lattice(p.rep - q.rep, p.lat);
}

/// Torsor instance over a fixed lattice: mu(x, y, z) = x + y - z reduced.
class torus_torsor {
public:
  using point_type = torus_point;

  static constexpr double default_tolerance = 1e-9;

  explicit torus_torsor(lattice lat, double tol = default_tolerance) : lat_(lat), tol_(tol) {}

  [[nodiscard]] const lattice& lat() const noexcept { return lat_; }

  [[nodiscard]] torus_point point(complex z) const { return reduce_mod_lattice(z, lat_); }

  [[nodiscard]] torus_point mu(const torus_point& x, const torus_point& y, const torus_point& z) const {
    check(x);
    check(y);
    check(z);
    return reduce_mod_lattice(x.rep + y.rep - z.rep, lat_);
  }

  [[nodiscard]] double distance(const torus_point& a, const torus_point& b) const {
    check(a);
    check(b);
    return torus_distance(lat_, a.rep, b.rep);
  }

  [[nodiscard]] double tolerance() const noexcept { return tol_; }

private:
  void check(const torus_point& p) const {
    if (!(p.lat == lat_)) throw lattice_mismatch("point does not belong to this torus");
  }

  lattice lat_;
  double tol_;
};

} // namespace torfib
