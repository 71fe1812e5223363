#pragma once

// Torus fibrations over a punctured disk: branched multisections, their
// Bezout-weighted average, and numerical checks that the average is a
// single-valued section extending over the puncture.
//
// The fiber over t is C / (Z + tau(t) Z), where tau is either constant or
// tau0 + (k / 2 pi i) log t (I_k monodromy). A multisection of degree mu is a
// Laurent series z(s) on the cover t = s^mu; its points over t are
// z(zeta^j s0), j = 0..mu-1, with s0 the principal mu-th root of t.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "multiplicity.hpp"
#include "torsor.hpp"
#include "torus.hpp"

namespace torfib {

class fiber_family {
public:
  explicit fiber_family(complex tau0, int log_k = 0, double radius = 1.0)
      : tau0_(tau0), log_k_(log_k), radius_(radius) {
    if (!(tau0.imag() > 0.0)) throw domain_error("fiber_family: Im tau0 must be positive");
    if (log_k < 0) throw domain_error("fiber_family: log_k must be nonnegative");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw domain_error("fiber_family: radius must be positive");
    // Im tau(t) = Im tau0 - (k / 2 pi) log|t| is smallest on the outer circle.
    if (!(tau0.imag() - log_k * std::log(radius) / (2.0 * std::numbers::pi) > 0.0)) {
      throw domain_error("fiber_family: Im tau(t) is not positive on the whole disk");
    }
  }

  [[nodiscard]] complex tau0() const noexcept { return tau0_; }
  [[nodiscard]] int log_k() const noexcept { return log_k_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] bool constant_tau() const noexcept { return log_k_ == 0; }

  void require_in_domain(complex t) const {
    const double r = std::abs(t);
    if (r == 0.0) throw domain_error("t = 0 is the puncture");
    if (r > radius_) throw domain_error("|t| = " + std::to_string(r) + " exceeds the disk radius");
  }

  /// tau(t) on the given sheet of log t (sheet 0 uses Arg t in (-pi, pi]).
  [[nodiscard]] complex tau(complex t, int sheet = 0) const {
    if (log_k_ == 0) return tau0_;
    const complex log_t{std::log(std::abs(t)), std::arg(t) + 2.0 * std::numbers::pi * sheet};
    return tau0_ + static_cast<double>(log_k_) * log_t / complex{0.0, 2.0 * std::numbers::pi};
  }

  [[nodiscard]] lattice fiber(complex t, int sheet = 0) const { return lattice(tau(t, sheet)); }

private:
  complex tau0_;
  int log_k_;
  double radius_;
};

struct series_term {
  int power;
  complex coeff;
};

/// |t|^{1/mu} exp(i Arg(t) / mu), Arg in (-pi, pi].
inline complex principal_root(complex t, int mu) {
  return std::polar(std::pow(std::abs(t), 1.0 / mu), std::arg(t) / mu);
}

inline complex root_of_unity(int mu, int j) { return std::polar(1.0, 2.0 * std::numbers::pi * j / mu); }

class branched_multisection {
public:
  branched_multisection(int mu, std::vector<series_term> series) : mu_(mu), series_(std::move(series)) {
    if (mu < 1) throw domain_error("multisection degree must be positive");
  }

  [[nodiscard]] int mu() const noexcept { return mu_; }
  [[nodiscard]] const std::vector<series_term>& series() const noexcept { return series_; }

  [[nodiscard]] complex eval(complex s) const {
    complex z = 0.0;
    for (const auto& [p, c] : series_) z += c * std::pow(s, p);
    return z;
  }

  /// Lifted branch values z(zeta^{j + deck} s0), j = 0..mu-1.
  [[nodiscard]] std::vector<complex> branch_values(complex t, int deck = 0) const {
    const complex s0 = principal_root(t, mu_);
    std::vector<complex> out;
    out.reserve(static_cast<std::size_t>(mu_));
    for (int j = 0; j < mu_; ++j) out.push_back(eval(root_of_unity(mu_, (j + deck) % mu_) * s0));
    return out;
  }

private:
  int mu_;
  std::vector<series_term> series_;
};

/// The mu fiber points of ms over t, reduced into the fiber torus.
inline std::vector<torus_point> branch_points(const branched_multisection& ms, const fiber_family& family, complex t,
                                              int deck = 0) {
  family.require_in_domain(t);
  const lattice lat = family.fiber(t, deck);
  std::vector<torus_point> out;
  for (complex z : ms.branch_values(t, deck)) out.push_back(reduce_mod_lattice(z, lat));
  return out;
}

struct weighted_entry {
  std::int64_t weight;
  branched_multisection section;
};

/// Multisections with integer weights a_i and total multiplicity
/// sum a_i mu_i = 1.
class weighted_system {
public:
  weighted_system(std::vector<weighted_entry> entries, fiber_family family)
      : entries_(std::move(entries)), family_(family) {
    std::int64_t total = 0;
    for (const auto& e : entries_) total += e.weight * e.section.mu();
    if (total != 1) {
      throw weight_sum_error("total multiplicity sum a_i mu_i is " + std::to_string(total) + ", expected 1");
    }
  }

  [[nodiscard]] const std::vector<weighted_entry>& entries() const noexcept { return entries_; }
  [[nodiscard]] const fiber_family& family() const noexcept { return family_; }

  [[nodiscard]] multiplicity_vector multiplicities() const {
    std::vector<std::int64_t> mu;
    for (const auto& e : entries_) mu.push_back(e.section.mu());
    return multiplicity_vector(std::move(mu));
  }

private:
  std::vector<weighted_entry> entries_;
  fiber_family family_;
};

struct section_options {
  complex origin = 0.0; // combining origin, reduced into the fiber
  int deck = 0;         // number of turns of t around the puncture
  combine_options combine{};
};

/// The averaged section phi(t): each branch point of entry i carries weight
/// a_i, and the points are combined in the fiber torsor.
inline torus_point average_section(const weighted_system& sys, complex t, const section_options& opts = {}) {
  sys.family().require_in_domain(t);
  const torus_torsor fiber(sys.family().fiber(t, opts.deck));
  weighted_points<torus_point> pts;
  for (const auto& [w, ms] : sys.entries()) {
    for (complex z : ms.branch_values(t, opts.deck)) pts.add(w, fiber.point(z));
  }
  return weighted_combine(fiber, pts, fiber.point(opts.origin), opts.combine);
}

/// Distance on the fiber over t between phi(t) and its continuation once
/// around the puncture.
inline double monodromy_defect(const weighted_system& sys, complex t) {
  const torus_point here = average_section(sys, t);
  const torus_point around = average_section(sys, t, {.deck = 1});
  // tau may have moved by k, which describes the same lattice.
  return torus_distance(here.lat, here.rep, around.rep);
}

inline bool monodromy_check(const weighted_system& sys, complex t, double tol = 1e-9) {
  return monodromy_defect(sys, t) <= tol;
}

enum class extension_status { removable, pole_suspected, inconclusive };

inline std::string to_string(extension_status s) {
  switch (s) {
  case extension_status::removable: return "removable";
  case extension_status::pole_suspected: return "pole-suspected";
  case extension_status::inconclusive: return "inconclusive";
  }
  return "?";
}

struct circle_sample {
  double radius;
  double sup_phi;  // max over the circle of the torus distance from phi to 0
  double c1_abs;   // |c_{-1}| of the lift; NaN when the lift failed
  bool lifted;
  std::int64_t winding_x; // lattice vector picked up by the lift around the circle
  std::int64_t winding_y;
};

struct extension_verdict {
  bool bounded = false;
  std::vector<circle_sample> circles;
  double c1_abs = 0.0; // outermost circle
  double c2_abs = 0.0;
  double growth_slope = 0.0; // fitted d log10(sup) per decade of 1/r
  extension_status verdict = extension_status::inconclusive;
};

struct extension_options {
  double coefficient_tol = 1e-6;
  double growth_per_decade = 0.10;
  double sup_floor = 1e-9;     // sups below this count as zero
  double max_lift_step = 0.25; // per-sample step bound, lattice coordinates
};

namespace detail {

struct circle_lift {
  std::vector<complex> values;
  std::int64_t winding_x = 0;
  std::int64_t winding_y = 0;
};

// Continues phi around the circle by choosing, sample to sample, the nearest
// representative. Returns nullopt when a step is too large to be unambiguous.
inline std::optional<circle_lift> lift_circle(const lattice& lat, const std::vector<torus_point>& phi,
                                              double max_step) {
  auto step = [&](complex from, complex to) -> std::optional<complex> {
    auto [dx, dy] = lat.coordinates(to - from);
    dx -= std::round(dx);
    dy -= std::round(dy);
    if (std::abs(dx) > max_step || std::abs(dy) > max_step) return std::nullopt;
    return lat.from_coordinates(dx, dy);
  };
  circle_lift out;
  out.values.reserve(phi.size());
  auto [x0, y0] = lat.coordinates(phi.front().rep);
  out.values.push_back(lat.from_coordinates(x0 - std::round(x0), y0 - std::round(y0)));
  for (std::size_t j = 1; j <= phi.size(); ++j) {
    const complex prev = out.values.back();
    const auto d = step(prev, phi[j % phi.size()].rep);
    if (!d) return std::nullopt;
    if (j < phi.size()) {
      out.values.push_back(prev + *d);
    } else {
      auto [wx, wy] = lat.coordinates(prev + *d - out.values.front());
      out.winding_x = static_cast<std::int64_t>(std::llround(wx));
      out.winding_y = static_cast<std::int64_t>(std::llround(wy));
    }
  }
  return out;
}

// Trapezoid rule for c_{-k} = (1 / 2 pi i) \oint f(t) t^{k-1} dt on |t| = r.
inline complex negative_coefficient(const std::vector<complex>& f, const std::vector<complex>& ts, int k) {
  complex acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) acc += f[j] * std::pow(ts[j], k);
  return acc / static_cast<double>(f.size());
}

} // namespace detail

/// Samples phi on the circles |t| = r for each radius (strictly decreasing),
/// and decides whether phi extends over t = 0.
///
/// Throws lift_failure when the outermost circle, where the Laurent
/// coefficients are estimated, cannot be lifted.
inline extension_verdict extension_check(const weighted_system& sys, const std::vector<double>& radii,
                                         int samples_per_circle = 256, const extension_options& opts = {}) {
  const auto& family = sys.family();
  if (!family.constant_tau()) throw domain_error("extension_check requires a constant tau");
  if (samples_per_circle < 16) throw domain_error("extension_check needs at least 16 samples per circle");
  if (radii.empty()) throw domain_error("extension_check needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > family.radius()) throw domain_error("radius outside (0, R]");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw domain_error("radii must be strictly decreasing");
  }

  const lattice lat(family.tau0());
  extension_verdict out;
  bool all_lifted = true;
  bool coefficients_small = true;
  bool no_winding = true;
  const auto n = static_cast<std::size_t>(samples_per_circle);

  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    std::vector<complex> ts(n);
    std::vector<torus_point> phi;
    phi.reserve(n);
    double sup = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      ts[j] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
      phi.push_back(average_section(sys, ts[j]));
      sup = std::max(sup, torus_norm(phi.back()));
    }

    circle_sample sample{r, sup, std::numeric_limits<double>::quiet_NaN(), false, 0, 0};
    const auto lift = detail::lift_circle(lat, phi, opts.max_lift_step);
    if (lift) {
      sample.lifted = true;
      sample.winding_x = lift->winding_x;
      sample.winding_y = lift->winding_y;
      const double c1 = std::abs(detail::negative_coefficient(lift->values, ts, 1));
      sample.c1_abs = c1;
      if (i == 0) {
        out.c1_abs = c1;
        out.c2_abs = std::abs(detail::negative_coefficient(lift->values, ts, 2));
      }
      if (c1 >= opts.coefficient_tol) coefficients_small = false;
      if (lift->winding_x != 0 || lift->winding_y != 0) no_winding = false;
    } else {
      if (i == 0) {
        throw lift_failure("cannot lift phi around |t| = " + std::to_string(r) +
                           "; increase samples_per_circle");
      }
      all_lifted = false;
    }
    out.circles.push_back(sample);
  }
  if (out.c2_abs >= opts.coefficient_tol) coefficients_small = false;

  // Growth trend: least-squares slope of log10 sup against decades of 1/r.
  // The torus norm wraps, so single steps between circles can jump without
  // any real growth; only the trend over all circles is meaningful.
  out.bounded = true;
  if (out.circles.size() > 1) {
    double mx = 0.0, my = 0.0;
    std::vector<double> xs, ys;
    for (const auto& c : out.circles) {
      xs.push_back(-std::log10(c.radius));
      ys.push_back(std::log10(std::max(c.sup_phi, opts.sup_floor)));
      mx += xs.back();
      my += ys.back();
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    out.growth_slope = sxy / sxx;
    out.bounded = out.growth_slope <= std::log10(1.0 + opts.growth_per_decade);
  }

  const auto& outer = out.circles.front();
  if (out.c1_abs >= opts.coefficient_tol || out.c2_abs >= opts.coefficient_tol || outer.winding_x != 0 ||
      outer.winding_y != 0) {
    out.verdict = extension_status::pole_suspected;
  } else if (out.bounded && all_lifted && coefficients_small && no_winding) {
    out.verdict = extension_status::removable;
  } else {
    out.verdict = extension_status::inconclusive;
  }
  return out;
}

/// Radii 10^{-1}, ..., 10^{-6}.
inline std::vector<double> default_radii() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

namespace detail {

// Uniform double in [-0.5, 0.5) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical across standard libraries.
inline double centered_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11U) * 0x1.0p-53 - 0.5;
}

} // namespace detail

/// Random polynomial multisections of the given degree (coefficients of
/// s^0..s^degree drawn from a seeded generator), weighted by the Bezout
/// certificate of mu. Requires gcd(mu) = 1.
inline weighted_system build_synthetic_model(const multiplicity_vector& mu, std::uint64_t seed, int degree,
                                             const fiber_family& family = fiber_family({0.0, 1.0}, 0, 0.5)) {
  if (degree < 0) throw domain_error("degree must be nonnegative");
  const auto cert = bezout_weights(mu);
  if (cert.gcd != 1) {
    throw gcd_error("gcd of multiplicities is " + std::to_string(cert.gcd) + "; no total-multiplicity-one system");
  }
  std::mt19937_64 rng(seed);
  std::vector<weighted_entry> entries;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::vector<series_term> series;
    for (int p = 0; p <= degree; ++p) {
      const double re = detail::centered_unit(rng);
      const double im = detail::centered_unit(rng);
      series.push_back({p, {re, im}});
    }
    entries.push_back({cert.weights[i], branched_multisection(static_cast<int>(mu[i]), std::move(series))});
  }
  return weighted_system(std::move(entries), family);
}

} // namespace torfib
