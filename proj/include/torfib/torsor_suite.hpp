#pragma once

// Invariant suite for torsor instances: the identity axiom, the group axioms
// of the induced product, and origin/permutation independence of
// weighted_combine. Exhaustive on Z/n, seeded on the torus and curve
// instances. Shared by the unit tests and `torfib torsor-check`.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "elliptic.hpp"
#include "torsor.hpp"
#include "torus.hpp"

namespace torfib {

struct invariant_result {
  invariant_result(std::string name_, std::string instance_)
      : name(std::move(name_)), instance(std::move(instance_)) {}

  std::string name;
  std::string instance;
  bool pass = true;
  std::uint64_t cases = 0;
  std::optional<std::string> counterexample;

  // Records one case; keeps the first failure.
  template <class Describe>
  void record(bool ok, Describe&& describe) {
    ++cases;
    if (!ok && pass) {
      pass = false;
      counterexample = describe();
    }
  }
};

namespace detail {

inline std::string describe_point(std::int64_t p) { return std::to_string(p); }
inline std::string describe_point(const torus_point& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.rep.real() << "," << p.rep.imag() << ")";
  return os.str();
}
inline std::string describe_point(const curve_point& p) { return p.str(); }

template <class Point>
std::string describe(const weighted_points<Point>& pts) {
  std::string s = "[";
  for (const auto& [w, p] : pts.entries()) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(w) + "*" + describe_point(p);
  }
  return s + "]";
}

// All weight vectors of the given length with entries in [-bound, bound]
// summing to one.
inline std::vector<std::vector<std::int64_t>> unit_weight_vectors(std::size_t length, std::int64_t bound) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> w(length, -bound);
  while (true) {
    std::int64_t sum = 0;
    for (auto x : w) sum += x;
    if (sum == 1) out.push_back(w);
    std::size_t i = 0;
    while (i < length && w[i] == bound) w[i++] = -bound;
    if (i == length) break;
    ++w[i];
  }
  return out;
}

} // namespace detail

template <torsor_instance T>
invariant_result check_identity(const T& inst, const std::string& instance, const std::vector<point_t<T>>& xs,
                                const std::vector<point_t<T>>& ys) {
  invariant_result r{"identity mu(x,y,y)=x", instance};
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      r.record(torsor_equal(inst, inst.mu(x, y, y), x), [&] {
        return "x=" + detail::describe_point(x) + " y=" + detail::describe_point(y);
      });
    }
  }
  return r;
}

/// Commutativity, associativity and identity of x.y = mu(x, y, e) over the
/// given triples and identities.
template <torsor_instance T>
invariant_result check_induced_group(const T& inst, const std::string& instance,
                                     const std::vector<std::array<point_t<T>, 4>>& cases) {
  invariant_result r{"induced product is an abelian group law", instance};
  for (const auto& [x, y, z, e] : cases) {
    const auto xy = induced_product(inst, x, y, e);
    const bool comm = torsor_equal(inst, xy, induced_product(inst, y, x, e));
    const bool assoc = torsor_equal(inst, induced_product(inst, xy, z, e),
                                    induced_product(inst, x, induced_product(inst, y, z, e), e));
    const bool ident = torsor_equal(inst, induced_product(inst, x, e, e), x) &&
                       torsor_equal(inst, induced_product(inst, e, x, e), x);
    const bool inv = torsor_equal(inst, induced_product(inst, x, induced_inverse(inst, x, e), e), e);
    r.record(comm && assoc && ident && inv, [&] {
      return "x=" + detail::describe_point(x) + " y=" + detail::describe_point(y) + " z=" +
             detail::describe_point(z) + " e=" + detail::describe_point(e);
    });
  }
  return r;
}

template <torsor_instance T>
invariant_result check_origin_independence(const T& inst, const std::string& instance,
                                           const std::vector<weighted_points<point_t<T>>>& systems,
                                           const std::vector<point_t<T>>& origins, combine_options opts = {}) {
  invariant_result r{"weighted_combine is origin independent", instance};
  for (const auto& pts : systems) {
    const auto ref = weighted_combine(inst, pts, origins.front(), opts);
    for (std::size_t k = 1; k < origins.size(); ++k) {
      r.record(torsor_equal(inst, weighted_combine(inst, pts, origins[k], opts), ref), [&] {
        return "points=" + detail::describe(pts) + " origins " + detail::describe_point(origins.front()) + " vs " +
               detail::describe_point(origins[k]);
      });
    }
  }
  return r;
}

struct cyclic_suite_config {
  std::int64_t n_min = 1;
  std::int64_t n_max = 12;
  std::size_t max_length = 4;
  std::int64_t weight_bound = 3;
  std::int64_t full_permutation_max_n = 6;
  combine_options combine{};
};

/// Exhaustive checks on Z/n for n in [n_min, n_max].
inline std::vector<invariant_result> cyclic_suite(const cyclic_suite_config& cfg) {
  invariant_result identity{"identity mu(x,y,y)=x", "Z/n"};
  invariant_result group{"induced product is an abelian group law", "Z/n"};
  invariant_result bijective{"x -> x.y is a bijection", "Z/n"};
  invariant_result origin{"weighted_combine is origin independent", "Z/n"};
  invariant_result perm{"weighted_combine is permutation invariant", "Z/n"};

  std::vector<std::vector<std::vector<std::int64_t>>> weights_by_length;
  for (std::size_t len = 1; len <= cfg.max_length; ++len) {
    weights_by_length.push_back(detail::unit_weight_vectors(len, cfg.weight_bound));
  }

  for (std::int64_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    const cyclic_torsor inst(n);
    const std::string tag = " (n=" + std::to_string(n) + ")";
    for (std::int64_t x = 0; x < n; ++x) {
      for (std::int64_t y = 0; y < n; ++y) {
        identity.record(inst.mu(x, y, y) == x, [&] { return "x=" + std::to_string(x) + " y=" + std::to_string(y) + tag; });
      }
    }
    for (std::int64_t e = 0; e < n; ++e) {
      for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < n; ++y) {
          const auto xy = induced_product(inst, x, y, e);
          const bool basic = xy == induced_product(inst, y, x, e) && induced_product(inst, x, e, e) == x;
          for (std::int64_t z = 0; z < n; ++z) {
            const bool assoc = induced_product(inst, xy, z, e) ==
                               induced_product(inst, x, induced_product(inst, y, z, e), e);
            group.record(basic && assoc, [&] {
              return "x=" + std::to_string(x) + " y=" + std::to_string(y) + " z=" + std::to_string(z) +
                     " e=" + std::to_string(e) + tag;
            });
          }
        }
        // x -> x.y for fixed y (here y plays the role of x) must hit every point.
        std::vector<bool> hit(static_cast<std::size_t>(n), false);
        for (std::int64_t z = 0; z < n; ++z) hit[static_cast<std::size_t>(induced_product(inst, z, x, e))] = true;
        bijective.record(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }), [&] {
          return "y=" + std::to_string(x) + " e=" + std::to_string(e) + tag;
        });
      }
    }

    for (std::size_t li = 0; li < weights_by_length.size(); ++li) {
      const std::size_t len = li + 1;
      std::vector<std::int64_t> pts(len, 0);
      while (true) {
        for (const auto& w : weights_by_length[li]) {
          weighted_points<std::int64_t> wp;
          for (std::size_t i = 0; i < len; ++i) wp.add(w[i], pts[i]);
          const auto ref = weighted_combine(inst, wp, 0, cfg.combine);
          for (std::int64_t o = 1; o < n; ++o) {
            const auto got = weighted_combine(inst, wp, o, cfg.combine);
            origin.record(got == ref, [&] {
              return "points=" + detail::describe(wp) + " origin 0 -> " + std::to_string(ref) + ", origin " +
                     std::to_string(o) + " -> " + std::to_string(got) + tag;
            });
          }
          std::vector<std::size_t> order(len);
          for (std::size_t i = 0; i < len; ++i) order[i] = i;
          auto check_order = [&] {
            weighted_points<std::int64_t> permuted;
            for (auto i : order) permuted.add(w[i], pts[i]);
            perm.record(weighted_combine(inst, permuted, 0, cfg.combine) == ref, [&] {
              return "points=" + detail::describe(wp) + " permuted=" + detail::describe(permuted) + tag;
            });
          };
          if (n <= cfg.full_permutation_max_n) {
            while (std::next_permutation(order.begin(), order.end())) check_order();
          } else if (len > 1) {
            std::reverse(order.begin(), order.end());
            check_order();
          }
        }
        std::size_t i = 0;
        while (i < len && pts[i] == n - 1) pts[i++] = 0;
        if (i == len) break;
        ++pts[i];
      }
    }
  }
  return {identity, group, bijective, origin, perm};
}

namespace detail {

template <class Point, class Draw>
std::vector<weighted_points<Point>> random_unit_systems(std::mt19937_64& rng, std::size_t count,
                                                       std::size_t max_length, std::int64_t bound, Draw draw) {
  std::vector<weighted_points<Point>> out;
  std::uniform_int_distribution<std::size_t> len_dist(1, max_length);
  std::uniform_int_distribution<std::int64_t> w_dist(-bound, bound);
  while (out.size() < count) {
    const std::size_t len = len_dist(rng);
    std::vector<std::int64_t> w(len);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i + 1 < len; ++i) sum += (w[i] = w_dist(rng));
    w[len - 1] = 1 - sum;
    if (w[len - 1] < -bound || w[len - 1] > bound) continue;
    weighted_points<Point> wp;
    for (auto wi : w) wp.add(wi, draw());
    out.push_back(std::move(wp));
  }
  return out;
}

} // namespace detail

struct numeric_suite_config {
  std::uint64_t seed = 0;
  std::size_t identity_samples = 1000;
  std::size_t group_samples = 1000;
  std::size_t combine_systems = 200;
  std::size_t origins = 8;
  std::size_t reduction_samples = 10000;
  double tolerance = torus_torsor::default_tolerance;
  combine_options combine{};
};

/// Seeded checks on C / (Z + tau Z) for a fixed set of lattices.
inline std::vector<invariant_result> torus_suite(const numeric_suite_config& cfg) {
  std::vector<invariant_result> out;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<int> shift(-50, 50);

  const std::vector<complex> taus{{0.0, 1.0}, {0.5, std::sqrt(3.0) / 2.0}, {0.3, 1.7}, {-0.45, 0.2}};
  for (const complex tau : taus) {
    const lattice lat(tau);
    const torus_torsor inst(lat, cfg.tolerance);
    std::ostringstream name;
    name << "torus tau=(" << tau.real() << "," << tau.imag() << ")";
    auto draw = [&] { return inst.point({coord(rng), coord(rng)}); };

    std::vector<torus_point> xs, ys;
    for (std::size_t i = 0; i < cfg.identity_samples; ++i) {
      xs.push_back(draw());
      ys.push_back(draw());
    }
    invariant_result ident{"identity mu(x,y,y)=x within 1e-12", name.str()};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      ident.record(inst.distance(inst.mu(xs[i], ys[i], ys[i]), xs[i]) <= 1e-12, [&] {
        return "x=" + detail::describe_point(xs[i]) + " y=" + detail::describe_point(ys[i]);
      });
    }
    out.push_back(ident);

    std::vector<std::array<torus_point, 4>> triples;
    for (std::size_t i = 0; i < cfg.group_samples; ++i) triples.push_back({draw(), draw(), draw(), draw()});
    out.push_back(check_induced_group(inst, name.str(), triples));

    auto systems = detail::random_unit_systems<torus_point>(rng, cfg.combine_systems, 6, 3, draw);
    std::vector<torus_point> origins;
    for (std::size_t i = 0; i < cfg.origins; ++i) origins.push_back(draw());
    out.push_back(check_origin_independence(inst, name.str(), systems, origins, cfg.combine));

    invariant_result red{"reduction is idempotent and lattice periodic within 1e-12", name.str()};
    for (std::size_t i = 0; i < cfg.reduction_samples / taus.size(); ++i) {
      const complex z{coord(rng), coord(rng)};
      const int m = shift(rng);
      const int k = shift(rng);
      const auto base = reduce_mod_lattice(z, lat);
      const auto again = reduce_mod_lattice(base.rep, lat);
      const auto moved = reduce_mod_lattice(z + static_cast<double>(m) + static_cast<double>(k) * tau, lat);
      auto [x, y] = lat.coordinates(base.rep);
      const bool in_domain = x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0;
      red.record(in_domain && torus_distance(lat, again.rep, base.rep) <= 1e-12 &&
                     torus_distance(lat, moved.rep, base.rep) <= 1e-12,
                 [&] {
                   std::ostringstream os;
                   os.precision(17);
                   os << "z=(" << z.real() << "," << z.imag() << ") m=" << m << " n=" << k;
                   return os.str();
                 });
    }
    out.push_back(red);
  }
  return out;
}

/// Rational points generated from a few seeds by small integer combinations.
class curve_point_source {
public:
  curve_point_source(rational_curve curve, std::vector<curve_point> seeds, std::int64_t max_coeff = 2)
      : curve_(std::move(curve)), seeds_(std::move(seeds)), max_coeff_(max_coeff) {
    for (const auto& p : seeds_) curve_.require_on_curve(p);
  }

  curve_point draw(std::mt19937_64& rng) const {
    std::uniform_int_distribution<std::int64_t> coeff(-max_coeff_, max_coeff_);
    curve_point p;
    for (const auto& s : seeds_) p = ec_add(p, ec_scalar_mul(coeff(rng), s, curve_), curve_);
    return p;
  }

  [[nodiscard]] const rational_curve& curve() const noexcept { return curve_; }

private:
  rational_curve curve_;
  std::vector<curve_point> seeds_;
  std::int64_t max_coeff_;
};

/// y^2 = x^3 + 1 (torsion Z/6) and y^2 = x^3 - 4x + 4 (infinite order
/// points), with small seed points.
inline std::vector<curve_point_source> standard_curves() {
  auto q = [](std::int64_t v) { return rational(v); };
  return {
      curve_point_source(rational_curve(q(0), q(1)), {curve_point(q(0), q(1)), curve_point(q(2), q(3))}),
      curve_point_source(rational_curve(q(-4), q(4)),
                         {curve_point(q(0), q(2)), curve_point(q(1), q(1)), curve_point(q(2), q(-2))}, 1),
  };
}

struct curve_suite_config {
  std::uint64_t seed = 0;
  std::size_t identity_samples = 100;
  std::size_t group_samples = 40;
  std::size_t combine_systems = 60;
  std::size_t origins = 3;
  combine_options combine{};
};

inline std::vector<invariant_result> curve_suite(const curve_suite_config& cfg) {
  std::vector<invariant_result> out;
  std::mt19937_64 rng(cfg.seed);
  for (const auto& source : standard_curves()) {
    const curve_torsor inst(source.curve());
    const std::string name = "curve y^2=x^3+(" + to_string(source.curve().a()) + ")x+(" +
                             to_string(source.curve().b()) + ")";
    auto draw = [&] { return source.draw(rng); };

    std::vector<curve_point> xs, ys;
    for (std::size_t i = 0; i < cfg.identity_samples; ++i) {
      xs.push_back(draw());
      ys.push_back(draw());
    }
    invariant_result ident{"identity mu(x,y,y)=x", name};
    invariant_result on_curve{"group law outputs lie on the curve", name};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const auto m = inst.mu(xs[i], ys[i], ys[i]);
      ident.record(m == xs[i], [&] { return "x=" + xs[i].str() + " y=" + ys[i].str(); });
      const auto s = ec_add(xs[i], ys[i], inst.curve());
      on_curve.record(inst.curve().contains(s), [&] { return "x=" + xs[i].str() + " y=" + ys[i].str(); });
    }
    out.push_back(ident);
    out.push_back(on_curve);

    std::vector<std::array<curve_point, 4>> triples;
    for (std::size_t i = 0; i < cfg.group_samples; ++i) triples.push_back({draw(), draw(), draw(), draw()});
    out.push_back(check_induced_group(inst, name, triples));

    auto systems = detail::random_unit_systems<curve_point>(rng, cfg.combine_systems, 4, 3, draw);
    std::vector<curve_point> origins{curve_point::infinity()};
    while (origins.size() < cfg.origins) origins.push_back(draw());
    out.push_back(check_origin_independence(inst, name, systems, origins, cfg.combine));
  }
  return out;
}

} // namespace torfib
