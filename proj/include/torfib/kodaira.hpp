#pragma once

// Kodaira type of the fiber over t = 0 of y^2 = x^3 + a(t) x + b(t), in
// residue characteristic 0, together with the catalog of component
// multiplicities.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "multiplicity.hpp"

namespace torfib {

enum class fiber_kind { I, II, III, IV, I_star, IV_star, III_star, II_star };

struct kodaira_type {
  fiber_kind kind = fiber_kind::I;
  int n = 0; // for I_n, mI_n, I_n*
  int m = 1; // multiple-fiber factor, only for I_n

  static kodaira_type I(int n) { return {fiber_kind::I, n, 1}; }
  static kodaira_type multiple_I(int m, int n) { return {fiber_kind::I, n, m}; }
  static kodaira_type I_star(int n) { return {fiber_kind::I_star, n, 1}; }
  static kodaira_type of(fiber_kind k) { return {k, 0, 1}; }

  [[nodiscard]] bool is_multiple() const noexcept { return m > 1; }

  /// "I0", "I3", "3I2", "II", "I0*", "IV*", ...
  [[nodiscard]] std::string tag() const {
    switch (kind) {
    case fiber_kind::I: return (m > 1 ? std::to_string(m) : std::string()) + "I" + std::to_string(n);
    case fiber_kind::II: return "II";
    case fiber_kind::III: return "III";
    case fiber_kind::IV: return "IV";
    case fiber_kind::I_star: return "I" + std::to_string(n) + "*";
    case fiber_kind::IV_star: return "IV*";
    case fiber_kind::III_star: return "III*";
    case fiber_kind::II_star: return "II*";
    }
    return "?";
  }

  friend bool operator==(const kodaira_type&, const kodaira_type&) = default;
};

struct weierstrass_model {
  laurent_poly a;
  laurent_poly b;
};

/// -16 (4a^3 + 27b^2)
inline laurent_poly discriminant(const weierstrass_model& model) {
  laurent_poly delta = laurent_poly(-16) * (laurent_poly(4) * model.a * model.a * model.a +
                                            laurent_poly(27) * model.b * model.b);
  if (delta.is_zero()) throw degenerate_model("discriminant vanishes identically");
  return delta;
}

/// Rescales (a, b) -> (t^{-4k} a, t^{-6k} b) until v(a) < 4 or v(b) < 6.
///
/// Models with negative valuations are first made integral by the inverse
/// rescaling, so every output is a minimal integral model at t = 0.
inline weierstrass_model minimalize(const weierstrass_model& model) {
  discriminant(model);
  weierstrass_model out = model;
  while (out.a.val() < valuation(0) || out.b.val() < valuation(0)) {
    out.a = out.a.shifted(4);
    out.b = out.b.shifted(6);
  }
  while (out.a.val() >= valuation(4) && out.b.val() >= valuation(6)) {
    out.a = out.a.shifted(-4);
    out.b = out.b.shifted(-6);
  }
  return out;
}

struct reduction_valuations {
  valuation c4; // v(-48 a) = v(a)
  valuation c6; // v(-864 b) = v(b)
  int delta;
};

inline reduction_valuations valuations_of(const weierstrass_model& minimal) {
  return {minimal.a.val(), minimal.b.val(), discriminant(minimal).val().value()};
}

inline kodaira_type classify_valuations(const reduction_valuations& v) {
  const auto& [c4, c6, d] = v;
  if (d == 0) return kodaira_type::I(0);
  if (c4 == valuation(0)) return kodaira_type::I(d);
  if (c6 == valuation(1) && d == 2) return kodaira_type::of(fiber_kind::II);
  if (c4 == valuation(1) && d == 3) return kodaira_type::of(fiber_kind::III);
  if (c6 == valuation(2) && d == 4) return kodaira_type::of(fiber_kind::IV);
  if (c4 >= valuation(2) && c6 >= valuation(3) && d == 6) return kodaira_type::I_star(0);
  if (c4 == valuation(2) && c6 == valuation(3) && d > 6) return kodaira_type::I_star(d - 6);
  if (c6 == valuation(4) && d == 8) return kodaira_type::of(fiber_kind::IV_star);
  if (c4 == valuation(3) && d == 9) return kodaira_type::of(fiber_kind::III_star);
  if (c6 == valuation(5) && d == 10) return kodaira_type::of(fiber_kind::II_star);
  throw unclassified_valuations("no Kodaira type for (v(c4), v(c6), v(disc)) = (" + c4.str() + ", " + c6.str() +
                                ", " + std::to_string(d) + ")");
}

inline kodaira_type classify_fiber(const weierstrass_model& model) {
  return classify_valuations(valuations_of(minimalize(model)));
}

inline multiplicity_vector component_multiplicities(const kodaira_type& type) {
  using v = std::vector<std::int64_t>;
  switch (type.kind) {
  case fiber_kind::I: {
    v mu(type.n == 0 ? 1 : static_cast<std::size_t>(type.n), type.m);
    return multiplicity_vector(std::move(mu));
  }
  case fiber_kind::II: return {1};
  case fiber_kind::III: return {1, 1};
  case fiber_kind::IV: return {1, 1, 1};
  case fiber_kind::I_star: {
    v mu{1, 1, 1, 1};
    mu.insert(mu.end(), static_cast<std::size_t>(type.n) + 1, 2);
    return multiplicity_vector(std::move(mu));
  }
  case fiber_kind::IV_star: return {1, 1, 1, 2, 2, 2, 3};
  case fiber_kind::III_star: return {1, 1, 2, 2, 2, 3, 3, 4};
  case fiber_kind::II_star: return {1, 2, 2, 3, 3, 4, 4, 5, 6};
  }
  throw std::logic_error("unknown fiber kind");
}

/// Discriminant valuation of a minimal Weierstrass model with this fiber;
/// empty for multiple fibers, which have no Weierstrass model.
inline std::optional<int> discriminant_valuation(const kodaira_type& type) {
  if (type.is_multiple()) return std::nullopt;
  switch (type.kind) {
  case fiber_kind::I: return type.n;
  case fiber_kind::II: return 2;
  case fiber_kind::III: return 3;
  case fiber_kind::IV: return 4;
  case fiber_kind::I_star: return 6 + type.n;
  case fiber_kind::IV_star: return 8;
  case fiber_kind::III_star: return 9;
  case fiber_kind::II_star: return 10;
  }
  return std::nullopt;
}

/// Logarithmic transform of order m along an I_n fiber: I_n -> mI_n.
inline kodaira_type log_transform(const kodaira_type& type, int m) {
  if (m < 2) throw domain_error("log transform order must be at least 2");
  if (type.kind != fiber_kind::I || type.is_multiple()) {
    throw unsupported_type("log transform is only supported on I_n fibers, got " + type.tag());
  }
  return kodaira_type::multiple_I(m, type.n);
}

struct fiber_data {
  kodaira_type kodaira;
  multiplicity_vector multiplicities;
  int v_delta;
  std::size_t component_count;
  std::int64_t min;
  std::int64_t gcd;
};

inline fiber_data fiber_report(const weierstrass_model& model) {
  const auto minimal = minimalize(model);
  const auto vals = valuations_of(minimal);
  const auto type = classify_valuations(vals);
  auto mu = component_multiplicities(type);
  const auto adm = admissibility_report(mu);
  if (!adm.admissible) {
    throw std::logic_error("catalog entry " + type.tag() + " has min != gcd");
  }
  const auto count = mu.size();
  return {type, std::move(mu), vals.delta, count, adm.min, adm.gcd};
}

/// I_0..I_{max_n}, II, III, IV, I_0*..I_{max_n}*, IV*, III*, II*, then
/// mI_n for 2 <= m <= max_m, 0 <= n <= max_multiple_n.
inline std::vector<kodaira_type> kodaira_catalog(int max_n = 20, int max_m = 6, int max_multiple_n = 10) {
  std::vector<kodaira_type> out;
  for (int n = 0; n <= max_n; ++n) out.push_back(kodaira_type::I(n));
  out.push_back(kodaira_type::of(fiber_kind::II));
  out.push_back(kodaira_type::of(fiber_kind::III));
  out.push_back(kodaira_type::of(fiber_kind::IV));
  for (int n = 0; n <= max_n; ++n) out.push_back(kodaira_type::I_star(n));
  out.push_back(kodaira_type::of(fiber_kind::IV_star));
  out.push_back(kodaira_type::of(fiber_kind::III_star));
  out.push_back(kodaira_type::of(fiber_kind::II_star));
  for (int m = 2; m <= max_m; ++m) {
    for (int n = 0; n <= max_multiple_n; ++n) out.push_back(kodaira_type::multiple_I(m, n));
  }
  return out;
}

} // namespace torfib
