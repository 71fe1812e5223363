#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over exact rationals, with the
// chord-tangent group law, and the torsor instance built on it.

#include <cstdint>
#include <optional>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace torfib {

class curve_point {
public:
  curve_point() = default; // point at infinity
  curve_point(rational x, rational y) : affine_(affine{std::move(x), std::move(y)}) {}

  static curve_point infinity() { return {}; }

  [[nodiscard]] bool is_infinity() const noexcept { return !affine_.has_value(); }
  [[nodiscard]] const rational& x() const { return affine_->x; }
  [[nodiscard]] const rational& y() const { return affine_->y; }

  friend bool operator==(const curve_point& p, const curve_point& q) {
    if (p.is_infinity() || q.is_infinity()) return p.is_infinity() == q.is_infinity();
    return p.x() == q.x() && p.y() == q.y();
  }

  [[nodiscard]] std::string str() const {
    if (is_infinity()) return "O";
    return "(" + to_string(x()) + ", " + to_string(y()) + ")";
  }

private:
  struct affine {
    rational x;
    rational y;
  };
  std::optional<affine> affine_;
};

class rational_curve {
public:
  rational_curve(rational a, rational b) : a_(std::move(a)), b_(std::move(b)) {
    if (discriminant() == 0) throw singular_curve("curve y^2 = x^3 + ax + b is singular");
  }

  [[nodiscard]] const rational& a() const noexcept { return a_; }
  [[nodiscard]] const rational& b() const noexcept { return b_; }

  /// -16 (4a^3 + 27b^2)
  [[nodiscard]] rational discriminant() const { return rational(-16) * (4 * a_ * a_ * a_ + 27 * b_ * b_); }

  [[nodiscard]] bool contains(const curve_point& p) const {
    if (p.is_infinity()) return true;
    return p.y() * p.y() == p.x() * p.x() * p.x() + a_ * p.x() + b_;
  }

  void require_on_curve(const curve_point& p) const {
    if (!contains(p)) throw off_curve("point " + p.str() + " is not on the curve");
  }

  friend bool operator==(const rational_curve&, const rational_curve&) = default;

private:
  rational a_;
  rational b_;
};

inline curve_point ec_neg(const curve_point& p, const rational_curve& e) {
  e.require_on_curve(p);
  if (p.is_infinity()) return p;
  return {p.x(), -p.y()};
}

inline curve_point ec_add(const curve_point& p, const curve_point& q, const rational_curve& e) {
  e.require_on_curve(p);
  e.require_on_curve(q);
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  rational slope;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y() == 0) return curve_point::infinity();
    slope = (3 * p.x() * p.x() + e.a()) / (2 * p.y());
  } else {
    slope = (q.y() - p.y()) / (q.x() - p.x());
  }
  rational x3 = slope * slope - p.x() - q.x();
  rational y3 = slope * (p.x() - x3) - p.y();
  return {std::move(x3), std::move(y3)};
}

inline curve_point ec_sub(const curve_point& p, const curve_point& q, const rational_curve& e) {
  return ec_add(p, ec_neg(q, e), e);
}

inline curve_point ec_scalar_mul(std::int64_t k, const curve_point& p, const rational_curve& e) {
  e.require_on_curve(p);
  curve_point base = k < 0 ? ec_neg(p, e) : p;
  std::uint64_t n = k < 0 ? std::uint64_t{0} - static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
  curve_point result;
  while (n != 0) {
    if (n & 1U) result = ec_add(result, base, e);
    n >>= 1U;
    if (n != 0) base = ec_add(base, base, e);
  }
  return result;
}

/// mu(x, y, z) = x + y - z in the Mordell-Weil group. Equality is exact.
class curve_torsor {
public:
  using point_type = curve_point;

  explicit curve_torsor(rational_curve curve) : curve_(std::move(curve)) {}

  [[nodiscard]] const rational_curve& curve() const noexcept { return curve_; }

  [[nodiscard]] curve_point mu(const curve_point& x, const curve_point& y, const curve_point& z) const {
    return ec_sub(ec_add(x, y, curve_), z, curve_);
  }

  [[nodiscard]] double distance(const curve_point& p, const curve_point& q) const { return p == q ? 0.0 : 1.0; }

  [[nodiscard]] double tolerance() const noexcept { return 0.0; }

private:
  rational_curve curve_;
};

} // namespace torfib
