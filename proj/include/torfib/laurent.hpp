#pragma once

// Exact Laurent polynomials in t with rational coefficients.

#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace torfib {

/// t-adic valuation; the zero polynomial has valuation +infinity, which
/// compares above every integer.
class valuation {
public:
  constexpr valuation() = default; // +infinity
  constexpr valuation(int v) : finite_(true), v_(v) {} // NOLINT(google-explicit-constructor)

  static constexpr valuation infinity() { return {}; }

  [[nodiscard]] constexpr bool is_infinite() const noexcept { return !finite_; }
  [[nodiscard]] int value() const {
    if (!finite_) throw domain_error("valuation of zero has no integer value");
    return v_;
  }

  friend constexpr bool operator==(const valuation& a, const valuation& b) noexcept {
    return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
  }
  friend constexpr std::strong_ordering operator<=>(const valuation& a, const valuation& b) noexcept {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.v_ <=> b.v_;
  }

  [[nodiscard]] std::string str() const { return finite_ ? std::to_string(v_) : "inf"; }

private:
  bool finite_ = false;
  int v_ = 0;
};

class laurent_poly {
public:
  laurent_poly() = default;
  laurent_poly(const rational& c) { set(0, c); } // NOLINT(google-explicit-constructor)
  laurent_poly(std::int64_t c) { set(0, rational(c)); } // NOLINT(google-explicit-constructor)

  static laurent_poly monomial(const rational& c, int exponent) {
    laurent_poly p;
    p.set(exponent, c);
    return p;
  }

  /// The variable t.
  static laurent_poly t() { return monomial(rational(1), 1); }

  [[nodiscard]] const std::map<int, rational>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }

  [[nodiscard]] rational coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? rational(0) : it->second;
  }

  [[nodiscard]] valuation val() const noexcept {
    if (terms_.empty()) return valuation::infinity();
    return valuation(terms_.begin()->first);
  }

  /// Accumulates c * t^exponent.
  void add_term(int exponent, const rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Multiplication by t^k.
  [[nodiscard]] laurent_poly shifted(int k) const {
    laurent_poly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  laurent_poly& operator+=(const laurent_poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  laurent_poly& operator-=(const laurent_poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend laurent_poly operator+(laurent_poly a, const laurent_poly& b) { return a += b; }
  friend laurent_poly operator-(laurent_poly a, const laurent_poly& b) { return a -= b; }
  friend laurent_poly operator-(const laurent_poly& a) { return laurent_poly() - a; }

  friend laurent_poly operator*(const laurent_poly& a, const laurent_poly& b) {
    laurent_poly out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    }
    return out;
  }

  friend bool operator==(const laurent_poly&, const laurent_poly&) = default;

  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + to_string(c) + ")";
      if (e != 0) s += "*t^" + std::to_string(e);
    }
    return s;
  }

private:
  void set(int exponent, const rational& c) {
    if (c != 0) terms_[exponent] = c;
  }

  std::map<int, rational> terms_;
};

} // namespace torfib
