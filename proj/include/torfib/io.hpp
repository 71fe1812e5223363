#pragma once

// JSON documents consumed and produced by the command-line tool.
//
// Model document:
//   {"a": [[exponent, numerator, denominator], ...], "b": [...]}
// System document:
//   {"tau0": [re, im], "log_k": k, "radius": R,
//    "entries": [{"weight": w, "mu": m, "series": [[power, re, im], ...]}, ...]}
// Numerators and denominators may be JSON integers or decimal strings.
// Unknown keys are rejected.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "disk_fibration.hpp"
#include "errors.hpp"
#include "kodaira.hpp"
#include "multiplicity.hpp"
#include "rational.hpp"

namespace torfib::io {

using json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                                const std::string& where) {
  if (!obj.is_object()) throw input_error(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto k : allowed) known = known || item.key() == k;
    if (!known) throw input_error(where + ": unknown key \"" + item.key() + "\"");
  }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw input_error(where + ": missing key \"" + key + "\"");
  return *it;
}

inline std::int64_t as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw input_error(where + ": expected an integer");
  return v.get<std::int64_t>();
}

inline double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw input_error(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw input_error(where + ": expected a finite number");
  return d;
}

inline integer as_big_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) throw input_error(where + ": empty integer string");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw input_error(where + ": invalid integer string \"" + s + "\"");
    }
    return integer(s);
  }
  throw input_error(where + ": expected an integer or integer string");
}

inline laurent_poly parse_laurent(const json& v, const std::string& where) {
  if (!v.is_array()) throw input_error(where + ": expected a list of [exponent, numerator, denominator]");
  laurent_poly p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const auto& term = v[i];
    if (!term.is_array() || term.size() != 3) throw input_error(at + ": expected [exponent, numerator, denominator]");
    const auto exponent = as_int(term[0], at);
    if (exponent < -100000 || exponent > 100000) throw input_error(at + ": exponent out of range");
    const integer num = as_big_int(term[1], at);
    const integer den = as_big_int(term[2], at);
    if (den == 0) throw input_error(at + ": zero denominator");
    p.add_term(static_cast<int>(exponent), rational(num, den));
  }
  return p;
}

inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

} // namespace detail

inline weierstrass_model parse_model(const json& doc) {
  detail::reject_unknown_keys(doc, {"a", "b"}, "model");
  return {detail::parse_laurent(detail::require(doc, "a", "model"), "model.a"),
          detail::parse_laurent(detail::require(doc, "b", "model"), "model.b")};
}

inline json model_to_json(const weierstrass_model& model) {
  auto poly = [](const laurent_poly& p) {
    json arr = json::array();
    for (const auto& [e, c] : p.terms()) {
      arr.push_back({e, boost::multiprecision::numerator(c).str(), boost::multiprecision::denominator(c).str()});
    }
    return arr;
  };
  return {{"a", poly(model.a)}, {"b", poly(model.b)}};
}

struct system_document {
  weighted_system system;
  bezout_certificate certificate; // of the multiplicities, in entry order
  bool weights_from_bezout;
};

/// Throws input_error for malformed documents, gcd_error when the
/// multiplicities have gcd > 1, weight_sum_error when explicit weights do not
/// give total multiplicity one.
inline system_document parse_system(const json& doc) {
  detail::reject_unknown_keys(doc, {"tau0", "log_k", "radius", "entries"}, "system");
  const auto& tau_v = detail::require(doc, "tau0", "system");
  if (!tau_v.is_array() || tau_v.size() != 2) throw input_error("system.tau0: expected [re, im]");
  const complex tau0{detail::as_real(tau_v[0], "system.tau0"), detail::as_real(tau_v[1], "system.tau0")};
  std::int64_t log_k = 0;
  if (auto it = doc.find("log_k"); it != doc.end()) log_k = detail::as_int(*it, "system.log_k");
  double radius = 1.0;
  if (auto it = doc.find("radius"); it != doc.end()) radius = detail::as_real(*it, "system.radius");
  if (log_k < 0 || log_k > 1000) throw input_error("system.log_k: out of range");

  const auto& entries_v = detail::require(doc, "entries", "system");
  if (!entries_v.is_array() || entries_v.empty()) throw input_error("system.entries: expected a nonempty list");

  std::vector<std::int64_t> mus;
  std::vector<std::optional<std::int64_t>> weights;
  std::vector<std::vector<series_term>> series;
  for (std::size_t i = 0; i < entries_v.size(); ++i) {
    const std::string at = "system.entries[" + std::to_string(i) + "]";
    const auto& e = entries_v[i];
    detail::reject_unknown_keys(e, {"weight", "mu", "series"}, at);
    const auto mu = detail::as_int(detail::require(e, "mu", at), at + ".mu");
    if (mu < 1 || mu > 1000000) throw input_error(at + ".mu: must be a positive integer");
    mus.push_back(mu);
    if (auto it = e.find("weight"); it != e.end()) {
      weights.emplace_back(detail::as_int(*it, at + ".weight"));
    } else {
      weights.emplace_back();
    }
    const auto& sv = detail::require(e, "series", at);
    if (!sv.is_array()) throw input_error(at + ".series: expected a list of [power, re, im]");
    std::vector<series_term> terms;
    for (std::size_t j = 0; j < sv.size(); ++j) {
      const std::string tat = at + ".series[" + std::to_string(j) + "]";
      const auto& term = sv[j];
      if (!term.is_array() || term.size() != 3) throw input_error(tat + ": expected [power, re, im]");
      const auto power = detail::as_int(term[0], tat);
      if (power < -1000 || power > 1000) throw input_error(tat + ": power out of range");
      terms.push_back({static_cast<int>(power), {detail::as_real(term[1], tat), detail::as_real(term[2], tat)}});
    }
    series.push_back(std::move(terms));
  }

  fiber_family family = [&] {
    try {
      return fiber_family(tau0, static_cast<int>(log_k), radius);
    } catch (const domain_error& e) {
      throw input_error(std::string("system: ") + e.what());
    }
  }();

  const multiplicity_vector mu(mus);
  auto cert = bezout_weights(mu);
  if (cert.gcd != 1) {
    throw gcd_error("gcd of multiplicities is " + std::to_string(cert.gcd) + "; the averaging construction needs gcd 1");
  }
  std::size_t given = 0;
  for (const auto& w : weights) given += w.has_value() ? 1 : 0;
  if (given != 0 && given != weights.size()) {
    throw input_error("system.entries: give a weight for every entry or for none");
  }
  const bool from_bezout = given == 0;

  std::vector<weighted_entry> entries;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    const std::int64_t w = from_bezout ? cert.weights[i] : *weights[i];
    entries.push_back({w, branched_multisection(static_cast<int>(mus[i]), std::move(series[i]))});
  }
  return {weighted_system(std::move(entries), family), std::move(cert), from_bezout};
}

inline json system_to_json(const weighted_system& sys) {
  const auto& f = sys.family();
  json entries = json::array();
  for (const auto& [w, ms] : sys.entries()) {
    json terms = json::array();
    for (const auto& [p, c] : ms.series()) terms.push_back({p, c.real(), c.imag()});
    entries.push_back({{"weight", w}, {"mu", ms.mu()}, {"series", terms}});
  }
  json doc = {{"tau0", {f.tau0().real(), f.tau0().imag()}}};
  if (f.log_k() != 0) doc["log_k"] = f.log_k();
  doc["radius"] = f.radius();
  doc["entries"] = entries;
  return doc;
}

inline json multiplicities_json(const multiplicity_vector& mu) { return json(mu.values()); }

inline json fiber_report_json(const fiber_data& data) {
  return {{"kodaira", data.kodaira.tag()},
          {"v_delta", data.v_delta},
          {"multiplicities", multiplicities_json(data.multiplicities)},
          {"component_count", data.component_count},
          {"min", data.min},
          {"gcd", data.gcd},
          {"admissible", data.min == data.gcd}};
}

inline json catalog_json(const std::vector<kodaira_type>& types) {
  json rows = json::array();
  bool all = true;
  for (const auto& t : types) {
    const auto mu = component_multiplicities(t);
    const auto adm = admissibility_report(mu);
    all = all && adm.admissible;
    const auto vd = discriminant_valuation(t);
    rows.push_back({{"tag", t.tag()},
                    {"multiplicities", multiplicities_json(mu)},
                    {"v_delta", vd ? json(*vd) : json(nullptr)},
                    {"min", adm.min},
                    {"gcd", adm.gcd},
                    {"admissible", adm.admissible}});
  }
  return {{"rows", rows}, {"all_admissible", all}};
}

/// CSV with header radius,sup_phi,c1_abs; '.' decimals, '\n' line endings.
inline std::string extension_csv(const extension_verdict& v) {
  std::string out = "radius,sup_phi,c1_abs\n";
  for (const auto& c : v.circles) {
    out += detail::format_double(c.radius) + "," + detail::format_double(c.sup_phi) + "," +
           detail::format_double(c.c1_abs) + "\n";
  }
  return out;
}

inline json extension_json(const extension_verdict& v) {
  json circles = json::array();
  for (const auto& c : v.circles) {
    circles.push_back({{"radius", c.radius},
                       {"sup_phi", c.sup_phi},
                       {"c1_abs", c.lifted ? json(c.c1_abs) : json(nullptr)},
                       {"lifted", c.lifted},
                       {"winding", {c.winding_x, c.winding_y}}});
  }
  return {{"bounded", v.bounded},
          {"growth_slope", v.growth_slope},
          {"c1_abs", v.c1_abs},
          {"c2_abs", v.c2_abs},
          {"verdict", to_string(v.verdict)},
          {"circles", circles}};
}

} // namespace torfib::io
