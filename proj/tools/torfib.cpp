// torfib: command-line driver.
//
//   torfib classify     --input model.json [--output report.json]
//   torfib section      (--input system.json | --mu 2,3 [--seed N --degree D])
//                       [--output report.json] [--csv samples.csv]
//                       [--tol X] [--coef-tol X] [--radii R1,R2,...] [--samples N]
//   torfib table        [--output catalog.json]
//   torfib torsor-check [--seed N] [--n-range A..B] [--tol X] [--output report.json]
//
// Exit codes: 0 success, 1 malformed input, 2 classification error,
// 3 gcd of multiplicities > 1, 4 lift failure, 5 torsor invariant failure,
// 6 section constructed but not verified (monodromy or extension check failed).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <torfib/disk_fibration.hpp>
#include <torfib/io.hpp>
#include <torfib/kodaira.hpp>
#include <torfib/torsor_suite.hpp>

namespace {

using torfib::io::json;

enum exit_code : int {
  ok = 0,
  malformed = 1,
  classification = 2,
  gcd = 3,
  lift = 4,
  invariant = 5,
  unverified = 6,
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw torfib::input_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw torfib::input_error(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw torfib::input_error("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw torfib::input_error("not an integer list: " + s);
    }
  }
  if (out.empty()) throw torfib::input_error("empty integer list");
  return out;
}

struct options {
  std::string input;
  std::string output;
  std::string csv;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  double coef_tol = 1e-6;
  std::vector<double> radii = torfib::default_radii();
  int samples = 256;
  std::string mu;
  int degree = 8;
  std::string n_range = "1..12";
  bool inject_mutation = false;
};

int cmd_classify(const options& opt) {
  const auto model = torfib::io::parse_model(read_json(opt.input));
  json report;
  try {
    report = torfib::io::fiber_report_json(torfib::fiber_report(model));
  } catch (const torfib::degenerate_model& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return classification;
  } catch (const torfib::unclassified_valuations& e) {
    std::cerr << "classify: " << e.what() << "\n";
    return classification;
  }
  write_json(opt.output, json{{"command", "classify"}, {"report", report}});
  return ok;
}

int cmd_table(const options& opt) {
  json doc = {{"command", "table"}};
  doc.update(torfib::io::catalog_json(torfib::kodaira_catalog()));
  write_json(opt.output, doc);
  return doc["all_admissible"].get<bool>() ? ok : invariant;
}

int cmd_section(const options& opt) {
  if (opt.input.empty() == opt.mu.empty()) throw torfib::input_error("section: give exactly one of --input or --mu");
  torfib::weighted_system sys = [&] {
    if (!opt.input.empty()) return torfib::io::parse_system(read_json(opt.input)).system;
    return torfib::build_synthetic_model(torfib::multiplicity_vector(parse_int_list(opt.mu)), opt.seed, opt.degree);
  }();
  const auto cert = torfib::bezout_weights(sys.multiplicities());

  const double r0 = opt.radii.empty() ? sys.family().radius() : opt.radii.front();
  constexpr int monodromy_points = 32;
  double max_defect = 0.0;
  for (int j = 0; j < monodromy_points; ++j) {
    const torfib::complex t = std::polar(r0, 2.0 * std::numbers::pi * (j + 0.5) / monodromy_points);
    max_defect = std::max(max_defect, torfib::monodromy_defect(sys, t));
  }
  const bool monodromy_pass = max_defect <= opt.tol;

  json weights = json::array();
  for (const auto& e : sys.entries()) weights.push_back(e.weight);
  json report = {{"command", "section"},
                 {"multiplicities", torfib::io::multiplicities_json(sys.multiplicities())},
                 {"bezout", {{"weights", cert.weights}, {"gcd", cert.gcd}}},
                 {"weights", weights},
                 {"monodromy", {{"points", monodromy_points}, {"tol", opt.tol}, {"max_defect", max_defect},
                                {"pass", monodromy_pass}}}};

  bool removable = false;
  std::string csv;
  if (sys.family().constant_tau()) {
    torfib::extension_options eopt;
    eopt.coefficient_tol = opt.coef_tol;
    const auto verdict = torfib::extension_check(sys, opt.radii, opt.samples, eopt);
    report["extension"] = torfib::io::extension_json(verdict);
    removable = verdict.verdict == torfib::extension_status::removable;
    csv = torfib::io::extension_csv(verdict);
  } else {
    report["extension"] = {{"verdict", "inconclusive"}, {"reason", "extension check needs a constant tau"}};
  }
  report["section_verified"] = removable && monodromy_pass;

  write_json(opt.output, report);
  std::string csv_path = opt.csv;
  if (csv_path.empty() && !opt.output.empty()) {
    csv_path = std::filesystem::path(opt.output).replace_extension(".csv").string();
  }
  if (!csv_path.empty() && !csv.empty()) write_text(csv_path, csv);
  return removable && monodromy_pass ? ok : unverified;
}

int cmd_torsor_check(const options& opt) {
  const auto sep = opt.n_range.find("..");
  if (sep == std::string::npos) throw torfib::input_error("--n-range expects A..B");
  const auto lo = parse_int_list(opt.n_range.substr(0, sep));
  const auto hi = parse_int_list(opt.n_range.substr(sep + 2));
  if (lo.size() != 1 || hi.size() != 1 || lo[0] < 1 || hi[0] < lo[0] || hi[0] > 64) {
    throw torfib::input_error("--n-range expects 1 <= A <= B <= 64");
  }

  const torfib::combine_options combine{opt.inject_mutation};
  std::vector<torfib::invariant_result> results;
  auto append = [&](std::vector<torfib::invariant_result> more) {
    for (auto& r : more) results.push_back(std::move(r));
  };
  torfib::cyclic_suite_config cyc;
  cyc.n_min = lo[0];
  cyc.n_max = hi[0];
  cyc.combine = combine;
  append(torfib::cyclic_suite(cyc));

  torfib::numeric_suite_config num;
  num.seed = opt.seed;
  num.tolerance = opt.tol;
  num.combine = combine;
  append(torfib::torus_suite(num));

  torfib::curve_suite_config cur;
  cur.seed = opt.seed;
  cur.combine = combine;
  append(torfib::curve_suite(cur));

  json invariants = json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    invariants.push_back({{"instance", r.instance},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"cases", r.cases},
                          {"counterexample", r.counterexample ? json(*r.counterexample) : json(nullptr)}});
  }
  json report = {{"command", "torsor-check"},
                 {"seed", opt.seed},
                 {"n_range", {lo[0], hi[0]}},
                 {"inject_mutation", opt.inject_mutation},
                 {"invariants", invariants},
                 {"all_pass", all}};
  write_json(opt.output, report);
  return all ? ok : invariant;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"torfib: torsor averaging on torus fibrations and Kodaira fiber multiplicities"};
  app.require_subcommand(1);
  options opt;

  auto* classify = app.add_subcommand("classify", "Classify the fiber at t = 0 of a Weierstrass model");
  classify->add_option("--input", opt.input, "Model document (JSON)")->required();
  classify->add_option("--output", opt.output, "Report path (default: stdout)");

  auto* section = app.add_subcommand("section", "Average a weighted multisection system and verify the section");
  section->add_option("--input", opt.input, "System document (JSON)");
  section->add_option("--mu", opt.mu, "Build a synthetic system for these multiplicities, e.g. 2,3");
  section->add_option("--degree", opt.degree, "Degree of synthetic branch series")->check(CLI::Range(0, 64));
  section->add_option("--seed", opt.seed, "Seed for synthetic systems");
  section->add_option("--output", opt.output, "Report path (default: stdout)");
  section->add_option("--csv", opt.csv, "CSV sample path (default: report path with .csv)");
  section->add_option("--tol", opt.tol, "Monodromy tolerance")->check(CLI::PositiveNumber);
  section->add_option("--coef-tol", opt.coef_tol, "Negative Laurent coefficient threshold")
      ->check(CLI::PositiveNumber);
  section->add_option("--radii", opt.radii, "Decreasing sampling radii")->delimiter(',');
  section->add_option("--samples", opt.samples, "Samples per circle")->check(CLI::Range(16, 1 << 20));

  auto* table = app.add_subcommand("table", "Emit the Kodaira catalog with min/gcd of multiplicities");
  table->add_option("--output", opt.output, "Catalog path (default: stdout)");

  auto* torsor = app.add_subcommand("torsor-check", "Run the torsor invariant suite");
  torsor->add_option("--seed", opt.seed, "Seed for the numeric and curve suites");
  torsor->add_option("--n-range", opt.n_range, "Range of n for the exhaustive Z/n suite, A..B");
  torsor->add_option("--tol", opt.tol, "Torus equality tolerance")->check(CLI::PositiveNumber);
  torsor->add_option("--output", opt.output, "Report path (default: stdout)");
  torsor->add_flag("--inject-mutation", opt.inject_mutation, "Negative control: corrupt weighted_combine")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : malformed;
  }

  try {
    if (*classify) return cmd_classify(opt);
    if (*section) return cmd_section(opt);
    if (*table) return cmd_table(opt);
    if (*torsor) return cmd_torsor_check(opt);
  } catch (const torfib::gcd_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gcd;
  } catch (const torfib::lift_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lift;
  } catch (const torfib::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return malformed;
  }
  return malformed;
}
