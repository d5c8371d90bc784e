#include <pfva/cli.hpp>

#include <pfva/expression.hpp>
#include <pfva/parafermion_lab.hpp>

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pfva {

namespace {

struct Config {
  int k = 2;
  int cutoff = 6;
  std::string cache_dir;
  bool json = false;
  int jobs = 1;
  int imax = 3;
};

class InvalidConfig : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void validate(const Config& c) {
  if (c.k < 2) throw InvalidConfig("--k must be an integer >= 2");
  if (c.cutoff < 0) throw InvalidConfig("--cutoff must be >= 0");
  if (c.jobs < 1) throw InvalidConfig("--jobs must be >= 1");
  if (c.imax < 0) throw InvalidConfig("--imax must be >= 0");
}

Lab make_lab(const Config& c) {
  LabOptions options;
  options.jobs = c.jobs;
  options.max_weight = c.cutoff;
  if (!c.cache_dir.empty()) options.store = std::make_shared<BasisStore>(c.cache_dir);
  return Lab(c.k, std::move(options));
}

std::string dims_line(const DimTable& t) {
  std::string s;
  for (const auto& [w, d] : t) s += (s.empty() ? "" : ", ") + std::to_string(d);
  return s;
}

nlohmann::json dims_json(const DimTable& t) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [w, d] : t) j[std::to_string(w)] = d;
  return j;
}

int cmd_dims(const Config& c, const std::string& space, bool vectors, std::ostream& out) {
  Lab lab = make_lab(c);
  const GradedBasis* basis = nullptr;
  DimTable dims;
  if (space == "V0") basis = &lab.v0(c.cutoff);
  else if (space == "N0") basis = &lab.n0(c.cutoff);
  else if (space == "J") basis = &lab.j(c.cutoff);
  else if (space == "Itilde") basis = &lab.itilde(c.cutoff);
  else dims = lab.k0_dims(c.cutoff);
  if (basis) dims = basis->dims(c.cutoff);

  if (c.json) {
    nlohmann::json j{{"space", space}, {"k", c.k}, {"cutoff", c.cutoff}, {"dims", dims_json(dims)}};
    if (vectors && basis) j["vectors"] = to_json(*basis, c.k, c.cutoff).at("vectors");
    out << j.dump(2) << '\n';
  } else {
    out << space << " (k=" << c.k << ", weights 0.." << c.cutoff << "): " << dims_line(dims) << '\n';
    if (vectors && basis)
      for (const auto& v : basis->truncated(c.cutoff).all_vectors()) out << "  " << to_string(v) << '\n';
  }
  return exit_ok;
}

void print_report(const CheckReport& r, std::ostream& out) {
  const char* status = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
  out << status << ' ' << r.check << " (k=" << r.k << ", finite cutoff " << r.cutoff << ")\n";
  for (const auto& [name, t] : r.dims) out << "  " << name << ": " << dims_line(t) << '\n';
  for (const auto& [name, s] : r.scalars) out << "  " << name << " = " << to_string(s) << '\n';
  for (const auto& n : r.notes) out << "  " << n << '\n';
  if (r.witness) out << "  witness: " << to_string(*r.witness) << '\n';
}

int cmd_check(const Config& c, const std::string& name, std::ostream& out) {
  std::vector<std::string> names;
  if (name == "all") {
    names = check_names();
  } else {
    bool known = false;
    for (const auto& n : check_names()) known = known || n == name;
    if (!known) throw InvalidConfig("unknown check '" + name + "'");
    names.push_back(name);
  }
  Lab lab = make_lab(c);
  std::vector<CheckReport> reports;
  for (const auto& n : names) {
    reports.push_back(run_check(lab, n, c.cutoff, c.imax));
    if (!c.json) print_report(reports.back(), out);
  }
  if (c.json) {
    if (reports.size() == 1) {
      out << to_json(reports.front()).dump(2) << '\n';
    } else {
      auto arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(to_json(r));
      out << arr.dump(2) << '\n';
    }
  }
  for (const auto& r : reports)
    if (!r.skipped && !r.pass) return exit_check_failed;
  return exit_ok;
}

std::optional<std::pair<Scalar, std::string>> recognize(const State& v, const Lab& lab) {
  if (v.is_zero()) return std::nullopt;
  const std::pair<const char*, State> named[] = {
      {"omega", lab.omega()}, {"W3", lab.w().w3}, {"W4", lab.w().w4}, {"W5", lab.w().w5}};
  for (const auto& [name, u] : named) {
    const auto& [m, cu] = *u.terms().begin();
    const Scalar c = v.coeff(m) / cu;
    if (c != 0 && v == c * u) return std::make_pair(c, std::string(name));
  }
  return std::nullopt;
}

int cmd_eval(const Config& c, const std::string& expr, std::ostream& out, std::ostream& err) {
  Lab lab = make_lab(c);
  State v;
  try {
    v = evaluate_expression(expr, lab.va(), lab.w());
  } catch (const ParseError& e) {
    err << "parse error at " << e.what() << '\n';
    err << "  " << expr << '\n' << "  " << std::string(e.column() - 1, ' ') << "^\n";
    return exit_invalid;
  }
  const auto named = recognize(v, lab);
  if (c.json) {
    nlohmann::json j{{"k", c.k}, {"expression", expr}, {"state", to_json(v)}};
    if (named) j["multiple_of"] = {{"vector", named->second}, {"coeff", to_string(named->first)}};
    out << j.dump(2) << '\n';
  } else {
    out << to_string(v) << '\n';
    if (named) out << "= " << to_string(named->first) << ' ' << named->second << '\n';
  }
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  if (const char* env = std::getenv("PFVA_CACHE_DIR")) c.cache_dir = env;

  CLI::App app{"Exact computations in the level-k vacuum module of affine sl2 and its parafermion algebra", "pfva"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--k", c.k, "Level k >= 2")->capture_default_str();
  app.add_option("--cutoff", c.cutoff, "Largest weight considered")->capture_default_str();
  app.add_option("--cache-dir", c.cache_dir, "Basis cache directory (default $PFVA_CACHE_DIR)");
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--jobs", c.jobs, "Worker threads")->capture_default_str();
  app.add_option("--imax", c.imax, "Largest i for the theta identities")->capture_default_str();

  std::string space;
  bool vectors = false;
  auto* dims = app.add_subcommand("dims", "Graded dimensions of V0, N0, J, Itilde or K0");
  dims->add_option("space", space)->required()->check(CLI::IsMember({"V0", "N0", "J", "Itilde", "K0"}));
  dims->add_flag("--vectors", vectors, "Also print the basis");

  std::string check_name;
  auto* check = app.add_subcommand("check", "Run a verification check, or all of them");
  check->add_option("name", check_name, "generation-v0, generation-n0, maximal-ideal, theta, decomposition, k0, "
                                        "proportionality or all")
      ->required();

  std::string expr;
  auto* eval = app.add_subcommand("eval", "Evaluate a mode expression such as \"h(1) f(-2) e(-1) |0>\"");
  eval->add_option("expr", expr)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_invalid;
  }

  try {
    validate(c);
    if (*dims) return cmd_dims(c, space, vectors, out);
    if (*check) return cmd_check(c, check_name, out);
    return cmd_eval(c, expr, out, err);
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return exit_resource;
  }
}

}  // namespace pfva
