#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bloch/enumeration.hpp"
#include "bloch/error.hpp"
#include "bloch/fullspace.hpp"
#include "bloch/refdata.hpp"
#include "bloch/scenarios.hpp"
#include "bloch/svg.hpp"

namespace bloch::cli {

namespace {

struct Config {
  int n = 0;
  std::vector<int> gens;
  std::string decomp;
  bool boundary = false;
  bool boundary_surface = false;
  std::string svg;
  bool json = false;
  bool csv = false;
  double tol = 0.0;
  std::string out;
  int parallel = 1;
  std::string matrix_case = "real";
  std::string constraints = "base";
  std::int64_t samples = 1000000;
  std::uint64_t seed = 1;
  bool plain = false;
  std::string table;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<TransposeSpec> conditions_or_default(const Config& c) {
  if (!c.decomp.empty()) return parse_decompositions(c.decomp);
  if (c.n == 4) return {TransposeSpec::parse("2x2")};
  throw InvalidArgument("--decomp is required for n=" + std::to_string(c.n));
}

std::string render(const std::vector<ScenarioResult>& rs, bool csv) {
  if (csv) {
    std::string s = csv_header() + "\n";
    for (const auto& r : rs) s += to_csv_row(r) + "\n";
    return s;
  }
  return (rs.size() == 1 ? to_json(rs.front()) : to_json(rs)) + "\n";
}

int cmd_pair(const Config& c, std::ostream& out) {
  if (c.gens.size() != 2) throw InvalidArgument("pair needs exactly two generators");
  const auto conds = conditions_or_default(c);
  AnalysisOptions opt;
  opt.tol = c.tol;
  const auto r = analyze_pair(c.n, c.gens, conds, c.boundary, opt);
  if (!c.svg.empty()) write_output(c.svg, pair_svg(r.spec, conds), out);
  write_output(c.out, render({r}, c.csv), out);
  return kExitOk;
}

int cmd_triad(const Config& c, std::ostream& out) {
  if (c.gens.size() != 3) throw InvalidArgument("triad needs exactly three generators");
  AnalysisOptions opt;
  opt.tol = c.tol;
  const auto r = analyze_triad(c.n, c.gens, conditions_or_default(c), c.boundary_surface, opt);
  write_output(c.out, render({r}, c.csv), out);
  return kExitOk;
}

int cmd_enumerate(const Config& c, std::ostream& out) {
  EnumerationOptions opt;
  opt.workers = c.parallel;
  const auto table = enumerate_classes(c.n, conditions_or_default(c), opt);
  const bool json = c.json || ends_with(c.out, ".json");
  write_output(c.out, json ? class_table_json(table) + "\n" : class_table_csv(table), out);
  return kExitOk;
}

int cmd_fullspace(const Config& c, std::ostream& out) {
  const auto mc = matrix_case_from_string(c.matrix_case);
  const auto level = constraint_level_from_string(c.constraints);
  const auto set = MinorConstraintSet::make(mc, level);
  SamplerOptions opt;
  opt.mode = c.plain ? SamplingMode::plain : SamplingMode::scrambled_sobol;
  opt.workers = c.parallel;
  const auto est = minor_volume(set, c.samples, c.seed, opt);
  const double ref = reference_value(mc, level);

  nlohmann::ordered_json j;
  j["case"] = to_string(mc);
  j["constraints"] = to_string(level);
  j["mode"] = c.plain ? "plain" : "scrambled_sobol";
  j["samples"] = est.samples;
  j["seed"] = est.seed;
  j["randomizations"] = est.randomization_means.size();
  j["normalization"] = est.normalization;
  j["mean"] = est.mean;
  j["standard_error"] = est.standard_error;
  if (std::isnan(ref)) {
    j["reference"] = nullptr;
    j["z_score"] = nullptr;
  } else {
    j["reference"] = ref;
    j["z_score"] = (est.mean - ref) / est.standard_error;
  }
  write_output(c.out, j.dump(2) + "\n", out);
  return kExitOk;
}

int cmd_compare(const Config& c, std::ostream& out, std::ostream& err) {
  const auto table = load(c.table);
  const auto conds = c.decomp.empty() ? table.conditions : parse_decompositions(c.decomp);
  AnalysisOptions opt;
  opt.tol = c.tol > 0 && c.tol < 1e-6 ? c.tol : 0.0;
  std::vector<ScenarioResult> results;
  for (const auto& row : table.rows) {
    switch (table.kind) {
      case TableKind::pairs:
        results.push_back(analyze_pair(table.n, row.gens, conds, false, opt));
        break;
      case TableKind::boundary:
      case TableKind::interior:
        results.push_back(analyze_pair(table.n, row.gens, conds, true, opt));
        break;
      case TableKind::triad_volumes:
        results.push_back(analyze_triad(table.n, row.gens, conds, false, opt));
        break;
      case TableKind::triad_boundary:
        results.push_back(analyze_triad(table.n, row.gens, conds, true, opt));
        break;
      case TableKind::constants:
        throw InvalidArgument("table '" + c.table + "' holds constants; use the fullspace command");
    }
  }
  const auto rep = compare(results, table, c.tol > 0 ? c.tol : 1e-6);
  write_output(c.out, to_json(rep) + "\n", out);
  err << "compare " << rep.table_id << ": " << rep.passed << " passed, " << rep.failed << " failed, "
      << rep.missing << " missing; max deviation " << rep.max_deviation
      << (rep.informational ? " (informational: unresolved convention)" : "") << "\n";
  return rep.ok() ? kExitOk : kExitComparison;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Separability atlas of low-dimensional Bloch-vector sections", "bloch-atlas"};
  app.require_subcommand(1);

  auto common_section = [&](CLI::App* s, int arity) {
    s->add_option("--n", c.n, "Hilbert-space dimension")->required();
    s->add_option("--gens", c.gens, "generator indices (1-based)")->delimiter(',')->required()->expected(arity);
    s->add_option("--decomp", c.decomp, "partial transposes, e.g. 3x2 or 4x2,2x4,mid222");
    s->add_option("--tol", c.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
    auto* j = s->add_flag("--json", c.json, "JSON output (default)");
    s->add_flag("--csv", c.csv, "CSV output")->excludes(j);
    s->add_option("--out", c.out, "output file (default stdout)");
  };

  auto* pair = app.add_subcommand("pair", "areas and separability probability of a generator pair");
  common_section(pair, 2);
  pair->add_flag("--boundary", c.boundary, "also measure boundary lengths");
  pair->add_option("--svg", c.svg, "write an SVG plot");

  auto* triad = app.add_subcommand("triad", "volumes of a generator triad");
  common_section(triad, 3);
  triad->add_flag("--boundary-surface", c.boundary_surface, "also measure boundary surface areas");

  auto* en = app.add_subcommand("enumerate", "group all generator pairs into equivalence classes");
  en->add_option("--n", c.n, "Hilbert-space dimension")->required();
  en->add_option("--decomp", c.decomp, "partial transposes");
  en->add_option("--out", c.out, "output file (.csv or .json)");
  en->add_flag("--json", c.json, "JSON output");
  en->add_option("--parallel", c.parallel, "worker threads")->check(CLI::Range(1, 256));

  auto* fs = app.add_subcommand("fullspace", "quasi-Monte-Carlo minor-relaxation volumes");
  fs->add_option("--case", c.matrix_case, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  fs->add_option("--constraints", c.constraints, "base, ppt, refine1 or refine2")
      ->check(CLI::IsMember({"base", "ppt", "refine1", "refine2"}));
  fs->add_option("--samples", c.samples, "points per estimate")->check(CLI::Range(std::int64_t{10000}, std::int64_t{1} << 40));
  fs->add_option("--seed", c.seed, "random seed");
  fs->add_flag("--plain", c.plain, "plain Monte Carlo instead of scrambled Sobol");
  fs->add_option("--parallel", c.parallel, "worker threads")->check(CLI::Range(1, 256));
  fs->add_option("--out", c.out, "output file (default stdout)");

  auto* cmp = app.add_subcommand("compare", "recompute a reference table and report deviations");
  cmp->add_option("--table", c.table, "table id")->required();
  cmp->add_option("--tol", c.tol, "pass tolerance (default 1e-6)")->check(CLI::PositiveNumber);
  cmp->add_option("--decomp", c.decomp, "override the table's partial transposes");
  cmp->add_option("--out", c.out, "report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "bloch-atlas: " << e.what() << "\n";
    return kExitArgument;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "pair") return cmd_pair(c, out);
    if (name == "triad") return cmd_triad(c, out);
    if (name == "enumerate") return cmd_enumerate(c, out);
    if (name == "fullspace") return cmd_fullspace(c, out);
    return cmd_compare(c, out, err);
  } catch (const InvalidArgument& e) {
    err << "bloch-atlas " << name << ": " << e.what() << "\n";
    return kExitArgument;
  } catch (const DataError& e) {
    err << "bloch-atlas " << name << ": reference data: " << e.what() << "\n";
    return kExitArgument;
  } catch (const NumericalFailure& e) {
    err << "bloch-atlas " << name << ": " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitNumerical;
  }
}

}  // namespace bloch::cli
