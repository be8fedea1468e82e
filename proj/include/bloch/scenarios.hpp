#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bloch/ptrans.hpp"
#include "bloch/regions.hpp"
#include "bloch/sections.hpp"

namespace bloch {

/// Whether a number is reproducible as printed (areas, volumes, probabilities)
/// or depends on a boundary-measure normalization we could not pin down.
enum class ConventionNote { paper_verified, unresolved_convention };

std::string to_string(ConventionNote note);
ConventionNote convention_from_string(const std::string& s);

/// Boundary lengths (pairs) or surface areas (triads), Euclidean in
/// coefficient coordinates. `interior` is the PPT/non-PPT interface length
/// (pairs only).
struct BoundaryReport {
  double total = 0.0;
  double classified = 0.0;
  double probability = 0.0;
  std::optional<double> interior;
  ConventionNote convention = ConventionNote::unresolved_convention;
};

struct ScenarioResult {
  SectionSpec spec;
  std::vector<TransposeSpec> conditions;
  double total_measure = 0.0;
  std::vector<double> condition_measures;  ///< positivity plus each single condition
  double joint_measure = 0.0;
  double probability = 0.0;
  double tolerance = 0.0;        ///< quadrature tolerance the values were audited at
  double audit_deviation = 0.0;  ///< max change against the tighter audit run
  std::optional<BoundaryReport> boundary;
  ConventionNote convention = ConventionNote::paper_verified;
};

struct AnalysisOptions {
  double tol = 0.0;             ///< 0 selects 1e-8 for pairs, 1e-6 for triads
  bool audit = true;            ///< re-run at tol/16 and require agreement within tol
  double boundary_target = 1e-7;
  SurfaceOptions surface{1e-5};
};

ScenarioResult analyze_pair(int n, std::vector<int> pair, std::vector<TransposeSpec> conditions,
                            bool with_boundary = false, const AnalysisOptions& options = {});

ScenarioResult analyze_triad(int n, std::vector<int> triad, std::vector<TransposeSpec> conditions,
                             bool with_boundary_surface = false, const AnalysisOptions& options = {});

// Serialization. JSON keys are emitted in a fixed order and doubles in
// shortest round-trip form, so parse -> dump reproduces a file byte for byte.
std::string to_json(const ScenarioResult& r, int indent = 2);
std::string to_json(const std::vector<ScenarioResult>& rs, int indent = 2);
ScenarioResult scenario_from_json(const std::string& text);
std::vector<ScenarioResult> scenarios_from_json(const std::string& text);

/// Header line (no trailing newline) and one CSV row per result; list-valued
/// fields use ';' as the inner separator.
std::string csv_header();
std::string to_csv_row(const ScenarioResult& r);

}  // namespace bloch
