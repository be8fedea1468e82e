#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bloch/ptrans.hpp"
#include "bloch/scenarios.hpp"

namespace bloch {

/// What a table's rows measure, which decides the ScenarioResult fields they
/// are compared against.
enum class TableKind { pairs, boundary, interior, triad_volumes, triad_boundary, constants };

std::string to_string(TableKind kind);
TableKind table_kind_from_string(const std::string& s);

/// One reference number: an exact expression, the printed decimal, or both.
struct Quantity {
  std::string expr;
  std::optional<double> printed;
  int printed_decimals = 0;

  bool present() const noexcept { return !expr.empty() || printed.has_value(); }
  bool exact() const noexcept { return !expr.empty(); }
  /// The expression value when there is one, otherwise the printed decimal.
  double value() const;
  /// Half a unit in the last printed place, never below 5e-7.
  double printed_tolerance() const noexcept;
};

struct ReferenceRow {
  std::string key;        ///< "3;6" for scenarios, a name for constants
  std::vector<int> gens;  ///< empty for constants
  std::optional<int> multiplicity;
  Quantity total;
  Quantity separable;
  Quantity probability;
  std::string note;
};

struct ReferenceTable {
  std::string table_id;
  int n = 0;
  std::vector<TransposeSpec> conditions;
  ConventionNote convention = ConventionNote::paper_verified;
  TableKind kind = TableKind::pairs;
  std::vector<ReferenceRow> rows;

  const ReferenceRow* find(const std::vector<int>& gens) const;
  const ReferenceRow* find(std::string_view key) const;
};

/// 64-bit FNV-1a, as stored in refdata/index.csv.
std::uint64_t fnv1a64(std::string_view bytes);

/// $BLOCH_ATLAS_REFDATA if set, otherwise the directory baked in at build time.
std::filesystem::path refdata_directory();

/// Table ids listed in the index, in index order.
std::vector<std::string> table_ids();
std::vector<std::string> table_ids(const std::filesystem::path& dir);

/// Parses and checksum-verifies one table. Throws InvalidArgument for an id
/// not in the index and DataError for missing, corrupted or unparsable files.
ReferenceTable load(const std::string& table_id);
ReferenceTable load(const std::string& table_id, const std::filesystem::path& dir);

struct RowComparison {
  std::string key;
  bool found = false;                  ///< a result for these generators was supplied
  std::vector<std::string> fields;     ///< compared quantities ("total", ...)
  std::vector<double> expected;
  std::vector<double> actual;
  std::vector<double> deviations;      ///< |actual - expected| per field
  double max_deviation = 0.0;
  double tolerance = 0.0;              ///< effective: max(requested, printed precision)
  bool pass = false;
};

struct ComparisonReport {
  std::string table_id;
  ConventionNote convention = ConventionNote::paper_verified;
  bool informational = false;  ///< unresolved convention: never fails
  double tolerance = 0.0;
  std::vector<RowComparison> rows;
  int passed = 0;
  int failed = 0;
  int missing = 0;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;

  /// True unless a row of a verified table is missing or out of tolerance.
  bool ok() const noexcept { return informational || (failed == 0 && missing == 0); }
};

/// Matches results to rows by generator set. Constants tables hold no
/// scenarios and are rejected with InvalidArgument.
ComparisonReport compare(const std::vector<ScenarioResult>& results, const ReferenceTable& table,
                         double tol);

std::string to_json(const ComparisonReport& report, int indent = 2);

}  // namespace bloch
