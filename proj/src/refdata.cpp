#include "bloch/refdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bloch/error.hpp"
#include "bloch/expr.hpp"

#ifndef BLOCH_ATLAS_REFDATA_DIR
#define BLOCH_ATLAS_REFDATA_DIR "refdata"
#endif

namespace bloch {

namespace {

constexpr double kMinimumPrintedTolerance = 5e-7;

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  if (quoted) throw DataError("unterminated quote in CSV line: " + std::string(line));
  out.push_back(std::move(field));
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read reference file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text, std::size_t columns,
                                                const std::string& what) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != columns)
      throw DataError(what + ": expected " + std::to_string(columns) + " fields, got " +
                      std::to_string(fields.size()) + " in line '" + line + "'");
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw DataError(what + ": empty file");
  return rows;
}

struct IndexEntry {
  std::string id, file, conditions, convention, kind, checksum;
  int n = 0;
};

std::vector<IndexEntry> read_index(const std::filesystem::path& dir) {
  const auto rows = parse_csv(read_file(dir / "index.csv"), 7, "index.csv");
  std::vector<IndexEntry> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    IndexEntry e{r[0], r[1], r[3], r[4], r[5], r[6], 0};
    try {
      e.n = std::stoi(r[2]);
    } catch (const std::exception&) {
      throw DataError("index.csv: bad n for " + e.id);
    }
    out.push_back(std::move(e));
  }
  return out;
}

Quantity parse_quantity(const std::string& expr, const std::string& printed, const std::string& what) {
  Quantity q;
  q.expr = expr;
  if (!printed.empty()) {
    char* end = nullptr;
    const double v = std::strtod(printed.c_str(), &end);
    if (end == printed.c_str() || *end != '\0') throw DataError(what + ": bad number '" + printed + "'");
    q.printed = v;
    const auto dot = printed.find('.');
    if (dot != std::string::npos) {
      const auto e = printed.find_first_of("eE", dot);
      q.printed_decimals = static_cast<int>((e == std::string::npos ? printed.size() : e) - dot - 1);
    }
  }
  if (!q.expr.empty()) {
    try {
      (void)evaluate_expression(q.expr);
    } catch (const InvalidArgument& ex) {
      throw DataError(what + ": " + ex.what());
    }
  }
  return q;
}

std::vector<int> parse_key(const std::string& key) {
  std::vector<int> gens;
  std::size_t pos = 0;
  while (pos <= key.size()) {
    const auto next = std::min(key.find(';', pos), key.size());
    const std::string part = key.substr(pos, next - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return {};
    gens.push_back(std::stoi(part));
    pos = next + 1;
  }
  return gens;
}

std::string checksum_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string to_string(TableKind kind) {
  switch (kind) {
    case TableKind::pairs: return "pairs";
    case TableKind::boundary: return "boundary";
    case TableKind::interior: return "interior";
    case TableKind::triad_volumes: return "triad_volumes";
    case TableKind::triad_boundary: return "triad_boundary";
    case TableKind::constants: return "constants";
  }
  return "?";
}

TableKind table_kind_from_string(const std::string& s) {
  for (auto k : {TableKind::pairs, TableKind::boundary, TableKind::interior, TableKind::triad_volumes,
                 TableKind::triad_boundary, TableKind::constants})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown table kind '" + s + "'");
}

double Quantity::value() const {
  if (!expr.empty()) return evaluate_expression(expr);
  if (printed) return *printed;
  return std::nan("");
}

double Quantity::printed_tolerance() const noexcept {
  return std::max(kMinimumPrintedTolerance, 0.5 * std::pow(10.0, -printed_decimals));
}

const ReferenceRow* ReferenceTable::find(const std::vector<int>& gens) const {
  auto sorted = gens;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& r : rows)
    if (r.gens == sorted) return &r;
  return nullptr;
}

const ReferenceRow* ReferenceTable::find(std::string_view key) const {
  for (const auto& r : rows)
    if (r.key == key) return &r;
  return nullptr;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path refdata_directory() {
  if (const char* env = std::getenv("BLOCH_ATLAS_REFDATA"); env && *env) return env;
  return BLOCH_ATLAS_REFDATA_DIR;
}

std::vector<std::string> table_ids() { return table_ids(refdata_directory()); }

std::vector<std::string> table_ids(const std::filesystem::path& dir) {
  std::vector<std::string> ids;
  for (const auto& e : read_index(dir)) ids.push_back(e.id);
  return ids;
}

ReferenceTable load(const std::string& table_id) { return load(table_id, refdata_directory()); }

ReferenceTable load(const std::string& table_id, const std::filesystem::path& dir) {
  const auto index = read_index(dir);
  const auto it = std::find_if(index.begin(), index.end(), [&](const IndexEntry& e) { return e.id == table_id; });
  if (it == index.end()) throw InvalidArgument("unknown reference table '" + table_id + "'");

  const std::string bytes = read_file(dir / it->file);
  const std::string sum = checksum_hex(fnv1a64(bytes));
  if (sum != it->checksum)
    throw DataError("reference table '" + table_id + "' fails its checksum (expected " + it->checksum +
                    ", got " + sum + ")");

  ReferenceTable t;
  t.table_id = table_id;
  t.n = it->n;
  try {
    t.conditions = it->conditions.empty() ? std::vector<TransposeSpec>{} : parse_decompositions(it->conditions);
    t.convention = convention_from_string(it->convention);
    t.kind = table_kind_from_string(it->kind);
  } catch (const InvalidArgument& ex) {
    throw DataError("index.csv entry '" + table_id + "': " + ex.what());
  }

  const auto rows = parse_csv(bytes, 9, it->file);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    const std::string what = it->file + " row '" + f[0] + "'";
    ReferenceRow r;
    r.key = f[0];
    r.gens = parse_key(f[0]);
    if (t.kind != TableKind::constants && r.gens.empty()) throw DataError(what + ": bad generator key");
    if (!f[1].empty()) {
      try {
        r.multiplicity = std::stoi(f[1]);
      } catch (const std::exception&) {
        throw DataError(what + ": bad multiplicity");
      }
    }
    r.total = parse_quantity(f[2], f[3], what);
    r.separable = parse_quantity(f[4], f[5], what);
    r.probability = parse_quantity(f[6], f[7], what);
    r.note = f[8];
    t.rows.push_back(std::move(r));
  }
  return t;
}

ComparisonReport compare(const std::vector<ScenarioResult>& results, const ReferenceTable& table, double tol) {
  if (table.kind == TableKind::constants)
    throw InvalidArgument("table '" + table.table_id + "' holds constants, not scenarios");
  if (!(tol > 0.0)) throw InvalidArgument("comparison tolerance must be positive");

  ComparisonReport rep;
  rep.table_id = table.table_id;
  rep.convention = table.convention;
  rep.informational = table.convention == ConventionNote::unresolved_convention;
  rep.tolerance = tol;

  double sum = 0.0;
  int counted = 0;
  for (const auto& row : table.rows) {
    RowComparison rc;
    rc.key = row.key;
    rc.tolerance = tol;
    const ScenarioResult* res = nullptr;
    for (const auto& r : results)
      if (r.spec.n == table.n && r.spec.gens == row.gens) res = &r;
    if (!res) {
      ++rep.missing;
      rep.rows.push_back(std::move(rc));
      continue;
    }
    rc.found = true;

    auto add = [&](const char* name, const Quantity& q, std::optional<double> actual) {
      if (!q.present()) return;
      const double expected = q.value();
      const double a = actual.value_or(std::nan(""));
      rc.fields.emplace_back(name);
      rc.expected.push_back(expected);
      rc.actual.push_back(a);
      const double d = std::isnan(a) ? std::numeric_limits<double>::infinity() : std::abs(a - expected);
      rc.deviations.push_back(d);
      rc.max_deviation = std::max(rc.max_deviation, d);
      if (!q.exact()) rc.tolerance = std::max(rc.tolerance, q.printed_tolerance());
    };
    auto opt = [](const std::optional<BoundaryReport>& b, double BoundaryReport::*m) -> std::optional<double> {
      if (!b) return std::nullopt;
      return (*b).*m;
    };

    switch (table.kind) {
      case TableKind::pairs:
      case TableKind::triad_volumes:
        add("total", row.total, res->total_measure);
        add("separable", row.separable, res->joint_measure);
        add("probability", row.probability, res->probability);
        break;
      case TableKind::boundary:
      case TableKind::triad_boundary:
        add("total", row.total, opt(res->boundary, &BoundaryReport::total));
        add("separable", row.separable, opt(res->boundary, &BoundaryReport::classified));
        add("probability", row.probability, opt(res->boundary, &BoundaryReport::probability));
        break;
      case TableKind::interior:
        add("total", row.total, res->boundary ? res->boundary->interior : std::nullopt);
        break;
      case TableKind::constants:
        break;
    }
    rc.pass = rc.max_deviation <= rc.tolerance;
    if (rc.pass) {
      ++rep.passed;
    } else {
      ++rep.failed;
    }
    if (std::isfinite(rc.max_deviation)) {
      sum += rc.max_deviation;
      ++counted;
    }
    rep.max_deviation = std::max(rep.max_deviation, rc.max_deviation);
    rep.rows.push_back(std::move(rc));
  }
  rep.mean_deviation = counted ? sum / counted : 0.0;
  return rep;
}

std::string to_json(const ComparisonReport& report, int indent) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["table"] = report.table_id;
  j["convention"] = to_string(report.convention);
  j["status"] = report.informational ? "informational (unresolved convention)"
                                     : (report.ok() ? "pass" : "fail");
  j["tolerance"] = report.tolerance;
  j["passed"] = report.passed;
  j["failed"] = report.failed;
  j["missing"] = report.missing;
  j["max_deviation"] = std::isfinite(report.max_deviation) ? ordered_json(report.max_deviation) : ordered_json();
  j["mean_deviation"] = report.mean_deviation;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json o;
    o["key"] = r.key;
    o["found"] = r.found;
    o["pass"] = r.pass;
    o["tolerance"] = r.tolerance;
    ordered_json fields = ordered_json::array();
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      ordered_json fj;
      fj["field"] = r.fields[i];
      fj["expected"] = r.expected[i];
      fj["actual"] = std::isnan(r.actual[i]) ? ordered_json() : ordered_json(r.actual[i]);
      fj["deviation"] = std::isfinite(r.deviations[i]) ? ordered_json(r.deviations[i]) : ordered_json();
      fields.push_back(std::move(fj));
    }
    o["fields"] = std::move(fields);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  return j.dump(indent);
}

}  // namespace bloch
