#include "bloch/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "bloch/error.hpp"

namespace bloch {

using Json = nlohmann::ordered_json;

std::string to_string(ConventionNote note) {
  return note == ConventionNote::paper_verified ? "paper_verified" : "unresolved_convention";
}

ConventionNote convention_from_string(const std::string& s) {
  if (s == "paper_verified") return ConventionNote::paper_verified;
  if (s == "unresolved_convention") return ConventionNote::unresolved_convention;
  throw InvalidArgument("unknown convention note '" + s + "'");
}

namespace {

std::string identity(const SectionSpec& spec, const std::vector<TransposeSpec>& conditions) {
  return "n=" + std::to_string(spec.n) + " gens=" + spec.label() + " conditions=" + decompositions_label(conditions);
}

struct Measures {
  double total;
  std::vector<double> singles;
  double joint;
};

Measures measure(const RegionPredicate& pred, double tol, bool three_d) {
  const RegionMeasures m = three_d ? measure_3d(pred, tol) : measure_2d(pred, tol);
  return {m.total, m.per_condition, m.joint};
}

ScenarioResult analyze(int n, std::vector<int> gens, std::vector<TransposeSpec> conditions, bool with_boundary,
                       const AnalysisOptions& options, int arity) {
  SectionSpec spec;
  try {
    spec = SectionSpec::make(n, gens);
  } catch (const InvalidArgument& e) {
    std::string list;
    for (std::size_t i = 0; i < gens.size(); ++i) list += (i ? "," : "") + std::to_string(gens[i]);
    throw InvalidArgument("n=" + std::to_string(n) + " gens={" + list + "}: " + e.what());
  }
  if (spec.arity() != arity) {
    throw InvalidArgument(std::string(arity == 2 ? "pair" : "triad") + " analysis needs exactly " +
                          std::to_string(arity) + " generators");
  }
  if (conditions.empty()) throw InvalidArgument("at least one decomposition is required");
  const bool three_d = arity == 3;
  const double tol = options.tol > 0.0 ? options.tol : (three_d ? 1e-6 : 1e-8);
  const std::string who = identity(spec, conditions);

  try {
    const RegionPredicate pred = RegionPredicate::make(spec, conditions);
    Measures m = measure(pred, tol, three_d);
    double deviation = 0.0;
    if (options.audit) {
      const Measures fine = measure(pred, tol / 16.0, three_d);
      const double scale = std::max(1.0, fine.total);
      deviation = std::max(std::abs(fine.total - m.total), std::abs(fine.joint - m.joint));
      const double prob_dev = std::abs(fine.joint / fine.total - m.joint / m.total);
      if (deviation > tol * scale || prob_dev > tol * scale) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "exactness audit failed: values moved by %.3g against tolerance %.3g",
                      std::max(deviation, prob_dev), tol * scale);
        throw NumericalFailure(buf, std::max(deviation, prob_dev));
      }
      deviation = std::max(deviation, prob_dev);
      m = fine;
    }

    ScenarioResult r;
    r.spec = spec;
    r.conditions = conditions;
    r.total_measure = m.total;
    r.condition_measures = m.singles;
    r.joint_measure = m.joint;
    r.probability = m.total > 0.0 ? std::clamp(m.joint / m.total, 0.0, 1.0) : 0.0;
    r.tolerance = tol;
    r.audit_deviation = deviation;

    if (with_boundary) {
      const RegionPredicate outer = RegionPredicate::make(spec);
      BoundaryReport b;
      if (three_d) {
        const SurfacePartition s = surface_area_3d(outer, pred, options.surface);
        b.total = s.total_area;
        b.classified = s.classified_area;
      } else {
        const BoundaryPartition p = boundary_partition_2d(outer, pred, options.boundary_target);
        b.total = p.total_length;
        b.classified = p.classified_length;
        b.interior = interior_interface_2d(outer, pred, options.boundary_target);
      }
      b.probability = b.total > 0.0 ? b.classified / b.total : 0.0;
      r.boundary = b;
    }
    return r;
  } catch (const NumericalFailure& e) {
    throw NumericalFailure(who + ": " + e.what(), e.residual());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(who + ": " + e.what());
  }
}

}  // namespace

ScenarioResult analyze_pair(int n, std::vector<int> pair, std::vector<TransposeSpec> conditions, bool with_boundary,
                            const AnalysisOptions& options) {
  return analyze(n, std::move(pair), std::move(conditions), with_boundary, options, 2);
}

ScenarioResult analyze_triad(int n, std::vector<int> triad, std::vector<TransposeSpec> conditions,
                             bool with_boundary_surface, const AnalysisOptions& options) {
  return analyze(n, std::move(triad), std::move(conditions), with_boundary_surface, options, 3);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json encode(const ScenarioResult& r) {
  Json j;
  j["n"] = r.spec.n;
  j["gens"] = r.spec.gens;
  Json conds = Json::array();
  for (const TransposeSpec& t : r.conditions) conds.push_back(t.label());
  j["conditions"] = conds;
  j["total"] = r.total_measure;
  j["condition_measures"] = r.condition_measures;
  j["joint"] = r.joint_measure;
  j["probability"] = r.probability;
  j["tolerance"] = r.tolerance;
  j["audit_deviation"] = r.audit_deviation;
  j["convention"] = to_string(r.convention);
  if (r.boundary) {
    const BoundaryReport& b = *r.boundary;
    Json jb;
    jb["measure"] = r.spec.arity() == 3 ? "area" : "length";
    jb["total"] = b.total;
    jb["classified"] = b.classified;
    jb["probability"] = b.probability;
    if (b.interior) jb["interior"] = *b.interior;
    jb["convention"] = to_string(b.convention);
    j["boundary"] = jb;
  }
  return j;
}

ScenarioResult decode(const Json& j) {
  ScenarioResult r;
  r.spec = SectionSpec::make(j.at("n").get<int>(), j.at("gens").get<std::vector<int>>());
  for (const auto& c : j.at("conditions")) r.conditions.push_back(TransposeSpec::parse(c.get<std::string>()));
  r.total_measure = j.at("total").get<double>();
  r.condition_measures = j.at("condition_measures").get<std::vector<double>>();
  r.joint_measure = j.at("joint").get<double>();
  r.probability = j.at("probability").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.audit_deviation = j.at("audit_deviation").get<double>();
  r.convention = convention_from_string(j.at("convention").get<std::string>());
  if (j.contains("boundary")) {
    const Json& jb = j.at("boundary");
    BoundaryReport b;
    b.total = jb.at("total").get<double>();
    b.classified = jb.at("classified").get<double>();
    b.probability = jb.at("probability").get<double>();
    if (jb.contains("interior")) b.interior = jb.at("interior").get<double>();
    b.convention = convention_from_string(jb.at("convention").get<std::string>());
    r.boundary = b;
  }
  return r;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed scenario JSON: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string to_json(const ScenarioResult& r, int indent) { return encode(r).dump(indent) + "\n"; }

std::string to_json(const std::vector<ScenarioResult>& rs, int indent) {
  Json arr = Json::array();
  for (const ScenarioResult& r : rs) arr.push_back(encode(r));
  return arr.dump(indent) + "\n";
}

ScenarioResult scenario_from_json(const std::string& text) {
  try {
    return decode(parse(text));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("scenario JSON: ") + e.what());
  }
}

std::vector<ScenarioResult> scenarios_from_json(const std::string& text) {
  const Json j = parse(text);
  std::vector<ScenarioResult> out;
  try {
    if (j.is_array()) {
      for (const Json& e : j) out.push_back(decode(e));
    } else {
      out.push_back(decode(j));
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("scenario JSON: ") + e.what());
  }
  return out;
}

std::string csv_header() {
  return "n,gens,conditions,total,joint,probability,condition_measures,tolerance,audit_deviation,"
         "boundary_total,boundary_classified,boundary_probability,interior,boundary_convention";
}

std::string to_csv_row(const ScenarioResult& r) {
  auto join_ints = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
  };
  std::string conds;
  for (std::size_t i = 0; i < r.conditions.size(); ++i) conds += (i ? ";" : "") + r.conditions[i].label();
  std::string singles;
  for (std::size_t i = 0; i < r.condition_measures.size(); ++i) singles += (i ? ";" : "") + fmt(r.condition_measures[i]);
  std::string row = std::to_string(r.spec.n) + "," + join_ints(r.spec.gens) + "," + conds + "," + fmt(r.total_measure) +
                    "," + fmt(r.joint_measure) + "," + fmt(r.probability) + "," + singles + "," + fmt(r.tolerance) +
                    "," + fmt(r.audit_deviation) + ",";
  if (r.boundary) {
    const BoundaryReport& b = *r.boundary;
    row += fmt(b.total) + "," + fmt(b.classified) + "," + fmt(b.probability) + "," +
           (b.interior ? fmt(*b.interior) : std::string()) + "," + to_string(b.convention);
  } else {
    row += ",,,,";
  }
  return row;
}

}  // namespace bloch
