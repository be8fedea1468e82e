#include "bloch/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "bloch/error.hpp"
#include "bloch/regions.hpp"

namespace bloch {

namespace {

struct Frame {
  double scale;
  double half = kSvgSize / 2.0;
  double x(double c) const { return half + scale * c; }
  double y(double c) const { return half - scale * c; }
};

std::string fmt(const char* f, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string polygon(const Frame& fr, const RadialProfile& p) {
  std::string d;
  for (std::size_t i = 0; i < p.angles.size(); ++i) {
    const auto q = p.point(i);
    d += fmt(i == 0 ? "M%.3f %.3f" : " L%.3f %.3f", fr.x(q[0]), fr.y(q[1]));
  }
  return d + " Z";
}

}  // namespace

std::string pair_svg(const SectionSpec& spec, const std::vector<TransposeSpec>& conditions,
                     double target_error) {
  if (spec.arity() != 2) throw InvalidArgument("SVG plots need a two-generator section");
  const double R = bounding_radius(spec.n);
  const Frame fr{kSvgSize / (2.0 * R)};

  const auto feasible = RegionPredicate::make(spec, {}, 0.0);
  const auto joint = RegionPredicate::make(spec, conditions, 0.0);
  const auto outline = boundary_polyline_2d(feasible, target_error);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  s += "<title>n=" + std::to_string(spec.n) + " " + spec.label() + " " + decompositions_label(conditions) + "</title>\n";
  s += "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  s += "<g stroke=\"#bbb\" stroke-width=\"1\">";
  s += "<line x1=\"0\" y1=\"400\" x2=\"800\" y2=\"400\"/><line x1=\"400\" y1=\"0\" x2=\"400\" y2=\"800\"/></g>\n";
  s += "<text x=\"790\" y=\"390\" text-anchor=\"end\" font-size=\"14\">c" + std::to_string(spec.gens[0]) + "</text>\n";
  s += "<text x=\"410\" y=\"18\" font-size=\"14\">c" + std::to_string(spec.gens[1]) + "</text>\n";

  if (!conditions.empty()) {
    s += "<path d=\"" + polygon(fr, boundary_polyline_2d(joint, target_error)) +
         "\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"1\"/>\n";
    static const char* colors[] = {"#31a354", "#e6550d", "#756bb1", "#636363"};
    for (std::size_t k = 0; k < conditions.size() && conditions.size() > 1; ++k) {
      const auto single = RegionPredicate::make(spec, {conditions[k]}, 0.0);
      s += "<path d=\"" + polygon(fr, boundary_polyline_2d(single, target_error)) + "\" fill=\"none\" stroke=\"" +
           colors[k % 4] + "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }
  }
  s += "<path d=\"" + polygon(fr, outline) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";

  if (!conditions.empty()) {
    const auto part = boundary_partition_2d(feasible, joint, target_error);
    const RegionModel model(feasible);
    for (const auto& [a, b] : part.classified_runs) {
      const int steps = std::max(2, static_cast<int>(std::ceil((b - a) / (2 * std::numbers::pi) * 720)));
      std::string d;
      for (int i = 0; i <= steps; ++i) {
        const double t = a + (b - a) * i / steps;
        const double u[2] = {std::cos(t), std::sin(t)};
        const double r = model.extent(u);
        d += fmt(i == 0 ? "M%.3f %.3f" : " L%.3f %.3f", fr.x(r * u[0]), fr.y(r * u[1]));
      }
      s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"#de2d26\" stroke-width=\"4\"/>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

}  // namespace bloch
