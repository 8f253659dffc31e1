#include "gaugelab/descriptors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <sstream>

#include "gaugelab/errors.hpp"

namespace gaugelab {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Typed access to a descriptor object that rejects unknown keys up front.
class Fields {
 public:
  Fields(const json& j, std::string what, std::initializer_list<const char*> allowed)
      : j_(j), what_(std::move(what)) {
    if (!j.is_object()) throw InvalidArgument(what_ + " descriptor must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return key == a; });
      if (!known) throw InvalidArgument(what_ + " descriptor has unknown field \"" + key + "\"");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key) const {
    if (!has(key)) throw InvalidArgument(what_ + " descriptor is missing \"" + key + "\"");
    return as_number(j_.at(key), key);
  }
  double number_or(const char* key, double fallback) const {
    return has(key) ? as_number(j_.at(key), key) : fallback;
  }
  int integer_or(const char* key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw InvalidArgument(what_ + " field \"" + key + "\" must be an integer");
    return v.get<int>();
  }
  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw InvalidArgument(what_ + " field \"" + key + "\" must be true or false");
    return v.get<bool>();
  }
  Point3 point(const char* key) const {
    if (!has(key)) throw InvalidArgument(what_ + " descriptor is missing \"" + key + "\"");
    return as_point(j_.at(key), key);
  }
  Point3 point_or(const char* key, Point3 fallback) const {
    return has(key) ? as_point(j_.at(key), key) : fallback;
  }
  std::vector<Point3> points(const char* key) const {
    if (!has(key) || !j_.at(key).is_array()) {
      throw InvalidArgument(what_ + " field \"" + key + "\" must be an array of points");
    }
    std::vector<Point3> out;
    for (const auto& p : j_.at(key)) out.push_back(as_point(p, key));
    return out;
  }
  std::vector<double> numbers_or(const char* key) const {
    std::vector<double> out;
    if (!has(key)) return out;
    if (!j_.at(key).is_array()) throw InvalidArgument(what_ + " field \"" + key + "\" must be an array");
    for (const auto& v : j_.at(key)) out.push_back(as_number(v, key));
    return out;
  }
  const json& raw(const char* key) const {
    if (!has(key)) throw InvalidArgument(what_ + " descriptor is missing \"" + key + "\"");
    return j_.at(key);
  }

 private:
  double as_number(const json& v, const char* key) const {
    if (!v.is_number()) throw InvalidArgument(what_ + " field \"" + key + "\" must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InvalidArgument(what_ + " field \"" + key + "\" must be finite");
    return d;
  }
  Point3 as_point(const json& v, const char* key) const {
    if (!v.is_array() || v.size() != 3) {
      throw InvalidArgument(what_ + " field \"" + key + "\" must be a 3-element array");
    }
    return {as_number(v[0], key), as_number(v[1], key), as_number(v[2], key)};
  }

  const json& j_;
  std::string what_;
};

std::string kind_of(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw InvalidArgument(what + " descriptor needs a string \"kind\"");
  }
  return j.at("kind").get<std::string>();
}

}  // namespace

PotentialSpec potential_from_json(const json& j) {
  const std::string kind = kind_of(j, "potential");
  if (kind == "dirac-string-i") {
    Fields f(j, "potential", {"kind", "g"});
    return PotentialSpec::dirac_string_i(f.number("g"));
  }
  if (kind == "dirac-string-ii") {
    Fields f(j, "potential", {"kind", "g"});
    return PotentialSpec::dirac_string_ii(f.number("g"));
  }
  if (kind == "kappa") {
    Fields f(j, "potential", {"kind", "kappa"});
    return PotentialSpec::pure_gauge_kappa(f.number("kappa"));
  }
  if (kind == "ab-solenoid") {
    Fields f(j, "potential", {"kind", "B", "R"});
    return PotentialSpec::ab_solenoid(f.number("B"), f.number("R"));
  }
  if (kind == "solenoid-kappa") {
    Fields f(j, "potential", {"kind", "kappa", "R"});
    return PotentialSpec::solenoid_kappa(f.number("kappa"), f.number("R"));
  }
  if (kind == "superposition") {
    Fields f(j, "potential", {"kind", "members"});
    const json& members = f.raw("members");
    if (!members.is_array()) throw InvalidArgument("superposition \"members\" must be an array");
    std::vector<PotentialSpec> specs;
    for (const auto& m : members) specs.push_back(potential_from_json(m));
    return PotentialSpec::superposition(std::move(specs));
  }
  throw InvalidArgument("unknown potential kind \"" + kind + "\"");
}

json potential_to_json(const PotentialSpec& spec) {
  return std::visit(
      Overloaded{
          [](const DiracStringI& s) { return json{{"kind", "dirac-string-i"}, {"g", s.g}}; },
          [](const DiracStringII& s) { return json{{"kind", "dirac-string-ii"}, {"g", s.g}}; },
          [](const PureGaugeKappa& s) { return json{{"kind", "kappa"}, {"kappa", s.kappa}}; },
          [](const AbSolenoid& s) { return json{{"kind", "ab-solenoid"}, {"B", s.B}, {"R", s.R}}; },
          [](const SolenoidKappa& s) {
            return json{{"kind", "solenoid-kappa"}, {"kappa", s.kappa}, {"R", s.R}};
          },
          [](const Superposition& s) {
            json members = json::array();
            for (const auto& m : s.members) members.push_back(potential_to_json(m));
            return json{{"kind", "superposition"}, {"members", members}};
          },
      },
      spec.kind());
}

ParamPath path_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "unit-circle") return unit_circle();
    throw InvalidArgument("unknown path shorthand \"" + j.get<std::string>() + "\"");
  }
  const std::string kind = kind_of(j, "path");
  if (kind == "circle") {
    Fields f(j, "path", {"kind", "center", "radius", "normal", "turns"});
    return circle(f.point_or("center", {0, 0, 0}), f.number_or("radius", 1.0),
                  f.point_or("normal", {0, 0, 1}), f.integer_or("turns", 1));
  }
  if (kind == "segment") {
    Fields f(j, "path", {"kind", "from", "to"});
    return segment(f.point("from"), f.point("to"));
  }
  if (kind == "polyline" || kind == "custom-samples") {
    Fields f(j, "path", {"kind", "points", "closed"});
    std::vector<Point3> pts = f.points("points");
    bool closed = f.boolean_or("closed", false);
    // Sampled closed curves often repeat the first sample at the end.
    if (closed && pts.size() > 2 && norm(pts.back() - pts.front()) == 0.0) pts.pop_back();
    return polyline(std::move(pts), closed);
  }
  throw InvalidArgument("unknown path kind \"" + kind + "\"");
}

std::vector<double> shell_radii(const PotentialSpec& spec) {
  std::vector<double> out;
  for (const auto& e : spec.patch().excluded()) {
    if (e.kind == ExcludedKind::kCylinderShell) out.push_back(e.radius);
  }
  return out;
}

ParamSurface surface_from_json(const json& j, std::span<const double> shells) {
  auto make_disk = [&](const Point3& c, double radius, const Vec3& n, std::vector<double> splits) {
    const Vec3 nh = n / norm(n);
    const bool axis_disk = std::hypot(c.x, c.y) <= kAxisGuard && std::hypot(nh.x, nh.y) <= 1e-12;
    if (axis_disk) splits.insert(splits.end(), shells.begin(), shells.end());
    return disk(c, radius, n, splits);
  };
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "unit-disk") return make_disk({0, 0, 0}, 1.0, {0, 0, 1}, {});
    if (name == "unit-sphere") return sphere({0, 0, 0}, 1.0);
    throw InvalidArgument("unknown surface shorthand \"" + name + "\"");
  }
  const std::string kind = kind_of(j, "surface");
  if (kind == "disk") {
    Fields f(j, "surface", {"kind", "center", "radius", "normal", "split_radii"});
    return make_disk(f.point_or("center", {0, 0, 0}), f.number_or("radius", 1.0),
                     f.point_or("normal", {0, 0, 1}), f.numbers_or("split_radii"));
  }
  if (kind == "sphere") {
    Fields f(j, "surface", {"kind", "center", "radius"});
    return sphere(f.point_or("center", {0, 0, 0}), f.number_or("radius", 1.0));
  }
  throw InvalidArgument("unknown surface kind \"" + kind + "\"");
}

json parse_descriptor(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    // Shorthands may be passed without JSON quotes.
    const bool bare = !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
    });
    if (bare) return json(text);
    throw InvalidArgument("descriptor is not valid JSON: " + text);
  }
  return j;
}

Point3 parse_point(const std::string& text) {
  std::string s = text;
  if (!s.empty() && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  in.imbue(std::locale::classic());
  Point3 p;
  std::string extra;
  if (!(in >> p.x >> p.y >> p.z) || (in >> extra)) {
    throw InvalidArgument("point must be given as x,y,z: \"" + text + "\"");
  }
  if (!is_finite(p)) throw InvalidArgument("point coordinates must be finite");
  return p;
}

}  // namespace gaugelab
