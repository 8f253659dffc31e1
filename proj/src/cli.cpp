#include "gaugelab/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaugelab/abeffect.hpp"
#include "gaugelab/calculus.hpp"
#include "gaugelab/descriptors.hpp"
#include "gaugelab/errors.hpp"
#include "gaugelab/gauge.hpp"
#include "gaugelab/geometry.hpp"
#include "gaugelab/potentials.hpp"

namespace gaugelab::cli {

using json = nlohmann::ordered_json;

double round_significant(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

unsigned thread_budget() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GHL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

namespace {

json num(double x) { return round_significant(x); }

json vec(const Vec3& v) { return json::array({num(v.x), num(v.y), num(v.z)}); }

json quantization_json(const QuantizationReport& r) {
  return {{"product", num(r.product)},
          {"nearest_integer", r.nearest_integer},
          {"defect", num(r.defect)},
          {"satisfied", r.satisfied}};
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", round_significant(x));
  return buf;
}

const char* case_name(StokesCase c) {
  return c == StokesCase::kAxisIntercepting ? "AXIS_INTERCEPTING" : "NON_INTERCEPTING";
}

struct Options {
  // global
  double rel_tol = QuadratureConfig{}.rel_tol;
  int max_refinements = QuadratureConfig{}.max_refinements;
  int base_panels = QuadratureConfig{}.base_panels;
  std::string out_path;
  std::string format;
  // shared by commands
  std::string potential;
  std::string point;
  std::string path;
  std::string surface;
  bool field = false;
  double h = 0.0;
  double q = 1.0;
  double g = 0.0;
  double kappa = 0.0;
  int N = 0;
  int range = 0;
  std::string spectrum_kind = "charge";
  double B = 0.0;
  double R = defaults::kSolenoidRadius;
  int screen_points = defaults::kScreenPoints;

  QuadratureConfig quadrature() const {
    QuadratureConfig c;
    c.rel_tol = rel_tol;
    c.max_refinements = max_refinements;
    c.base_panels = base_panels;
    c.validate();
    return c;
  }
};

struct Output {
  std::string text;
};

Output as_json(const json& j) { return {j.dump(2) + "\n"}; }

void require_json_format(const Options& o) {
  if (!o.format.empty() && o.format != "json") {
    throw InvalidArgument("this command only supports --format json");
  }
}

PotentialSpec potential_of(const Options& o) { return potential_from_json(parse_descriptor(o.potential)); }

Output cmd_eval(const Options& o) {
  require_json_format(o);
  const PotentialSpec spec = potential_of(o);
  const Point3 p = parse_point(o.point);
  const FieldSample s = o.field ? eval_field(spec, p) : eval_potential(spec, p);
  return as_json({{"potential", json(potential_to_json(spec))},
                  {"quantity", o.field ? "field" : "potential"},
                  {"point", vec(p)},
                  {"value", vec(s.value)},
                  {"patch", spec.patch().describe()}});
}

Output cmd_curl(const Options& o) {
  require_json_format(o);
  const PotentialSpec spec = potential_of(o);
  const Point3 p = parse_point(o.point);
  const double h = o.h > 0.0 ? o.h : default_curl_step(p);
  const FieldSample s = numeric_curl(spec, p, h);
  return as_json({{"potential", json(potential_to_json(spec))},
                  {"point", vec(p)},
                  {"h", num(h)},
                  {"value", vec(s.value)}});
}

Output cmd_line_integral(const Options& o) {
  require_json_format(o);
  const PotentialSpec spec = potential_of(o);
  const ParamPath path = path_from_json(parse_descriptor(o.path));
  const QuadratureResult r = line_integral_detailed(spec, path, o.quadrature());
  return as_json({{"value", num(r.value)}, {"panels_used", r.panels_used}, {"est_error", num(r.est_error)}});
}

Output cmd_flux(const Options& o) {
  require_json_format(o);
  const PotentialSpec spec = potential_of(o);
  const auto shells = shell_radii(spec);
  const ParamSurface surf = surface_from_json(parse_descriptor(o.surface), shells);
  const QuadratureResult r = surface_flux_detailed(
      [&](const Point3& p) { return eval_field(spec, p); }, surf, o.quadrature());
  return as_json({{"value", num(r.value)}, {"panels_used", r.panels_used}, {"est_error", num(r.est_error)}});
}

Output cmd_stokes(const Options& o) {
  require_json_format(o);
  const PotentialSpec spec = potential_of(o);
  const ParamSurface surf = surface_from_json(parse_descriptor(o.surface));
  const StokesReport r = stokes_annular(spec, surf, o.quadrature());
  json samples = json::array();
  for (const auto& s : r.inner_samples) {
    samples.push_back({{"epsilon", num(s.epsilon)}, {"integral", num(s.integral)}});
  }
  return as_json({{"case", case_name(r.stokes_case)},
                  {"boundary_integral", num(r.boundary_integral)},
                  {"inner_limit_integral", num(r.inner_limit_integral)},
                  {"flux", num(r.flux)},
                  {"boundary_winding", r.boundary_winding},
                  {"interception", r.interception ? vec(*r.interception) : json(nullptr)},
                  {"inner_samples", samples},
                  {"extrapolation_defect", num(r.extrapolation_defect)}});
}

Output cmd_quantize_dirac(const Options& o) {
  require_json_format(o);
  json j{{"condition", "dirac"}, {"q", num(o.q)}, {"g", num(o.g)}};
  j.update(quantization_json(dirac_condition({o.q}, o.g)));
  return as_json(j);
}

Output cmd_quantize_kappa(const Options& o, bool with_n) {
  require_json_format(o);
  json j{{"condition", "kappa"}, {"q", num(o.q)}, {"kappa", num(o.kappa)}};
  j.update(quantization_json(kappa_condition({o.q}, o.kappa)));
  j["single_valued"] = single_valuedness({o.q}, o.kappa);
  if (with_n) {
    const FactorizedReport f = factorized_kappa_condition({o.q}, o.kappa, o.N);
    j["factorized"] = {{"N", f.N},
                       {"charge_numerator", quantization_json(f.charge_numerator)},
                       {"kappa_multiple", quantization_json(f.kappa_multiple)},
                       {"satisfied", f.satisfied}};
  }
  return as_json(j);
}

Output cmd_spectrum(const Options& o) {
  const bool csv = o.format == "csv";
  if (!o.format.empty() && !csv && o.format != "json") throw InvalidArgument("unknown --format " + o.format);
  std::vector<double> values;
  json j{{"N", o.N}, {"range", o.range}};
  if (o.spectrum_kind == "charge") {
    const ChargeSpectrum s = charge_spectrum(o.N, o.range);
    values = s.charges;
    json charges = json::array();
    for (double c : s.charges) charges.push_back(num(c));
    j["numerators"] = s.numerators;
    j["charges"] = charges;
  } else if (o.spectrum_kind == "kappa") {
    values = kappa_spectrum(o.N, o.range);
    json kappas = json::array();
    for (double k : values) kappas.push_back(num(k));
    j["kappa_values"] = kappas;
  } else {
    throw InvalidArgument("--kind must be charge or kappa");
  }
  if (!csv) return as_json(j);
  std::string text = o.spectrum_kind + "\n";
  for (double v : values) text += csv_number(v) + "\n";
  return {text};
}

SolenoidConfig solenoid_of(const Options& o, bool b_given) {
  SolenoidConfig cfg{b_given ? o.B : 1.0 / (o.R * o.R), o.R};
  cfg.validate();
  return cfg;
}

Output cmd_ab_pattern(const Options& o, bool b_given) {
  const bool json_out = o.format == "json";
  if (!o.format.empty() && !json_out && o.format != "csv") throw InvalidArgument("unknown --format " + o.format);
  const SolenoidConfig cfg = solenoid_of(o, b_given);
  PotentialSpec spec = PotentialSpec::ab_solenoid(cfg.B, cfg.R);
  if (o.kappa != 0.0) {
    spec = PotentialSpec::superposition({spec, PotentialSpec::solenoid_kappa(o.kappa, cfg.R)});
  }
  const TwoPathSetup setup = default_two_path_setup(o.screen_points);
  const InterferencePattern pat =
      interference_pattern({o.q}, spec, setup, o.quadrature(), thread_budget());
  if (json_out) {
    json pos = json::array(), inten = json::array();
    for (size_t k = 0; k < pat.positions.size(); ++k) {
      pos.push_back(num(pat.positions[k]));
      inten.push_back(num(pat.intensities[k]));
    }
    return as_json({{"positions", pos}, {"intensities", inten}});
  }
  std::string text = "y,intensity\n";
  for (size_t k = 0; k < pat.positions.size(); ++k) {
    text += csv_number(pat.positions[k]) + "," + csv_number(pat.intensities[k]) + "\n";
  }
  return {text};
}

Output cmd_ab_invariance(const Options& o, bool b_given) {
  require_json_format(o);
  const SolenoidConfig cfg = solenoid_of(o, b_given);
  const TwoPathSetup setup = default_two_path_setup(o.screen_points);
  const InvarianceReport r =
      kappa_invariance_experiment({o.q}, cfg, setup, o.kappa, o.quadrature(), thread_budget());
  json j{{"q", num(o.q)},
         {"kappa", num(o.kappa)},
         {"B", num(cfg.B)},
         {"R", num(cfg.R)},
         {"max_intensity_deviation", num(r.max_intensity_deviation)},
         {"worst_position", num(setup.screen_coordinate(setup.screen_points[r.worst_index]))},
         {"quantized", r.quantized}};
  j.update(quantization_json(r.condition));
  return as_json(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gaugelab: singular gauge potentials, holonomies and Aharonov-Bohm interference"};
  app.name("gaugelab");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance")->capture_default_str();
  app.add_option("--max-refinements", o.max_refinements, "Maximum panel doublings")->capture_default_str();
  app.add_option("--base-panels", o.base_panels, "Panels per smooth piece at the coarsest level")
      ->capture_default_str();
  app.add_option("--out", o.out_path, "Write the result to this file instead of standard output");
  app.add_option("--format", o.format, "Output format: json (default) or csv (ab-pattern, spectrum)");

  std::function<Output()> action;

  auto* eval = app.add_subcommand("eval", "Evaluate a potential (or its field) at a point");
  eval->add_option("--potential", o.potential, "Potential descriptor (JSON)")->required();
  eval->add_option("--point", o.point, "Point as x,y,z")->required();
  eval->add_flag("--field", o.field, "Evaluate curl A analytically instead of A");
  eval->callback([&] { action = [&] { return cmd_eval(o); }; });

  auto* curl = app.add_subcommand("curl", "Central-difference curl of a potential");
  curl->add_option("--potential", o.potential, "Potential descriptor (JSON)")->required();
  curl->add_option("--point", o.point, "Point as x,y,z")->required();
  curl->add_option("--step", o.h, "Finite-difference step; default 1e-4 * max(1, |p|)");
  curl->callback([&] { action = [&] { return cmd_curl(o); }; });

  auto* line = app.add_subcommand("line-integral", "Circulation of a potential along a path");
  line->add_option("--potential", o.potential, "Potential descriptor (JSON)")->required();
  line->add_option("--path", o.path, "Path descriptor (JSON) or unit-circle")->required();
  line->callback([&] { action = [&] { return cmd_line_integral(o); }; });

  auto* flux = app.add_subcommand("flux", "Flux of the potential's magnetic field through a surface");
  flux->add_option("--potential", o.potential, "Potential descriptor (JSON)")->required();
  flux->add_option("--surface", o.surface, "Surface descriptor (JSON), unit-disk or unit-sphere")->required();
  flux->callback([&] { action = [&] { return cmd_flux(o); }; });

  auto* stokes = app.add_subcommand("stokes", "Annular Stokes procedure over a surface");
  stokes->add_option("--potential", o.potential, "Potential descriptor (JSON)")->required();
  stokes->add_option("--surface", o.surface, "Surface descriptor (JSON) or unit-disk")->required();
  stokes->callback([&] { action = [&] { return cmd_stokes(o); }; });

  auto* quantize = app.add_subcommand("quantize", "Charge quantization conditions");
  quantize->require_subcommand(1);
  auto* dirac = quantize->add_subcommand("dirac", "2 q g must be an integer");
  dirac->add_option("--q", o.q, "Charge in units of e")->required();
  dirac->add_option("--g", o.g, "Monopole strength")->required();
  dirac->callback([&] { action = [&] { return cmd_quantize_dirac(o); }; });
  auto* kappa = quantize->add_subcommand("kappa", "q kappa must be an integer");
  kappa->add_option("--q", o.q, "Charge in units of e")->required();
  kappa->add_option("--kappa", o.kappa, "Gauge parameter")->required();
  auto* kappa_n = kappa->add_option("--N", o.N, "Also check the factorized form for this N");
  kappa->callback([&, kappa_n] {
    const bool with_n = kappa_n->count() > 0;
    action = [&, with_n] { return cmd_quantize_kappa(o, with_n); };
  });

  auto* spectrum = app.add_subcommand("spectrum", "Allowed charges n_q / N (or kappa values N n_kappa)");
  spectrum->add_option("--N", o.N, "Nonzero integer N")->required();
  spectrum->add_option("--range", o.range, "Bound on |n|")->required();
  spectrum->add_option("--kind", o.spectrum_kind, "charge (default) or kappa");
  spectrum->callback([&] { action = [&] { return cmd_spectrum(o); }; });

  auto* pattern = app.add_subcommand("ab-pattern", "Two-path AB interference pattern (CSV y,intensity)");
  pattern->add_option("--q", o.q, "Charge in units of e")->capture_default_str();
  auto* pattern_b = pattern->add_option("--B", o.B, "Interior field; default 1/R^2 (flux pi)");
  pattern->add_option("--R", o.R, "Solenoid radius")->capture_default_str();
  pattern->add_option("--kappa", o.kappa, "Add the kappa potential outside the solenoid")->capture_default_str();
  pattern->add_option("--points", o.screen_points, "Screen points")->capture_default_str();
  pattern->callback([&, pattern_b] {
    const bool b_given = pattern_b->count() > 0;
    action = [&, b_given] { return cmd_ab_pattern(o, b_given); };
  });

  auto* invariance = app.add_subcommand("ab-invariance", "Pattern change caused by adding the kappa potential");
  invariance->add_option("--q", o.q, "Charge in units of e")->capture_default_str();
  invariance->add_option("--kappa", o.kappa, "Gauge parameter")->required();
  auto* invariance_b = invariance->add_option("--B", o.B, "Interior field; default 1/R^2 (flux pi)");
  invariance->add_option("--R", o.R, "Solenoid radius")->capture_default_str();
  invariance->add_option("--points", o.screen_points, "Screen points")->capture_default_str();
  invariance->callback([&, invariance_b] {
    const bool b_given = invariance_b->count() > 0;
    action = [&, b_given] { return cmd_ab_invariance(o, b_given); };
  });

  try {
    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  }

  Output result;
  try {
    if (!action) throw InvalidArgument("no command given");
    result = action();
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomainError;
  } catch (const NoConvergence& e) {
    err << "no convergence: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kMalformedInput;
  }

  if (o.out_path.empty()) {
    out << result.text;
    return kOk;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  file << result.text;
  file.close();
  if (!file) {
    err << "error: could not write " << o.out_path << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace gaugelab::cli
