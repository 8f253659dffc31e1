#include "gaugelab/abeffect.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "gaugelab/errors.hpp"

namespace gaugelab {

void SolenoidConfig::validate() const {
  if (!std::isfinite(B)) throw InvalidArgument("solenoid field B must be finite");
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidArgument("solenoid radius R must be positive");
}

double enclosed_flux(const SolenoidConfig& cfg) {
  cfg.validate();
  return cfg.B * kPi * cfg.R * cfg.R;
}

SolenoidConfig default_solenoid() {
  const double R = defaults::kSolenoidRadius;
  return {1.0 / (R * R), R};
}

ParamPath semicircular_path(const Point3& from, const Point3& to, bool left) {
  const Vec3 half = 0.5 * (to - from);
  if (!(std::hypot(half.x, half.y) > 0.0) || half.z != 0.0) {
    throw InvalidArgument("semicircular path needs distinct endpoints in a z = const plane");
  }
  const Point3 center = from + half;
  const double side = left ? 1.0 : -1.0;
  const Vec3 perp{-half.y * side, half.x * side, 0.0};
  auto map = [=](double t) {
    const double a = kPi * t;
    return center - std::cos(a) * half + std::sin(a) * perp;
  };
  auto tangent = [=](double t) {
    const double a = kPi * t;
    return kPi * (std::sin(a) * half + std::cos(a) * perp);
  };
  return ParamPath(map, tangent, false, 64);
}

TwoPathSetup default_two_path_setup(int screen_points) {
  if (screen_points < 2) throw InvalidArgument("screen needs at least two points");
  TwoPathSetup s;
  s.source = {defaults::kSourceX, 0.0, 0.0};
  const double w = defaults::kScreenHalfWidth;
  for (int i = 0; i < screen_points; ++i) {
    const double y = -w + 2.0 * w * i / (screen_points - 1);
    s.screen_points.push_back({defaults::kScreenX, y, 0.0});
  }
  const Point3 source = s.source;
  // Going from -x to +x, "left" of the chord is the +y side.
  s.upper_path = [source](const Point3& screen) { return semicircular_path(source, screen, true); };
  s.lower_path = [source](const Point3& screen) { return semicircular_path(source, screen, false); };
  s.baseline_phase = [](const Point3& p) {
    return defaults::kWaveNumber * p.y * defaults::kSlitSeparation / defaults::kScreenDistance;
  };
  s.screen_coordinate = [](const Point3& p) { return p.y; };
  return s;
}

void validate_setup(const TwoPathSetup& setup, double solenoid_radius) {
  if (!setup.upper_path || !setup.lower_path || !setup.baseline_phase || !setup.screen_coordinate) {
    throw InvalidArgument("two-path setup is missing a builder");
  }
  const PatchSpec outside = PatchSpec::cylinder_shell(solenoid_radius);
  for (size_t k = 0; k < setup.screen_points.size(); ++k) {
    const Point3& p = setup.screen_points[k];
    const ParamPath loop = concatenate(setup.upper_path(p), reversed(setup.lower_path(p)));
    if (!loop.closed()) throw InvalidArgument("paths to screen point " + std::to_string(k) + " do not form a loop");
    if (std::abs(winding_number(loop)) != 1) {
      throw InvalidArgument("paths to screen point " + std::to_string(k) + " do not enclose the solenoid once");
    }
    // Exterior: the loop never comes closer to the axis than R.
    for (int i = 0; i <= 256; ++i) {
      const Point3 x = loop.point(i / 256.0);
      if (!(std::hypot(x.x, x.y) > solenoid_radius)) {
        throw InvalidArgument("path to screen point " + std::to_string(k) + " enters the solenoid");
      }
    }
    if (!path_in_patch(loop, outside)) {
      throw InvalidArgument("path to screen point " + std::to_string(k) + " touches the solenoid shell");
    }
  }
}

double ab_relative_phase(ChargeSpec q, const PotentialSpec& spec, const TwoPathSetup& setup,
                         std::size_t screen_index, const QuadratureConfig& cfg) {
  if (screen_index >= setup.screen_points.size()) throw InvalidArgument("screen index out of range");
  const Point3& p = setup.screen_points[screen_index];
  const double upper = line_integral(spec, setup.upper_path(p), cfg);
  const double lower = line_integral(spec, setup.lower_path(p), cfg);
  return q.q * (upper - lower);
}

InterferencePattern interference_pattern(ChargeSpec q, const PotentialSpec& spec,
                                         const TwoPathSetup& setup, const QuadratureConfig& cfg,
                                         unsigned threads) {
  const size_t n = setup.screen_points.size();
  InterferencePattern out;
  out.positions.resize(n);
  out.intensities.resize(n);
  const unsigned workers = static_cast<unsigned>(std::clamp<size_t>(threads, 1, std::max<size_t>(n, 1)));

  // errors[w] holds the first failure seen by worker w, at index failed[w].
  std::vector<std::exception_ptr> errors(workers);
  std::vector<size_t> failed(workers, n);
  auto work = [&](unsigned w) {
    for (size_t k = w; k < n; k += workers) {
      try {
        const Point3& p = setup.screen_points[k];
        const double phase = setup.baseline_phase(p) + ab_relative_phase(q, spec, setup, k, cfg);
        out.positions[k] = setup.screen_coordinate(p);
        out.intensities[k] = 1.0 + std::cos(phase);
      } catch (...) {
        errors[w] = std::current_exception();
        failed[w] = k;
        return;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  // Report the failure at the lowest screen index so errors are deterministic.
  size_t first = n;
  std::exception_ptr err;
  for (unsigned w = 0; w < workers; ++w) {
    if (errors[w] && failed[w] < first) {
      first = failed[w];
      err = errors[w];
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

InvarianceReport kappa_invariance_experiment(ChargeSpec q, const SolenoidConfig& cfg,
                                             const TwoPathSetup& setup, double kappa,
                                             const QuadratureConfig& quad, unsigned threads) {
  cfg.validate();
  InvarianceReport report;
  report.condition = kappa_condition(q, kappa);
  report.quantized = report.condition.satisfied;
  const PotentialSpec base = PotentialSpec::ab_solenoid(cfg.B, cfg.R);
  const PotentialSpec shifted =
      PotentialSpec::superposition({base, PotentialSpec::solenoid_kappa(kappa, cfg.R)});
  const auto a = interference_pattern(q, base, setup, quad, threads);
  const auto b = interference_pattern(q, shifted, setup, quad, threads);
  for (size_t k = 0; k < a.intensities.size(); ++k) {
    const double d = std::abs(a.intensities[k] - b.intensities[k]);
    if (d > report.max_intensity_deviation) {
      report.max_intensity_deviation = d;
      report.worst_index = k;
    }
  }
  return report;
}

}  // namespace gaugelab
