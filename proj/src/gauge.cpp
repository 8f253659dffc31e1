#include "gaugelab/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "gaugelab/errors.hpp"

namespace gaugelab {

namespace {

void require_n(int N) {
  if (N == 0) throw InvalidN("N must be a nonzero integer");
}

void require_range(int range) {
  if (range < 0) throw InvalidArgument("range must be non-negative");
}

}  // namespace

QuantizationReport integer_report(double product) {
  if (!std::isfinite(product)) throw InvalidArgument("quantization product is not finite");
  QuantizationReport r;
  r.product = product;
  const double nearest = std::round(product);
  r.nearest_integer = static_cast<long long>(nearest);
  r.defect = std::abs(product - nearest);
  r.satisfied = r.defect < kQuantizationTolerance;
  return r;
}

std::complex<double> holonomy(ChargeSpec q, const PotentialSpec& spec, const ParamPath& loop,
                              const QuadratureConfig& cfg) {
  if (!loop.closed()) throw NotClosed("holonomy requires a closed loop");
  return std::polar(1.0, q.q * line_integral(spec, loop, cfg));
}

FieldSample string_gauge_difference(double g, const Point3& p) {
  if (!(std::hypot(p.x, p.y) > kAxisGuard)) {
    throw OutsideDomain("the string gauge transformation is undefined on the z-axis");
  }
  const FieldSample a = eval_potential(PotentialSpec::dirac_string_i(g), p);
  const FieldSample b = eval_potential(PotentialSpec::dirac_string_ii(g), p);
  return {a.value - b.value, p};
}

QuantizationReport dirac_condition(ChargeSpec q, double g) { return integer_report(2.0 * q.q * g); }

QuantizationReport kappa_condition(ChargeSpec q, double kappa) { return integer_report(q.q * kappa); }

FactorizedReport factorized_kappa_condition(ChargeSpec q, double kappa, int N) {
  require_n(N);
  FactorizedReport r;
  r.N = N;
  r.charge_numerator = integer_report(q.q * N);
  r.kappa_multiple = integer_report(kappa / N);
  r.satisfied = r.charge_numerator.satisfied && r.kappa_multiple.satisfied;
  return r;
}

std::vector<double> kappa_spectrum(int N, int range) {
  require_n(N);
  require_range(range);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(2 * range + 1));
  for (int n = -range; n <= range; ++n) out.push_back(static_cast<double>(N) * n);
  std::sort(out.begin(), out.end());
  return out;
}

ChargeSpectrum charge_spectrum(int N, int range) {
  require_n(N);
  require_range(range);
  ChargeSpectrum s;
  s.N = N;
  s.range = range;
  // Ascending in n_q / N; for negative N that is descending in n_q.
  for (int k = -range; k <= range; ++k) {
    const long long n = N > 0 ? k : -k;
    s.numerators.push_back(n);
    s.charges.push_back(static_cast<double>(n) / static_cast<double>(N));
  }
  return s;
}

bool single_valuedness(ChargeSpec q, double kappa) {
  const auto h = holonomy(q, PotentialSpec::pure_gauge_kappa(kappa), unit_circle());
  return std::abs(h - std::complex<double>(1.0, 0.0)) < kTrivialHolonomyTolerance;
}

}  // namespace gaugelab
