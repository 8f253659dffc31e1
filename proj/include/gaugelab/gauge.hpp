#pragma once

#include <complex>
#include <vector>

#include "gaugelab/calculus.hpp"
#include "gaugelab/geometry.hpp"
#include "gaugelab/potentials.hpp"

namespace gaugelab {

// Electric charge in units of the electron charge.
struct ChargeSpec {
  double q = 0.0;
};

// Integer tolerance for every quantization check.
inline constexpr double kQuantizationTolerance = 1e-6;

// |holonomy - 1| below which a loop phase counts as trivial.
inline constexpr double kTrivialHolonomyTolerance = 1e-9;

struct QuantizationReport {
  double product = 0.0;
  long long nearest_integer = 0;
  double defect = 0.0;
  bool satisfied = false;
};

// Nearest-integer decomposition of `product`.
QuantizationReport integer_report(double product);

// exp(+i q circulation). Throws NotClosed for open loops.
std::complex<double> holonomy(ChargeSpec q, const PotentialSpec& spec, const ParamPath& loop,
                              const QuadratureConfig& cfg = {});

// A^I - A^II at p; analytically 2g / (r sin theta) phi-hat.
FieldSample string_gauge_difference(double g, const Point3& p);

// qg = n/2 with hbar = c = 1, checked as integrality of 2qg.
QuantizationReport dirac_condition(ChargeSpec q, double g);

// q kappa must be an integer.
QuantizationReport kappa_condition(ChargeSpec q, double kappa);

// The factorized form q kappa = n_q n_kappa with q = n_q / N and
// kappa = N n_kappa. Both factors are checked separately; a pair can satisfy
// kappa_condition without admitting this factorization for a given N.
struct FactorizedReport {
  int N = 1;
  QuantizationReport charge_numerator;  // product = q N
  QuantizationReport kappa_multiple;    // product = kappa / N
  bool satisfied = false;
};
FactorizedReport factorized_kappa_condition(ChargeSpec q, double kappa, int N);

// {N n_kappa : |n_kappa| <= range}, ascending. Throws InvalidN for N = 0.
std::vector<double> kappa_spectrum(int N, int range);

struct ChargeSpectrum {
  int N = 1;
  int range = 0;
  std::vector<long long> numerators;  // n_q, ascending in charge
  std::vector<double> charges;        // n_q / N
};

// {n_q / N : |n_q| <= range}, ascending. Throws InvalidN for N = 0.
ChargeSpectrum charge_spectrum(int N, int range);

// Whether the kappa potential leaves a charge-q wave function single valued,
// decided from the holonomy around the unit circle.
bool single_valuedness(ChargeSpec q, double kappa);

}  // namespace gaugelab
