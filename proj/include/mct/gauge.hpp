#ifndef MCT_GAUGE_HPP
#define MCT_GAUGE_HPP

#include "mct/rational.hpp"

namespace mct {

constexpr double kGaugeMaxExponent = 64.0;

/// Volume of the s-dimensional unit ball, pi^{s/2} / Gamma(s/2 + 1),
/// extended to real s in [0, 64].  Evaluated in log space.
double omega(double s);

/// Diameter gauge zeta^s(d) = omega_s / 2^s * d^s for a set of diameter d.
/// The empty set costs 0; a nonempty set costs 1 at s = 0 regardless of d.
double zeta(double s, double diam, bool nonempty = true);

/// zeta as an exact rational, for the optimizers.  The double value is
/// converted exactly, so every engine sees the identical cost for the same
/// (s, diam, nonempty) triple.
Rat zeta_cost(double s, double diam, bool nonempty = true);

/// Coarea factor omega_{s-t} * omega_t / omega_s for a split of the full
/// exponent s into t and s-t.  Symmetric under t <-> s-t.
double coarea_constant(double s_total, double t);

}  // namespace mct

#endif
