#pragma once

namespace kpz {

/// Lower-tail rate function of the narrow-wedge KPZ height,
///
///   Φ₋(z) = 4/(15π⁶)(1-π²z)^{5/2} - 4/(15π⁶) + 2/(3π⁴) z - z²/(2π²),   z <= 0.
///
/// The four terms cancel to third order at the origin (Φ₋ ~ |z|³/12), so
/// for small |z| the value comes from the binomial series instead of the
/// closed form.  Throws DomainError for z > 0 or non-finite z.
double phi_minus(double z);

/// β-scaled rate (2/β)^5 Φ₋((β/2)² z).  Reduces to phi_minus at β = 2.
double phi_minus_scaled(double beta, double z);

struct RatePoint {
    double z = 0.0;
    double value = 0.0;
};

// Below this |π²z| the series branch is used.
inline constexpr double kRateSeriesSwitch = 0.1;

}  // namespace kpz
