#pragma once

#include <span>
#include <vector>

namespace kpz {

/// Value of Ai at a point, plus an exponentially rescaled copy.
///
/// `scaled` is Ai(x)·exp(2/3·x^{3/2}) for x > 0 and equals `value` for
/// x <= 0.  Beyond x = 20 the scaled form is the one to use when forming
/// products, since `value` eventually underflows.
struct AiryEval {
    double value = 0.0;
    double scaled = 0.0;
};

AiryEval airy_ai(double x);
std::vector<AiryEval> airy_ai_batch(std::span<const double> xs);

/// Ai'(x), same evaluation strategy as airy_ai.
double airy_ai_prime(double x);

/// The Airy correlation kernel ∫_0^∞ Ai(x+r)Ai(y+r) dr in closed form,
/// (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y), with the diagonal limit
/// Ai'(x)^2 - x Ai(x)^2.
double airy_kernel(double x, double y);

// Ai(0) and -Ai'(0).
inline constexpr double kAiryC1 = 0.355028053887817239260063186004183558;
inline constexpr double kAiryC2 = 0.258819403792806798405183560189203963;

// |x| at which the Maclaurin series hands over to the asymptotic expansions.
inline constexpr double kAirySeriesLimit = 8.0;

namespace detail {
// Exposed for the overlap tests at the switch point.
double airy_ai_series(double x);
double airy_ai_prime_series(double x);
double airy_ai_asymptotic(double x);
double airy_ai_prime_asymptotic(double x);
}  // namespace detail

}  // namespace kpz
