#include "kpzlab/airy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpzlab/errors.hpp"

namespace kpz {
namespace {

using std::numbers::pi;

void require_finite(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("airy: argument must be finite, got " + std::to_string(x));
    }
}

// Coefficients u_k of the large-argument expansions, and the companion
// v_k = -(6k+1)/(6k-1) u_k used for the derivative.
struct AsymptoticTerms {
    static constexpr int kMax = 60;
    double u[kMax];
    double v[kMax];
    AsymptoticTerms() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k < kMax; ++k) {
            const double kk = k;
            u[k] = u[k - 1] * (6 * kk - 5) * (6 * kk - 3) * (6 * kk - 1) / ((2 * kk - 1) * 216.0 * kk);
            v[k] = -(6 * kk + 1) / (6 * kk - 1) * u[k];
        }
    }
};

const AsymptoticTerms& terms() {
    static const AsymptoticTerms t;
    return t;
}

// Sum of (-1)^k c_k zeta^{-k} over k ≡ parity (mod step), truncated at the
// smallest term.
double alternating_sum(const double* c, double zeta, int first, int step) {
    double sum = 0.0;
    double prev = INFINITY;
    int sign = 1;
    for (int k = first; k < AsymptoticTerms::kMax; k += step) {
        const double term = c[k] * std::pow(zeta, -k);
        if (std::abs(term) > prev) break;
        sum += sign * term;
        prev = std::abs(term);
        if (prev < 1e-18 * std::abs(sum)) break;
        sign = -sign;
    }
    return sum;
}

// Plain alternating sum over all k: Σ (-1)^k c_k zeta^{-k}.
double full_sum(const double* c, double zeta) {
    double sum = 0.0;
    double prev = INFINITY;
    double zk = 1.0;
    for (int k = 0; k < AsymptoticTerms::kMax; ++k) {
        const double term = c[k] * zk;
        if (std::abs(term) > prev) break;
        sum += (k % 2 == 0) ? term : -term;
        prev = std::abs(term);
        if (prev < 1e-18 * std::abs(sum)) break;
        zk /= zeta;
    }
    return sum;
}

}  // namespace

namespace {
// The series cancels ~e^{(2/3)x^{3/2}} down to Ai(x); the constants need
// more than double precision for that.
constexpr long double kC1L = 0.355028053887817239260063186004183558L;
constexpr long double kC2L = 0.258819403792806798405183560189203963L;
}  // namespace

namespace detail {

double airy_ai_series(double x) {
    // Ai = c1 f - c2 g with f = Σ a_k, g = Σ b_k; long double keeps the
    // cancellation at |x| = 8 below 1e-12 absolute.
    const long double x3 = static_cast<long double>(x) * x * x;
    long double a = 1.0L, b = x;
    long double f = a, g = b;
    for (int k = 1; k < 200; ++k) {
        a *= x3 / ((3.0L * k - 1) * (3.0L * k));
        b *= x3 / ((3.0L * k) * (3.0L * k + 1));
        f += a;
        g += b;
        if (std::abs(a) + std::abs(b) < 1e-22L * (std::abs(f) + std::abs(g) + 1e-300L)) break;
    }
    return static_cast<double>(kC1L * f - kC2L * g);
}

double airy_ai_prime_series(double x) {
    const long double xl = x;
    const long double x3 = xl * xl * xl;
    long double p = xl * xl / 2.0L;  // first term of f'
    long double q = 1.0L;           // first term of g'
    long double fp = p, gp = q;
    for (int k = 2; k < 200; ++k) {
        p *= x3 / (3.0L * (3.0L * k - 1) * (k - 1));
        fp += p;
        if (std::abs(p) < 1e-22L * (std::abs(fp) + 1e-300L)) break;
    }
    for (int k = 1; k < 200; ++k) {
        q *= x3 / ((3.0L * k) * (3.0L * k - 2));
        gp += q;
        if (std::abs(q) < 1e-22L * (std::abs(gp) + 1e-300L)) break;
    }
    return static_cast<double>(kC1L * fp - kC2L * gp);
}

double airy_ai_asymptotic(double x) {
    const auto& t = terms();
    if (x > 0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        return std::exp(-zeta) / (2.0 * std::sqrt(pi) * std::pow(x, 0.25)) * full_sum(t.u, zeta);
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double p = alternating_sum(t.u, zeta, 0, 2);
    const double q = alternating_sum(t.u, zeta, 1, 2);
    const double phase = zeta - pi / 4;
    return (std::cos(phase) * p + std::sin(phase) * q) / (std::sqrt(pi) * std::pow(z, 0.25));
}

double airy_ai_prime_asymptotic(double x) {
    const auto& t = terms();
    if (x > 0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        return -std::pow(x, 0.25) * std::exp(-zeta) / (2.0 * std::sqrt(pi)) * full_sum(t.v, zeta);
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double r = alternating_sum(t.v, zeta, 0, 2);
    const double s = alternating_sum(t.v, zeta, 1, 2);
    const double phase = zeta - pi / 4;
    return std::pow(z, 0.25) / std::sqrt(pi) * (std::sin(phase) * r - std::cos(phase) * s);
}

}  // namespace detail

AiryEval airy_ai(double x) {
    require_finite(x);
    if (std::abs(x) <= kAirySeriesLimit) {
        const double v = detail::airy_ai_series(x);
        return {v, x > 0 ? v * std::exp(2.0 / 3.0 * x * std::sqrt(x)) : v};
    }
    if (x < 0) {
        const double v = detail::airy_ai_asymptotic(x);
        return {v, v};
    }
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double scaled = full_sum(terms().u, zeta) / (2.0 * std::sqrt(pi) * std::pow(x, 0.25));
    return {scaled * std::exp(-zeta), scaled};
}

std::vector<AiryEval> airy_ai_batch(std::span<const double> xs) {
    std::vector<AiryEval> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(airy_ai(x));
    return out;
}

double airy_ai_prime(double x) {
    require_finite(x);
    if (std::abs(x) <= kAirySeriesLimit) return detail::airy_ai_prime_series(x);
    return detail::airy_ai_prime_asymptotic(x);
}

double airy_kernel(double x, double y) {
    const double ax = airy_ai(x).value, ay = airy_ai(y).value;
    const double dx = airy_ai_prime(x), dy = airy_ai_prime(y);
    if (std::abs(x - y) < 1e-8 * (1.0 + std::abs(x))) {
        const double m = 0.5 * (x + y);
        const double am = airy_ai(m).value, dm = airy_ai_prime(m);
        return dm * dm - m * am * am;
    }
    return (ax * dy - dx * ay) / (x - y);
}

}  // namespace kpz
