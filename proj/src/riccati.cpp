#include "kpzlab/riccati.hpp"

#include <cmath>
#include <limits>

#include "kpzlab/errors.hpp"

namespace kpz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

RiccatiState RiccatiState::entrance() { return RiccatiState{kInf, 0}; }

std::size_t riccati_step(RiccatiState& st, double c, double h) {
    double g = st.g;
    std::size_t fired = 0;
    if (c < 0.0) {
        // g = ω cot(ω s + ψ), ψ ∈ [0, π); each crossing of kπ is an explosion.
        const double w = std::sqrt(-c);
        const double psi0 = std::isinf(g) ? 0.0 : std::atan2(w, g);
        const double psi = psi0 + w * h;
        const double turns = std::floor(psi / kPi);
        fired = static_cast<std::size_t>(turns);
        const double rem = psi - turns * kPi;
        g = rem == 0.0 ? kInf : w / std::tan(rem);
    } else if (c > 0.0) {
        const double k = std::sqrt(c);
        if (std::isinf(g)) {
            g = k * coth(k * h);
        } else {
            const double y = g / k;
            if (y > 1.0) {
                g = k * coth(k * h + std::atanh(1.0 / y));
            } else if (y > -1.0) {
                g = k * std::tanh(k * h + std::atanh(y));
            } else if (y < -1.0) {
                // coth branch below -κ: blows down at s* = -acoth(y)/κ.
                const double u = std::atanh(1.0 / y);
                const double s_star = -u / k;
                if (s_star <= h) {
                    fired = 1;
                    const double rest = h - s_star;
                    g = rest > 0.0 ? k * coth(k * rest) : kInf;
                } else {
                    g = k * coth(k * h + u);
                }
            }
            // y == ±1: stationary (y == -1 is unstable but exact).
        }
    } else {
        if (std::isinf(g)) {
            g = 1.0 / h;
        } else if (g < 0.0 && -1.0 / g <= h) {
            fired = 1;
            const double rest = h + 1.0 / g;
            g = rest > 0.0 ? 1.0 / rest : kInf;
        } else {
            g = g / (1.0 + g * h);
        }
    }
    st.g = g;
    st.explosions += fired;
    return fired;
}

std::size_t count_explosions(std::span<const double> cell_potential, double h, double lambda) {
    if (!(h > 0.0)) throw ConfigError("count_explosions: cell width must be positive");
    RiccatiState st = RiccatiState::entrance();
    for (double v : cell_potential) riccati_step(st, v - lambda, h);
    return st.explosions;
}

std::vector<std::size_t> explosions_per_window(std::span<const double> cell_potential, double h, double lambda,
                                               std::size_t cells_per_window) {
    if (!(h > 0.0)) throw ConfigError("explosions_per_window: cell width must be positive");
    if (cells_per_window == 0) throw ConfigError("explosions_per_window: empty window");
    std::vector<std::size_t> out;
    RiccatiState st = RiccatiState::entrance();
    std::size_t in_window = 0;
    std::size_t count = 0;
    for (double v : cell_potential) {
        count += riccati_step(st, v - lambda, h);
        if (++in_window == cells_per_window) {
            out.push_back(count);
            count = 0;
            in_window = 0;
        }
    }
    if (in_window > 0) out.push_back(count);
    return out;
}

}  // namespace kpz
