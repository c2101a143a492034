#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kpz {

/// Riccati flow g' = V - λ - g² with V piecewise constant on cells of width
/// h, started at g = +∞.  Each time g reaches -∞ it is restarted at +∞.
///
/// On a cell the flow has a closed form (cot, coth or tanh, or 1/(s + c)
/// when V = λ), so the integration is exact for the piecewise-constant
/// potential and explosions are counted without a cutoff.
struct RiccatiState {
    double g = 0.0;  // +inf right after a restart
    std::size_t explosions = 0;

    static RiccatiState entrance();
};

/// Advance over one cell with V - λ = c.  Returns the explosions in the cell.
std::size_t riccati_step(RiccatiState& state, double c, double h);

/// Total explosions over the cells, started from +∞.
std::size_t count_explosions(std::span<const double> cell_potential, double h, double lambda);

/// Explosions in consecutive windows of `cells_per_window` cells, one
/// uninterrupted flow.  A trailing partial window is counted too.
std::vector<std::size_t> explosions_per_window(std::span<const double> cell_potential, double h, double lambda,
                                               std::size_t cells_per_window);

}  // namespace kpz
