#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kpz {

/// Real symmetric tridiagonal matrix, optionally closed into a ring by a
/// corner entry coupling the first and last rows (periodic finite
/// differences).
///
/// Eigenvalues are located by inertia counting: the LDLᵀ pivots of A - λI
/// (the Sturm sequence for the open chain, a 2x2 block elimination of the
/// ring folded in half) have as many negative entries as A has eigenvalues
/// below λ.  Bisection on that count gives eigenvalues together with their
/// multiplicities.  Rings of at most 4096 rows are diagonalized densely
/// instead, since the folded count is only sqrt(eps)-accurate on exactly
/// degenerate pairs.
class JacobiMatrix {
public:
    /// Open chain.  `off` has diag.size() - 1 entries.
    JacobiMatrix(std::vector<double> diag, std::vector<double> off);
    /// Ring: off[i] couples i and i+1, `corner` couples 0 and n-1.  n >= 3.
    static JacobiMatrix periodic(std::vector<double> diag, std::vector<double> off, double corner);

    std::size_t size() const { return diag_.size(); }
    bool is_periodic() const { return periodic_; }
    const std::vector<double>& diagonal() const { return diag_; }
    const std::vector<double>& off_diagonal() const { return off_; }
    double corner() const { return corner_; }

    /// #{eigenvalues <= lambda}.
    std::size_t count_at_most(double lambda) const;
    /// Batched form; one pass over the matrix for all lambdas.
    void count_at_most(std::span<const double> lambdas, std::span<std::size_t> counts) const;

    /// Gershgorin enclosure [lower, upper] of the spectrum.
    double gershgorin_lower() const;
    double gershgorin_upper() const;

    /// All eigenvalues <= cap, ascending, repeated by multiplicity.  Each is
    /// located to absolute width `tol` (plus a few ulps of its magnitude).
    std::vector<double> eigenvalues_at_most(double cap, double tol = 1e-10) const;
    /// Eigenvalues with ascending indices first..last-1 (0-based).
    std::vector<double> eigenvalues_by_index(std::size_t first, std::size_t last, double tol = 1e-10) const;
    std::vector<double> all_eigenvalues(double tol = 1e-10) const;

private:
    JacobiMatrix() = default;
    void prepare();
    std::vector<double> dense_ring_eigenvalues() const;
    std::vector<double> bisect(double lo, double hi, std::size_t c_lo, std::size_t c_hi, std::size_t keep_first,
                               std::size_t keep_last, double tol) const;

    std::vector<double> diag_;
    std::vector<double> off_;
    std::vector<double> off_sq_;
    double corner_ = 0.0;
    bool periodic_ = false;
    double pivmin_ = 0.0;
};

}  // namespace kpz
