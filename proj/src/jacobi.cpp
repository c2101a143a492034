#include "kpzlab/jacobi.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "kpzlab/errors.hpp"

namespace kpz {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rings up to this size are diagonalized densely.  The folded inertia count
// loses about sqrt(eps) relative accuracy on exactly degenerate pairs.
constexpr std::size_t kDenseRingLimit = 4096;

// Kahan's fma determinant; a c - b² cancels badly near degenerate eigenvalues.
double det2(double a, double b, double c) {
    const double w = b * b;
    const double e = std::fma(-b, b, w);
    return std::fma(a, c, -w) + e;
}

struct Interval {
    double lo;
    double hi;
    std::size_t c_lo;
    std::size_t c_hi;
};

}  // namespace

JacobiMatrix::JacobiMatrix(std::vector<double> diag, std::vector<double> off)
    : diag_(std::move(diag)), off_(std::move(off)) {
    if (diag_.empty()) throw ConfigError("JacobiMatrix: empty matrix");
    if (off_.size() + 1 != diag_.size()) throw ConfigError("JacobiMatrix: off-diagonal length must be n-1");
    prepare();
}

JacobiMatrix JacobiMatrix::periodic(std::vector<double> diag, std::vector<double> off, double corner) {
    if (diag.size() < 3) throw ConfigError("JacobiMatrix::periodic: need at least three rows");
    JacobiMatrix m;
    m.diag_ = std::move(diag);
    m.off_ = std::move(off);
    if (m.off_.size() + 1 != m.diag_.size()) throw ConfigError("JacobiMatrix: off-diagonal length must be n-1");
    m.corner_ = corner;
    m.periodic_ = true;
    m.prepare();
    return m;
}

void JacobiMatrix::prepare() {
    off_sq_.resize(off_.size());
    double max_sq = 1.0;
    for (std::size_t i = 0; i < off_.size(); ++i) {
        off_sq_[i] = off_[i] * off_[i];
        max_sq = std::max(max_sq, off_sq_[i]);
    }
    if (periodic_) max_sq = std::max(max_sq, corner_ * corner_);
    pivmin_ = std::numeric_limits<double>::min() * max_sq;
}

double JacobiMatrix::gershgorin_lower() const {
    const std::size_t n = size();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off_[i - 1]);
        if (i + 1 < n) r += std::abs(off_[i]);
        if (periodic_ && (i == 0 || i + 1 == n)) r += std::abs(corner_);
        lo = std::min(lo, diag_[i] - r);
    }
    return lo;
}

double JacobiMatrix::gershgorin_upper() const {
    const std::size_t n = size();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off_[i - 1]);
        if (i + 1 < n) r += std::abs(off_[i]);
        if (periodic_ && (i == 0 || i + 1 == n)) r += std::abs(corner_);
        hi = std::max(hi, diag_[i] + r);
    }
    return hi;
}

std::size_t JacobiMatrix::count_at_most(double lambda) const {
    std::size_t c = 0;
    count_at_most(std::span<const double>(&lambda, 1), std::span<std::size_t>(&c, 1));
    return c;
}

void JacobiMatrix::count_at_most(std::span<const double> lambdas, std::span<std::size_t> counts) const {
    const std::size_t k = lambdas.size();
    const std::size_t n = size();
    const double pivmin = pivmin_;
    std::vector<double> d(k);
    std::vector<std::size_t> neg(k, 0);
    const double* lam = lambdas.data();

    auto guard = [pivmin](double x) { return std::abs(x) < pivmin ? -pivmin : x; };

    if (!periodic_) {
        for (std::size_t m = 0; m < k; ++m) {
            d[m] = guard(diag_[0] - lam[m]);
            neg[m] = d[m] < 0.0;
        }
        for (std::size_t i = 1; i < n; ++i) {
            const double a = diag_[i];
            const double b2 = off_sq_[i - 1];
            double* dp = d.data();
            std::size_t* np = neg.data();
            for (std::size_t m = 0; m < k; ++m) {
                double x = (a - lam[m]) - b2 / dp[m];
                x = std::abs(x) < pivmin ? -pivmin : x;
                dp[m] = x;
                np[m] += x < 0.0;
            }
        }
        std::copy(neg.begin(), neg.end(), counts.begin());
        return;
    }

    // Ring: fold node k with node n-1-k.  The ring becomes block tridiagonal
    // with 2x2 diagonal blocks and diagonal couplings, and the inertia is
    // the sum of the inertias of the block LDLᵀ pivots S_k.
    const std::size_t m = n / 2;
    const bool odd = (n % 2) == 1;
    std::vector<double> s11(k), s12(k), s22(k);
    auto block_neg = [pivmin](double& a, double b, double& c) -> std::size_t {
        double det = det2(a, b, c);
        if (std::abs(det) < pivmin) {
            // Singular pivot: perturb the block so one eigenvalue is -pivmin-ish.
            a -= pivmin;
            c -= pivmin;
            det = det2(a, b, c);
            if (std::abs(det) < pivmin) det = -pivmin;
        }
        if (det < 0.0) return 1;
        return (a + c) < 0.0 ? 2 : 0;
    };
    for (std::size_t l = 0; l < k; ++l) {
        s11[l] = diag_[0] - lam[l];
        s22[l] = diag_[n - 1] - lam[l];
        s12[l] = (m == 1 && !odd) ? corner_ + off_[0] : corner_;
        neg[l] = block_neg(s11[l], s12[l], s22[l]);
    }
    for (std::size_t b = 1; b < m; ++b) {
        const double p = off_[b - 1];           // b-1 ~ b
        const double q = off_[n - 1 - b];       // n-b ~ n-1-b
        const double a1 = diag_[b];
        const double a2 = diag_[n - 1 - b];
        const double inner = (b + 1 == m && !odd) ? off_[b] : 0.0;  // b ~ n-1-b when adjacent
        for (std::size_t l = 0; l < k; ++l) {
            const double det = det2(s11[l], s12[l], s22[l]);
            const double i11 = s22[l] / det, i22 = s11[l] / det, i12 = -s12[l] / det;
            s11[l] = a1 - lam[l] - p * p * i11;
            s22[l] = a2 - lam[l] - q * q * i22;
            s12[l] = inner - p * q * i12;
            neg[l] += block_neg(s11[l], s12[l], s22[l]);
        }
    }
    if (odd) {
        const std::size_t c = m;
        const double p = off_[c - 1];  // c-1 ~ c
        const double q = off_[c];      // c+1 ~ c
        for (std::size_t l = 0; l < k; ++l) {
            const double det = det2(s11[l], s12[l], s22[l]);
            const double i11 = s22[l] / det, i22 = s11[l] / det, i12 = -s12[l] / det;
            double x = diag_[c] - lam[l] - (p * p * i11 + 2.0 * p * q * i12 + q * q * i22);
            x = guard(x);
            neg[l] += x < 0.0;
        }
    }
    std::copy(neg.begin(), neg.end(), counts.begin());
}

std::vector<double> JacobiMatrix::bisect(double lo, double hi, std::size_t c_lo, std::size_t c_hi,
                                         std::size_t keep_first, std::size_t keep_last, double tol) const {
    std::vector<double> out;
    std::vector<Interval> active;
    if (c_hi > c_lo) active.push_back({lo, hi, c_lo, c_hi});
    std::vector<double> mids;
    std::vector<std::size_t> counts;
    while (!active.empty()) {
        std::vector<Interval> split;
        mids.clear();
        for (const auto& iv : active) {
            const double width_tol = tol + 2.0 * kEps * std::max(std::abs(iv.lo), std::abs(iv.hi));
            if (iv.hi - iv.lo <= width_tol) {
                const double mid = 0.5 * (iv.lo + iv.hi);
                for (std::size_t c = std::max(iv.c_lo, keep_first); c < std::min(iv.c_hi, keep_last); ++c) {
                    out.push_back(mid);
                }
            } else {
                split.push_back(iv);
                mids.push_back(0.5 * (iv.lo + iv.hi));
            }
        }
        if (split.empty()) break;
        counts.assign(mids.size(), 0);
        count_at_most(mids, counts);
        active.clear();
        for (std::size_t i = 0; i < split.size(); ++i) {
            const auto& iv = split[i];
            // Counts are monotone in exact arithmetic; clamp rounding noise.
            const std::size_t c = std::clamp(counts[i], iv.c_lo, iv.c_hi);
            if (c > iv.c_lo && c > keep_first && iv.c_lo < keep_last) active.push_back({iv.lo, mids[i], iv.c_lo, c});
            if (iv.c_hi > c && iv.c_hi > keep_first && c < keep_last) active.push_back({mids[i], iv.hi, c, iv.c_hi});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> JacobiMatrix::dense_ring_eigenvalues() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = diag_[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = off_[static_cast<std::size_t>(i)];
    a(0, n - 1) += corner_;
    a(n - 1, 0) += corner_;
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + n);
}

std::vector<double> JacobiMatrix::eigenvalues_at_most(double cap, double tol) const {
    if (periodic_ && size() <= kDenseRingLimit) {
        auto ev = dense_ring_eigenvalues();
        ev.erase(std::upper_bound(ev.begin(), ev.end(), cap), ev.end());
        return ev;
    }
    const double lo = gershgorin_lower() - 1.0 - kEps * std::abs(gershgorin_lower());
    const double hi = std::min(cap, gershgorin_upper() + 1.0);
    if (hi <= lo) return {};
    const std::size_t c_hi = count_at_most(hi);
    return bisect(lo, hi, 0, c_hi, 0, c_hi, tol);
}

std::vector<double> JacobiMatrix::eigenvalues_by_index(std::size_t first, std::size_t last, double tol) const {
    last = std::min(last, size());
    if (first >= last) return {};
    if (periodic_ && size() <= kDenseRingLimit) {
        const auto ev = dense_ring_eigenvalues();
        return std::vector<double>(ev.begin() + static_cast<std::ptrdiff_t>(first),
                                   ev.begin() + static_cast<std::ptrdiff_t>(last));
    }
    const double lo = gershgorin_lower() - 1.0 - kEps * std::abs(gershgorin_lower());
    const double hi = gershgorin_upper() + 1.0 + kEps * std::abs(gershgorin_upper());
    return bisect(lo, hi, 0, size(), first, last, tol);
}

std::vector<double> JacobiMatrix::all_eigenvalues(double tol) const { return eigenvalues_by_index(0, size(), tol); }

}  // namespace kpz
