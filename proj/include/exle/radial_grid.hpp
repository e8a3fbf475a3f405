#pragma once

// Uniform radial grid on the unit ball of R^N and the conservative
// finite-difference form of -Lap for radially symmetric fields.
//
// Nodes r_i = i h, h = 1/M, i = 0..M; node M carries the Dirichlet value.
// Row i of the operator is
//
//     (A w)_i = [ g_{i+1/2} (w_i - w_{i+1}) + g_{i-1/2} (w_i - w_{i-1}) ] / V_i
//
// with face weights g = r^{N-1}/h and shell volumes
// V_i = (r_{i+1/2}^N - r_{i-1/2}^N)/N (r_{-1/2} = 0).  At the origin this is
// the symmetry row 2N (w_0 - w_1)/h^2.  A = V^{-1} S with S symmetric, so A
// is self-adjoint in the V-weighted inner product and is an M-matrix.

#include <cstddef>
#include <span>
#include <vector>

namespace exle {

inline constexpr int kMinIntervals = 16;
inline constexpr int kMaxDimension = 64;

class RadialGrid {
public:
    /// Throws ConfigError unless dim in [1, 64] and intervals >= 16.
    RadialGrid(int dim, int intervals);

    int dim() const noexcept { return dim_; }
    /// M: number of intervals; there are M + 1 nodes.
    int intervals() const noexcept { return intervals_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    double spacing() const noexcept { return 1.0 / intervals_; }
    double node(std::size_t i) const { return nodes_.at(i); }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Control-volume measure of node i (excluding the angular factor).
    double shell_volume(std::size_t i) const { return volumes_.at(i); }
    std::span<const double> shell_volumes() const noexcept { return volumes_; }

    /// Surface area of the unit sphere S^{N-1}.
    double sphere_area() const noexcept;
    /// Lebesgue measure of the unit ball.
    double ball_volume() const noexcept { return sphere_area() / dim_; }

    /// Trapezoid rule for the volume integral of a radial field over B_R,
    /// R = node(last); integrand samples f_0..f_last.
    double integrate(std::span<const double> f, std::size_t last) const;
    double integrate(std::span<const double> f) const { return integrate(f, node_count() - 1); }

private:
    int dim_;
    int intervals_;
    std::vector<double> nodes_;
    std::vector<double> volumes_;
};

/// Radial field pair (u, v) sampled at the M + 1 grid nodes.
struct StatePair {
    std::vector<double> u;
    std::vector<double> v;

    static StatePair zeros(const RadialGrid& grid);

    double sup_u() const;
    double sup_v() const;
    /// u, v >= 0 and zero at the outer node.
    bool is_admissible() const;
};

/// Tridiagonal discrete -Lap acting on the M interior/origin unknowns.
class RadialLaplacian {
public:
    explicit RadialLaplacian(const RadialGrid& grid);

    std::size_t size() const noexcept { return diag_.size(); }

    /// Rows 0..M-1 of A w; w has M + 1 entries and w[M] acts as the boundary value.
    std::vector<double> apply(std::span<const double> w) const;

    /// Solves A w = rhs (rhs has at least M entries) with w[M] = 0; returns M + 1 entries.
    std::vector<double> solve(std::span<const double> rhs) const;

    /// Solves (A - shift diag(weight)) w = rhs, same layout as solve().
    std::vector<double> solve_shifted(std::span<const double> rhs, std::span<const double> weight,
                                      double shift) const;

    double lower(std::size_t i) const { return lower_.at(i); }
    double diag(std::size_t i) const { return diag_.at(i); }
    double upper(std::size_t i) const { return upper_.at(i); }

private:
    std::vector<double> lower_;  // coefficient of w_{i-1} in row i (lower_[0] unused)
    std::vector<double> diag_;
    std::vector<double> upper_;  // coefficient of w_{i+1} in row i
};

}  // namespace exle
