#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gme/errors.hpp"

namespace gme {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Max-entry tolerance for Hermiticity / unitarity checks.
inline constexpr double kHermitianTol = 1e-10;
/// Tolerance for downstream norm comparisons.
inline constexpr double kNormTol = 1e-9;

/// Deterministic random stream. Same seed, same sample sequence.
/// Single-owner mutable state: concurrent users must derive() their own streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    /// Standard normal variate.
    double gaussian();
    /// Uniform on [0, 1).
    double uniform();
    /// Complex with iid standard-normal real and imaginary parts.
    Complex gaussian_complex();
    /// Independently seeded stream for parallel/per-trial use.
    Rng derive(std::uint64_t stream) const;

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

/// Kronecker product; the left factor is the most significant block
/// (party 1 leftmost in operator products).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of a Hermitian matrix, ascending.
/// Throws NotHermitianError if max|m - m^dagger| exceeds kHermitianTol.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Singular values, descending, length min(rows, cols). Computed from the
/// symmetric eigenproblem of the smaller Gram matrix; negative round-off
/// eigenvalues are clamped to zero before the square root.
std::vector<double> singular_values(const RealMatrix& m);

/// Same Gram-matrix route for complex input (Schmidt coefficients etc.).
std::vector<double> singular_values(const ComplexMatrix& m);

/// Haar-distributed random unitary: Ginibre matrix, Householder QR,
/// phases fixed so the triangular factor has positive real diagonal.
ComplexMatrix haar_unitary(int dim, Rng& rng);

/// tr(a * b) without forming the product. Throws DimensionMismatchError.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gme
