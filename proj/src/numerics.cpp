#include "gme/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace gme {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed), normal_(0.0, 1.0) {}

double Rng::gaussian() { return normal_(engine_); }

double Rng::uniform() {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

Complex Rng::gaussian_complex() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

Rng Rng::derive(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 1)));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols())
        throw NotHermitianError("hermitian_eigenvalues: matrix is not square");
    const double residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (residual > kHermitianTol)
        throw NotHermitianError("hermitian_eigenvalues: Hermiticity residual " +
                                std::to_string(residual));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

// Shared Gram-matrix route: eigenvalues of M^dagger M (or M M^dagger,
// whichever is smaller), clamped at zero, square-rooted, descending.
// Squaring puts the eigensolver's noise floor near sqrt(eps) ~ 1e-8 on the
// singular value scale, so eigenvalues below 1e-12 * lambda_max are noise
// and are clamped to zero as well; otherwise rank-deficient unfoldings pick
// up spurious ~1e-8 singular values that break 1e-9 equality checks.
constexpr double kGramNoiseCutoff = 1e-12;

template <typename Matrix>
std::vector<double> gram_singular_values(const Matrix& m) {
    const Eigen::Index r = std::min(m.rows(), m.cols());
    Matrix gram;
    if (m.rows() <= m.cols())
        gram = m * m.adjoint();
    else
        gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    const double cutoff =
        std::max(solver.eigenvalues()(r - 1), 0.0) * kGramNoiseCutoff;
    std::vector<double> out(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) {
        const double lambda = solver.eigenvalues()(r - 1 - i);
        out[static_cast<std::size_t>(i)] = lambda > cutoff ? std::sqrt(lambda) : 0.0;
    }
    return out;
}

}  // namespace

std::vector<double> singular_values(const RealMatrix& m) {
    return gram_singular_values(m);
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    return gram_singular_values(m);
}

ComplexMatrix haar_unitary(int dim, Rng& rng) {
    if (dim < 1) throw InvalidDimensionError("haar_unitary: dim must be >= 1");
    ComplexMatrix ginibre(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) ginibre(i, j) = rng.gaussian_complex();
    Eigen::HouseholderQR<ComplexMatrix> qr(ginibre);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        const Complex phase = mag > 0.0 ? rjj / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionMismatchError("trace_product: incompatible dimensions");
    return a.transpose().cwiseProduct(b).sum();
}

}  // namespace gme
