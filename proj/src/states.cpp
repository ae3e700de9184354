#include "gme/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gme {

namespace {

long long checked_power(int d, int n, long long cap) {
    long long dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= d;
        if (dim > cap)
            throw InvalidDimensionError("total dimension " + std::to_string(d) + "^" +
                                        std::to_string(n) + " exceeds cap " +
                                        std::to_string(cap));
    }
    return dim;
}

// digits[p] = base-d digit of party p+1; party 1 is most significant.
void composite_digits(long long index, int n, int d, std::vector<int>& digits) {
    for (int p = n - 1; p >= 0; --p) {
        digits[static_cast<std::size_t>(p)] = static_cast<int>(index % d);
        index /= d;
    }
}

long long composite_index(const std::vector<int>& digits, int d) {
    long long index = 0;
    for (int digit : digits) index = index * d + digit;
    return index;
}

ComplexVector haar_vector(long long dim, Rng& rng) {
    ComplexVector v(dim);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.gaussian_complex();
    v /= v.norm();
    return v;
}

}  // namespace

PartyStructure::PartyStructure(int n, int d, long long cap) : parties(n), local_dim(d) {
    if (n < 2) throw InvalidDimensionError("party count must be >= 2");
    if (d < 2) throw InvalidDimensionError("local dimension must be >= 2");
    dim_ = checked_power(d, n, cap);
}

DensityMatrix::DensityMatrix(PartyStructure s, ComplexMatrix m)
    : structure(s), mat(std::move(m)) {
    if (mat.rows() != structure.dimension() || mat.cols() != structure.dimension())
        throw DimensionMismatchError("density matrix must be d^n x d^n");
}

DensityMatrix pure_to_density(const PureState& psi) {
    if (psi.amplitudes.size() != psi.structure.dimension())
        throw DimensionMismatchError("amplitude vector must have length d^n");
    if (std::abs(psi.amplitudes.norm() - 1.0) > 1e-12)
        throw NotNormalizedError("pure state amplitudes are not normalized");
    return DensityMatrix(psi.structure, psi.amplitudes * psi.amplitudes.adjoint());
}

PureState ghz(int n, int d) {
    PartyStructure structure(n, d);
    ComplexVector amp = ComplexVector::Zero(structure.dimension());
    const double coeff = 1.0 / std::sqrt(static_cast<double>(d));
    long long stride = 0;  // index of |j...j> advances by (d^n - 1)/(d - 1) per j
    for (int p = 0; p < n; ++p) stride = stride * d + 1;
    for (int j = 0; j < d; ++j) amp(j * stride) = coeff;
    return {structure, std::move(amp)};
}

PureState w_state(int n) {
    PartyStructure structure(n, 2);
    ComplexVector amp = ComplexVector::Zero(structure.dimension());
    const double coeff = 1.0 / std::sqrt(static_cast<double>(n));
    for (int f = 1; f <= n; ++f) amp(1LL << (n - f)) = coeff;
    return {structure, std::move(amp)};
}

PureState product_state(const std::vector<ComplexVector>& locals) {
    if (locals.size() < 2) throw InvalidDimensionError("product_state: need >= 2 parties");
    const int d = static_cast<int>(locals.front().size());
    for (const auto& v : locals) {
        if (static_cast<int>(v.size()) != d)
            throw InvalidDimensionError("product_state: heterogeneous local dimensions");
        if (std::abs(v.norm() - 1.0) > 1e-12)
            throw NotNormalizedError("product_state: local vector is not normalized");
    }
    PartyStructure structure(static_cast<int>(locals.size()), d);
    ComplexVector amp = ComplexVector::Ones(1);
    for (const auto& v : locals) {
        ComplexVector next(amp.size() * v.size());
        for (Eigen::Index i = 0; i < amp.size(); ++i)
            next.segment(i * v.size(), v.size()) = amp(i) * v;
        amp = std::move(next);
    }
    return {structure, std::move(amp)};
}

PureState haar_random_pure(const PartyStructure& structure, Rng& rng) {
    return {structure, haar_vector(structure.dimension(), rng)};
}

std::vector<int> checked_bipartition_block(const PartyStructure& structure,
                                           const std::vector<int>& block) {
    std::vector<int> sorted = block;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || static_cast<int>(sorted.size()) >= structure.parties)
        throw InvalidBipartitionError("bipartition block must be a nonempty proper subset");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidBipartitionError("bipartition block has duplicate parties");
    if (sorted.front() < 1 || sorted.back() > structure.parties)
        throw InvalidBipartitionError("bipartition block has parties outside 1..n");
    return sorted;
}

PureState random_biseparable_pure(const PartyStructure& structure,
                                  const std::vector<int>& block, Rng& rng) {
    const std::vector<int> a1 = checked_bipartition_block(structure, block);
    std::vector<int> a2;
    for (int p = 1; p <= structure.parties; ++p)
        if (!std::binary_search(a1.begin(), a1.end(), p)) a2.push_back(p);

    const int d = structure.local_dim;
    long long dimA = 1, dimB = 1;
    for (std::size_t i = 0; i < a1.size(); ++i) dimA *= d;
    for (std::size_t i = 0; i < a2.size(); ++i) dimB *= d;
    const ComplexVector va = haar_vector(dimA, rng);
    const ComplexVector vb = haar_vector(dimB, rng);

    ComplexVector blockAmp(va.size() * vb.size());
    for (Eigen::Index i = 0; i < va.size(); ++i)
        blockAmp.segment(i * vb.size(), vb.size()) = va(i) * vb;

    // Block slot b holds party order[b]; send each digit back to its party.
    std::vector<int> order = a1;
    order.insert(order.end(), a2.begin(), a2.end());
    std::vector<int> perm(static_cast<std::size_t>(structure.parties));
    for (int slot = 0; slot < structure.parties; ++slot)
        perm[static_cast<std::size_t>(order[static_cast<std::size_t>(slot)] - 1)] = slot + 1;

    PureState blockState{structure, std::move(blockAmp)};
    return permute_parties(blockState, perm);
}

DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw OutOfRangeError("mix_with_white_noise: p must lie in [0, 1]");
    const long long dim = rho.structure.dimension();
    ComplexMatrix mixed = p * rho.mat;
    mixed += ((1.0 - p) / static_cast<double>(dim)) *
             ComplexMatrix::Identity(dim, dim);
    return DensityMatrix(rho.structure, std::move(mixed));
}

DensityReport validate_density(const DensityMatrix& rho) {
    DensityReport report;
    report.hermiticity_residual = (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
    report.trace_deviation = std::abs(rho.mat.trace() - Complex(1.0, 0.0));
    report.purity = trace_product(rho.mat, rho.mat).real();
    // Eigenvalues of the Hermitian part; identical to rho's when it is Hermitian.
    const ComplexMatrix herm = 0.5 * (rho.mat + rho.mat.adjoint());
    report.min_eigenvalue = hermitian_eigenvalues(herm).front();
    return report;
}

PureState permute_parties(const PureState& psi, const std::vector<int>& perm) {
    const int n = psi.structure.parties;
    const int d = psi.structure.local_dim;
    if (static_cast<int>(perm.size()) != n)
        throw InvalidBipartitionError("permute_parties: permutation length mismatch");
    ComplexVector out(psi.amplitudes.size());
    std::vector<int> outDigits(static_cast<std::size_t>(n));
    std::vector<int> inDigits(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < psi.structure.dimension(); ++idx) {
        composite_digits(idx, n, d, outDigits);
        for (int p = 0; p < n; ++p)
            inDigits[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)] - 1)] =
                outDigits[static_cast<std::size_t>(p)];
        out(idx) = psi.amplitudes(composite_index(inDigits, d));
    }
    return {psi.structure, std::move(out)};
}

DensityMatrix permute_parties(const DensityMatrix& rho, const std::vector<int>& perm) {
    const int n = rho.structure.parties;
    const int d = rho.structure.local_dim;
    if (static_cast<int>(perm.size()) != n)
        throw InvalidBipartitionError("permute_parties: permutation length mismatch");
    const long long dim = rho.structure.dimension();
    std::vector<long long> source(static_cast<std::size_t>(dim));
    std::vector<int> outDigits(static_cast<std::size_t>(n));
    std::vector<int> inDigits(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < dim; ++idx) {
        composite_digits(idx, n, d, outDigits);
        for (int p = 0; p < n; ++p)
            inDigits[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)] - 1)] =
                outDigits[static_cast<std::size_t>(p)];
        source[static_cast<std::size_t>(idx)] = composite_index(inDigits, d);
    }
    ComplexMatrix out(dim, dim);
    for (long long i = 0; i < dim; ++i)
        for (long long j = 0; j < dim; ++j)
            out(i, j) = rho.mat(source[static_cast<std::size_t>(i)],
                                source[static_cast<std::size_t>(j)]);
    return DensityMatrix(rho.structure, std::move(out));
}

std::vector<double> schmidt_coefficients(const PureState& psi,
                                         const std::vector<int>& block) {
    const std::vector<int> a1 = checked_bipartition_block(psi.structure, block);
    const int n = psi.structure.parties;
    const int d = psi.structure.local_dim;
    std::vector<int> a2;
    for (int p = 1; p <= n; ++p)
        if (!std::binary_search(a1.begin(), a1.end(), p)) a2.push_back(p);

    long long rows = 1, cols = 1;
    for (std::size_t i = 0; i < a1.size(); ++i) rows *= d;
    for (std::size_t i = 0; i < a2.size(); ++i) cols *= d;

    ComplexMatrix reshaped(rows, cols);
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < psi.structure.dimension(); ++idx) {
        composite_digits(idx, n, d, digits);
        long long r = 0, c = 0;
        for (int p : a1) r = r * d + digits[static_cast<std::size_t>(p - 1)];
        for (int p : a2) c = c * d + digits[static_cast<std::size_t>(p - 1)];
        reshaped(r, c) = psi.amplitudes(idx);
    }
    return singular_values(reshaped);
}

}  // namespace gme
