#include "gme/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gme {

namespace {

std::vector<int> checked_subset(const PartyStructure& structure,
                                const std::vector<int>& subset) {
    if (subset.empty()) throw InvalidSubsetError("party subset must be nonempty");
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 1 || sorted.back() > structure.parties)
        throw InvalidSubsetError("party subset has parties outside 1..n");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidSubsetError("party subset has duplicate parties");
    return sorted;
}

long long int_pow(long long base, int exp) {
    long long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

double CorrelationTensor::at(const std::vector<int>& index) const {
    if (static_cast<int>(index.size()) != order())
        throw InvalidSubsetError("multi-index length must match subset size");
    const int q = axis_dim();
    long long linear = 0;
    for (int i : index) {
        if (i < 1 || i > q) throw OutOfRangeError("tensor index outside 1..d^2-1");
        linear = linear * q + (i - 1);
    }
    return entries[static_cast<std::size_t>(linear)];
}

ComplexMatrix reduced_density(const DensityMatrix& rho, const std::vector<int>& subset) {
    const std::vector<int> kept = checked_subset(rho.structure, subset);
    const int n = rho.structure.parties;
    const int d = rho.structure.local_dim;
    const int m = static_cast<int>(kept.size());
    if (m == n) return rho.mat;

    // Global-index stride of each party (party 1 most significant).
    std::vector<long long> keptStride, envStride;
    for (int p = 1, j = 0; p <= n; ++p) {
        const long long stride = int_pow(d, n - p);
        if (j < m && kept[static_cast<std::size_t>(j)] == p) {
            keptStride.push_back(stride);
            ++j;
        } else {
            envStride.push_back(stride);
        }
    }

    const long long dimKept = int_pow(d, m);
    const long long dimEnv = int_pow(d, n - m);
    auto offsets = [d](const std::vector<long long>& strides, long long count) {
        std::vector<long long> out(static_cast<std::size_t>(count));
        for (long long idx = 0; idx < count; ++idx) {
            long long rem = idx, off = 0;
            for (std::size_t j = strides.size(); j-- > 0;) {
                off += (rem % d) * strides[j];
                rem /= d;
            }
            out[static_cast<std::size_t>(idx)] = off;
        }
        return out;
    };
    const std::vector<long long> keptOff = offsets(keptStride, dimKept);
    const std::vector<long long> envOff = offsets(envStride, dimEnv);

    ComplexMatrix out = ComplexMatrix::Zero(dimKept, dimKept);
    for (long long r = 0; r < dimKept; ++r)
        for (long long c = 0; c < dimKept; ++c) {
            Complex acc = 0.0;
            for (long long e = 0; e < dimEnv; ++e)
                acc += rho.mat(keptOff[static_cast<std::size_t>(r)] +
                                   envOff[static_cast<std::size_t>(e)],
                               keptOff[static_cast<std::size_t>(c)] +
                                   envOff[static_cast<std::size_t>(e)]);
            out(r, c) = acc;
        }
    return out;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const std::vector<int>& subset) {
    const std::vector<int> sorted = checked_subset(rho.structure, subset);
    const int d = rho.structure.local_dim;
    const int q = d * d - 1;
    const int m = static_cast<int>(sorted.size());
    const GeneratorBasis basis = generators(d);

    // Contract one party axis at a time against all generators:
    // cur holds values indexed [generator block g][row r][col c] where r, c
    // run over the not-yet-contracted parties, most significant first.
    ComplexMatrix reduced = reduced_density(rho, sorted);
    long long blocks = 1;
    long long dim = int_pow(d, m);
    std::vector<Complex> cur(static_cast<std::size_t>(dim * dim));
    for (long long r = 0; r < dim; ++r)
        for (long long c = 0; c < dim; ++c)
            cur[static_cast<std::size_t>(r * dim + c)] = reduced(r, c);

    for (int step = 0; step < m; ++step) {
        const long long sub = dim / d;
        std::vector<Complex> next(static_cast<std::size_t>(blocks * q * sub * sub));
        for (long long g = 0; g < blocks; ++g) {
            const Complex* blockIn = cur.data() + g * dim * dim;
            for (int a = 0; a < q; ++a) {
                const ComplexMatrix& gen = basis.elements[static_cast<std::size_t>(a)];
                Complex* blockOut = next.data() + (g * q + a) * sub * sub;
                for (long long r = 0; r < sub; ++r)
                    for (long long c = 0; c < sub; ++c) {
                        Complex acc = 0.0;
                        // tr(rho X) picks up X(c1, r1) against rho(r1.., c1..).
                        for (int r1 = 0; r1 < d; ++r1)
                            for (int c1 = 0; c1 < d; ++c1)
                                acc += gen(c1, r1) *
                                       blockIn[(r1 * sub + r) * dim + (c1 * sub + c)];
                        blockOut[r * sub + c] = acc;
                    }
            }
        }
        cur = std::move(next);
        blocks *= q;
        dim = sub;
    }

    CorrelationTensor tensor{rho.structure, sorted, {}};
    tensor.entries.resize(cur.size());
    double maxImag = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
        maxImag = std::max(maxImag, std::abs(cur[i].imag()));
        tensor.entries[i] = cur[i].real();
    }
    if (maxImag > 1e-10)
        throw NotHermitianError("correlation_tensor: imaginary residue " +
                                std::to_string(maxImag) + " (input not Hermitian?)");
    return tensor;
}

Matricization matricize(const CorrelationTensor& t, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    if (rows.empty() || cols.empty())
        throw BadSplitError("matricize: row and column party lists must be nonempty");
    std::vector<int> combined = rows;
    combined.insert(combined.end(), cols.begin(), cols.end());
    std::vector<int> sortedCombined = combined;
    std::sort(sortedCombined.begin(), sortedCombined.end());
    if (sortedCombined != t.subset)
        throw BadSplitError("matricize: rows + cols must partition the tensor subset");

    const int q = t.axis_dim();
    const int m = t.order();
    std::vector<int> position(static_cast<std::size_t>(t.subset.back()) + 1, -1);
    for (int j = 0; j < m; ++j)
        position[static_cast<std::size_t>(t.subset[static_cast<std::size_t>(j)])] = j;

    Matricization out;
    out.subset = t.subset;
    out.row_parties = rows;
    out.col_parties = cols;
    out.mat.resize(int_pow(q, static_cast<int>(rows.size())),
                   int_pow(q, static_cast<int>(cols.size())));

    std::vector<int> digits(static_cast<std::size_t>(m));
    const long long total = static_cast<long long>(t.entries.size());
    for (long long linear = 0; linear < total; ++linear) {
        long long rem = linear;
        for (int j = m - 1; j >= 0; --j) {
            digits[static_cast<std::size_t>(j)] = static_cast<int>(rem % q);
            rem /= q;
        }
        long long a = 0, b = 0;
        for (int p : rows) a = a * q + digits[static_cast<std::size_t>(position[static_cast<std::size_t>(p)])];
        for (int p : cols) b = b * q + digits[static_cast<std::size_t>(position[static_cast<std::size_t>(p)])];
        out.mat(a, b) = t.entries[static_cast<std::size_t>(linear)];
    }
    return out;
}

double frobenius(const CorrelationTensor& t) {
    return std::sqrt(std::inner_product(t.entries.begin(), t.entries.end(),
                                        t.entries.begin(), 0.0));
}

double frobenius(const Matricization& m) { return m.mat.norm(); }

double ky_fan(const Matricization& m, int k) {
    const long long cap = std::min(m.mat.rows(), m.mat.cols());
    if (k < 1 || k > cap)
        throw KOutOfRangeError("ky_fan: k must lie in 1..min(rows, cols) = 1.." +
                               std::to_string(cap));
    const std::vector<double> sv = singular_values(m.mat);
    return std::accumulate(sv.begin(), sv.begin() + k, 0.0);
}

double PurityDecomposition::body_norm_sq(int size) const {
    double sum = 0.0;
    for (const Term& term : terms)
        if (static_cast<int>(term.subset.size()) == size) sum += term.norm_sq;
    return sum;
}

PurityDecomposition purity_decomposition(const DensityMatrix& rho) {
    const int n = rho.structure.parties;
    const int d = rho.structure.local_dim;
    PurityDecomposition out;
    out.terms.push_back({{}, 1.0, 1.0 / static_cast<double>(rho.structure.dimension())});

    for (int size = 1; size <= n; ++size) {
        const double weight =
            1.0 / (int_pow(2, size) * static_cast<double>(int_pow(d, n - size)));
        // All ascending `size`-subsets of 1..n in lexicographic order.
        std::vector<int> subset(static_cast<std::size_t>(size));
        std::iota(subset.begin(), subset.end(), 1);
        while (true) {
            const CorrelationTensor t = correlation_tensor(rho, subset);
            const double normSq = std::inner_product(t.entries.begin(), t.entries.end(),
                                                     t.entries.begin(), 0.0);
            out.terms.push_back({subset, normSq, weight});

            int j = size - 1;
            while (j >= 0 && subset[static_cast<std::size_t>(j)] == n - (size - 1 - j)) --j;
            if (j < 0) break;
            ++subset[static_cast<std::size_t>(j)];
            for (int i = j + 1; i < size; ++i)
                subset[static_cast<std::size_t>(i)] = subset[static_cast<std::size_t>(i - 1)] + 1;
        }
    }
    out.total = 0.0;
    for (const auto& term : out.terms) out.total += term.weight * term.norm_sq;
    return out;
}

}  // namespace gme
