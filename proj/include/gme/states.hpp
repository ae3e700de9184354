#pragma once

#include <vector>

#include "gme/numerics.hpp"

namespace gme {

/// Largest allowed total Hilbert-space dimension d^n.
inline constexpr long long kDefaultDimensionCap = 1LL << 14;

/// n parties, each of local dimension d. Party 1 owns the most significant
/// digit of the composite index throughout the library.
struct PartyStructure {
    int parties = 0;
    int local_dim = 0;

    PartyStructure() = default;
    PartyStructure(int n, int d, long long cap = kDefaultDimensionCap);

    long long dimension() const { return dim_; }

    friend bool operator==(const PartyStructure&, const PartyStructure&) = default;

private:
    long long dim_ = 0;
};

struct PureState {
    PartyStructure structure;
    ComplexVector amplitudes;
};

/// Carrier only: dimensional consistency is enforced on construction,
/// physicality (Hermitian, unit trace, PSD) is reported by validate_density.
struct DensityMatrix {
    PartyStructure structure;
    ComplexMatrix mat;

    DensityMatrix(PartyStructure s, ComplexMatrix m);
};

/// Rank-1 projector |psi><psi|. Throws NotNormalizedError if the amplitude
/// norm deviates from 1 by more than 1e-12.
DensityMatrix pure_to_density(const PureState& psi);

/// (1/sqrt(d)) sum_j |j...j>
PureState ghz(int n, int d);

/// Qubit W state (1/sqrt(n)) sum_f |0..1_f..0>
PureState w_state(int n);

/// Tensor product of per-party local vectors, in party order.
PureState product_state(const std::vector<ComplexVector>& locals);

/// Haar-random pure state on the full n-party space.
PureState haar_random_pure(const PartyStructure& structure, Rng& rng);

/// Haar-random pure state on the parties in `block` tensored with an
/// independent one on the complement, re-indexed to natural party order.
/// `block` must be a nonempty proper subset of 1..n.
PureState random_biseparable_pure(const PartyStructure& structure,
                                  const std::vector<int>& block, Rng& rng);

/// p * rho + (1 - p) * I / d^n. Throws OutOfRangeError unless 0 <= p <= 1.
DensityMatrix mix_with_white_noise(const DensityMatrix& rho, double p);

struct DensityReport {
    double hermiticity_residual = 0.0;  // max-entry |rho - rho^dagger|
    double trace_deviation = 0.0;       // |tr rho - 1|
    double min_eigenvalue = 0.0;
    double purity = 0.0;                // tr(rho^2)

    bool ok() const {
        return hermiticity_residual <= kHermitianTol && trace_deviation <= kHermitianTol &&
               min_eigenvalue >= -kHermitianTol;
    }
};

DensityReport validate_density(const DensityMatrix& rho);

/// Reorders parties: output party p carries the digit that input slot
/// perm[p-1] carried (perm is a 1-based permutation of 1..n).
PureState permute_parties(const PureState& psi, const std::vector<int>& perm);
DensityMatrix permute_parties(const DensityMatrix& rho, const std::vector<int>& perm);

/// Schmidt coefficients of |psi> across block|complement, descending.
/// These are the singular values of the amplitude vector reshaped to a
/// (d^|block|) x (d^|complement|) matrix.
std::vector<double> schmidt_coefficients(const PureState& psi,
                                         const std::vector<int>& block);

/// Checks that `block` is a nonempty proper subset of 1..n with no
/// duplicates; returns it sorted ascending. Throws InvalidBipartitionError.
std::vector<int> checked_bipartition_block(const PartyStructure& structure,
                                           const std::vector<int>& block);

}  // namespace gme
