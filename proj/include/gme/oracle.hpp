#pragma once

#include <cstdint>
#include <string>

#include "gme/criteria.hpp"

namespace gme {

/// Result of a Monte Carlo sweep of one closed-form bound (or identity)
/// over its hypothesis class.
struct OracleReport {
    std::string id;
    int n = 0;
    int d = 0;
    int samples = 0;
    int k = 0;  // 0 = swept over 1..d^2-1
    double max_observed = 0.0;
    double bound_value = 0.0;  // analytic bound at the worst (sample, k)
    int k_at_worst = 0;
    int violations = 0;         // beyond 1e-9
    double worst_margin = 0.0;  // max(observed - bound); equality ids: max|observed - value|
    std::uint64_t seed = 0;
    std::string note;

    bool ok() const { return violations == 0; }
};

/// Samples states from the hypothesis class of `id`, evaluates the governed
/// norm and counts violations beyond 1e-9. Equality-type results (Lemma1,
/// Thm2) check |measured - value| instead. k = 0 sweeps all 1..d^2-1 where
/// the bound depends on k. Throws UnsamplableClassError if the class cannot
/// be sampled (and BadParamsError for parameter misuse).
OracleReport check_bound(BoundId id, int n, int d, int k, int samples, Rng& rng);

/// Haar-random pure states must reconstruct tr(rho^2) = 1 from the subset
/// norm decomposition; random mixtures must reconstruct their own purity.
OracleReport check_purity_identity(int n, int d, int samples, Rng& rng);

/// Random product local unitaries must leave every bipartition unfolding's
/// singular value list (hence all Ky Fan norms and M_k) unchanged.
OracleReport check_lu_invariance(const DensityMatrix& rho, int trials, Rng& rng);

}  // namespace gme
