#pragma once

#include <utility>
#include <vector>

#include "gme/states.hpp"
#include "gme/su_basis.hpp"

namespace gme {

/// Real tensor of generator-product expectation values over a party subset S:
/// entry (i_1, ..., i_m) is tr(rho * g_{i_1} x ... x g_{i_m}) with the
/// generators placed on the parties of S (ascending) and identity elsewhere.
/// Storage is row-major over S in ascending party order; indices in the
/// public API are 1-based, 1..d^2-1 per axis.
struct CorrelationTensor {
    PartyStructure structure;
    std::vector<int> subset;      // ascending parties
    std::vector<double> entries;  // (d^2-1)^|S| values

    int axis_dim() const { return structure.local_dim * structure.local_dim - 1; }
    int order() const { return static_cast<int>(subset.size()); }

    /// Entry at a 1-based multi-index (one index per party of the subset).
    double at(const std::vector<int>& index) const;
};

/// Matrix unfolding of a CorrelationTensor: rows indexed by the ordered
/// party list R, columns by C, via the mixed-radix map
///   a = q^{|R|-1} (i_{r1} - 1) + ... + i_{r|R|},  q = d^2 - 1  (1-based),
/// and analogously for b over C.
struct Matricization {
    std::vector<int> subset;
    std::vector<int> row_parties;
    std::vector<int> col_parties;
    RealMatrix mat;
};

/// Throws InvalidSubsetError for an empty subset, out-of-range or duplicate
/// parties. Cost is one partial trace plus one axis contraction per party;
/// no Kronecker-product operators are ever materialized.
CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                     const std::vector<int>& subset);

/// R and C must together use each party of t.subset exactly once, both
/// nonempty; otherwise BadSplitError.
Matricization matricize(const CorrelationTensor& t, const std::vector<int>& rows,
                        const std::vector<int>& cols);

double frobenius(const CorrelationTensor& t);
double frobenius(const Matricization& m);

/// Sum of the k largest singular values. Throws KOutOfRangeError unless
/// 1 <= k <= min(rows, cols).
double ky_fan(const Matricization& m, int k);

/// tr(rho^2) decomposed over party subsets: the empty subset stands for the
/// identity term (norm^2 fixed at 1, weight 1/d^n), every other subset S
/// contributes ||T^(S)||_F^2 with weight 1/(2^|S| d^(n-|S|)).
struct PurityDecomposition {
    struct Term {
        std::vector<int> subset;  // ascending; empty = identity term
        double norm_sq = 0.0;
        double weight = 0.0;
    };
    std::vector<Term> terms;  // ordered by subset size, then lexicographic
    double total = 0.0;       // sum of weight * norm_sq, reconstructs tr(rho^2)

    /// Sum of norm_sq over subsets of the given size.
    double body_norm_sq(int size) const;
};

PurityDecomposition purity_decomposition(const DensityMatrix& rho);

/// Matrix of the reduced state on the parties in `subset` (ascending, any
/// size >= 1), all others traced out.
ComplexMatrix reduced_density(const DensityMatrix& rho, const std::vector<int>& subset);

}  // namespace gme
