#pragma once

#include <vector>

#include "gme/numerics.hpp"

namespace gme {

/// The d^2-1 traceless Hermitian generators of su(d), normalized to
/// tr(g_a g_b) = 2 delta_ab, in a fixed canonical order:
///   1. symmetric off-diagonal E_jk + E_kj for pairs j < k, lexicographic;
///   2. antisymmetric -i(E_jk - E_kj) in the same pair order;
///   3. diagonal sqrt(2/(l(l+1))) * diag(1,...,1,-l,0,...,0) for l = 1..d-1.
/// For d = 2 this is sigma_x, sigma_y, sigma_z.
struct GeneratorBasis {
    int d = 0;
    std::vector<ComplexMatrix> elements;

    int count() const { return d * d - 1; }
};

/// Throws InvalidDimensionError for d < 2.
GeneratorBasis generators(int d);

struct BasisReport {
    double max_trace = 0.0;           // max_a |tr g_a|
    double max_orthonormality = 0.0;  // max_ab |tr(g_a g_b) - 2 delta_ab|
    double max_hermiticity = 0.0;     // max_a max-entry |g_a - g_a^dagger|

    bool ok(double tol = 1e-12) const {
        return max_trace <= tol && max_orthonormality <= tol && max_hermiticity <= tol;
    }
};

BasisReport verify_basis(const GeneratorBasis& basis);

}  // namespace gme
