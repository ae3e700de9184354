#include "gme/su_basis.hpp"

#include <cmath>

namespace gme {

GeneratorBasis generators(int d) {
    if (d < 2) throw InvalidDimensionError("generators: local dimension must be >= 2");
    GeneratorBasis basis;
    basis.d = d;
    basis.elements.reserve(static_cast<std::size_t>(d) * d - 1);

    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = 1.0;
            m(k, j) = 1.0;
            basis.elements.push_back(std::move(m));
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            ComplexMatrix m = ComplexMatrix::Zero(d, d);
            m(j, k) = Complex(0.0, -1.0);
            m(k, j) = Complex(0.0, 1.0);
            basis.elements.push_back(std::move(m));
        }
    }
    for (int l = 1; l < d; ++l) {
        ComplexMatrix m = ComplexMatrix::Zero(d, d);
        const double scale = std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        for (int i = 0; i < l; ++i) m(i, i) = scale;
        m(l, l) = -l * scale;
        basis.elements.push_back(std::move(m));
    }
    return basis;
}

BasisReport verify_basis(const GeneratorBasis& basis) {
    BasisReport report;
    const int count = static_cast<int>(basis.elements.size());
    for (int a = 0; a < count; ++a) {
        const ComplexMatrix& g = basis.elements[static_cast<std::size_t>(a)];
        report.max_trace = std::max(report.max_trace, std::abs(g.trace()));
        report.max_hermiticity =
            std::max(report.max_hermiticity, (g - g.adjoint()).cwiseAbs().maxCoeff());
        for (int b = 0; b < count; ++b) {
            const Complex overlap =
                trace_product(g, basis.elements[static_cast<std::size_t>(b)]);
            const double expected = a == b ? 2.0 : 0.0;
            report.max_orthonormality =
                std::max(report.max_orthonormality, std::abs(overlap - expected));
        }
    }
    return report;
}

}  // namespace gme
