#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gme/correlations.hpp"
#include "support/brute_force.hpp"

using namespace gme;

namespace {

ComplexVector ket(int dim, int index) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

DensityMatrix maximally_mixed(int n, int d) {
    const PartyStructure structure(n, d);
    const long long dim = structure.dimension();
    return DensityMatrix(structure, ComplexMatrix::Identity(dim, dim) / double(dim));
}

}  // namespace

TEST_CASE("maximally mixed states have all-zero tensors") {
    const DensityMatrix rho = maximally_mixed(3, 2);
    for (const std::vector<int>& subset : {std::vector<int>{1}, {2}, {1, 3}, {1, 2, 3}}) {
        const CorrelationTensor t = correlation_tensor(rho, subset);
        for (double e : t.entries) CHECK(std::abs(e) < 1e-12);
    }
}

TEST_CASE("single-party tensor is the Bloch vector in x, y, z order") {
    const DensityMatrix rho = pure_to_density(product_state({ket(2, 0), ket(2, 0)}));
    for (int party : {1, 2}) {
        const CorrelationTensor t = correlation_tensor(rho, {party});
        REQUIRE(t.entries.size() == 3);
        CHECK(std::abs(t.at({1})) < 1e-12);            // sigma_x
        CHECK(std::abs(t.at({2})) < 1e-12);            // sigma_y
        CHECK(t.at({3}) == doctest::Approx(1.0).epsilon(1e-12));  // sigma_z
    }
}

TEST_CASE("subset validation") {
    const DensityMatrix rho = maximally_mixed(3, 2);
    CHECK_THROWS_AS(correlation_tensor(rho, {}), InvalidSubsetError);
    CHECK_THROWS_AS(correlation_tensor(rho, {0}), InvalidSubsetError);
    CHECK_THROWS_AS(correlation_tensor(rho, {4}), InvalidSubsetError);
    CHECK_THROWS_AS(correlation_tensor(rho, {1, 1}), InvalidSubsetError);
}

TEST_CASE("GHZ4 full-body tensor matches enumeration and the known pattern") {
    const DensityMatrix rho = pure_to_density(ghz(4, 2));
    const CorrelationTensor t = correlation_tensor(rho, {1, 2, 3, 4});
    REQUIRE(t.entries.size() == 81);

    const std::vector<double> brute = bf::tensor_by_enumeration(rho, {1, 2, 3, 4});
    for (std::size_t i = 0; i < brute.size(); ++i)
        CHECK(std::abs(t.entries[i] - brute[i]) < 1e-12);

    // Nonzeros: zzzz = xxxx = yyyy = 1, the six permutations of xxyy = -1.
    int nonzeros = 0;
    double sumSq = 0.0;
    for (double e : t.entries) {
        if (std::abs(e) > 1e-9) ++nonzeros;
        sumSq += e * e;
    }
    CHECK(nonzeros == 9);
    CHECK(sumSq == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(t.at({3, 3, 3, 3}) == doctest::Approx(1.0));
    CHECK(t.at({1, 1, 1, 1}) == doctest::Approx(1.0));
    CHECK(t.at({2, 2, 2, 2}) == doctest::Approx(1.0));
    CHECK(t.at({1, 1, 2, 2}) == doctest::Approx(-1.0));
    CHECK(t.at({2, 1, 2, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("matricization index map") {
    // Tensor with entry = its linear storage index, to track the mapping.
    const PartyStructure four(4, 2);
    CorrelationTensor t{four, {1, 2, 3, 4}, std::vector<double>(81)};
    std::iota(t.entries.begin(), t.entries.end(), 0.0);

    const Matricization m = matricize(t, {1, 2}, {3, 4});
    CHECK(m.mat.rows() == 9);
    CHECK(m.mat.cols() == 9);
    // Index (2,3,1,2): row 3(2-1)+3 = 6, col 3(1-1)+2 = 2 (1-based).
    CHECK(m.mat(5, 1) == t.at({2, 3, 1, 2}));

    // Underlined-style reshape: rows party 2, columns parties (1, 3).
    const PartyStructure three(3, 2);
    CorrelationTensor t3{three, {1, 2, 3}, std::vector<double>(27)};
    std::iota(t3.entries.begin(), t3.entries.end(), 0.0);
    const Matricization u = matricize(t3, {2}, {1, 3});
    for (int i1 = 1; i1 <= 3; ++i1)
        for (int i2 = 1; i2 <= 3; ++i2)
            for (int i3 = 1; i3 <= 3; ++i3)
                CHECK(u.mat(i2 - 1, 3 * (i1 - 1) + i3 - 1) == t3.at({i1, i2, i3}));

    CHECK_THROWS_AS(matricize(t, {1, 2}, {3}), BadSplitError);
    CHECK_THROWS_AS(matricize(t, {1, 2}, {2, 3, 4}), BadSplitError);
    CHECK_THROWS_AS(matricize(t, {}, {1, 2, 3, 4}), BadSplitError);
}

TEST_CASE("Frobenius norm is split-invariant") {
    Rng rng(21);
    const DensityMatrix rho =
        pure_to_density(haar_random_pure(PartyStructure(4, 2), rng));
    const CorrelationTensor t = correlation_tensor(rho, {1, 2, 3, 4});
    const double direct = frobenius(t);
    for (const auto& [rows, cols] :
         {std::pair<std::vector<int>, std::vector<int>>{{1}, {2, 3, 4}},
          {{1, 2}, {3, 4}},
          {{4, 2}, {1, 3}},
          {{3, 1, 2}, {4}}}) {
        CHECK(frobenius(matricize(t, rows, cols)) ==
              doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("product-state tensors are rank one under every split") {
    Rng rng(9);
    std::vector<ComplexVector> locals;
    for (int p = 0; p < 4; ++p) {
        ComplexVector v(2);
        for (int i = 0; i < 2; ++i) v(i) = rng.gaussian_complex();
        locals.push_back(v / v.norm());
    }
    const DensityMatrix rho = pure_to_density(product_state(locals));
    const CorrelationTensor t = correlation_tensor(rho, {1, 2, 3, 4});
    for (const auto& [rows, cols] :
         {std::pair<std::vector<int>, std::vector<int>>{{1}, {2, 3, 4}},
          {{1, 2}, {3, 4}},
          {{1, 3}, {2, 4}}}) {
        const auto sv = singular_values(matricize(t, rows, cols).mat);
        CHECK(sv.front() > 0.0);
        for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] == 0.0);
    }
}

TEST_CASE("ky fan norms") {
    const PartyStructure two(2, 2);
    Matricization m{{1, 2}, {1}, {2}, RealMatrix::Zero(3, 3)};
    m.mat.diagonal() << 3.0, 2.0, 1.0;
    CHECK(ky_fan(m, 1) == doctest::Approx(3.0));
    CHECK(ky_fan(m, 2) == doctest::Approx(5.0));
    CHECK(ky_fan(m, 3) == doctest::Approx(6.0));
    CHECK(ky_fan(m, 1) ==
          doctest::Approx(singular_values(m.mat).front()));  // spectral norm
    CHECK_THROWS_AS(ky_fan(m, 0), KOutOfRangeError);
    CHECK_THROWS_AS(ky_fan(m, 4), KOutOfRangeError);
}

TEST_CASE("GHZ4 one-vs-rest unfolding has singular values {2, 2, 1}") {
    const DensityMatrix rho = pure_to_density(ghz(4, 2));
    const CorrelationTensor t = correlation_tensor(rho, {1, 2, 3, 4});
    const Matricization m = matricize(t, {1}, {2, 3, 4});
    const auto sv = singular_values(m.mat);
    CHECK(sv[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sv[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sv[2] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(ky_fan(m, 1) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ky_fan(m, 2) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(ky_fan(m, 3) == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(frobenius(t) == doctest::Approx(3.0).epsilon(1e-9));

    // Independent route: Jacobi SVD of the enumerated tensor's unfolding.
    const RealMatrix brute = bf::unfold(bf::tensor_by_enumeration(rho, {1, 2, 3, 4}), 3,
                                        {1, 2, 3, 4}, {1}, {2, 3, 4});
    const auto jac = bf::jacobi_singular_values(brute);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(sv[i] - jac[i]) < 1e-9);
}

TEST_CASE("purity decomposition") {
    const DensityMatrix ghz4 = pure_to_density(ghz(4, 2));
    const PurityDecomposition p = purity_decomposition(ghz4);
    CHECK(p.body_norm_sq(1) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(p.body_norm_sq(2) == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(p.body_norm_sq(3) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(p.body_norm_sq(4) == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(p.total == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(purity_decomposition(maximally_mixed(4, 2)).total ==
          doctest::Approx(1.0 / 16.0).epsilon(1e-12));

    Rng rng(4);
    const DensityMatrix qutrits =
        pure_to_density(haar_random_pure(PartyStructure(3, 3), rng));
    CHECK(purity_decomposition(qutrits).total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linearity in the state") {
    Rng rng(12);
    const PartyStructure two(2, 2);
    const DensityMatrix a = pure_to_density(haar_random_pure(two, rng));
    const DensityMatrix b = pure_to_density(haar_random_pure(two, rng));
    const double p = 0.3;
    const DensityMatrix mix(two, p * a.mat + (1.0 - p) * b.mat);
    for (const std::vector<int>& subset : {std::vector<int>{1}, {2}, {1, 2}}) {
        const CorrelationTensor ta = correlation_tensor(a, subset);
        const CorrelationTensor tb = correlation_tensor(b, subset);
        const CorrelationTensor tm = correlation_tensor(mix, subset);
        for (std::size_t i = 0; i < tm.entries.size(); ++i)
            CHECK(std::abs(tm.entries[i] - (p * ta.entries[i] + (1 - p) * tb.entries[i])) <
                  1e-10);
    }
}

TEST_CASE("full-body norm bound on random pure states") {
    Rng rng(77);
    for (const auto& [n, d] : {std::pair<int, int>{3, 2}, {4, 2}, {3, 3}}) {
        const double limit = std::sqrt(std::pow(2.0, n) *
                                       (std::pow(d, n) - 1.0) / std::pow(d, n));
        std::vector<int> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 1);
        for (int trial = 0; trial < 25; ++trial) {
            const DensityMatrix rho =
                pure_to_density(haar_random_pure(PartyStructure(n, d), rng));
            CHECK(frobenius(correlation_tensor(rho, all)) <= limit + 1e-9);
        }
    }
}

TEST_CASE("ky fan monotonicity and the sqrt(k) Frobenius bound") {
    Rng rng(55);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix rho =
            pure_to_density(haar_random_pure(PartyStructure(4, 2), rng));
        const CorrelationTensor t = correlation_tensor(rho, {1, 2, 3, 4});
        const Matricization m =
            trial % 2 == 0 ? matricize(t, {1, 2}, {3, 4}) : matricize(t, {1}, {2, 3, 4});
        const double fro = frobenius(m);
        double prev = 0.0;
        const int cap = static_cast<int>(std::min(m.mat.rows(), m.mat.cols()));
        for (int k = 1; k <= cap; ++k) {
            const double val = ky_fan(m, k);
            CHECK(val >= prev - 1e-12);
            CHECK(val <= std::sqrt(static_cast<double>(k)) * fro + 1e-9);
            prev = val;
        }
    }
}

TEST_CASE("local unitaries leave every unfolding spectrum unchanged") {
    Rng rng(66);
    const DensityMatrix rho = pure_to_density(ghz(4, 2));
    ComplexMatrix u = haar_unitary(2, rng);
    for (int p = 1; p < 4; ++p) u = kron(u, haar_unitary(2, rng));
    const DensityMatrix rotated(rho.structure, u * rho.mat * u.adjoint());

    const CorrelationTensor t0 = correlation_tensor(rho, {1, 2, 3, 4});
    const CorrelationTensor t1 = correlation_tensor(rotated, {1, 2, 3, 4});
    for (const auto& [rows, cols] :
         {std::pair<std::vector<int>, std::vector<int>>{{1}, {2, 3, 4}},
          {{1, 2}, {3, 4}}}) {
        const auto s0 = singular_values(matricize(t0, rows, cols).mat);
        const auto s1 = singular_values(matricize(t1, rows, cols).mat);
        for (std::size_t i = 0; i < s0.size(); ++i) CHECK(std::abs(s0[i] - s1[i]) < 1e-9);
    }
}
