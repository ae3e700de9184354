#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gme/criteria.hpp"

using namespace gme;

namespace {

// Expected values computed independently (high-precision evaluation of the
// closed forms and brute-force enumeration; see the acceptance suite for the
// full derivations).
constexpr double kSqrt7 = 2.6457513110645907;
constexpr double kSqrt15 = 3.872983346207417;
constexpr double kSqrt21 = 4.58257569495584;
constexpr double kThreeSqrt2 = 4.242640687119286;
constexpr double kThreeSqrt3 = 5.196152422706632;
constexpr double kThr21 = 2.9114378277661475;
constexpr double kThr22 = 3.843418343105612;
constexpr double kThr23 = 4.5585521447961215;
constexpr double kThr31 = 3.467900283436442;
constexpr double kThr32 = 4.572469783098029;
constexpr double kPStarGhz4K2 = 0.960854585776403;

DensityMatrix bell_times_bell() {
    // Product of two Bell pairs across the 12|34 cut: biseparable, not GME.
    ComplexVector bell = ComplexVector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    ComplexVector amp(16);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) amp(4 * i + j) = bell(i) * bell(j);
    return pure_to_density(PureState{PartyStructure(4, 2), amp});
}

}  // namespace

TEST_CASE("closed-form bound values") {
    CHECK(bound(BoundId::Lemma1, {.d = 2}) == doctest::Approx(1.0));
    CHECK(bound(BoundId::Lemma1, {.d = 3}) == doctest::Approx(16.0 / 9.0));
    CHECK(bound(BoundId::Lemma2Sep, {.d = 2}) == doctest::Approx(kSqrt7).epsilon(1e-12));
    CHECK(bound(BoundId::Lemma3Sep, {.d = 2}) == doctest::Approx(kSqrt7).epsilon(1e-12));
    for (int k = 1; k <= 3; ++k) {
        CHECK(bound(BoundId::Lemma2Ent, {.d = 2, .k = k}) ==
              doctest::Approx(3.0 * std::sqrt(double(k))).epsilon(1e-12));
        CHECK(bound(BoundId::Lemma4Ent, {.d = 2, .k = k}) ==
              doctest::Approx(3.0 * k).epsilon(1e-12));
    }
    CHECK(bound(BoundId::Lemma4Sep, {.d = 2}) == doctest::Approx(3.0));
    CHECK(bound(BoundId::Thm3, {.n = 4, .d = 2, .n_a1 = 2}) == doctest::Approx(3.0));
    CHECK(bound(BoundId::Thm3, {.n = 4, .d = 2, .n_a1 = 1}) ==
          doctest::Approx(kSqrt7).epsilon(1e-12));
    CHECK(bound(BoundId::Thm3, {.n = 5, .d = 2, .n_a1 = 1}) ==
          doctest::Approx(kSqrt15).epsilon(1e-12));
    CHECK(bound(BoundId::Thm3, {.n = 5, .d = 2, .n_a1 = 2}) ==
          doctest::Approx(kSqrt21).epsilon(1e-12));
    CHECK(bound(BoundId::Thm4Even, {.n = 4, .d = 2, .k = 2}) ==
          doctest::Approx(kThreeSqrt2).epsilon(1e-12));
    CHECK(bound(BoundId::Thm4Odd, {.n = 5, .d = 2, .k = 1}) ==
          doctest::Approx(kSqrt21).epsilon(1e-12));
    CHECK(bound(BoundId::Body3, {.d = 2}) == doctest::Approx(kSqrt7).epsilon(1e-12));
    CHECK(bound(BoundId::BodyN, {.n = 4, .d = 2}) ==
          doctest::Approx(kSqrt15).epsilon(1e-12));
    CHECK(bound(BoundId::Thm1Threshold, {.d = 2, .k = 2}) ==
          doctest::Approx(kThr22).epsilon(1e-12));

    // Lemma 1 and the n = 4 full-separability equality agree exactly.
    for (int d = 2; d <= 5; ++d)
        CHECK(bound(BoundId::Lemma1, {.d = d}) ==
              bound(BoundId::Thm2, {.n = 4, .d = d}));

    CHECK_THROWS_AS(bound(BoundId::Thm3, {.n = 4, .d = 2, .n_a1 = 4}), BadParamsError);
    CHECK_THROWS_AS(bound(BoundId::Thm4Odd, {.n = 4, .d = 2, .k = 1}), BadParamsError);
    CHECK_THROWS_AS(bound(BoundId::Thm4Even, {.n = 5, .d = 2, .k = 1}), BadParamsError);
    CHECK_THROWS_AS(bound(BoundId::Lemma2Ent, {.d = 2, .k = 4}), BadParamsError);
    CHECK_THROWS_AS(bound(BoundId::Lemma1, {.d = 1}), BadParamsError);
}

TEST_CASE("bound id names round-trip") {
    for (BoundId id : {BoundId::Lemma1, BoundId::Lemma2Sep, BoundId::Lemma2Ent,
                       BoundId::Lemma3Sep, BoundId::Lemma3Ent, BoundId::Lemma4Sep,
                       BoundId::Lemma4Ent, BoundId::Thm2, BoundId::Thm3,
                       BoundId::Thm4Odd, BoundId::Thm4Even, BoundId::Thm1Threshold,
                       BoundId::Body1, BoundId::Body2, BoundId::Body3, BoundId::BodyN})
        CHECK(bound_id_from_name(bound_id_name(id)) == id);
    CHECK(!bound_id_from_name("nonsense"));
}

TEST_CASE("theorem 1 thresholds") {
    CHECK(theorem1_threshold(2, 1) == doctest::Approx(kThr21).epsilon(1e-14));
    CHECK(theorem1_threshold(2, 2) == doctest::Approx(kThr22).epsilon(1e-14));
    CHECK(theorem1_threshold(2, 3) == doctest::Approx(kThr23).epsilon(1e-14));
    CHECK(theorem1_threshold(3, 1) == doctest::Approx(kThr31).epsilon(1e-14));
    CHECK(theorem1_threshold(3, 2) == doctest::Approx(kThr32).epsilon(1e-14));
    CHECK_THROWS_AS(theorem1_threshold(2, 0), BadParamsError);
    CHECK_THROWS_AS(theorem1_threshold(2, 4), BadParamsError);
    CHECK_THROWS_AS(theorem1_threshold(1, 1), BadParamsError);
}

TEST_CASE("M_k of canonical states") {
    const DensityMatrix ghz4 = pure_to_density(ghz(4, 2));
    CHECK(m_k(ghz4, 1) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(m_k(ghz4, 2) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(m_k(ghz4, 3) == doctest::Approx(5.0).epsilon(1e-9));

    const PartyStructure four(4, 2);
    const DensityMatrix mixed(four, ComplexMatrix::Identity(16, 16) / 16.0);
    for (int k = 1; k <= 3; ++k) CHECK(m_k(mixed, k) < 1e-12);

    for (double p : {0.3, 0.7}) {
        const DensityMatrix noisy = mix_with_white_noise(ghz4, p);
        for (int k = 1; k <= 3; ++k)
            CHECK(m_k(noisy, k) == doctest::Approx(p * m_k(ghz4, k)).epsilon(1e-9));
    }

    CHECK_THROWS_AS(m_k(pure_to_density(ghz(3, 2)), 1), WrongPartyCountError);
    CHECK_THROWS_AS(m_k(ghz4, 0), KOutOfRangeError);
    CHECK_THROWS_AS(m_k(ghz4, 4), KOutOfRangeError);
}

TEST_CASE("GHZ4 detection verdicts") {
    const DensityMatrix ghz4 = pure_to_density(ghz(4, 2));

    CHECK(detect_gme_4partite(ghz4, 1).kind == VerdictKind::Inconclusive);
    CHECK(detect_gme_4partite(ghz4, 2).kind == VerdictKind::GMECertified);
    CHECK(detect_gme_4partite(ghz4, 3).kind == VerdictKind::GMECertified);

    const Verdict sweep = detect_gme_4partite(ghz4);
    CHECK(sweep.kind == VerdictKind::GMECertified);
    REQUIRE(sweep.rows.size() == 3);
    CHECK(sweep.rows[0].certified == false);
    CHECK(sweep.rows[1].certified == true);
    CHECK(sweep.rows[2].certified == true);
    CHECK(sweep.rows[0].threshold == doctest::Approx(kThr21).epsilon(1e-12));
    CHECK(sweep.rows[1].margin ==
          doctest::Approx(4.0 - kThr22).epsilon(1e-9));
    CHECK(sweep.purity == doctest::Approx(1.0).epsilon(1e-10));

    // Fully separable and maximally mixed states stay inconclusive.
    ComplexVector e0 = ComplexVector::Zero(16);
    e0(0) = 1.0;
    const DensityMatrix zeros =
        pure_to_density(PureState{PartyStructure(4, 2), e0});
    CHECK(detect_gme_4partite(zeros).kind == VerdictKind::Inconclusive);
    for (const auto& row : detect_gme_4partite(zeros).rows)
        CHECK(row.statistic == doctest::Approx(1.0).epsilon(1e-9));

    const DensityMatrix mixed(PartyStructure(4, 2),
                              ComplexMatrix::Identity(16, 16) / 16.0);
    CHECK(detect_gme_4partite(mixed).kind == VerdictKind::Inconclusive);
}

TEST_CASE("detector soundness at k = 1 and k = 2 on biseparable samples") {
    Rng rng(404);
    const PartyStructure four(4, 2);
    const std::vector<std::vector<int>> cuts{{1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4}};
    for (int trial = 0; trial < 140; ++trial) {
        const PureState psi =
            random_biseparable_pure(four, cuts[trial % cuts.size()], rng);
        const DensityMatrix rho = pure_to_density(psi);
        CHECK(detect_gme_4partite(rho, 1).kind == VerdictKind::Inconclusive);
        CHECK(detect_gme_4partite(rho, 2).kind == VerdictKind::Inconclusive);
    }
}

TEST_CASE("known false positive of the stated k = 3 threshold") {
    // A product of two Bell pairs is separable across 12|34, yet its M_3
    // equals 3 sqrt(3), above the strict k = 3 threshold. The detector
    // implements the stated criterion, so it certifies this biseparable
    // state; the acceptance suite tracks the same defect.
    const DensityMatrix bb = bell_times_bell();
    CHECK(m_k(bb, 3) == doctest::Approx(kThreeSqrt3).epsilon(1e-9));
    CHECK(m_k(bb, 3) > theorem1_threshold(2, 3));
    CHECK(detect_gme_4partite(bb, 3).kind == VerdictKind::GMECertified);
    CHECK(detect_gme_4partite(bb, 1).kind == VerdictKind::Inconclusive);
    CHECK(detect_gme_4partite(bb, 2).kind == VerdictKind::Inconclusive);
}

TEST_CASE("M_k is convex under mixing") {
    Rng rng(71);
    const PartyStructure four(4, 2);
    for (int trial = 0; trial < 15; ++trial) {
        const DensityMatrix a = pure_to_density(haar_random_pure(four, rng));
        const DensityMatrix b = pure_to_density(haar_random_pure(four, rng));
        const double p = rng.uniform();
        const DensityMatrix mix(four, p * a.mat + (1.0 - p) * b.mat);
        for (int k = 1; k <= 3; ++k)
            CHECK(m_k(mix, k) <= p * m_k(a, k) + (1.0 - p) * m_k(b, k) + 1e-9);
    }
}

TEST_CASE("M_k is invariant under party relabeling") {
    Rng rng(81);
    const PartyStructure four(4, 2);
    const DensityMatrix rho = pure_to_density(haar_random_pure(four, rng));
    for (const std::vector<int>& perm :
         {std::vector<int>{2, 4, 1, 3}, {4, 3, 2, 1}, {2, 1, 3, 4}}) {
        const DensityMatrix permuted = permute_parties(rho, perm);
        for (int k = 1; k <= 3; ++k)
            CHECK(std::abs(m_k(permuted, k) - m_k(rho, k)) < 1e-10);
    }
}

TEST_CASE("cut entanglement certificates on pure states") {
    Rng rng(19);
    const PartyStructure four(4, 2);

    // A state built separable across 1|234 can never be certified there.
    const PureState bisep = random_biseparable_pure(four, {1}, rng);
    for (int k = 1; k <= 3; ++k)
        CHECK(certify_cut_entanglement_pure(bisep, {1}, k).kind ==
              VerdictKind::Inconclusive);

    const PureState g4 = ghz(4, 2);
    // 12|34: Ky Fan values {2, 4, 5} against bound 3.
    CHECK(certify_cut_entanglement_pure(g4, {1, 2}, 1).kind ==
          VerdictKind::Inconclusive);
    CHECK(certify_cut_entanglement_pure(g4, {1, 2}, 2).kind ==
          VerdictKind::EntangledAcrossCut);
    CHECK(certify_cut_entanglement_pure(g4, {1, 2}, 3).kind ==
          VerdictKind::EntangledAcrossCut);
    // 1|234: value 2 at k = 1 against bound sqrt(7).
    const Verdict v = certify_cut_entanglement_pure(g4, {1}, 1);
    CHECK(v.kind == VerdictKind::Inconclusive);
    CHECK(v.rows.front().statistic == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(v.rows.front().threshold == doctest::Approx(kSqrt7).epsilon(1e-12));
    CHECK(v.pure_state_only);

    ComplexVector unnormalized = ComplexVector::Zero(16);
    unnormalized(0) = 0.5;
    CHECK_THROWS_AS(certify_cut_entanglement_pure(
                        PureState{four, unnormalized}, {1}, 1),
                    NotPureError);
}

TEST_CASE("n-partite pure GME certificate") {
    Rng rng(29);
    const PartyStructure four(4, 2);

    ComplexVector e0 = ComplexVector::Zero(16);
    e0(0) = 1.0;
    const Verdict product = certify_gme_pure_npartite(PureState{four, e0}, 2);
    CHECK(product.kind == VerdictKind::Inconclusive);
    CHECK(product.failed_cuts.size() == 7);  // every cut misses the bound

    const Verdict bisep =
        certify_gme_pure_npartite(random_biseparable_pure(four, {1, 3}, rng), 2);
    CHECK(bisep.kind == VerdictKind::Inconclusive);
    bool foundConstructionCut = false;
    for (const std::string& cut : bisep.failed_cuts)
        if (cut == "13|24") foundConstructionCut = true;
    CHECK(foundConstructionCut);

    CHECK(certify_gme_pure_npartite(ghz(4, 2), 2).kind == VerdictKind::GMECertified);

    // GHZ on five qubits: every cut unfolding has singular values
    // {2 sqrt(2), 2 sqrt(2), 0}, so k = 1 stays below every bound while
    // k >= 2 exceeds all of them (1-vs-4 bound sqrt(15), 2-vs-3 bound sqrt(21)).
    CHECK(certify_gme_pure_npartite(ghz(5, 2), 1).kind == VerdictKind::Inconclusive);
    CHECK(certify_gme_pure_npartite(ghz(5, 2), 2).kind == VerdictKind::GMECertified);
    CHECK(certify_gme_pure_npartite(ghz(5, 2), 3).kind == VerdictKind::GMECertified);

    CHECK_THROWS_AS(certify_gme_pure_npartite(ghz(4, 2), 4), KOutOfRangeError);
}

TEST_CASE("one-vs-rest checks for states separable somewhere") {
    Rng rng(37);
    const PartyStructure four(4, 2);

    CHECK(theorem4_check(ghz(4, 2), 1, true, 2).bound_value ==
          doctest::Approx(kThreeSqrt2).epsilon(1e-12));
    CHECK(theorem4_check(ghz(5, 2), 1, true, 1).bound_value ==
          doctest::Approx(kSqrt21).epsilon(1e-12));

    // Separable across 12|34 and generically entangled across 1|234: the
    // measured norm must respect the even-n bound.
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = random_biseparable_pure(four, {1, 2}, rng);
        for (int k = 1; k <= 3; ++k) {
            const Theorem4Report a = theorem4_check(psi, 1, true, k);
            CHECK(!a.violates_hypothesis);
            const Theorem4Report b = theorem4_check(psi, 1, false, k);
            CHECK(a.measured == doctest::Approx(b.measured).epsilon(1e-12));
        }
    }
}

TEST_CASE("critical visibility") {
    const auto p2 = critical_visibility(ghz(4, 2), 2, 1e-6);
    REQUIRE(p2.has_value());
    CHECK(std::abs(*p2 - kPStarGhz4K2) < 1e-4);
    CHECK(*p2 >= kPStarGhz4K2 - 1e-12);  // returned point is detected

    CHECK(!critical_visibility(ghz(4, 2), 1, 1e-6).has_value());
    CHECK_THROWS_AS(critical_visibility(ghz(3, 2), 1, 1e-6), WrongPartyCountError);
}

TEST_CASE("cut labels") {
    CHECK(cut_label({1, 2}, {3, 4}) == "12|34");
    CHECK(cut_label({1}, {2, 3, 4}) == "1|234");
    CHECK(cut_label({1, 10}, {2, 3}) == "1,10|2,3");
}
