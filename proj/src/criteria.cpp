#include "gme/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gme {

namespace {

constexpr double kTieTol = 1e-12;

double dpow(int base, int exp) {
    double out = 1.0;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

void require(bool cond, const std::string& message) {
    if (!cond) throw BadParamsError(message);
}

std::vector<double> kyfan_prefix_sums(const std::vector<double>& sigmas) {
    std::vector<double> sums(sigmas.size());
    std::partial_sum(sigmas.begin(), sigmas.end(), sums.begin());
    return sums;
}

}  // namespace

std::string bound_id_name(BoundId id) {
    switch (id) {
        case BoundId::Lemma1: return "lemma1";
        case BoundId::Lemma2Sep: return "lemma2sep";
        case BoundId::Lemma2Ent: return "lemma2ent";
        case BoundId::Lemma3Sep: return "lemma3sep";
        case BoundId::Lemma3Ent: return "lemma3ent";
        case BoundId::Lemma4Sep: return "lemma4sep";
        case BoundId::Lemma4Ent: return "lemma4ent";
        case BoundId::Thm2: return "thm2";
        case BoundId::Thm3: return "thm3";
        case BoundId::Thm4Odd: return "thm4odd";
        case BoundId::Thm4Even: return "thm4even";
        case BoundId::Thm1Threshold: return "thm1";
        case BoundId::Body1: return "body1";
        case BoundId::Body2: return "body2";
        case BoundId::Body3: return "body3";
        case BoundId::BodyN: return "bodyn";
    }
    throw BadParamsError("unknown bound id");
}

std::optional<BoundId> bound_id_from_name(const std::string& name) {
    static const std::pair<const char*, BoundId> table[] = {
        {"lemma1", BoundId::Lemma1},       {"lemma2sep", BoundId::Lemma2Sep},
        {"lemma2ent", BoundId::Lemma2Ent}, {"lemma3sep", BoundId::Lemma3Sep},
        {"lemma3ent", BoundId::Lemma3Ent}, {"lemma4sep", BoundId::Lemma4Sep},
        {"lemma4ent", BoundId::Lemma4Ent}, {"thm2", BoundId::Thm2},
        {"thm3", BoundId::Thm3},           {"thm4odd", BoundId::Thm4Odd},
        {"thm4even", BoundId::Thm4Even},   {"thm1", BoundId::Thm1Threshold},
        {"body1", BoundId::Body1},         {"body2", BoundId::Body2},
        {"body3", BoundId::Body3},         {"bodyn", BoundId::BodyN},
    };
    for (const auto& [key, id] : table)
        if (name == key) return id;
    return std::nullopt;
}

double bound(BoundId id, const BoundParams& p) {
    const int d = p.d;
    require(d >= 2, "bound: local dimension d >= 2 required");
    const double dd = static_cast<double>(d);
    const int q = d * d - 1;
    switch (id) {
        case BoundId::Lemma1:
            return 4.0 * (dd - 1.0) * (dd - 1.0) / (dd * dd);
        case BoundId::Lemma2Sep:
        case BoundId::Lemma3Sep:
            return 4.0 * (dd - 1.0) * std::sqrt(dd * dd + dd + 1.0) / (dd * dd);
        case BoundId::Lemma2Ent:
        case BoundId::Lemma3Ent:
            require(p.k >= 1 && p.k <= q, "bound: k must lie in 1..d^2-1");
            return 4.0 * std::sqrt(static_cast<double>(p.k)) * (dd * dd - 1.0) / (dd * dd);
        case BoundId::Lemma4Sep:
            return 4.0 * (dd * dd - 1.0) / (dd * dd);
        case BoundId::Lemma4Ent:
            require(p.k >= 1 && p.k <= q, "bound: k must lie in 1..d^2-1");
            return 4.0 * p.k * (dd * dd - 1.0) / (dd * dd);
        case BoundId::Thm2:
            require(p.n >= 2, "bound: n >= 2 required");
            return std::sqrt(dpow(2, p.n) * std::pow(dd - 1.0, p.n) / dpow(d, p.n));
        case BoundId::Thm3: {
            require(p.n >= 2, "bound: n >= 2 required");
            require(p.n_a1 >= 1 && p.n_a1 <= p.n - 1,
                    "bound: block size must lie in 1..n-1");
            const int na2 = p.n - p.n_a1;
            return std::sqrt(dpow(2, p.n) * (dpow(d, p.n_a1) - 1.0) *
                             (dpow(d, na2) - 1.0) / dpow(d, p.n));
        }
        case BoundId::Thm4Odd: {
            require(p.n >= 3 && p.n % 2 == 1, "bound: odd n >= 3 required");
            require(p.k >= 1 && p.k <= q, "bound: k must lie in 1..d^2-1");
            const int half = p.n / 2;
            return std::sqrt(dpow(2, p.n) * p.k * (dpow(d, half) - 1.0) *
                             (dpow(d, p.n - half) - 1.0) / dpow(d, p.n));
        }
        case BoundId::Thm4Even: {
            require(p.n >= 2 && p.n % 2 == 0, "bound: even n >= 2 required");
            require(p.k >= 1 && p.k <= q, "bound: k must lie in 1..d^2-1");
            const double factor = dpow(d, p.n / 2) - 1.0;
            return std::sqrt(dpow(2, p.n) * p.k * factor * factor / dpow(d, p.n));
        }
        case BoundId::Thm1Threshold:
            return theorem1_threshold(d, p.k);
        case BoundId::Body1:
            return std::sqrt(2.0 * (dd - 1.0) / dd);
        case BoundId::Body2:
            return std::sqrt(4.0 * (dd * dd - 1.0) / (dd * dd));
        case BoundId::Body3:
            return 2.0 / dd * std::sqrt(2.0 * (dd * dd * dd - 1.0) / dd);
        case BoundId::BodyN:
            require(p.n >= 1, "bound: n >= 1 required");
            return std::sqrt(dpow(2, p.n) * (dpow(d, p.n) - 1.0) / dpow(d, p.n));
    }
    throw BadParamsError("unknown bound id");
}

double theorem1_threshold(int d, int k) {
    if (d < 2) throw BadParamsError("theorem1_threshold: d >= 2 required");
    if (k < 1 || k > d * d - 1)
        throw BadParamsError("theorem1_threshold: k must lie in 1..d^2-1");
    const double dd = static_cast<double>(d);
    return (dd - 1.0) *
           (std::sqrt(dd * dd + dd + 1.0) + 3.0 * (dd + 1.0) * std::sqrt(static_cast<double>(k))) /
           (dd * dd);
}

std::string cut_label(const std::vector<int>& a1, const std::vector<int>& a2) {
    const bool wide =
        (!a1.empty() && a1.back() > 9) || (!a2.empty() && a2.back() > 9);
    std::ostringstream out;
    for (std::size_t i = 0; i < a1.size(); ++i) {
        if (wide && i) out << ',';
        out << a1[i];
    }
    out << '|';
    for (std::size_t i = 0; i < a2.size(); ++i) {
        if (wide && i) out << ',';
        out << a2[i];
    }
    return out.str();
}

std::vector<CutSpectrum> bipartition_spectra(const CorrelationTensor& full) {
    const int m = full.order();
    std::vector<CutSpectrum> out;
    // Enumerate unordered bipartitions as subsets containing the first party.
    const unsigned long long masks = 1ULL << (m - 1);
    for (unsigned long long mask = 0; mask + 1 < masks; ++mask) {
        CutSpectrum cut;
        cut.a1.push_back(full.subset.front());
        for (int j = 1; j < m; ++j) {
            if (mask & (1ULL << (j - 1)))
                cut.a1.push_back(full.subset[static_cast<std::size_t>(j)]);
            else
                cut.a2.push_back(full.subset[static_cast<std::size_t>(j)]);
        }
        cut.sigmas = singular_values(matricize(full, cut.a1, cut.a2).mat);
        out.push_back(std::move(cut));
    }
    return out;
}

std::string verdict_kind_name(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::GMECertified: return "GMECertified";
        case VerdictKind::EntangledAcrossCut: return "EntangledAcrossCut";
        case VerdictKind::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

// Singular values of the four one-vs-rest unfoldings of the full tensor.
std::vector<std::vector<double>> one_vs_rest_sigmas(const DensityMatrix& rho) {
    if (rho.structure.parties != 4)
        throw WrongPartyCountError("the M_k statistic needs exactly 4 parties");
    std::vector<int> all{1, 2, 3, 4};
    const CorrelationTensor full = correlation_tensor(rho, all);
    std::vector<std::vector<double>> sigmas;
    for (int f = 1; f <= 4; ++f) {
        std::vector<int> rest;
        for (int p = 1; p <= 4; ++p)
            if (p != f) rest.push_back(p);
        sigmas.push_back(singular_values(matricize(full, {f}, rest).mat));
    }
    return sigmas;
}

}  // namespace

double m_k(const DensityMatrix& rho, int k) {
    const int q = rho.structure.local_dim * rho.structure.local_dim - 1;
    if (k < 1 || k > q) throw KOutOfRangeError("m_k: k must lie in 1..d^2-1");
    double sum = 0.0;
    for (const auto& sv : one_vs_rest_sigmas(rho))
        sum += std::accumulate(sv.begin(), sv.begin() + k, 0.0);
    return sum / 4.0;
}

Verdict detect_gme_4partite(const DensityMatrix& rho, std::optional<int> k) {
    const int d = rho.structure.local_dim;
    const int q = d * d - 1;
    if (k && (*k < 1 || *k > q))
        throw KOutOfRangeError("detect_gme_4partite: k must lie in 1..d^2-1");

    const auto sigmas = one_vs_rest_sigmas(rho);
    std::vector<std::vector<double>> prefix;
    prefix.reserve(sigmas.size());
    for (const auto& sv : sigmas) prefix.push_back(kyfan_prefix_sums(sv));

    Verdict verdict;
    verdict.purity = trace_product(rho.mat, rho.mat).real();
    const int lo = k ? *k : 1;
    const int hi = k ? *k : q;
    for (int kk = lo; kk <= hi; ++kk) {
        DetectionRow row;
        row.k = kk;
        double sum = 0.0;
        for (const auto& sums : prefix) sum += sums[static_cast<std::size_t>(kk - 1)];
        row.statistic = sum / 4.0;
        row.threshold = theorem1_threshold(d, kk);
        row.margin = row.statistic - row.threshold;
        row.certified = row.margin > kTieTol;
        if (row.certified) verdict.kind = VerdictKind::GMECertified;
        verdict.rows.push_back(row);
    }
    return verdict;
}

namespace {

void require_pure(const PureState& psi) {
    const double normSq = psi.amplitudes.squaredNorm();
    if (std::abs(normSq - 1.0) > 1e-9)
        throw NotPureError("state purity deviates from 1 beyond 1e-9");
}

}  // namespace

Verdict certify_cut_entanglement_pure(const PureState& psi, const std::vector<int>& a1,
                                      int k) {
    require_pure(psi);
    const std::vector<int> block = checked_bipartition_block(psi.structure, a1);
    const int n = psi.structure.parties;
    std::vector<int> a2;
    for (int p = 1; p <= n; ++p)
        if (!std::binary_search(block.begin(), block.end(), p)) a2.push_back(p);

    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    const DensityMatrix rho = pure_to_density(psi);
    const CorrelationTensor full = correlation_tensor(rho, all);
    const double value = ky_fan(matricize(full, block, a2), k);
    const double limit = bound(BoundId::Thm3, {.n = n,
                                               .d = psi.structure.local_dim,
                                               .k = k,
                                               .n_a1 = static_cast<int>(block.size())});

    Verdict verdict;
    verdict.pure_state_only = true;
    verdict.purity = 1.0;
    verdict.cut_a1 = block;
    DetectionRow row{k, value, limit, value - limit, value - limit > kTieTol};
    verdict.rows.push_back(row);
    verdict.kind = row.certified ? VerdictKind::EntangledAcrossCut
                                 : VerdictKind::Inconclusive;
    return verdict;
}

Verdict certify_gme_pure_npartite(const PureState& psi, int k) {
    require_pure(psi);
    const int n = psi.structure.parties;
    const int d = psi.structure.local_dim;
    // Every bipartition unfolding has min(rows, cols) >= d^2-1, so this is
    // the k domain shared by all cuts.
    if (k < 1 || k > d * d - 1)
        throw KOutOfRangeError("certify_gme_pure_npartite: k must lie in 1..d^2-1");
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    const DensityMatrix rho = pure_to_density(psi);
    const CorrelationTensor full = correlation_tensor(rho, all);

    Verdict verdict;
    verdict.pure_state_only = true;
    verdict.purity = 1.0;
    bool allExceed = true;
    for (const CutSpectrum& cut : bipartition_spectra(full)) {
        const double value =
            std::accumulate(cut.sigmas.begin(), cut.sigmas.begin() + k, 0.0);
        const double limit = bound(
            BoundId::Thm3,
            {.n = n, .d = d, .k = k, .n_a1 = static_cast<int>(cut.a1.size())});
        DetectionRow row{k, value, limit, value - limit, value - limit > kTieTol};
        verdict.rows.push_back(row);
        if (!row.certified) {
            allExceed = false;
            verdict.failed_cuts.push_back(cut_label(cut.a1, cut.a2));
        }
    }
    verdict.kind = allExceed ? VerdictKind::GMECertified : VerdictKind::Inconclusive;
    return verdict;
}

Theorem4Report theorem4_check(const PureState& psi, int party, bool party_rows, int k) {
    require_pure(psi);
    const int n = psi.structure.parties;
    const int d = psi.structure.local_dim;
    if (party < 1 || party > n)
        throw InvalidBipartitionError("theorem4_check: party outside 1..n");

    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    std::vector<int> rest;
    for (int p = 1; p <= n; ++p)
        if (p != party) rest.push_back(p);

    const DensityMatrix rho = pure_to_density(psi);
    const CorrelationTensor full = correlation_tensor(rho, all);
    const Matricization unfolding = party_rows ? matricize(full, {party}, rest)
                                               : matricize(full, rest, {party});

    Theorem4Report report;
    report.party = party;
    report.party_rows = party_rows;
    report.k = k;
    report.measured = ky_fan(unfolding, k);
    report.bound_value = bound(n % 2 == 1 ? BoundId::Thm4Odd : BoundId::Thm4Even,
                               {.n = n, .d = d, .k = k});
    report.violates_hypothesis = report.measured > report.bound_value + kTieTol;
    return report;
}

std::optional<double> critical_visibility(const PureState& target, int k, double tol) {
    if (target.structure.parties != 4)
        throw WrongPartyCountError("critical_visibility needs exactly 4 parties");
    const DensityMatrix rho = pure_to_density(target);
    auto detected = [&](double p) {
        return detect_gme_4partite(mix_with_white_noise(rho, p), k).kind ==
               VerdictKind::GMECertified;
    };
    if (!detected(1.0)) return std::nullopt;
    double lo = 0.0, hi = 1.0;  // invariant: not detected at lo, detected at hi
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (detected(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace gme
