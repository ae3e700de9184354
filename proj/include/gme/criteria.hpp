#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gme/correlations.hpp"

namespace gme {

/// Closed-form bounds and thresholds on unfolding norms of correlation
/// tensors. Naming follows the criterion family implemented by this library:
///   Lemma1      fully separable 4-partite, every one-vs-rest Ky Fan norm
///               equals 4(d-1)^2/d^2 (all k);
///   Lemma2/3    one-vs-rest unfoldings, separable (Sep) or entangled (Ent)
///               across the measured cut;
///   Lemma4      two-vs-two unfoldings, Sep/Ent across the measured cut;
///   Thm2        fully separable n-partite equality sqrt(2^n (d-1)^n / d^n);
///   Thm3        separable across A1|A2: sqrt(2^n (d^|A1|-1)(d^|A2|-1)/d^n);
///   Thm4Odd/Even  one-vs-rest unfoldings of states entangled on that cut
///               but separable somewhere, odd/even n variants;
///   Thm1Threshold  the GME detection threshold for the M_k statistic;
///   Body1..BodyN   Frobenius bounds sqrt(2^m (d^m - 1)/d^m) on m-body tensors.
enum class BoundId {
    Lemma1,
    Lemma2Sep,
    Lemma2Ent,
    Lemma3Sep,
    Lemma3Ent,
    Lemma4Sep,
    Lemma4Ent,
    Thm2,
    Thm3,
    Thm4Odd,
    Thm4Even,
    Thm1Threshold,
    Body1,
    Body2,
    Body3,
    BodyN,
};

std::string bound_id_name(BoundId id);
std::optional<BoundId> bound_id_from_name(const std::string& name);

struct BoundParams {
    int n = 0;     // party count, where applicable
    int d = 0;     // local dimension (required)
    int k = 0;     // Ky Fan order, where applicable
    int n_a1 = 0;  // size of the first block (Thm3)
};

/// Evaluates the closed form for `id`. Throws BadParamsError when a required
/// parameter is missing or out of range.
double bound(BoundId id, const BoundParams& params);

/// (d-1)[sqrt(d^2+d+1) + 3(d+1) sqrt(k)] / d^2, the strict M_k threshold
/// above which a four-qudit state is certified GME. 1 <= k <= d^2-1.
double theorem1_threshold(int d, int k);

/// Average of the Ky Fan k-norms of the four one-vs-rest unfoldings of the
/// full four-body tensor. Throws WrongPartyCountError unless n = 4.
double m_k(const DensityMatrix& rho, int k);

/// Singular values (descending) of T_{A1|A2} for every unordered bipartition
/// of the tensor's subset; A1 is the block containing the smallest party.
struct CutSpectrum {
    std::vector<int> a1;
    std::vector<int> a2;
    std::vector<double> sigmas;
};
std::vector<CutSpectrum> bipartition_spectra(const CorrelationTensor& full);

enum class VerdictKind { GMECertified, EntangledAcrossCut, Inconclusive };

std::string verdict_kind_name(VerdictKind kind);

struct DetectionRow {
    int k = 0;
    double statistic = 0.0;  // M_k or the cut Ky Fan norm
    double threshold = 0.0;
    double margin = 0.0;  // statistic - threshold
    bool certified = false;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    std::vector<DetectionRow> rows;
    std::vector<int> cut_a1;  // set for EntangledAcrossCut
    std::vector<std::string> failed_cuts;  // cuts that missed the bound (n-partite GME)
    double purity = 0.0;
    bool pure_state_only = false;
};

/// Strict Theorem-1 detector: certified iff M_k exceeds the threshold for the
/// given k, or for at least one k in 1..d^2-1 when k is not given. Margins
/// within 1e-12 of zero resolve to Inconclusive (ties are not certified).
Verdict detect_gme_4partite(const DensityMatrix& rho,
                            std::optional<int> k = std::nullopt);

/// Entanglement certificate across one cut of a pure state: certified iff
/// ||T_{A1|A2}||_k strictly exceeds the separability bound for that cut.
Verdict certify_cut_entanglement_pure(const PureState& psi,
                                      const std::vector<int>& a1, int k);

/// Pure-state GME certificate: certified iff the cut norm exceeds the
/// separability bound on EVERY bipartition; otherwise lists the failing cuts.
Verdict certify_gme_pure_npartite(const PureState& psi, int k);

/// One-vs-rest (or rest-vs-one) norm of a pure state assumed separable under
/// at least one bipartition, compared to the parity-matched bound for states
/// entangled across the measured cut. The separability hypothesis is recorded,
/// not verified; violates_hypothesis means the state cannot satisfy it while
/// being entangled across this cut.
struct Theorem4Report {
    int party = 0;             // the singled-out party
    bool party_rows = true;    // true: party|rest unfolding, false: rest|party
    int k = 0;
    double measured = 0.0;
    double bound_value = 0.0;
    bool violates_hypothesis = false;
};
Theorem4Report theorem4_check(const PureState& psi, int party, bool party_rows, int k);

/// Smallest visibility p for which p*rho + (1-p) I/d^n is still certified at
/// the given k, found by bisection to `tol`; empty when even p = 1 is not
/// certified (NotDetectable).
std::optional<double> critical_visibility(const PureState& target, int k,
                                          double tol = 1e-6);

/// "12|34"-style label (comma-separated above 9 parties).
std::string cut_label(const std::vector<int>& a1, const std::vector<int>& a2);

}  // namespace gme
