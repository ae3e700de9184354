#include "gme/analysis.hpp"

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <numeric>

namespace gme {

std::string format_g9(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

double round_g9(double value) { return std::strtod(format_g9(value).c_str(), nullptr); }

AnalysisReport analyze(const DensityMatrix& rho, const AnalyzeOptions& options) {
    const int n = rho.structure.parties;
    const int d = rho.structure.local_dim;
    const int q = d * d - 1;
    if (options.k && (*options.k < 1 || *options.k > q))
        throw KOutOfRangeError("analyze: k must lie in 1..d^2-1");

    AnalysisReport report;
    report.input = options.input_name;
    report.parties = n;
    report.local_dim = d;
    report.noise_p = options.noise_p;

    const DensityReport validation = validate_density(rho);
    report.hermiticity_residual = validation.hermiticity_residual;
    report.trace_deviation = validation.trace_deviation;
    report.min_eigenvalue = validation.min_eigenvalue;
    report.purity = validation.purity;

    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    const CorrelationTensor full = correlation_tensor(rho, all);

    std::vector<int> ks;
    if (options.k)
        ks.push_back(*options.k);
    else
        for (int k = 1; k <= q; ++k) ks.push_back(k);

    const std::vector<CutSpectrum> spectra = bipartition_spectra(full);
    for (const CutSpectrum& cut : spectra) {
        const double limit =
            bound(BoundId::Thm3,
                  {.n = n, .d = d, .n_a1 = static_cast<int>(cut.a1.size())});
        const std::string label = cut_label(cut.a1, cut.a2);
        double kyfan = 0.0;
        int covered = 0;
        for (int k : ks) {
            while (covered < k)
                kyfan += cut.sigmas[static_cast<std::size_t>(covered++)];
            report.cut_norms.push_back(
                {label, k, kyfan, limit, "thm3", kyfan > limit + 1e-12});
        }
    }

    if (n == 4) {
        bool anyCertified = false;
        std::vector<const std::vector<double>*> oneVsRest(4, nullptr);
        for (const CutSpectrum& cut : spectra) {
            if (cut.a1.size() == 1)
                oneVsRest[static_cast<std::size_t>(cut.a1.front() - 1)] = &cut.sigmas;
            if (cut.a2.size() == 1)
                oneVsRest[static_cast<std::size_t>(cut.a2.front() - 1)] = &cut.sigmas;
        }
        for (int k : ks) {
            AnalysisReport::MkRow row;
            row.k = k;
            double sum = 0.0;
            for (const auto* sigmas : oneVsRest)
                sum += std::accumulate(sigmas->begin(), sigmas->begin() + k, 0.0);
            row.m_k = sum / 4.0;
            row.threshold = theorem1_threshold(d, k);
            row.margin = row.m_k - row.threshold;
            row.verdict = row.margin > 1e-12 ? "GME" : "Inconclusive";
            if (row.verdict == "GME") anyCertified = true;
            report.mk_table.push_back(row);
        }
        report.verdict = anyCertified ? "GMECertified" : "Inconclusive";
    }

    const PurityDecomposition purity = purity_decomposition(rho);
    for (const auto& term : purity.terms)
        report.purity_subsets.push_back({term.subset, term.norm_sq, term.weight});
    report.purity_total = purity.total;
    return report;
}

nlohmann::json to_json(const AnalysisReport& report) {
    nlohmann::json j;
    j["input"] = report.input;
    j["parties"] = report.parties;
    j["local_dim"] = report.local_dim;
    j["noise_p"] = round_g9(report.noise_p);
    j["validation"] = {{"hermiticity_residual", round_g9(report.hermiticity_residual)},
                       {"trace_deviation", round_g9(report.trace_deviation)},
                       {"min_eigenvalue", round_g9(report.min_eigenvalue)}};
    j["purity"] = round_g9(report.purity);
    if (report.verdict) j["verdict"] = *report.verdict;
    nlohmann::json mk = nlohmann::json::array();
    for (const auto& row : report.mk_table)
        mk.push_back({{"k", row.k},
                      {"M_k", round_g9(row.m_k)},
                      {"threshold", round_g9(row.threshold)},
                      {"margin", round_g9(row.margin)},
                      {"verdict", row.verdict}});
    j["mk_table"] = std::move(mk);
    nlohmann::json cuts = nlohmann::json::array();
    for (const auto& row : report.cut_norms)
        cuts.push_back({{"cut", row.cut},
                        {"k", row.k},
                        {"ky_fan", round_g9(row.value)},
                        {"bound", round_g9(row.bound)},
                        {"bound_id", row.bound_id},
                        {"exceeds", row.exceeds}});
    j["cut_norms"] = std::move(cuts);
    nlohmann::json subsets = nlohmann::json::array();
    for (const auto& row : report.purity_subsets)
        subsets.push_back({{"subset", row.subset},
                           {"norm_sq", round_g9(row.norm_sq)},
                           {"weight", round_g9(row.weight)}});
    j["purity_decomposition"] = std::move(subsets);
    j["purity_total"] = round_g9(report.purity_total);
    return j;
}

nlohmann::json to_json(const OracleReport& report) {
    return {{"id", report.id},
            {"n", report.n},
            {"d", report.d},
            {"samples", report.samples},
            {"k", report.k},
            {"max_observed", round_g9(report.max_observed)},
            {"bound", round_g9(report.bound_value)},
            {"k_at_worst", report.k_at_worst},
            {"violations", report.violations},
            {"worst_margin", round_g9(report.worst_margin)},
            {"seed", report.seed},
            {"note", report.note}};
}

namespace {

std::string subset_label(const std::vector<int>& subset) {
    if (subset.empty()) return "(identity)";
    std::string out;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(subset[i]);
    }
    return out;
}

}  // namespace

void print_human(std::ostream& out, const AnalysisReport& report) {
    out << "input:      " << report.input << "\n"
        << "parties:    " << report.parties << "  local_dim: " << report.local_dim
        << "\n";
    if (report.noise_p != 1.0) out << "noise p:    " << format_g9(report.noise_p) << "\n";
    out << "purity:     " << format_g9(report.purity) << "\n"
        << "validation: hermiticity " << format_g9(report.hermiticity_residual)
        << ", trace dev " << format_g9(report.trace_deviation) << ", min eig "
        << format_g9(report.min_eigenvalue) << "\n";

    if (!report.mk_table.empty()) {
        out << "\nTheorem-1 detection (M_k vs threshold):\n"
            << "  k   M_k            threshold      margin         verdict\n";
        for (const auto& row : report.mk_table)
            out << "  " << std::left << std::setw(3) << row.k << " " << std::setw(14)
                << format_g9(row.m_k) << " " << std::setw(14)
                << format_g9(row.threshold) << " " << std::setw(14)
                << format_g9(row.margin) << " " << row.verdict << "\n";
        out << "overall: " << *report.verdict << "\n";
    }

    out << "\nBipartition Ky Fan norms vs separability bounds:\n"
        << "  cut          k   ky_fan         bound          id     exceeds\n";
    for (const auto& row : report.cut_norms)
        out << "  " << std::left << std::setw(12) << row.cut << " " << std::setw(3)
            << row.k << " " << std::setw(14) << format_g9(row.value) << " "
            << std::setw(14) << format_g9(row.bound) << " " << std::setw(6)
            << row.bound_id << " " << (row.exceeds ? "yes" : "no") << "\n";

    out << "\nPurity decomposition (total " << format_g9(report.purity_total) << "):\n"
        << "  subset       norm^2         weight\n";
    for (const auto& row : report.purity_subsets)
        out << "  " << std::left << std::setw(12) << subset_label(row.subset) << " "
            << std::setw(14) << format_g9(row.norm_sq) << " "
            << format_g9(row.weight) << "\n";
}

void print_human(std::ostream& out, const OracleReport& report) {
    out << std::left << std::setw(10) << report.id << " n=" << report.n
        << " d=" << report.d << " samples=" << report.samples << " k="
        << (report.k == 0 ? "all" : std::to_string(report.k))
        << " max=" << format_g9(report.max_observed)
        << " bound=" << format_g9(report.bound_value)
        << " worst_margin=" << format_g9(report.worst_margin)
        << " violations=" << report.violations << " seed=" << report.seed;
    if (!report.note.empty()) out << "\n  note: " << report.note;
    out << "\n";
}

}  // namespace gme
