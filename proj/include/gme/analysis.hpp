#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gme/criteria.hpp"
#include "gme/oracle.hpp"

namespace gme {

/// Full desk report for one state: purity decomposition, every bipartition
/// norm against its separability bound, and (for four parties) the M_k
/// detection table.
struct AnalysisReport {
    struct MkRow {
        int k = 0;
        double m_k = 0.0;
        double threshold = 0.0;
        double margin = 0.0;
        std::string verdict;  // "GME" | "Inconclusive"
    };
    struct CutRow {
        std::string cut;
        int k = 0;
        double value = 0.0;  // Ky Fan k-norm of T_{A1|A2}
        double bound = 0.0;
        std::string bound_id;
        bool exceeds = false;
    };
    struct SubsetRow {
        std::vector<int> subset;
        double norm_sq = 0.0;
        double weight = 0.0;
    };

    std::string input;
    int parties = 0;
    int local_dim = 0;
    double noise_p = 1.0;  // visibility applied before analysis
    double hermiticity_residual = 0.0;
    double trace_deviation = 0.0;
    double min_eigenvalue = 0.0;
    double purity = 0.0;
    std::vector<MkRow> mk_table;  // four parties only
    std::optional<std::string> verdict;  // overall Theorem-1 verdict, four parties only
    std::vector<CutRow> cut_norms;
    std::vector<SubsetRow> purity_subsets;
    double purity_total = 0.0;
};

struct AnalyzeOptions {
    std::string input_name;
    std::optional<int> k;  // empty = all k in 1..d^2-1
    double noise_p = 1.0;  // already applied by the caller; recorded only
};

AnalysisReport analyze(const DensityMatrix& rho, const AnalyzeOptions& options);

/// Renders a double with 9 significant digits (the library's reporting
/// precision) and the value you get by re-parsing that rendering.
std::string format_g9(double value);
double round_g9(double value);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const OracleReport& report);

void print_human(std::ostream& out, const AnalysisReport& report);
void print_human(std::ostream& out, const OracleReport& report);

}  // namespace gme
