#include "gme/state_io.hpp"

#include <fstream>

#include <json.hpp>

namespace gme {

namespace {

using nlohmann::json;

json complex_pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error("state file: complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

StateFile load_state_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open state file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("state file is not valid JSON: " + std::string(e.what()));
    }
    for (const char* field : {"kind", "parties", "local_dim", "data"})
        if (!j.contains(field))
            throw Error(std::string("state file: missing field '") + field + "'");

    StateFile file;
    file.kind = j["kind"].get<std::string>();
    file.parties = j["parties"].get<int>();
    file.local_dim = j["local_dim"].get<int>();
    const PartyStructure structure(file.parties, file.local_dim);
    const long long dim = structure.dimension();
    const json& data = j["data"];

    if (file.kind == "pure") {
        if (!data.is_array() || static_cast<long long>(data.size()) != dim)
            throw Error("state file: pure data must hold d^n amplitudes");
        file.amplitudes.resize(dim);
        for (long long i = 0; i < dim; ++i)
            file.amplitudes(i) = parse_complex(data[static_cast<std::size_t>(i)]);
    } else if (file.kind == "density") {
        if (!data.is_array() || static_cast<long long>(data.size()) != dim)
            throw Error("state file: density data must hold d^n rows");
        file.density.resize(dim, dim);
        for (long long r = 0; r < dim; ++r) {
            const json& row = data[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<long long>(row.size()) != dim)
                throw Error("state file: density rows must hold d^n entries");
            for (long long c = 0; c < dim; ++c)
                file.density(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
        }
    } else {
        throw Error("state file: kind must be \"pure\" or \"density\"");
    }
    return file;
}

void write_state_file(const std::filesystem::path& path, const PureState& psi) {
    json data = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i)
        data.push_back(complex_pair(psi.amplitudes(i)));
    const json j{{"kind", "pure"},
                 {"parties", psi.structure.parties},
                 {"local_dim", psi.structure.local_dim},
                 {"data", std::move(data)}};
    std::ofstream out(path);
    if (!out) throw Error("cannot write state file: " + path.string());
    out << j.dump(2) << '\n';
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho) {
    json data = json::array();
    for (Eigen::Index r = 0; r < rho.mat.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.mat.cols(); ++c)
            row.push_back(complex_pair(rho.mat(r, c)));
        data.push_back(std::move(row));
    }
    const json j{{"kind", "density"},
                 {"parties", rho.structure.parties},
                 {"local_dim", rho.structure.local_dim},
                 {"data", std::move(data)}};
    std::ofstream out(path);
    if (!out) throw Error("cannot write state file: " + path.string());
    out << j.dump(2) << '\n';
}

PureState to_pure(const StateFile& file) {
    if (file.kind != "pure") throw Error("state file does not hold a pure state");
    PureState psi{PartyStructure(file.parties, file.local_dim), file.amplitudes};
    if (std::abs(psi.amplitudes.norm() - 1.0) > 1e-12)
        throw NotNormalizedError("loaded amplitudes are not normalized");
    return psi;
}

DensityMatrix to_density(const StateFile& file) {
    if (file.kind == "pure") return pure_to_density(to_pure(file));
    DensityMatrix rho(PartyStructure(file.parties, file.local_dim), file.density);
    const DensityReport report = validate_density(rho);
    if (!report.ok())
        throw Error("loaded density matrix fails validation (hermiticity " +
                    std::to_string(report.hermiticity_residual) + ", trace deviation " +
                    std::to_string(report.trace_deviation) + ", min eigenvalue " +
                    std::to_string(report.min_eigenvalue) + ")");
    return rho;
}

}  // namespace gme
