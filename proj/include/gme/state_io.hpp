#pragma once

#include <filesystem>
#include <string>

#include "gme/states.hpp"

namespace gme {

/// On-disk state record. JSON schema:
///   kind:      "pure" | "density"
///   parties:   n
///   local_dim: d
///   data:      pure    -> length-d^n array of [re, im] pairs
///              density -> d^n x d^n nested array of [re, im] pairs
/// Composite index convention: party 1 most significant.
struct StateFile {
    std::string kind;
    int parties = 0;
    int local_dim = 0;
    ComplexVector amplitudes;  // kind == "pure"
    ComplexMatrix density;     // kind == "density"
};

/// Parses and dimension-checks a state file. Throws Error with a reason on
/// malformed JSON, unknown kind, or inconsistent dimensions.
StateFile load_state_file(const std::filesystem::path& path);

void write_state_file(const std::filesystem::path& path, const PureState& psi);
void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho);

/// Throws NotNormalizedError / Error if the record does not hold a valid
/// pure state.
PureState to_pure(const StateFile& file);

/// Accepts both kinds; pure records become rank-1 projectors. Throws Error
/// when the loaded density matrix fails validate_density.
DensityMatrix to_density(const StateFile& file);

}  // namespace gme
