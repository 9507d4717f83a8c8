#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "qsp/state.hpp"

namespace qsp::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitArgument = 3;

/// Input or IO failure (maps to exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State file: {"n": int, "amplitudes": [[re, im], ...]}. Norms within 1e-6
/// of one are accepted, within 1e-3 renormalized with a warning on `warn`,
/// anything else rejected.
StateVector state_from_json(const nlohmann::json& j, std::ostream& warn);
StateVector load_state_file(const std::filesystem::path& path, std::ostream& warn);
nlohmann::json state_to_json(const StateVector& psi);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qsp::cli
