#pragma once

// Command-line front end. Exit codes: 0 every check passed, 1 a check
// failed, 2 the input could not be read or understood.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace gplastic::cli {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

/// Runs the tool on argv-style arguments (without the program name).
/// Reports go to `out` (or the --output file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a,b;c,d" into a 2x2 row list of field-element strings.
std::vector<std::vector<std::string>> split_matrix_argument(const std::string& text);

/// Evaluates a scenario document; `source` names it in diagnostics. Throws
/// ScenarioError for schema problems.
nlohmann::ordered_json check_scenario(const nlohmann::ordered_json& scenario, bool float_crosscheck, bool& all_pass);

/// Schema or content problem at a JSON pointer inside the scenario.
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string pointer, const std::string& message)
      : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace gplastic::cli
