#ifndef MNCONVEX_CLI_REPRO_HPP
#define MNCONVEX_CLI_REPRO_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mnconvex::cli
{

// One expected-vs-computed comparison. provenance is "published" for values
// stated in the source literature and "derived" for values computed from it.
struct ReproCheck {
    std::string quantity;
    std::string provenance;
    nlohmann::ordered_json expected;
    nlohmann::ordered_json computed;
    // Absolute tolerance for numeric comparisons; absent for exact ones.
    std::optional<double> tolerance;
    bool passed = false;
};

struct ReproResult {
    std::string id;
    std::string description;
    std::vector<ReproCheck> checks;
    // Supplementary tables such as scan rows; not compared.
    nlohmann::ordered_json data;

    bool passed() const;
};

struct ReproCase {
    std::string id;
    std::string description;
    std::function<std::vector<ReproCheck>(nlohmann::ordered_json &data)> run;
};

const std::vector<ReproCase> &repro_cases();
const ReproCase *find_repro_case(std::string_view id);
ReproResult run_repro(const ReproCase &c);

nlohmann::ordered_json to_json(const ReproCheck &check);
nlohmann::ordered_json to_json(const ReproResult &result);
std::string to_text(const ReproResult &result);

} // namespace mnconvex::cli

#endif
