#pragma once

#include "cyclerank/search.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>

namespace cyclerank {

enum class OutputFormat { text, json };

struct Config {
    std::uint64_t order_cap = kDefaultOrderCap;
    std::uint64_t perm_cap = kDefaultPermCap;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    unsigned workers = 0; // 0: all hardware threads
    OutputFormat format = OutputFormat::text;

    unsigned effective_workers() const;
    SearchOptions search_options() const;
    /// Caps and format only; worker count does not affect results.
    nlohmann::json to_json() const;
};

/// Applies the keys present in a JSON object (order_cap, perm_cap,
/// enumeration_cap, workers, format). Unknown keys and non-positive caps are
/// rejected with ParseError.
void apply_config_json(Config& cfg, const nlohmann::json& j, const std::string& origin);
void apply_config_file(Config& cfg, const std::string& path);

/// CYCLERANK_ORDER_CAP, CYCLERANK_PERM_CAP, CYCLERANK_ENUMERATION_CAP,
/// CYCLERANK_WORKERS, CYCLERANK_FORMAT. `getenv` is injectable for tests.
void apply_environment(Config& cfg,
                       const std::function<std::optional<std::string>(const char*)>& getenv);

OutputFormat parse_format(const std::string& s);

} // namespace cyclerank
