#include "cyclerank/config.hpp"

#include "cyclerank/errors.hpp"

#include <fstream>
#include <thread>

namespace cyclerank {

namespace {

std::uint64_t positive(const nlohmann::json& v, const std::string& key, const std::string& origin) {
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > 0)
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() > 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ParseError(origin + ": " + key + " must be a positive integer");
}

std::uint64_t positive(const std::string& s, const std::string& key) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty() || s[0] == '-' || v == 0)
        throw ParseError(key + " must be a positive integer, got '" + s + "'");
    return v;
}

} // namespace

unsigned Config::effective_workers() const {
    if (workers > 0)
        return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

SearchOptions Config::search_options() const {
    SearchOptions o;
    o.workers = effective_workers();
    o.order_cap = order_cap;
    o.perm_cap = perm_cap;
    o.enumeration_cap = enumeration_cap;
    return o;
}

nlohmann::json Config::to_json() const {
    return {{"order_cap", order_cap},
            {"perm_cap", perm_cap},
            {"enumeration_cap", enumeration_cap},
            {"format", format == OutputFormat::json ? "json" : "text"}};
}

OutputFormat parse_format(const std::string& s) {
    if (s == "text")
        return OutputFormat::text;
    if (s == "json")
        return OutputFormat::json;
    throw ParseError("format must be text or json, got '" + s + "'");
}

void apply_config_json(Config& cfg, const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object())
        throw ParseError(origin + ": config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "order_cap")
            cfg.order_cap = positive(v, key, origin);
        else if (key == "perm_cap")
            cfg.perm_cap = positive(v, key, origin);
        else if (key == "enumeration_cap")
            cfg.enumeration_cap = positive(v, key, origin);
        else if (key == "workers")
            cfg.workers = static_cast<unsigned>(positive(v, key, origin));
        else if (key == "format" && v.is_string())
            cfg.format = parse_format(v.get<std::string>());
        else
            throw ParseError(origin + ": unknown or malformed key '" + key + "'");
    }
}

void apply_config_file(Config& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    apply_config_json(cfg, j, path);
}

void apply_environment(Config& cfg,
                       const std::function<std::optional<std::string>(const char*)>& getenv) {
    if (auto v = getenv("CYCLERANK_ORDER_CAP"))
        cfg.order_cap = positive(*v, "CYCLERANK_ORDER_CAP");
    if (auto v = getenv("CYCLERANK_PERM_CAP"))
        cfg.perm_cap = positive(*v, "CYCLERANK_PERM_CAP");
    if (auto v = getenv("CYCLERANK_ENUMERATION_CAP"))
        cfg.enumeration_cap = positive(*v, "CYCLERANK_ENUMERATION_CAP");
    if (auto v = getenv("CYCLERANK_WORKERS"))
        cfg.workers = static_cast<unsigned>(positive(*v, "CYCLERANK_WORKERS"));
    if (auto v = getenv("CYCLERANK_FORMAT"))
        cfg.format = parse_format(*v);
}

} // namespace cyclerank
