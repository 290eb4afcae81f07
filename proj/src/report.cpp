#include "cyclerank/matrix_io.hpp"
#include "cyclerank/search.hpp"

namespace cyclerank {

nlohmann::json report_to_json(const SearchReport& rep, const nlohmann::json& config,
                              bool with_timings) {
    using nlohmann::json;
    json j;
    j["version"] = library_version();
    j["params"] = {{"p", rep.p},
                   {"d", rep.d},
                   {"r", rep.r},
                   {"k", rep.d - rep.r},
                   {"prune", rep.options.prune},
                   {"dedupe", rep.options.dedupe},
                   {"stop_at_first", rep.options.stop_at_first}};
    j["pool"] = matrix_to_json(rep.pool.matrix());
    j["counts"] = {{"pool_size", rep.pool.size()},
                   {"candidates_total", rep.candidates_total},
                   {"candidates_enumerated", rep.candidates_enumerated},
                   {"pruned", rep.pruned},
                   {"empty_found", rep.survivors.size()},
                   {"classes", rep.classes.size()}};
    j["complete"] = rep.complete;
    json survivors = json::array();
    for (std::size_t i = 0; i < rep.survivors.size(); ++i)
        survivors.push_back({{"B", matrix_to_json(rep.survivors[i])},
                             {"zero_rows", rep.survivor_zero_rows[i]}});
    j["survivors"] = std::move(survivors);
    json classes = json::array();
    for (const auto& c : rep.classes)
        classes.push_back({{"canonical", matrix_to_json(c.canonical.matrix)},
                           {"representative", matrix_to_json(rep.survivors[c.members.front()])},
                           {"members", c.members}});
    j["classes"] = std::move(classes);
    j["config"] = config;
    if (with_timings) {
        j["timings_ms"] = {{"enumeration", rep.enumeration_ms},
                           {"canonicalization", rep.canonicalization_ms}};
        j["runtime"] = {{"workers", rep.options.workers}};
    }
    return j;
}

} // namespace cyclerank
