#include "cyclerank/cli.hpp"

#include "cyclerank/canonical.hpp"
#include "cyclerank/config.hpp"
#include "cyclerank/constructions.hpp"
#include "cyclerank/errors.hpp"
#include "cyclerank/matrix_io.hpp"
#include "cyclerank/search.hpp"
#include "cyclerank/simplex.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cyclerank::cli {

namespace {

using nlohmann::json;

std::string read_all(const std::string& source, std::istream& in) {
    std::ostringstream ss;
    if (source == "-") {
        ss << in.rdbuf();
    } else {
        std::ifstream f(source);
        if (!f)
            throw ParseError("cannot open " + source);
        ss << f.rdbuf();
    }
    return ss.str();
}

LatticeSimplex load_simplex(const std::string& source, std::istream& in) {
    const std::string text = read_all(source, in);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        return simplex_from_json(j);
    }
    IntMatrix a = parse_matrix_text(text);
    if (auto form = detect_p_power_form(a))
        return LatticeSimplex(std::move(*form));
    return LatticeSimplex(std::move(a));
}

std::string join(const IntVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + v[i].get_str();
    return s;
}

json vector_json(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v)
        a.push_back(integer_to_json(x));
    return a;
}

std::string bracket(std::size_t lo, std::size_t hi) {
    if (lo == hi)
        return std::to_string(lo);
    if (hi == lo + 1)
        return "{" + std::to_string(lo) + "," + std::to_string(hi) + "}";
    return "{" + std::to_string(lo) + ".." + std::to_string(hi) + "}";
}

json bound_json(const BoundSheet& b) {
    json j = {{"p", b.p},
              {"d", b.d},
              {"log_bound", b.log_bound},
              {"pool_bound", b.pool_bound},
              {"combined", b.combined}};
    j["linear_bound"] = b.linear_bound ? json(*b.linear_bound) : json(nullptr);
    return j;
}

json crp_json(const CrpResult& c) {
    json attempts = json::array();
    for (const auto& a : c.attempts) {
        json x = {{"r", a.r}, {"candidates", a.candidates}, {"found", a.found}};
        if (!a.cap.empty())
            x["cap"] = a.cap;
        attempts.push_back(std::move(x));
    }
    return {{"p", c.p},
            {"d", c.d},
            {"lower", c.value},
            {"exact", c.exact},
            {"witness", c.witness ? p_power_to_json(*c.witness) : json(nullptr)},
            {"attempts", std::move(attempts)}};
}

std::vector<std::int64_t> parse_int_list(const std::vector<std::string>& items) {
    std::vector<std::int64_t> out;
    for (const auto& s : items) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size())
            throw ParseError("not an integer: '" + s + "'");
        out.push_back(v);
    }
    return out;
}

void write_new_file(const std::string& path, const std::string& content) {
    if (std::filesystem::exists(path))
        throw InvalidParams("refusing to overwrite existing report " + path);
    std::ofstream f(path);
    if (!f)
        throw InvalidParams("cannot write " + path);
    f << content;
}

} // namespace

std::optional<std::string> system_getenv(const char* name) {
    if (const char* v = std::getenv(name))
        return std::string(v);
    return std::nullopt;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const Getenv& getenv) {
    CLI::App app{"Exact computations on lattice simplices", "cyclerank"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", library_version());

    std::string config_path, format_flag;
    std::uint64_t order_cap = 0, perm_cap = 0, enumeration_cap = 0;
    unsigned workers = 0;
    auto* o_config = app.add_option("--config", config_path, "JSON config file");
    auto* o_format = app.add_option("--format", format_flag, "text or json");
    auto* o_order = app.add_option("--order-cap", order_cap, "maximal group order");
    auto* o_perm = app.add_option("--perm-cap", perm_cap, "maximal d! (d+1) for canonical forms");
    auto* o_enum = app.add_option("--enumeration-cap", enumeration_cap, "maximal census size");
    auto* o_workers = app.add_option("--workers", workers, "worker threads");

    std::string m1, m2;
    bool general = false;

    auto* c_rank = app.add_subcommand("rank", "elementary divisors and cyclicity rank");
    c_rank->add_option("matrix", m1, "matrix file or -")->required();
    auto* c_empty = app.add_subcommand("empty", "emptiness test (exit 0 empty, 1 non-empty)");
    c_empty->add_option("matrix", m1, "matrix file or -")->required();
    c_empty->add_flag("--general", general, "skip the p-power kernel");
    auto* c_hollow = app.add_subcommand("hollow", "hollowness test");
    c_hollow->add_option("matrix", m1, "matrix file or -")->required();
    auto* c_canon = app.add_subcommand("canon", "canonical form up to unimodular equivalence");
    c_canon->add_option("matrix", m1, "matrix file or -")->required();
    auto* c_equiv = app.add_subcommand("equiv", "unimodular equivalence of two simplices");
    c_equiv->add_option("first", m1, "matrix file or -")->required();
    c_equiv->add_option("second", m2, "matrix file or -")->required();

    std::vector<std::string> construct_args;
    auto* c_construct = app.add_subcommand(
        "construct", "white P Q | reeve P | dilate C D | delta8 | delta9 | binary P K L | lift [N]");
    c_construct->add_option("kind", construct_args, "construction and its parameters")
        ->required();

    std::int64_t prime = 0;
    std::size_t dim = 0, rank = 0;
    bool prune = false, dedupe = false, stop_first = false;
    std::string out_path;
    auto* c_census = app.add_subcommand("census", "exhaustive search over B column subsets");
    c_census->add_option("--prime", prime)->required();
    c_census->add_option("--dim", dim)->required();
    c_census->add_option("--rank", rank)->required();
    c_census->add_flag("--prune", prune, "apply subset necessary conditions");
    c_census->add_flag("--dedupe", dedupe, "group survivors by canonical form");
    c_census->add_flag("--stop-at-first", stop_first, "stop at the first empty candidate");
    c_census->add_option("--out", out_path, "write the JSON report to a new file");

    auto* c_crp = app.add_subcommand("crp", "bounds on the maximal rank of empty p-power simplices");
    c_crp->add_option("--prime", prime)->required();
    c_crp->add_option("--dim", dim)->required();

    std::size_t max_dim = 0;
    std::vector<std::int64_t> primes;
    auto* c_table = app.add_subcommand("table", "bracket for the maximal rank of empty simplices");
    c_table->add_option("--max-dim", max_dim)->required();
    c_table->add_option("--primes", primes)->required()->delimiter(',');

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        Config cfg;
        std::optional<std::string> file = getenv("CYCLERANK_CONFIG");
        if (o_config->count())
            file = config_path;
        if (file)
            apply_config_file(cfg, *file);
        apply_environment(cfg, getenv);
        if (o_format->count())
            cfg.format = parse_format(format_flag);
        if (o_order->count())
            cfg.order_cap = order_cap;
        if (o_perm->count())
            cfg.perm_cap = perm_cap;
        if (o_enum->count())
            cfg.enumeration_cap = enumeration_cap;
        if (o_workers->count())
            cfg.workers = workers;
        if (cfg.order_cap == 0 || cfg.perm_cap == 0 || cfg.enumeration_cap == 0)
            throw ParseError("caps must be positive");
        const bool as_json = cfg.format == OutputFormat::json;

        if (c_rank->parsed()) {
            const LatticeSimplex s = load_simplex(m1, in);
            const QuotientGroup g = quotient_group(s);
            if (as_json)
                out << json{{"divisors", vector_json(g.nontrivial_divisors)},
                            {"rank", g.cyclicity_rank()},
                            {"order", integer_to_json(g.order)}}
                           .dump()
                    << '\n';
            else
                out << "divisors: " << join(g.nontrivial_divisors) << '\n'
                    << "rank: " << g.cyclicity_rank() << '\n'
                    << "order: " << g.order << '\n';
            return kOk;
        }
        if (c_empty->parsed()) {
            const LatticeSimplex s = load_simplex(m1, in);
            const EmptinessCertificate c =
                is_empty(s, cfg.order_cap, general ? OraclePath::general : OraclePath::automatic);
            if (as_json) {
                json j = {{"empty", c.empty},
                          {"group_order", integer_to_json(c.group_order)},
                          {"cosets_checked", c.cosets_checked}};
                j["witness"] = c.witness ? vector_json(*c.witness) : json(nullptr);
                out << j.dump() << '\n';
            } else {
                out << (c.empty ? "empty" : "non-empty") << '\n';
                if (c.witness)
                    out << "witness: " << join(*c.witness) << '\n';
                out << "cosets checked: " << c.cosets_checked << '\n';
            }
            return c.empty ? kOk : kNonEmpty;
        }
        if (c_hollow->parsed()) {
            const bool h = is_hollow(load_simplex(m1, in), cfg.order_cap);
            if (as_json)
                out << json{{"hollow", h}}.dump() << '\n';
            else
                out << (h ? "hollow" : "not hollow") << '\n';
            return kOk;
        }
        if (c_canon->parsed()) {
            const CanonicalForm c = canonical_form(load_simplex(m1, in), cfg.perm_cap);
            if (as_json)
                out << json{{"canonical", matrix_to_json(c.matrix)}}.dump() << '\n';
            else
                out << format_matrix_text(c.matrix);
            return kOk;
        }
        if (c_equiv->parsed()) {
            const LatticeSimplex a = load_simplex(m1, in);
            const LatticeSimplex b = load_simplex(m2, in);
            const bool eq = are_equivalent(a, b, cfg.perm_cap);
            if (as_json)
                out << json{{"equivalent", eq}}.dump() << '\n';
            else
                out << (eq ? "equivalent" : "not equivalent") << '\n';
            return kOk;
        }
        if (c_construct->parsed()) {
            const std::string kind = construct_args.front();
            const std::vector<std::string> rest(construct_args.begin() + 1, construct_args.end());
            const LatticeSimplex s = construct_named(kind, parse_int_list(rest));
            if (as_json)
                out << simplex_to_json(s).dump() << '\n';
            else
                out << format_matrix_text(s.vertex_matrix());
            return kOk;
        }
        if (c_census->parsed()) {
            SearchOptions opt = cfg.search_options();
            opt.prune = prune;
            opt.dedupe = dedupe;
            opt.stop_at_first = stop_first;
            const SearchReport rep = census(prime, dim, rank, opt);
            const json j = report_to_json(rep, cfg.to_json());
            if (!out_path.empty())
                write_new_file(out_path, j.dump(2) + "\n");
            if (as_json) {
                out << j.dump(2) << '\n';
            } else {
                out << "census p=" << prime << " d=" << dim << " r=" << rank
                    << " k=" << dim - rank << '\n'
                    << "pool size: " << rep.pool.size() << '\n'
                    << "candidates: " << rep.candidates_enumerated << " of "
                    << rep.candidates_total << '\n'
                    << "pruned: " << rep.pruned << '\n'
                    << "empty: " << rep.survivors.size() << '\n';
                if (dedupe)
                    out << "classes: " << rep.classes.size() << '\n';
                for (std::size_t i = 0; i < rep.classes.size(); ++i)
                    out << "class " << i + 1 << " (" << rep.classes[i].members.size()
                        << " members), representative B:\n"
                        << rep.survivors[rep.classes[i].members.front()];
            }
            return kOk;
        }
        if (c_crp->parsed()) {
            const BoundSheet b = crp_upper(prime, dim);
            const CrpResult c = crp_lower(prime, dim, cfg.search_options());
            if (as_json) {
                out << json{{"upper", bound_json(b)}, {"lower", crp_json(c)}}.dump(2) << '\n';
            } else {
                out << "p=" << prime << " d=" << dim << '\n'
                    << "upper: log " << b.log_bound << ", pool " << b.pool_bound;
                if (b.linear_bound)
                    out << ", linear " << *b.linear_bound;
                out << ", combined " << b.combined << '\n'
                    << "lower: " << c.value << (c.exact ? " (exact)" : " (lower bound only)")
                    << '\n';
                if (c.witness && c.witness->r() > 0)
                    out << "witness B:\n" << c.witness->B();
            }
            return kOk;
        }
        if (c_table->parsed()) {
            const auto rows = cr_e_table(max_dim, primes, cfg.search_options());
            if (as_json) {
                json a = json::array();
                for (const auto& r : rows) {
                    json per = json::array();
                    for (const auto& [p, c] : r.per_prime)
                        per.push_back(crp_json(c));
                    a.push_back({{"d", r.d},
                                 {"crp", std::move(per)},
                                 {"lower", r.lower},
                                 {"upper", r.upper}});
                }
                out << a.dump(2) << '\n';
            } else {
                out << "d";
                for (std::int64_t p : primes)
                    out << "\tcr_" << p;
                out << "\tlower\tupper\tcr_e\n";
                for (const auto& r : rows) {
                    out << r.d;
                    for (const auto& [p, c] : r.per_prime)
                        out << '\t' << c.value << (c.exact ? "" : "+");
                    out << '\t' << r.lower << '\t' << r.upper << '\t' << bracket(r.lower, r.upper)
                        << '\n';
                }
            }
            return kOk;
        }
        return kUsage;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << " (raise " << e.cap() << ")\n";
        return kCap;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace cyclerank::cli
