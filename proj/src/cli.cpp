#include "pacube/cli.hpp"

#include "pacube/analysis.hpp"
#include "pacube/enumerate.hpp"
#include "pacube/errors.hpp"
#include "pacube/io.hpp"
#include "pacube/measure.hpp"
#include "pacube/realize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

namespace pacube::cli {

namespace {

using Clock = std::chrono::steady_clock;

int resolve_workers(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("PACUBE_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

struct Emit {
    std::ostream& out;
    bool quiet = false;
    bool timing = false;
    int workers = 1;
    Clock::time_point started = Clock::now();

    // Returns the convention exit code; stats pick up wall clock and worker
    // count only on request, so default reports are byte-stable across runs
    // and worker counts.
    int report(const std::string& command, Json input, bool violations, Json witnesses,
               Json stats, std::optional<Json> details, const std::string& summary) {
        if (quiet) {
            out << command << ": " << summary << "\n";
            return violations ? 1 : 0;
        }
        if (timing) {
            stats["workers"] = workers;
            stats["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   Clock::now() - started)
                                   .count();
        }
        Json r;
        r["command"] = command;
        r["input"] = std::move(input);
        r["result"] = violations ? "violations" : "pass";
        r["witnesses"] = std::move(witnesses);
        if (details)
            r["details"] = std::move(*details);
        r["stats"] = std::move(stats);
        out << r.dump(2) << "\n";
        return violations ? 1 : 0;
    }
};

Measure load_measure(const std::string& path, Json& input) {
    std::string text = read_file(path);
    input["measure"] = path;
    input["digest"] = digest_hex(text);
    return measure_from_json(parse_json(text));
}

IncreasingEvent load_event(const std::string& path, Json& input, const char* key) {
    std::string text = read_file(path);
    input[key] = path;
    input[std::string(key) + "_digest"] = digest_hex(text);
    return event_from_json(parse_json(text));
}

Json rat_json(const Rat& r) { return Json(rat_to_string(r)); }

Json witness_json(const PaViolation& v) {
    Json w;
    w["a"] = event_to_json(v.a);
    w["b"] = event_to_json(v.b);
    w["p_ab"] = rat_json(v.p_ab);
    w["p_a"] = rat_json(v.p_a);
    w["p_b"] = rat_json(v.p_b);
    return w;
}

Json witness_json(const FkgViolation& v, int n) {
    Json w;
    w["a"] = point_to_bitstring(v.a, n);
    w["b"] = point_to_bitstring(v.b, n);
    w["lhs"] = rat_json(v.lhs);
    w["rhs"] = rat_json(v.rhs);
    return w;
}

Json witness_json(const AbcWitness& v) {
    Json w;
    w["a"] = event_to_json(v.a);
    w["b"] = event_to_json(v.b);
    w["c"] = event_to_json(v.c);
    Json probs;
    probs["a"] = rat_json(v.p_a);
    probs["b"] = rat_json(v.p_b);
    probs["c"] = rat_json(v.p_c);
    probs["ab"] = rat_json(v.p_ab);
    probs["ac"] = rat_json(v.p_ac);
    probs["bc"] = rat_json(v.p_bc);
    probs["abc"] = rat_json(v.p_abc);
    w["probs"] = std::move(probs);
    return w;
}

Json rat_list_json(const std::vector<Rat>& rs) {
    Json a = Json::array();
    for (const Rat& r : rs)
        a.push_back(rat_to_string(r));
    return a;
}

struct CommonOpts {
    std::string measure;
    int workers = 0;
    bool timing = false;
    bool quiet = false;
};

void add_output_flags(CLI::App* sub, CommonOpts& opts) {
    sub->add_flag("--timing", opts.timing,
                  "Include wall_ms and workers in stats (volatile fields)");
    sub->add_flag("--quiet", opts.quiet, "One-line human summary instead of JSON");
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact toolkit for increasing events and positive association on {0,1}^n"};
    app.name("pacube");
    app.require_subcommand(1);
    int exit_code = 0;

    // enumerate
    {
        auto opts = std::make_shared<EnumConfig>();
        auto format = std::make_shared<std::string>("json");
        CLI::App* sub = app.add_subcommand("enumerate", "Stream all increasing events on {0,1}^n");
        sub->add_option("--n", opts->n, "Dimension (<= 6)")->required();
        sub->add_flag("--include-empty", opts->include_empty, "Include the empty event");
        sub->add_flag("--include-full", opts->include_full, "Include the full event");
        sub->add_option("--format", *format, "json (one event per line) or count")
            ->check(CLI::IsMember({"json", "count"}));
        sub->callback([opts, format, &out]() {
            if (*format == "count") {
                out << count_events(*opts) << "\n";
                return;
            }
            EventStream stream(*opts);
            stream.for_each([&](std::uint64_t, std::uint64_t mask) {
                out << event_to_json(IncreasingEvent::from_mask(opts->n, mask)).dump() << "\n";
            });
        });
    }

    // check-pa
    {
        auto opts = std::make_shared<CommonOpts>();
        CLI::App* sub = app.add_subcommand(
            "check-pa", "Exhaustive positive-association scan over all event pairs (n <= 5)");
        sub->add_option("--measure", opts->measure, "Measure file (JSON)")->required();
        sub->add_option("--workers", opts->workers, "Scan workers (default: PACUBE_WORKERS or cores)");
        add_output_flags(sub, *opts);
        sub->callback([opts, &out, &exit_code]() {
            Emit emit{out, opts->quiet, opts->timing, resolve_workers(opts->workers)};
            Json input;
            TableMeasure table = as_table(load_measure(opts->measure, input));
            PaResult res = pa_check(table, emit.workers);
            Json witnesses = Json::array();
            if (res.violation)
                witnesses.push_back(witness_json(*res.violation));
            Json stats;
            stats["pairs_scanned"] = res.pairs_scanned;
            exit_code = emit.report(
                "check-pa", std::move(input), res.violation.has_value(), std::move(witnesses),
                std::move(stats), std::nullopt,
                res.violation ? "violation found" : "pass (" + std::to_string(res.pairs_scanned) + " pairs)");
        });
    }

    // check-fkg
    {
        auto opts = std::make_shared<CommonOpts>();
        CLI::App* sub =
            app.add_subcommand("check-fkg", "Lattice-condition scan over all point pairs");
        sub->add_option("--measure", opts->measure, "Measure file (JSON)")->required();
        add_output_flags(sub, *opts);
        sub->callback([opts, &out, &exit_code]() {
            Emit emit{out, opts->quiet, opts->timing, 1};
            Json input;
            TableMeasure table = as_table(load_measure(opts->measure, input));
            auto v = check_fkg(table);
            Json witnesses = Json::array();
            if (v)
                witnesses.push_back(witness_json(*v, table.dim()));
            std::uint64_t points = std::uint64_t{1} << table.dim();
            Json stats;
            stats["pairs_scanned"] = points * (points - 1) / 2;
            exit_code = emit.report("check-fkg", std::move(input), v.has_value(),
                                    std::move(witnesses), std::move(stats), std::nullopt,
                                    v ? "violation found" : "pass");
        });
    }

    // check-abc
    {
        auto opts = std::make_shared<CommonOpts>();
        auto limit = std::make_shared<std::uint64_t>(0);
        CLI::App* sub = app.add_subcommand(
            "check-abc", "Scan ordered triples for pairwise-independence failures (n <= 4)");
        sub->add_option("--measure", opts->measure, "Measure file (JSON)")->required();
        sub->add_option("--limit", *limit, "Report at most K witnesses (0 = no limit)");
        sub->add_option("--workers", opts->workers, "Scan workers");
        add_output_flags(sub, *opts);
        sub->callback([opts, limit, &out, &exit_code]() {
            Emit emit{out, opts->quiet, opts->timing, resolve_workers(opts->workers)};
            Json input;
            Measure m = load_measure(opts->measure, input);
            std::uint64_t cap = *limit == 0 ? kNoLimit : *limit;
            AbcResult res = std::holds_alternative<ProductMeasure>(m)
                                ? abc_scan(std::get<ProductMeasure>(m), emit.workers, cap)
                                : abc_scan(std::get<TableMeasure>(m), emit.workers, cap);
            Json witnesses = Json::array();
            for (const AbcWitness& w : res.witnesses)
                witnesses.push_back(witness_json(w));
            Json stats;
            stats["triples_scanned"] = res.triples_scanned;
            exit_code =
                emit.report("check-abc", std::move(input), !res.witnesses.empty(),
                            std::move(witnesses), std::move(stats), std::nullopt,
                            std::to_string(res.witnesses.size()) + " witnesses");
        });
    }

    // harris-check
    {
        auto opts = std::make_shared<CommonOpts>();
        auto pcsv = std::make_shared<std::string>();
        auto patha = std::make_shared<std::string>();
        auto pathb = std::make_shared<std::string>();
        CLI::App* sub = app.add_subcommand(
            "harris-check",
            "Compare exact independence with affecting-set disjointness for two events");
        sub->add_option("--p", *pcsv, "Product parameters, e.g. \"1/3,2/3\"")->required();
        sub->add_option("--event-a", *patha, "Event file (JSON)")->required();
        sub->add_option("--event-b", *pathb, "Event file (JSON)")->required();
        add_output_flags(sub, *opts);
        sub->callback([opts, pcsv, patha, pathb, &out, &exit_code]() {
            Emit emit{out, opts->quiet, opts->timing, 1};
            Json input;
            ProductMeasure m(rat_list_from_string(*pcsv));
            input["p"] = rat_list_json(m.params());
            IncreasingEvent a = load_event(*patha, input, "event_a");
            IncreasingEvent b = load_event(*pathb, input, "event_b");
            HarrisResult res = harris_criterion(m, a, b);
            bool disagree = res.independent != res.z_disjoint;
            Json witnesses = Json::array();
            if (disagree) {
                Json w;
                w["independent"] = res.independent;
                w["z_disjoint"] = res.z_disjoint;
                w["p_ab"] = rat_json(prob(m, intersect(a, b)));
                w["p_a"] = rat_json(prob(m, a));
                w["p_b"] = rat_json(prob(m, b));
                witnesses.push_back(std::move(w));
            }
            Json details;
            details["independent"] = res.independent;
            details["z_disjoint"] = res.z_disjoint;
            exit_code = emit.report(
                "harris-check", std::move(input), disagree, std::move(witnesses),
                Json::object(), std::move(details),
                disagree ? "criterion sides disagree"
                         : std::string("agree (independent=") +
                               (res.independent ? "true)" : "false)"));
        });
    }

    // sahi-scan
    {
        auto opts = std::make_shared<CommonOpts>();
        auto n = std::make_shared<int>(0);
        auto gridcsv = std::make_shared<std::string>();
        CLI::App* sub = app.add_subcommand(
            "sahi-scan", "Minimize the three-event correlation expression over a product grid");
        sub->add_option("--n", *n, "Dimension (<= 3)")->required();
        sub->add_option("--grid", *gridcsv, "Per-coordinate grid values, e.g. \"1/8,2/8\"")
            ->required();
        sub->add_option("--workers", opts->workers, "Scan workers");
        add_output_flags(sub, *opts);
        sub->callback([opts, n, gridcsv, &out, &exit_code]() {
            Emit emit{out, opts->quiet, opts->timing, resolve_workers(opts->workers)};
            std::vector<Rat> grid = rat_list_from_string(*gridcsv);
            Json input;
            input["n"] = *n;
            input["grid"] = rat_list_json(grid);
            SahiScanResult res = sahi_scan(*n, grid, emit.workers);
            Json witnesses = Json::array();
            for (const SahiNegative& neg : res.negatives) {
                Json w;
                w["a"] = event_to_json(neg.a);
                w["b"] = event_to_json(neg.b);
                w["c"] = event_to_json(neg.c);
                w["p"] = rat_list_json(neg.p);
                w["value"] = rat_json(neg.value);
                witnesses.push_back(std::move(w));
            }
            Json minimum;
            minimum["a"] = event_to_json(res.min_a);
            minimum["b"] = event_to_json(res.min_b);
            minimum["c"] = event_to_json(res.min_c);
            minimum["p"] = rat_list_json(res.min_p);
            minimum["value"] = rat_json(res.min_value);
            Json details;
            details["minimum"] = std::move(minimum);
            Json stats;
            stats["evaluations"] = res.evaluations;
            exit_code = emit.report("sahi-scan", std::move(input), !res.negatives.empty(),
                                    std::move(witnesses), std::move(stats), std::move(details),
                                    "minimum " + rat_to_string(res.min_value) + ", " +
                                        std::to_string(res.negatives.size()) + " negatives");
        });
    }

    // fixed-point-measure
    {
        auto n = std::make_shared<int>(0);
        CLI::App* sub = app.add_subcommand(
            "fixed-point-measure", "Emit the law of a uniform permutation's fixed-point set");
        sub->add_option("--n", *n, "Ground-set size (1..8)")->required();
        sub->callback([n, &out]() { out << measure_to_json(fixed_point_measure(*n)).dump(2) << "\n"; });
    }

    // realize-fui
    {
        auto path = std::make_shared<std::string>();
        auto outpath = std::make_shared<std::string>();
        CLI::App* sub = app.add_subcommand(
            "realize-fui",
            "Realize an FKG measure as monotone functions of independent Bernoullis");
        sub->add_option("--measure", *path, "Measure file (JSON)")->required();
        sub->add_option("--out", *outpath, "Write realization here instead of stdout");
        sub->callback([path, outpath, &out]() {
            Json input;
            TableMeasure table = as_table(load_measure(*path, input));
            FuiRealization r = discretize(build_thresholds(table));
            std::string text = realization_to_json(r).dump(2) + "\n";
            if (outpath->empty()) {
                out << text;
            } else {
                std::ofstream f(*outpath, std::ios::binary);
                if (!f)
                    throw UsageError("cannot write to " + *outpath);
                f << text;
            }
        });
    }

    // pushforward
    {
        auto path = std::make_shared<std::string>();
        CLI::App* sub =
            app.add_subcommand("pushforward", "Exact law of the X coordinates of a realization");
        sub->add_option("--realization", *path, "Realization file (JSON)")->required();
        sub->callback([path, &out]() {
            std::string text = read_file(*path);
            FuiRealization r = realization_from_json(parse_json(text));
            out << measure_to_json(pushforward(r)).dump(2) << "\n";
        });
    }

    // fixture
    {
        auto name = std::make_shared<std::string>();
        auto qcsv = std::make_shared<std::string>("1/2,1/2,1/2");
        CLI::App* sub = app.add_subcommand("fixture", "Emit a named built-in realization");
        sub->add_option("name", *name, "Fixture name (footnote2)")->required();
        sub->add_option("--q", *qcsv, "Bernoulli parameters");
        sub->callback([name, qcsv, &out]() {
            if (*name != "footnote2")
                throw UsageError("unknown fixture '" + *name + "'");
            std::vector<Rat> q = rat_list_from_string(*qcsv);
            if (q.size() != 3)
                throw UsageError("fixture footnote2 needs exactly 3 parameters");
            out << realization_to_json(footnote2_fixture(q[0], q[1], q[2])).dump(2) << "\n";
        });
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e, out, err);
        app.exit(e, out, err);
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

} // namespace pacube::cli
