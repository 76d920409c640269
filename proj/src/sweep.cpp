#include "camo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>
#include <thread>

#include <json.hpp>

#include "camo/bench.hpp"
#include "camo/lock.hpp"

namespace camo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view data, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path.string() + "'");
    out << text;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 15];
        v >>= 4;
    }
    return s;
}

std::string fraction_label(double f) {
    int pct = static_cast<int>(std::llround(f * 100.0));
    return std::to_string(pct);
}

struct Cell {
    std::size_t bench_idx;
    double fraction;
    std::uint64_t seed;
    std::string scheme;
    std::string hash;
};

json row_to_json(const SweepRow& r) {
    json j;
    j["benchmark"] = r.benchmark;
    j["scheme"] = r.scheme;
    j["fraction"] = r.fraction;
    j["seed"] = r.seed;
    j["status"] = r.status;
    j["dip_count"] = r.dip_count;
    j["oracle_queries"] = r.oracle_queries;
    j["final_clauses"] = r.final_clauses;
    j["wall_seconds"] = r.wall_seconds;
    j["key_length"] = r.key_length;
    j["error"] = r.error;
    return j;
}

SweepRow row_from_json(const json& j) {
    SweepRow r;
    r.benchmark = j.at("benchmark").get<std::string>();
    r.scheme = j.at("scheme").get<std::string>();
    r.fraction = j.at("fraction").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    r.dip_count = j.at("dip_count").get<std::uint64_t>();
    r.oracle_queries = j.at("oracle_queries").get<std::uint64_t>();
    r.final_clauses = j.at("final_clauses").get<std::uint64_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.key_length = j.at("key_length").get<int>();
    r.error = j.at("error").get<std::string>();
    return r;
}

}  // namespace

SweepPlan SweepPlan::from_json(const std::string& text) {
    json j = json::parse(text);
    SweepPlan plan;
    for (const auto& b : j.at("benchmarks"))
        plan.benchmarks.push_back(b.get<std::string>());
    for (const auto& s : j.at("schemes"))
        plan.schemes.push_back(s.get<std::string>());
    if (j.count("fractions")) {
        for (const auto& f : j.at("fractions"))
            plan.fractions.push_back(f.get<double>());
    } else {
        for (int pct = 10; pct <= 100; pct += 10)
            plan.fractions.push_back(pct / 100.0);
    }
    if (j.count("seeds")) {
        for (const auto& s : j.at("seeds"))
            plan.seeds.push_back(s.get<std::uint64_t>());
    } else {
        plan.seeds = {1, 2, 3};
    }
    plan.budget_seconds = j.value("budget_seconds", 600.0);
    plan.iteration_budget = j.value("iteration_budget", std::uint64_t{0});
    plan.workers = j.value("workers", 0);
    plan.output_dir = j.value("output_dir", std::string("sweep_out"));
    if (j.count("camo")) {
        const json& c = j.at("camo");
        plan.camo.radius = c.value("radius", plan.camo.radius);
        plan.camo.tie_prob = c.value("tie_prob", plan.camo.tie_prob);
        plan.camo.disguised_tie_fraction =
            c.value("disguised_tie_fraction", plan.camo.disguised_tie_fraction);
        plan.camo.min_disguised_ties =
            c.value("min_disguised_ties", plan.camo.min_disguised_ties);
        plan.camo.inv_buf_fraction =
            c.value("inv_buf_fraction", plan.camo.inv_buf_fraction);
    }
    // sanity: schemes and fractions must parse up front
    for (const auto& s : plan.schemes)
        Scheme::parse(s);
    for (double f : plan.fractions)
        if (!(f > 0.0) || f > 1.0)
            throw Error("sweep fraction out of range");
    return plan;
}

SweepPlan SweepPlan::from_json_file(const std::string& path) {
    return from_json(read_file(path));
}

SweepReport run_sweep(const SweepPlan& plan, std::ostream* log) {
    if (plan.benchmarks.empty() || plan.schemes.empty() || plan.fractions.empty() ||
        plan.seeds.empty())
        throw Error("sweep plan has an empty dimension");

    fs::create_directories(plan.output_dir);
    fs::create_directories(fs::path(plan.output_dir) / "cells");
    fs::create_directories(fs::path(plan.output_dir) / "selections");

    // load benchmarks once
    std::vector<Netlist> netlists;
    std::vector<std::string> bench_bytes;
    for (const std::string& path : plan.benchmarks) {
        bench_bytes.push_back(read_file(path));
        netlists.push_back(parse_bench_file(path));
    }

    // selection sets shared across schemes within one (benchmark, fraction,
    // seed); persisted so later runs reuse the same memorized sets
    std::vector<std::vector<std::vector<SelectionSet>>> selections(netlists.size());
    for (std::size_t b = 0; b < netlists.size(); ++b) {
        selections[b].resize(plan.fractions.size());
        for (std::size_t f = 0; f < plan.fractions.size(); ++f) {
            for (std::uint64_t seed : plan.seeds) {
                fs::path sel_path =
                    fs::path(plan.output_dir) / "selections" /
                    (netlists[b].name() + "_f" + fraction_label(plan.fractions[f]) +
                     "_s" + std::to_string(seed) + ".json");
                SelectionSet sel;
                if (fs::exists(sel_path)) {
                    sel = selection_from_json(read_file(sel_path.string()), netlists[b]);
                } else {
                    sel = select_gates(netlists[b], plan.fractions[f], seed);
                    write_file(sel_path, selection_to_json(sel, netlists[b]));
                }
                selections[b][f].push_back(std::move(sel));
            }
        }
    }

    // cell list in plan order
    std::vector<Cell> cells;
    for (std::size_t b = 0; b < netlists.size(); ++b) {
        for (std::size_t f = 0; f < plan.fractions.size(); ++f) {
            for (std::uint64_t seed : plan.seeds) {
                for (const std::string& scheme : plan.schemes) {
                    std::ostringstream desc;
                    desc << tool_version << '\n'
                         << scheme << '\n'
                         << plan.fractions[f] << '\n'
                         << seed << '\n'
                         << plan.budget_seconds << '\n'
                         << plan.iteration_budget << '\n'
                         << plan.camo.radius << ' ' << plan.camo.tie_prob << ' '
                         << plan.camo.disguised_tie_fraction << ' '
                         << plan.camo.min_disguised_ties << ' '
                         << plan.camo.inv_buf_fraction << '\n';
                    std::uint64_t h = fnv1a(desc.str(), fnv1a(bench_bytes[b]));
                    cells.push_back(Cell{b, plan.fractions[f], seed, scheme, hex64(h)});
                }
            }
        }
    }

    SweepReport report;
    report.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> executed{0}, skipped{0};
    std::mutex log_mutex;

    auto run_cell = [&](std::size_t idx) {
        const Cell& cell = cells[idx];
        const Netlist& nl = netlists[cell.bench_idx];
        fs::path cell_path = fs::path(plan.output_dir) / "cells" / (cell.hash + ".json");
        if (fs::exists(cell_path)) {
            report.rows[idx] = row_from_json(json::parse(read_file(cell_path.string())));
            skipped++;
            return;
        }
        SweepRow row;
        row.benchmark = nl.name();
        row.scheme = cell.scheme;
        row.fraction = cell.fraction;
        row.seed = cell.seed;
        AttackResult attack;
        try {
            std::size_t f_idx = 0, s_idx = 0;
            for (std::size_t f = 0; f < plan.fractions.size(); ++f)
                if (plan.fractions[f] == cell.fraction)
                    f_idx = f;
            for (std::size_t s = 0; s < plan.seeds.size(); ++s)
                if (plan.seeds[s] == cell.seed)
                    s_idx = s;
            const SelectionSet& sel = selections[cell.bench_idx][f_idx][s_idx];

            Scheme scheme = Scheme::parse(cell.scheme);
            LockResult locked;
            if (scheme.is_candidate_flavor()) {
                CamouflagedNetlist camo =
                    camouflage_pipeline(nl, sel, scheme, cell.seed, plan.camo);
                locked = lock(camo);
            } else {
                locked = lock_prior_art(nl, sel, scheme, cell.seed, plan.camo);
            }
            row.key_length = locked.locked.key_width();

            AttackConfig cfg;
            cfg.budget_seconds = plan.budget_seconds;
            cfg.iteration_budget = plan.iteration_budget;
            attack = dip_loop(locked.locked, nl, cfg);
            row.status = to_string(attack.status);
            row.dip_count = attack.dip_count;
            row.oracle_queries = attack.oracle_queries;
            row.final_clauses =
                attack.clause_log.empty() ? 0 : attack.clause_log.back().clause_count;
            row.wall_seconds = attack.wall_seconds;
        } catch (const std::exception& e) {
            row.status = "Error";
            row.error = e.what();
        }
        write_file(cell_path, row_to_json(row).dump(2) + "\n");
        fs::path clause_path =
            fs::path(plan.output_dir) / "cells" / (cell.hash + ".clauses.csv");
        if (row.status != "Error")
            write_file(clause_path, clause_log_csv(attack));
        report.rows[idx] = std::move(row);
        executed++;
        if (log) {
            std::lock_guard<std::mutex> guard(log_mutex);
            const SweepRow& r = report.rows[idx];
            *log << r.benchmark << " " << r.scheme << " " << fraction_label(r.fraction)
                 << "% seed " << r.seed << ": " << r.status << " dips=" << r.dip_count
                 << " wall=" << r.wall_seconds << "s\n";
        }
    };

    int workers = plan.workers > 0
                      ? plan.workers
                      : std::max(1, static_cast<int>(std::thread::hardware_concurrency()) - 1);
    workers = std::min<int>(workers, static_cast<int>(cells.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            run_cell(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= cells.size())
                        return;
                    run_cell(i);
                }
            });
        }
        for (auto& t : pool)
            t.join();
    }
    report.executed = executed;
    report.skipped = skipped;

    write_file(fs::path(plan.output_dir) / "report.csv",
               sweep_report_csv(plan, report));
    write_file(fs::path(plan.output_dir) / "summary.csv", sweep_summary_csv(report));
    return report;
}

std::string sweep_report_csv(const SweepPlan& plan, const SweepReport& report) {
    std::ostringstream out;
    out << "# " << tool_version << " sweep report\n";
    out << "# budget_seconds=" << plan.budget_seconds
        << " iteration_budget=" << plan.iteration_budget << "\n";
    out << "# camo: radius=" << plan.camo.radius << " tie_prob=" << plan.camo.tie_prob
        << " disguised_tie_fraction=" << plan.camo.disguised_tie_fraction
        << " min_disguised_ties=" << plan.camo.min_disguised_ties
        << " inv_buf_fraction=" << plan.camo.inv_buf_fraction << "\n";
    out << "benchmark,scheme,fraction,seed,status,dip_count,oracle_queries,"
           "final_clauses,wall_seconds,key_length,error\n";
    for (const SweepRow& r : report.rows) {
        out << r.benchmark << ',' << r.scheme << ',' << fraction_label(r.fraction) << ','
            << r.seed << ',' << r.status << ',' << r.dip_count << ',' << r.oracle_queries
            << ',' << r.final_clauses << ',';
        out << std::fixed;
        out.precision(3);
        out << r.wall_seconds << ',' << r.key_length << ',';
        std::string err = r.error;
        for (char& c : err)
            if (c == ',' || c == '\n')
                c = ';';
        out << err << '\n';
        out.unsetf(std::ios_base::floatfield);
    }
    return out.str();
}

double median_dips(const SweepReport& report, const std::string& benchmark,
                   const std::string& scheme, double fraction) {
    std::vector<std::uint64_t> dips;
    for (const SweepRow& r : report.rows)
        if (r.benchmark == benchmark && r.scheme == scheme && r.fraction == fraction &&
            r.status != "Error")
            dips.push_back(r.dip_count);
    if (dips.empty())
        throw Error("no rows for " + benchmark + "/" + scheme);
    std::sort(dips.begin(), dips.end());
    std::size_t n = dips.size();
    if (n % 2)
        return static_cast<double>(dips[n / 2]);
    return (static_cast<double>(dips[n / 2 - 1]) + static_cast<double>(dips[n / 2])) / 2.0;
}

std::string sweep_summary_csv(const SweepReport& report) {
    struct KeyCmp {
        bool operator()(const std::tuple<std::string, std::string, double>& a,
                        const std::tuple<std::string, std::string, double>& b) const {
            return a < b;
        }
    };
    std::map<std::tuple<std::string, std::string, double>, std::vector<const SweepRow*>,
             KeyCmp>
        groups;
    for (const SweepRow& r : report.rows)
        groups[{r.benchmark, r.scheme, r.fraction}].push_back(&r);

    std::ostringstream out;
    out << "benchmark,scheme,fraction,cells,solved,timeout,budget_exceeded,error,"
           "median_dips,median_wall_seconds\n";
    for (const auto& [key, rows] : groups) {
        int solved = 0, timeout = 0, budget = 0, error = 0;
        std::vector<std::uint64_t> dips;
        std::vector<double> walls;
        for (const SweepRow* r : rows) {
            if (r->status == "Solved")
                ++solved;
            else if (r->status == "TimeOut")
                ++timeout;
            else if (r->status == "BudgetExceeded")
                ++budget;
            else
                ++error;
            if (r->status != "Error") {
                dips.push_back(r->dip_count);
                walls.push_back(r->wall_seconds);
            }
        }
        auto median_of = [](auto v) -> double {
            if (v.empty())
                return 0.0;
            std::sort(v.begin(), v.end());
            std::size_t n = v.size();
            if (n % 2)
                return static_cast<double>(v[n / 2]);
            return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) /
                   2.0;
        };
        out << std::get<0>(key) << ',' << std::get<1>(key) << ','
            << fraction_label(std::get<2>(key)) << ',' << rows.size() << ',' << solved
            << ',' << timeout << ',' << budget << ',' << error << ','
            << median_of(dips) << ',';
        out << std::fixed;
        out.precision(3);
        out << median_of(walls) << '\n';
        out.unsetf(std::ios_base::floatfield);
    }
    return out.str();
}

}  // namespace camo
