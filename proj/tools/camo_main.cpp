// Command-line front end: camouflage, lock, attack, verify, sweep, stats,
// counts, genbench.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "camo/attack.hpp"
#include "camo/bench.hpp"
#include "camo/benchgen.hpp"
#include "camo/camouflage.hpp"
#include "camo/lock.hpp"
#include "camo/sweep.hpp"

namespace fs = std::filesystem;
using namespace camo;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << text;
}

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

int selector_width(int count) {
    int w = 0;
    while ((1 << w) < count)
        ++w;
    return w;
}

struct CamoFlags {
    std::string scheme = "extended:2";
    double fraction = 0.5;
    std::uint64_t seed = 1;
    CamoOptions options;

    void attach(CLI::App* cmd, bool with_fraction = true) {
        cmd->add_option("--scheme", scheme,
                        "2to1 | 3to1 | extended:<m> | xnn | muxpair[:in|:out] | "
                        "dummyvia:<n>");
        if (with_fraction)
            cmd->add_option("--fraction", fraction, "share of gates to protect (0..1]");
        cmd->add_option("--seed", seed, "random seed");
        cmd->add_option("--radius", options.radius, "dummy-net search radius (hops)");
        cmd->add_option("--tie-prob", options.tie_prob,
                        "probability a constant wire uses a disguised tie");
        cmd->add_option("--tie-fraction", options.disguised_tie_fraction,
                        "disguised ties per selected gate");
        cmd->add_option("--min-ties", options.min_disguised_ties,
                        "minimum disguised-tie count");
        cmd->add_option("--invbuf-fraction", options.inv_buf_fraction,
                        "share of INV/BUF gates to transform");
    }
};

int cmd_stats(const std::vector<std::string>& files) {
    for (const std::string& path : files) {
        Netlist nl = parse_bench_file(path);
        NetlistStats s = nl.stats();
        std::cout << nl.name() << ": inputs=" << s.num_inputs
                  << " outputs=" << s.num_outputs << " gates=" << s.num_gates
                  << " inv+buf=" << s.num_inv_buf << "\n";
        for (int k = 0; k < num_gate_kinds; ++k) {
            int c = s.per_kind[static_cast<std::size_t>(k)];
            if (c)
                std::cout << "  " << to_string(static_cast<GateKind>(k)) << " " << c
                          << "\n";
        }
    }
    return 0;
}

int cmd_counts(int max_m) {
    std::cout << "kind";
    std::cout << " 2to1 3to1";
    for (int m = 1; m <= max_m; ++m)
        std::cout << " ext:" << m;
    std::cout << "\n";
    for (GateKind k : {GateKind::And, GateKind::Nand, GateKind::Or, GateKind::Nor,
                       GateKind::Xor, GateKind::Xnor}) {
        std::cout << to_string(k);
        std::cout << " " << function_count(k, Scheme::two_to_one());
        std::cout << " " << function_count(k, Scheme::three_to_one());
        for (int m = 1; m <= max_m; ++m)
            std::cout << " " << function_count(k, Scheme::extended_fixed(m));
        std::cout << "\n";
    }
    return 0;
}

int cmd_genbench(const std::string& profile_name, const std::string& out,
                 int inputs, int outputs, int gates, std::uint64_t seed) {
    Netlist nl;
    if (!profile_name.empty()) {
        if (profile_name == "c17") {
            nl = parse_bench(c17_bench_text, "c17");
        } else {
            auto profile = standard_profile(profile_name);
            if (!profile)
                throw Error("unknown profile '" + profile_name + "'");
            nl = generate_benchmark(*profile);
        }
    } else {
        BenchProfile p;
        p.name = stem_of(out);
        p.num_inputs = inputs;
        p.num_outputs = outputs;
        p.num_gates = gates;
        p.seed = seed;
        nl = generate_benchmark(p);
    }
    write_bench_file(nl, out);
    NetlistStats s = nl.stats();
    std::cout << "wrote " << out << ": inputs=" << s.num_inputs
              << " outputs=" << s.num_outputs << " gates=" << s.num_gates << "\n";
    return 0;
}

int cmd_camo(const std::string& input, const CamoFlags& flags, std::string out_prefix) {
    Netlist nl = parse_bench_file(input);
    if (out_prefix.empty())
        out_prefix = stem_of(input) + "_camo";
    Scheme scheme = Scheme::parse(flags.scheme);
    if (!scheme.is_candidate_flavor())
        throw Error("scheme '" + flags.scheme +
                    "' is a lock-stage scheme; use `camo lock` directly");

    CamouflagedNetlist camo;
    if (flags.fraction == 0.0) {
        camo.base = nl;
        camo.scheme = scheme;
        camo.seed = flags.seed;
        camo.options = flags.options;
        camo.selection.benchmark = nl.name();
        camo.selection.fraction = 0.0;
        camo.selection.seed = flags.seed;
    } else {
        SelectionSet sel = select_gates(nl, flags.fraction, flags.seed);
        camo = camouflage_pipeline(nl, sel, scheme, flags.seed, flags.options);
    }
    std::string bench_path = out_prefix + ".bench";
    std::string sidecar_path = out_prefix + ".camo.json";
    write_bench_file(camo.base, bench_path);
    write_file(sidecar_path, camo_to_json(camo));

    int key_bits = 0;
    for (const CandidateList& l : camo.lists)
        key_bits += selector_width(static_cast<int>(l.candidates.size()));
    std::cout << "camouflaged " << camo.camouflaged_gates.size() << " gates ("
              << camo.lists.size() << " pins), transformed " << camo.transform_log.size()
              << " INV/BUF, inserted " << camo.disguised_ties.size()
              << " disguised ties, key length " << key_bits << "\n";
    std::cout << "wrote " << bench_path << " and " << sidecar_path << "\n";
    return 0;
}

int cmd_lock(const std::string& input, const std::string& sidecar,
             const std::string& base, const CamoFlags& flags, std::string out_prefix) {
    LockResult lr;
    std::string source;
    if (!sidecar.empty()) {
        if (base.empty())
            throw Error("--sidecar requires --base (the matching BENCH file)");
        Netlist base_nl = parse_bench_file(base);
        CamouflagedNetlist camo = camo_from_json(read_file(sidecar), std::move(base_nl));
        lr = lock(camo);
        source = stem_of(base);
    } else {
        if (input.empty())
            throw Error("lock needs a BENCH file or --sidecar/--base");
        Netlist nl = parse_bench_file(input);
        Scheme scheme = Scheme::parse(flags.scheme);
        source = stem_of(input);
        if (scheme.is_candidate_flavor()) {
            SelectionSet sel = select_gates(nl, flags.fraction, flags.seed);
            CamouflagedNetlist camo =
                camouflage_pipeline(nl, sel, scheme, flags.seed, flags.options);
            lr = lock(camo);
        } else {
            SelectionSet sel;
            if (scheme.flavor != Scheme::Flavor::DummyVia)
                sel = select_gates(nl, flags.fraction, flags.seed);
            else {
                sel.benchmark = nl.name();
                sel.seed = flags.seed;
            }
            lr = lock_prior_art(nl, sel, scheme, flags.seed, flags.options);
        }
    }
    if (out_prefix.empty())
        out_prefix = source + "_locked";
    write_file(out_prefix + ".bench", write_locked_bench(lr.locked));
    write_file(out_prefix + ".key", key_to_text(lr.key, lr.locked));
    std::cout << "locked: key length " << lr.locked.key_width() << ", "
              << lr.locked.elements.size() << " elements\n";
    std::cout << "wrote " << out_prefix << ".bench and " << out_prefix << ".key\n";
    return 0;
}

int cmd_attack(const std::string& locked_path, const std::string& oracle_path,
               const std::string& sidecar, const std::string& base,
               const AttackConfig& cfg, const std::string& log_path,
               const std::string& report_path, const std::string& key_out) {
    LockedCircuit locked;
    Netlist oracle;
    std::string locked_name, oracle_name;
    if (!sidecar.empty()) {
        if (base.empty())
            throw Error("--sidecar requires --base");
        Netlist base_nl = parse_bench_file(base);
        CamouflagedNetlist camo = camo_from_json(read_file(sidecar), std::move(base_nl));
        LockResult lr = lock(camo);
        locked = std::move(lr.locked);
        oracle = camo.resolve_assignment();
        locked_name = stem_of(sidecar);
        oracle_name = locked_name + " (secret resolution)";
    } else {
        if (locked_path.empty() || oracle_path.empty())
            throw Error("attack needs a locked BENCH and --oracle, or --sidecar/--base");
        locked = parse_locked_bench_file(locked_path);
        oracle = parse_bench_file(oracle_path);
        locked_name = stem_of(locked_path);
        oracle_name = stem_of(oracle_path);
    }

    AttackResult result = dip_loop(locked, oracle, cfg);
    std::cout << "status " << to_string(result.status) << ", dips " << result.dip_count
              << ", oracle queries " << result.oracle_queries << ", wall "
              << result.wall_seconds << " s\n";
    if (result.status == AttackResult::Status::Solved) {
        std::cout << "recovered key (" << result.recovered_key.width()
                  << " bits): " << result.recovered_key.to_bit_string() << "\n";
        std::cout << "equivalence verified: " << (result.equivalence_verified ? "yes" : "no")
                  << "\n";
        if (!key_out.empty())
            write_file(key_out, key_to_text(result.recovered_key, locked));
    }
    if (!log_path.empty())
        write_file(log_path, clause_log_csv(result));
    if (!report_path.empty())
        write_file(report_path, attack_report(result, locked_name, oracle_name, cfg));
    switch (result.status) {
    case AttackResult::Status::Solved: return 0;
    case AttackResult::Status::TimeOut: return 2;
    case AttackResult::Status::BudgetExceeded: return 3;
    }
    return 1;
}

int cmd_verify(const std::string& a_path, const std::string& b_path,
               const std::string& key_path) {
    Netlist a = parse_bench_file(a_path);
    Netlist b;
    if (!key_path.empty()) {
        LockedCircuit lc = parse_locked_bench_file(b_path);
        Key key = key_from_text(read_file(key_path));
        b = resolve(lc, key);
    } else {
        b = parse_bench_file(b_path);
    }
    EquivalenceResult eq = equivalence_check(a, b);
    if (eq.equivalent) {
        std::cout << "Equivalent\n";
        return 0;
    }
    std::cout << "Counterexample " << eq.counterexample.to_hex() << " (inputs";
    for (std::size_t i = 0; i < a.primary_inputs().size(); ++i)
        std::cout << " " << a.net(a.primary_inputs()[i]).name << "="
                  << (eq.counterexample.get(static_cast<int>(i)) ? 1 : 0);
    std::cout << ")\n";
    return 4;
}

int cmd_sweep(const std::string& plan_path, const std::string& output_dir) {
    SweepPlan plan = SweepPlan::from_json_file(plan_path);
    if (!output_dir.empty())
        plan.output_dir = output_dir;
    SweepReport report = run_sweep(plan, &std::cout);
    std::cout << "executed " << report.executed << " cells, reused " << report.skipped
              << " cached cells\n";
    std::cout << "wrote " << plan.output_dir << "/report.csv and summary.csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"netlist interconnect camouflaging and SAT-based de-camouflaging"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    // stats
    auto* stats = app.add_subcommand("stats", "print benchmark characteristics");
    std::vector<std::string> stats_files;
    stats->add_option("files", stats_files, "BENCH files")->required();

    // counts
    auto* counts = app.add_subcommand("counts", "function counts per gate kind and scheme");
    int counts_m = 2;
    counts->add_option("--max-m", counts_m, "largest extended-scheme m to tabulate");

    // genbench
    auto* gen = app.add_subcommand("genbench", "generate a synthetic benchmark");
    std::string gen_profile, gen_out;
    int gen_in = 16, gen_out_count = 8, gen_gates = 200;
    std::uint64_t gen_seed = 1;
    gen->add_option("--profile", gen_profile,
                    "named profile (c17, c7552, b14, b15, aes_core, des, desk_a..desk_i)");
    gen->add_option("output", gen_out, "output BENCH path")->required();
    gen->add_option("--inputs", gen_in, "primary inputs");
    gen->add_option("--outputs", gen_out_count, "primary outputs");
    gen->add_option("--gates", gen_gates, "gate count");
    gen->add_option("--seed", gen_seed, "random seed");

    // camo
    auto* camo_cmd = app.add_subcommand("camo", "camouflage a netlist");
    std::string camo_input, camo_prefix;
    CamoFlags camo_flags;
    camo_cmd->add_option("input", camo_input, "BENCH file")->required();
    camo_flags.attach(camo_cmd);
    camo_cmd->add_option("-o,--output", camo_prefix, "output prefix");

    // lock
    auto* lock_cmd = app.add_subcommand("lock", "emit the key-controlled attacker view");
    std::string lock_input, lock_sidecar, lock_base, lock_prefix;
    CamoFlags lock_flags;
    lock_cmd->add_option("input", lock_input, "BENCH file (prior-art schemes)");
    lock_cmd->add_option("--sidecar", lock_sidecar, "camo sidecar JSON");
    lock_cmd->add_option("--base", lock_base, "BENCH file matching the sidecar");
    lock_flags.attach(lock_cmd);
    lock_cmd->add_option("-o,--output", lock_prefix, "output prefix");

    // attack
    auto* attack_cmd = app.add_subcommand("attack", "oracle-guided SAT attack");
    std::string atk_locked, atk_oracle, atk_sidecar, atk_base, atk_log, atk_report,
        atk_key_out;
    AttackConfig atk_cfg;
    atk_cfg.budget_seconds = 600;  // desk-scale default; paper setting is 172800
    attack_cmd->add_option("locked", atk_locked, "locked BENCH file");
    attack_cmd->add_option("--oracle", atk_oracle, "oracle BENCH file");
    attack_cmd->add_option("--sidecar", atk_sidecar, "camo sidecar (self-attack mode)");
    attack_cmd->add_option("--base", atk_base, "BENCH file matching the sidecar");
    attack_cmd->add_option("--budget-seconds", atk_cfg.budget_seconds,
                           "wall-time budget (paper uses 172800)");
    attack_cmd->add_option("--iterations", atk_cfg.iteration_budget,
                           "iteration budget (0 = unlimited)");
    attack_cmd->add_option("--log-seconds", atk_cfg.clause_log_seconds,
                           "clause-log sampling interval");
    attack_cmd->add_option("--log", atk_log, "clause-growth CSV path");
    attack_cmd->add_option("--report", atk_report, "attack report path");
    attack_cmd->add_option("--key-out", atk_key_out, "write the recovered key here");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "combinational equivalence check");
    std::string ver_a, ver_b, ver_key;
    verify_cmd->add_option("a", ver_a, "BENCH file")->required();
    verify_cmd->add_option("b", ver_b, "BENCH file (locked if --key is given)")
        ->required();
    verify_cmd->add_option("--key", ver_key, "key file used to resolve b");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment plan");
    std::string sweep_plan, sweep_dir;
    sweep_cmd->add_option("plan", sweep_plan, "plan JSON file")->required();
    sweep_cmd->add_option("--output-dir", sweep_dir, "override the plan's output dir");

    CLI11_PARSE(app, argc, argv);

    try {
        if (stats->parsed())
            return cmd_stats(stats_files);
        if (counts->parsed())
            return cmd_counts(counts_m);
        if (gen->parsed())
            return cmd_genbench(gen_profile, gen_out, gen_in, gen_out_count, gen_gates,
                                gen_seed);
        if (camo_cmd->parsed())
            return cmd_camo(camo_input, camo_flags, camo_prefix);
        if (lock_cmd->parsed())
            return cmd_lock(lock_input, lock_sidecar, lock_base, lock_flags, lock_prefix);
        if (attack_cmd->parsed())
            return cmd_attack(atk_locked, atk_oracle, atk_sidecar, atk_base, atk_cfg,
                              atk_log, atk_report, atk_key_out);
        if (verify_cmd->parsed())
            return cmd_verify(ver_a, ver_b, ver_key);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_plan, sweep_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
