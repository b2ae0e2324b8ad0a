#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "synforge/config.hpp"
#include "synforge/csscode.hpp"
#include "synforge/report_io.hpp"

namespace fs = std::filesystem;
using namespace synforge;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAbort = 2;
constexpr int kExitAuditFail = 3;

std::optional<uint64_t> env_seed() {
    const char* v = std::getenv("SYNFORGE_SEED");
    if (!v || !*v) return std::nullopt;
    char* end = nullptr;
    uint64_t s = std::strtoull(v, &end, 10);
    if (end && *end == '\0') return s;
    std::cerr << "warning: ignoring non-numeric SYNFORGE_SEED\n";
    return std::nullopt;
}

SessionConfig load_config_with_seed(const std::string& path, std::optional<uint64_t> seed_flag) {
    SessionConfig cfg = load_session_config(path);
    if (auto s = env_seed()) cfg.seed = *s;
    if (seed_flag) cfg.seed = *seed_flag; // flag beats env beats file
    return cfg;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<uint64_t> seed_flag) {
    SessionConfig cfg = load_config_with_seed(config_path, seed_flag);
    fs::create_directories(out_dir);
    SessionOutcome outcome = run_session(cfg);
    write_report(outcome.report, (fs::path(out_dir) / "report.json").string());
    write_transcript(outcome.transcript, (fs::path(out_dir) / "transcript.jsonl").string());

    const RunReport& r = outcome.report;
    std::cout << std::left;
    std::cout << std::setw(18) << "sifted" << r.sifted << '\n';
    std::cout << std::setw(18) << "tested" << r.tested << '\n';
    std::cout << std::setw(18) << "p_hat_z" << r.p_hat_z << '\n';
    std::cout << std::setw(18) << "p_hat_x" << r.p_hat_x << '\n';
    if (r.aborted) {
        std::cout << std::setw(18) << "aborted" << "yes (" << r.abort_stage << ")\n";
        return kExitAbort;
    }
    std::cout << std::setw(18) << "keys_equal" << (r.keys_equal ? "yes" : "no") << '\n';
    std::cout << std::setw(18) << "n" << r.ledger.n << '\n';
    std::cout << std::setw(18) << "s" << r.ledger.s << '\n';
    std::cout << std::setw(18) << "t" << r.ledger.t << '\n';
    std::cout << std::setw(18) << "gross" << r.ledger.gross << '\n';
    std::cout << std::setw(18) << "net" << r.ledger.net << '\n';
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& grid_spec, size_t seeds,
              const std::string& out_path) {
    SessionConfig cfg = load_session_config(config_path);
    std::vector<double> grid = parse_qber_grid(grid_spec);
    if (seeds == 0) throw ParseError("--seeds must be positive");
    std::vector<SweepRow> rows = run_sweep(cfg, grid, seeds);
    std::string csv = sweep_to_csv(rows);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
        out << csv;
        std::cout << rows.size() << " rows -> " << out_path << '\n';
    }
    return kExitOk;
}

int cmd_threshold(double tol) {
    double p_star = one_way_rate_root(tol);
    std::cout << "p_star = " << std::fixed << std::setprecision(6) << p_star << '\n';
    std::cout << "rate(p_star) = " << std::setprecision(9) << one_way_rate(p_star) << '\n';
    return kExitOk;
}

int cmd_analyze(const std::string& ops_path, const std::string& out_path) {
    std::vector<PauliOp> ops = read_operator_file(ops_path);
    StabilizerSet set{std::move(ops)};

    for (size_t i = 0; i < set.ops.size(); ++i) {
        if (css_type(set.ops[i]) == CssType::mixed) {
            std::cerr << "error: operator " << i + 1 << " (" << set.ops[i].to_string()
                      << ") is mixed; only Z-type/X-type sets are analyzable\n";
            return kExitUsage;
        }
    }

    CommutationReport rep = analyze_set(set);
    NoncommutingSet ncs = find_noncommuting_set(set);

    std::cout << std::left;
    std::cout << std::setw(8) << "index" << std::setw(10) << "type" << "operator\n";
    for (size_t i = 0; i < set.ops.size(); ++i) {
        std::string text = set.ops[i].to_string();
        if (text.size() > 48) text = text.substr(0, 45) + "...";
        std::cout << std::setw(8) << i << std::setw(10) << css_type_name(rep.types[i]) << text
                  << '\n';
    }
    std::cout << "anticommuting_pairs " << rep.anticommuting_pairs.size() << '\n';
    for (const auto& [i, j] : rep.anticommuting_pairs)
        std::cout << "  (" << i << ", " << j << ")\n";
    std::cout << "r = " << ncs.r() << (ncs.minimal_certified ? "" : " (greedy, may be non-minimal)")
              << '\n';
    std::cout << "R =";
    for (size_t i : ncs.removed) std::cout << ' ' << i;
    std::cout << '\n';

    if (!out_path.empty()) {
        nlohmann::ordered_json j;
        j["operators"] = nlohmann::json::array();
        for (size_t i = 0; i < set.ops.size(); ++i)
            j["operators"].push_back({{"index", i},
                                      {"type", css_type_name(rep.types[i])},
                                      {"op", set.ops[i].to_string()}});
        j["anticommuting_pairs"] = rep.anticommuting_pairs;
        j["r"] = ncs.r();
        j["removed"] = ncs.removed;
        j["minimal_certified"] = ncs.minimal_certified;
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open '" + out_path + "' for writing");
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_audit(const std::string& transcript_path, const std::string& config_path,
              std::optional<uint64_t> seed_flag) {
    Transcript t = read_transcript(transcript_path);
    AuditResult res = audit_transcript(t);
    std::cout << "entries " << res.entries << '\n';
    std::cout << "s " << res.s << '\n';
    for (const auto& v : res.violations) std::cout << "violation: " << v << '\n';

    bool replay_ok = true;
    if (!config_path.empty()) {
        SessionConfig cfg = load_config_with_seed(config_path, seed_flag);
        SessionOutcome fresh = run_session(cfg);
        replay_ok = transcript_to_jsonl(fresh.transcript) == transcript_to_jsonl(t);
        std::cout << "replay " << (replay_ok ? "ok" : "MISMATCH") << '\n';
    } else {
        std::cout << "replay skipped (no --config)\n";
    }

    if (!res.ok || !replay_ok) return kExitAuditFail;
    std::cout << "audit ok\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"QKD post-processing simulator: encrypted-Cascade reconciliation, "
                 "stabilizer commutation analysis, and net-key accounting"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", grid_spec, seeds_path, ops_path, transcript_path;
    std::string sweep_out, analyze_out, audit_config;
    size_t seeds = 10;
    double tol = 1e-6;
    std::optional<uint64_t> seed_flag;

    auto* run = app.add_subcommand("run", "run one session and write report + transcript");
    run->add_option("-c,--config", config_path, "session config file")->required();
    run->add_option("-o,--out", out_dir, "output directory");
    run->add_option("--seed", seed_flag, "override the config seed");

    auto* sweep = app.add_subcommand("sweep", "run a QBER grid and emit CSV");
    sweep->add_option("-c,--config", config_path, "session config file")->required();
    sweep->add_option("--qber", grid_spec, "grid LO:HI:STEP")->required();
    sweep->add_option("--seeds", seeds, "seeds per grid point");
    sweep->add_option("-o,--out", sweep_out, "CSV path (default stdout)");

    auto* threshold = app.add_subcommand("threshold", "solve the one-way rate root");
    threshold->add_option("--tol", tol, "bisection tolerance");

    auto* analyze = app.add_subcommand("analyze", "classify operators and find the non-commuting set");
    analyze->add_option("-f,--file", ops_path, "operators file, one Pauli string per line")
        ->required();
    analyze->add_option("-o,--out", analyze_out, "also write analysis.json here");

    auto* audit = app.add_subcommand("audit", "check a transcript's pad hygiene and leakage");
    audit->add_option("-f,--file", transcript_path, "transcript.jsonl")->required();
    audit->add_option("-c,--config", audit_config, "re-run this config and compare transcripts");
    audit->add_option("--seed", seed_flag, "seed override for the replay");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, seed_flag);
        if (sweep->parsed()) return cmd_sweep(config_path, grid_spec, seeds, sweep_out);
        if (threshold->parsed()) return cmd_threshold(tol);
        if (analyze->parsed()) return cmd_analyze(ops_path, analyze_out);
        if (audit->parsed()) return cmd_audit(transcript_path, audit_config, seed_flag);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
