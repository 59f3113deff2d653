#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "legdet/families.hpp"
#include "legdet/numtheory.hpp"
#include "legdet/serialize.hpp"
#include "legdet/verify.hpp"

namespace legdet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCounterexample = 3;

enum class OutputFormat { csv, jsonl, human };

/// Validated run parameters shared by the subcommands.
struct RunConfig {
    std::int64_t p = 0;
    std::int64_t from = 0;
    std::int64_t to = 0;
    int delta = 0;
    std::string w_text = "0";
    std::string format_text = "human";
    unsigned jobs = 1;
    std::string out_path;              // empty means standard output
    std::size_t adjugate_cap = 41;     // max order for the adjugate structure check
    std::uint64_t seed = kDefaultSampleSeed;

    OutputFormat format() const {
        if (format_text == "csv") return OutputFormat::csv;
        if (format_text == "jsonl") return OutputFormat::jsonl;
        return OutputFormat::human;
    }
};

namespace detail {

inline std::string render_cp_human(const CpRecord& rec) {
    std::ostringstream os;
    os << "p           = " << rec.p << "\n"
       << "branch      = " << rec.residue_class << " (mod 4)\n"
       << "|A_1|       = " << rec.det_A1.str() << "\n";
    if (rec.det_A2) os << "|A_2|       = " << rec.det_A2->str() << "\n";
    if (rec.pfaffian_A2) os << "Pf(A_2)     = " << rec.pfaffian_A2->str() << "\n";
    if (rec.j_minus_1) os << "J(-1)       = " << rec.j_minus_1->str() << "\n";
    os << "half_sum    = " << rec.half_sum.str() << "\n"
       << "c_p         = " << rec.c_p.str() << "\n"
       << "(p/c_p)     = " << rec.jacobi_p_cp << "\n";
    if (rec.class_number) os << "h(-p)       = " << rec.class_number->str() << "\n";
    return os.str();
}

/// Writes text to the configured destination; returns false on I/O failure.
inline bool deliver(const RunConfig& cfg, const std::string& text, std::ostream& out,
                    std::ostream& err) {
    if (cfg.out_path.empty()) {
        out << text;
        return true;
    }
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file: " << cfg.out_path << "\n";
        return false;
    }
    file << text;
    file.flush();
    if (!file) {
        err << "error: write failed: " << cfg.out_path << "\n";
        return false;
    }
    return true;
}

}  // namespace detail

inline int cmd_cp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!is_odd_prime(cfg.p)) {
        err << "error: " << cfg.p << " is not an odd prime\n";
        return kExitUsage;
    }
    CpRecord rec;
    try {
        rec = compute_cp(PrimeContext(cfg.p));
    } catch (const theorem_violation& e) {
        err << "theorem violation: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    const ScanRow row = ScanRow::from_record(rec);
    std::string text;
    switch (cfg.format()) {
        case OutputFormat::csv:
            text = std::string(kScanCsvHeader) + "\n" + scan_row_to_csv(row) + "\n";
            break;
        case OutputFormat::jsonl:
            text = scan_row_to_jsonl(row) + "\n";
            break;
        case OutputFormat::human:
            text = detail::render_cp_human(rec);
            break;
    }
    return detail::deliver(cfg, text, out, err) ? kExitOk : kExitUsage;
}

inline int cmd_det(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!is_odd_prime(cfg.p)) {
        err << "error: " << cfg.p << " is not an odd prime\n";
        return kExitUsage;
    }
    if (cfg.delta != 0 && cfg.delta != 1) {
        err << "error: delta must be 0 or 1\n";
        return kExitUsage;
    }
    Int w;
    try {
        w = Int(cfg.w_text);
    } catch (const std::exception&) {
        err << "error: --w expects an integer, got '" << cfg.w_text << "'\n";
        return kExitUsage;
    }
    const PrimeContext ctx(cfg.p);
    const IntMatrix a = build_A(ctx, cfg.delta);
    const IntVector u = build_u(ctx, cfg.delta);
    const Int det_a = det(a).value;
    const Int det_perturbed = rank1_update_det(a, u, u, w);
    const Int shift = det_perturbed - det_a;

    std::string text;
    switch (cfg.format()) {
        case OutputFormat::csv:
            text = "p,delta,w,det_A,det_perturbed,D\n" + std::to_string(cfg.p) + "," +
                   std::to_string(cfg.delta) + "," + w.str() + "," + det_a.str() + "," +
                   det_perturbed.str() + "," + shift.str() + "\n";
            break;
        case OutputFormat::jsonl:
            text = "{\"p\":" + std::to_string(cfg.p) + ",\"delta\":" + std::to_string(cfg.delta) +
                   ",\"w\":" + w.str() + ",\"det_A\":" + det_a.str() +
                   ",\"det_perturbed\":" + det_perturbed.str() + ",\"D\":" + shift.str() + "}\n";
            break;
        case OutputFormat::human: {
            std::ostringstream os;
            os << "p=" << cfg.p << " delta=" << cfg.delta << " w=" << w.str() << "\n"
               << "|A_delta|              = " << det_a.str() << "\n"
               << "|A_delta + w u u^T|    = " << det_perturbed.str() << "\n"
               << "D_p(w)                 = " << shift.str() << "\n";
            text = os.str();
            break;
        }
    }
    return detail::deliver(cfg, text, out, err) ? kExitOk : kExitUsage;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.from > cfg.to) {
        err << "error: --from must not exceed --to\n";
        return kExitUsage;
    }
    SuiteOptions opt;
    opt.adjugate_order_cap = cfg.adjugate_cap;
    opt.sample_seed = cfg.seed;

    std::vector<std::vector<VerificationReport>> per_prime;
    try {
        per_prime = map_over_primes(cfg.from, cfg.to, cfg.jobs, [&](std::int64_t p) {
            return run_verification_suite(PrimeContext(p), opt);
        });
    } catch (const theorem_violation& e) {
        err << "theorem violation: " << e.what() << "\n";
        return kExitVerificationFailure;
    }

    std::size_t total = 0, failed = 0;
    std::string text;
    if (cfg.format() == OutputFormat::csv) {
        text += std::string(kReportCsvHeader) + "\n";
    }
    for (const auto& reports : per_prime) {
        for (const auto& r : reports) {
            ++total;
            if (!r.passed) ++failed;
            switch (cfg.format()) {
                case OutputFormat::csv: text += report_to_csv(r) + "\n"; break;
                case OutputFormat::jsonl: text += report_to_jsonl(r) + "\n"; break;
                case OutputFormat::human: text += report_to_human(r) + "\n"; break;
            }
        }
    }
    if (!detail::deliver(cfg, text, out, err)) return kExitUsage;
    err << "verify: " << total << " reports, " << failed << " failed, " << per_prime.size()
        << " primes in [" << cfg.from << ", " << cfg.to << "]\n";
    return failed == 0 ? kExitOk : kExitVerificationFailure;
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.from > cfg.to) {
        err << "error: --from must not exceed --to\n";
        return kExitUsage;
    }
    std::vector<ScanRow> rows;
    try {
        rows = scan_conjecture(cfg.from, cfg.to, cfg.jobs);
    } catch (const theorem_violation& e) {
        err << "theorem violation: " << e.what() << "\n";
        return kExitVerificationFailure;
    }

    std::string text;
    switch (cfg.format()) {
        case OutputFormat::csv: text = scan_rows_to_csv(rows); break;
        case OutputFormat::jsonl: text = scan_rows_to_jsonl(rows); break;
        case OutputFormat::human:
            for (const auto& row : rows) text += scan_row_to_human(row) + "\n";
            break;
    }
    if (!detail::deliver(cfg, text, out, err)) return kExitUsage;

    bool counterexample = false;
    for (const auto& row : rows) {
        if (row.jacobi_p_cp != 1) {
            counterexample = true;
            err << "COUNTEREXAMPLE (p/c_p) != 1: " << scan_row_to_human(row) << "\n";
        }
    }
    return counterexample ? kExitCounterexample : kExitOk;
}

/// Entry point shared by the binary and the tests. Exit statuses: 0 success,
/// 1 verification failure, 2 usage or config error, 3 conjecture
/// counterexample.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Legendre-symbol determinant families: exact determinants, c_p extraction, "
                 "identity verification and conjecture scanning"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto format_check = CLI::IsMember({"csv", "jsonl", "human"});

    CLI::App* cp = app.add_subcommand("cp", "Compute the c_p record for a single prime");
    cp->add_option("--p", cfg.p, "odd prime")->required();
    cp->add_option("--format", cfg.format_text, "output format")->check(format_check);
    cp->add_option("--out", cfg.out_path, "output file (default: stdout)");

    CLI::App* det_cmd = app.add_subcommand("det", "Evaluate |A_delta|, the perturbed determinant "
                                                  "and their difference at one w");
    det_cmd->add_option("--p", cfg.p, "odd prime")->required();
    det_cmd->add_option("--delta", cfg.delta, "index offset, 0 or 1")->required();
    det_cmd->add_option("--w", cfg.w_text, "integer perturbation weight")->required();
    det_cmd->add_option("--format", cfg.format_text, "output format")->check(format_check);
    det_cmd->add_option("--out", cfg.out_path, "output file (default: stdout)");

    CLI::App* verify = app.add_subcommand("verify", "Run the identity suite over a prime range");
    verify->add_option("--from", cfg.from, "range start (inclusive)")->required();
    verify->add_option("--to", cfg.to, "range end (inclusive)")->required();
    verify->add_option("--format", cfg.format_text, "output format")->check(format_check);
    verify->add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);
    verify->add_option("--out", cfg.out_path, "output file (default: stdout)");
    verify->add_option("--adjugate-cap", cfg.adjugate_cap,
                       "max matrix order for the adjugate structure check");
    verify->add_option("--seed", cfg.seed, "seed for sampled sweeps over large primes");

    CLI::App* scan = app.add_subcommand("scan", "Scan primes for the Jacobi symbol (p/c_p)");
    scan->add_option("--from", cfg.from, "range start (inclusive)")->required();
    scan->add_option("--to", cfg.to, "range end (inclusive)")->required();
    scan->add_option("--format", cfg.format_text, "output format")->check(format_check);
    scan->add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);
    scan->add_option("--out", cfg.out_path, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (cp->parsed()) return cmd_cp(cfg, out, err);
        if (det_cmd->parsed()) return cmd_det(cfg, out, err);
        if (verify->parsed()) return cmd_verify(cfg, out, err);
        if (scan->parsed()) return cmd_scan(cfg, out, err);
    } catch (const theorem_violation& e) {
        err << "theorem violation: " << e.what() << "\n";
        return kExitVerificationFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << "error: no subcommand given\n";
    return kExitUsage;
}

}  // namespace legdet::cli
