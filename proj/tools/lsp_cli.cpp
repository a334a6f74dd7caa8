#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsp/harness.hpp"

namespace {

void add_run_config_flags(CLI::App& app, lsp::RunConfig& cfg) {
    app.add_option("--scheduler", cfg.scheduler, "lsp|full|fixed_prefix|scattered_margin");
    app.add_option("--k", cfg.k, "fixed_prefix block size");
    app.add_option("--alpha", cfg.alpha, "lower acceptance fraction");
    app.add_option("--beta", cfg.beta, "upper acceptance fraction");
    app.add_option("--tau-floor", cfg.tau_floor, "absolute stability floor");
    app.add_option("--lmin", cfg.lmin, "minimum guaranteed block size");
    app.add_option("--w", cfg.w, "snapping lookback window");
    app.add_option("--snap-mode", cfg.snap_mode, "snap|strict|off");
    app.add_option("--gen-len", cfg.gen_len, "generation length");
    app.add_option("--denoiser", cfg.denoiser, "oracle|ngram");
    app.add_option("--mu", cfg.mu, "oracle base margin");
    app.add_option("--gamma", cfg.gamma, "oracle margin decay");
    app.add_option("--sigma", cfg.sigma, "oracle noise scale");
    app.add_option("--phi", cfg.phi, "oracle fragmentation penalty");
    app.add_option("--flip-prob", cfg.flip_prob, "oracle flip probability scale");
    app.add_option("--ngram-order", cfg.ngram_order, "n-gram order");
    app.add_option("--ngram-k", cfg.ngram_k, "add-k smoothing constant");
    app.add_option("--ngram-lambda", cfg.ngram_lambda, "forward/backward interpolation weight");
    app.add_option("--corpus", cfg.corpus, "corpus file (one line per row)");
    app.add_option("--prompt", cfg.prompt, "prompt text");
    app.add_option("--delimiters", cfg.delimiters, "delimiter surface strings");
    app.add_option("--out-dir", cfg.out_dir, "output directory")->envname("LSP_OUT_DIR");
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Longest-stable-prefix decoding scheduler harness"};
    app.require_subcommand(1);

    lsp::RunConfig cfg;
    cfg.corpus = "data/corpus.txt";

    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> schedulers;
    std::string trace_path, summary_path, csv_path;
    double window_lo = 0.25, window_hi = 0.75;

    auto* run_cmd = app.add_subcommand("run", "single generation run; writes trace + summary");
    add_run_config_flags(*run_cmd, cfg);
    run_cmd->add_option("--seed", seed, "run seed");
    run_cmd->add_option("--trace-out", trace_path, "trace JSONL path");
    run_cmd->add_option("--summary-out", summary_path, "summary JSON path");
    run_cmd->set_config("--config");

    auto* bench_cmd = app.add_subcommand("bench", "schedulers x seeds sweep; writes a CSV");
    add_run_config_flags(*bench_cmd, cfg);
    bench_cmd->add_option("--schedulers", schedulers, "scheduler kinds to sweep")->required();
    bench_cmd->add_option("--seeds", seeds, "seed list");
    bench_cmd->add_option("--csv-out", csv_path, "CSV output path");
    bench_cmd->set_config("--config");

    auto* flips_cmd = app.add_subcommand("flips", "flip-rate report from an existing trace");
    flips_cmd->add_option("--trace", trace_path, "trace JSONL path")->required();
    flips_cmd->add_option("--window-lo", window_lo, "window lower completion fraction");
    flips_cmd->add_option("--window-hi", window_hi, "window upper completion fraction");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            cfg.validate();
            lsp::Session session(cfg);
            const auto art = session.run_once(seed);

            const std::string stem = cfg.scheduler + "_seed" + std::to_string(seed);
            if (trace_path.empty()) trace_path = join_path(cfg.out_dir, "trace_" + stem + ".jsonl");
            if (summary_path.empty())
                summary_path = join_path(cfg.out_dir, "summary_" + stem + ".json");
            lsp::write_trace_jsonl(trace_path, art.trace);
            lsp::write_summary_json(summary_path, art.summary);

            std::cout << art.final_text << '\n';
            std::cerr << "steps=" << art.summary.total_steps
                      << " calls=" << art.summary.denoiser_calls
                      << " cost=" << art.summary.total_cost
                      << " gather_events=" << art.summary.gather_events
                      << " trace=" << trace_path << '\n';
        } else if (bench_cmd->parsed()) {
            cfg.validate();
            if (seeds.empty()) seeds = {0};
            const auto rows = lsp::bench(cfg, schedulers, seeds);
            if (csv_path.empty()) csv_path = join_path(cfg.out_dir, "bench.csv");
            lsp::write_bench_csv(csv_path, rows, schedulers);
            std::cerr << "wrote " << rows.size() << " data rows to " << csv_path << '\n';
        } else if (flips_cmd->parsed()) {
            const auto trace = lsp::read_trace_jsonl(trace_path);
            const double rate = lsp::flip_rate(trace, {window_lo, window_hi});
            std::cout << "flip_rate=" << rate << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
