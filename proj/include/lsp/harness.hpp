#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lsp/metrics.hpp"
#include "lsp/ngram_denoiser.hpp"
#include "lsp/oracle_denoiser.hpp"
#include "lsp/scheduler.hpp"
#include "lsp/tokenizer.hpp"

namespace lsp {

// Everything a single run or bench sweep needs; field names match the CLI
// flag names (and config-file keys) one for one.
struct RunConfig {
    std::string scheduler = "lsp";
    std::size_t k = 1;  // fixed_prefix block size
    double alpha = 0.25;
    double beta = 0.50;
    double tau_floor = 0.0;
    std::size_t lmin = 1;
    std::size_t w = 16;
    std::string snap_mode = "snap";
    std::size_t gen_len = 128;
    std::uint64_t seed = 0;

    std::string denoiser = "oracle";  // oracle | ngram
    double mu = 6.0;
    double gamma = 0.97;
    double sigma = 1.0;
    double phi = 2.0;
    double flip_prob = 0.5;
    int ngram_order = 3;
    double ngram_k = 0.5;
    double ngram_lambda = 0.5;

    std::string corpus;  // path to the corpus file
    std::string prompt;  // prompt text, tokenized against the corpus vocabulary
    std::vector<std::string> delimiters = Tokenizer::default_delimiters();

    std::string out_dir = ".";

    void validate() const;  // throws std::invalid_argument naming the offending field
};

SchedulerConfig to_scheduler_config(const RunConfig& cfg, std::uint64_t seed);

// Corpus, tokenizer, and shared n-gram model for a family of runs.
class Session {
public:
    explicit Session(const RunConfig& cfg);

    const Tokenizer& tokenizer() const { return tok_; }
    const std::vector<TokenId>& prompt_ids() const { return prompt_ids_; }

    // Oracle targets start at a seed-dependent corpus line so seeds produce
    // distinct but reproducible runs.
    std::unique_ptr<Denoiser> make_denoiser(std::uint64_t seed) const;
    std::vector<TokenId> oracle_target(std::uint64_t seed) const;

    struct Artifacts {
        Trace trace;
        RunSummary summary;
        std::string final_text;
    };
    Artifacts run_once(std::uint64_t seed) const;

private:
    RunConfig cfg_;
    std::vector<std::string> lines_;
    Tokenizer tok_;
    std::vector<TokenId> prompt_ids_;
    std::shared_ptr<NGramDenoiser> ngram_;  // built lazily for ngram runs
};

// JSONL: one StepRecord object per line with the fields
// step, n_active, l_prime, l_snapped, committed_ids, flips, compared, cost,
// gather_event. Byte-stable for a fixed config + seed.
void write_trace_jsonl(const std::string& path, const Trace& trace);
Trace read_trace_jsonl(const std::string& path);  // enough fields for flip-rate reports

void write_summary_json(const std::string& path, const RunSummary& summary);

struct BenchRow {
    std::string scheduler;
    std::uint64_t seed = 0;
    int steps = 0;
    std::uint64_t calls = 0;
    std::uint64_t cost = 0;
    std::uint64_t gather_events = 0;
    double flip_rate = 0.0;
    double speedup_vs_full = 0.0;
    double exact_match = 0.0;
};

// Cross product of schedulers x seeds; one data row per run plus one mean
// row per scheduler (stddevs in the trailing *_sd columns).
std::vector<BenchRow> bench(const RunConfig& cfg, const std::vector<std::string>& schedulers,
                            const std::vector<std::uint64_t>& seeds);
void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows,
                     const std::vector<std::string>& schedulers);

}  // namespace lsp
