#include "lsp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lsp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void RunConfig::validate() const {
    require(alpha > 0.0 && alpha <= 1.0, "alpha: must be in (0, 1]");
    require(beta > 0.0 && beta <= 1.0, "beta: must be in (0, 1]");
    require(alpha <= beta, "alpha/beta: require alpha <= beta");
    require(tau_floor >= 0.0, "tau_floor: must be >= 0");
    require(lmin >= 1, "lmin: must be >= 1");
    require(gen_len >= 1, "gen_len: must be >= 1");
    require(k >= 1, "k: must be >= 1");
    require(gamma > 0.0 && gamma <= 1.0, "gamma: must be in (0, 1]");
    require(sigma >= 0.0, "sigma: must be >= 0");
    require(phi >= 0.0, "phi: must be >= 0");
    require(flip_prob >= 0.0 && flip_prob <= 1.0, "flip_prob: must be in [0, 1]");
    require(ngram_order >= 2, "ngram_order: must be >= 2");
    require(ngram_k >= 0.0, "ngram_k: must be >= 0");
    require(ngram_lambda >= 0.0 && ngram_lambda <= 1.0, "ngram_lambda: must be in [0, 1]");
    require(denoiser == "oracle" || denoiser == "ngram", "denoiser: expected oracle|ngram");
    require(!corpus.empty(), "corpus: path is required");
    parse_scheduler_kind(scheduler);
    parse_snap_mode(snap_mode);
}

SchedulerConfig to_scheduler_config(const RunConfig& cfg, std::uint64_t seed) {
    SchedulerConfig sc;
    sc.kind = parse_scheduler_kind(cfg.scheduler);
    sc.fixed_k = cfg.k;
    sc.bounds = {cfg.alpha, cfg.beta, cfg.tau_floor};
    sc.snap = {cfg.lmin, cfg.w, parse_snap_mode(cfg.snap_mode)};
    sc.gen_len = cfg.gen_len;
    sc.seed = seed;
    return sc;
}

Session::Session(const RunConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    lines_ = load_lines(cfg_.corpus);
    tok_ = Tokenizer::from_corpus(lines_, cfg_.delimiters);
    prompt_ids_ = tok_.tokenize(cfg_.prompt);
    if (cfg_.denoiser == "ngram")
        ngram_ = std::make_shared<NGramDenoiser>(NGramDenoiser::fit(
            lines_, tok_, cfg_.ngram_order, cfg_.ngram_k, cfg_.ngram_lambda));
}

std::vector<TokenId> Session::oracle_target(std::uint64_t seed) const {
    // Concatenate corpus lines starting at a seed-dependent line, cycling
    // until the generation region is covered.
    std::vector<TokenId> target;
    std::size_t line = seed % lines_.size();
    while (target.size() < cfg_.gen_len) {
        const auto ids = tok_.tokenize(lines_[line]);
        target.insert(target.end(), ids.begin(), ids.end());
        line = (line + 1) % lines_.size();
    }
    target.resize(cfg_.gen_len);
    return target;
}

std::unique_ptr<Denoiser> Session::make_denoiser(std::uint64_t seed) const {
    if (cfg_.denoiser == "ngram") return std::make_unique<NGramDenoiser>(*ngram_);
    OracleParams p{cfg_.mu, cfg_.gamma, cfg_.sigma, cfg_.phi, cfg_.flip_prob};
    return std::make_unique<OracleDenoiser>(oracle_target(seed), tok_.vocab_size(), tok_.mask_id(),
                                            p);
}

Session::Artifacts Session::run_once(std::uint64_t seed) const {
    const auto den = make_denoiser(seed);
    const auto result = run(prompt_ids_, *den, tok_.delimiters(), to_scheduler_config(cfg_, seed));

    Artifacts art;
    art.trace = result.trace;
    art.summary = summarize(result.trace);
    if (cfg_.denoiser == "oracle") {
        const auto target = oracle_target(seed);
        art.summary.exact_match =
            exact_match_fraction(result.final_tokens, prompt_ids_.size(), target);
    } else {
        art.summary.perplexity = ngram_->perplexity(result.final_tokens);
    }
    art.final_text = tok_.detokenize(result.final_tokens);
    return art;
}

void write_trace_jsonl(const std::string& path, const Trace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace file: " + path);
    for (const auto& rec : trace.steps) {
        nlohmann::ordered_json j;
        j["step"] = rec.step;
        j["n_active"] = rec.n_active;
        j["l_prime"] = rec.l_prime;
        j["l_snapped"] = rec.l_snapped;
        j["committed_ids"] = rec.committed_ids;
        j["flips"] = rec.flips;
        j["compared"] = rec.compared;
        j["cost"] = rec.cost;
        j["gather_event"] = rec.gather_event;
        out << j.dump() << '\n';
    }
}

Trace read_trace_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file: " + path);
    Trace trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        StepRecord rec;
        rec.step = j.at("step").get<int>();
        rec.n_active = j.at("n_active").get<int>();
        rec.l_prime = j.at("l_prime").get<int>();
        rec.l_snapped = j.at("l_snapped").get<int>();
        rec.committed_ids = j.at("committed_ids").get<std::vector<TokenId>>();
        rec.flips = j.at("flips").get<int>();
        rec.compared = j.at("compared").get<int>();
        rec.cost = j.at("cost").get<std::uint64_t>();
        rec.gather_event = j.at("gather_event").get<bool>();
        trace.total_cost += rec.cost;
        if (rec.gather_event) ++trace.gather_events;
        trace.steps.push_back(std::move(rec));
    }
    if (!trace.steps.empty()) trace.gen_len = trace.steps.front().n_active;
    trace.denoiser_calls = trace.steps.size();
    return trace;
}

void write_summary_json(const std::string& path, const RunSummary& s) {
    nlohmann::ordered_json j;
    j["scheduler"] = s.scheduler;
    j["seed"] = s.seed;
    j["gen_len"] = s.gen_len;
    j["total_steps"] = s.total_steps;
    j["denoiser_calls"] = s.denoiser_calls;
    j["total_cost"] = s.total_cost;
    j["gather_events"] = s.gather_events;
    j["final_segments"] = s.final_segments;
    j["flip_rate"] = s.flip_rate;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (auto& [size, count] : s.tokens_per_step) hist[std::to_string(size)] = count;
    j["tokens_per_step"] = hist;
    if (s.exact_match) j["exact_match"] = *s.exact_match;
    if (s.perplexity) j["perplexity"] = *s.perplexity;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary file: " + path);
    out << j.dump(2) << '\n';
}

std::vector<BenchRow> bench(const RunConfig& cfg, const std::vector<std::string>& schedulers,
                            const std::vector<std::uint64_t>& seeds) {
    if (schedulers.size() < 2)
        throw std::invalid_argument("bench: need at least 2 scheduler kinds");
    std::vector<BenchRow> rows;
    for (const auto& sched : schedulers) {
        RunConfig rc = cfg;
        rc.scheduler = sched;
        Session session(rc);
        for (auto seed : seeds) {
            const auto art = session.run_once(seed);
            BenchRow row;
            row.scheduler = sched;
            row.seed = seed;
            row.steps = art.summary.total_steps;
            row.calls = art.summary.denoiser_calls;
            row.cost = art.summary.total_cost;
            row.gather_events = art.summary.gather_events;
            row.flip_rate = art.summary.flip_rate;
            // Full always spends exactly gen_len denoiser calls, which makes
            // it the fixed 1.0x anchor.
            row.speedup_vs_full =
                static_cast<double>(cfg.gen_len) / static_cast<double>(art.summary.denoiser_calls);
            row.exact_match = art.summary.exact_match.value_or(0.0);
            rows.push_back(row);
        }
    }
    return rows;
}

void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows,
                     const std::vector<std::string>& schedulers) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write csv file: " + path);
    out << "scheduler,seed,steps,calls,cost,gather_events,flip_rate,speedup_vs_full,exact_match,"
           "steps_sd,calls_sd,cost_sd,gather_events_sd,flip_rate_sd,speedup_vs_full_sd,"
           "exact_match_sd\n";
    auto num = [](double v) {
        std::ostringstream ss;
        ss << v;
        return ss.str();
    };
    for (const auto& r : rows) {
        out << r.scheduler << ',' << r.seed << ',' << r.steps << ',' << r.calls << ',' << r.cost
            << ',' << r.gather_events << ',' << num(r.flip_rate) << ',' << num(r.speedup_vs_full)
            << ',' << num(r.exact_match) << ",,,,,,,\n";
    }
    for (const auto& sched : schedulers) {
        std::vector<std::vector<double>> cols(7);
        for (const auto& r : rows) {
            if (r.scheduler != sched) continue;
            cols[0].push_back(r.steps);
            cols[1].push_back(r.calls);
            cols[2].push_back(static_cast<double>(r.cost));
            cols[3].push_back(static_cast<double>(r.gather_events));
            cols[4].push_back(r.flip_rate);
            cols[5].push_back(r.speedup_vs_full);
            cols[6].push_back(r.exact_match);
        }
        if (cols[0].empty()) continue;
        std::vector<double> mean(7), sd(7);
        for (int c = 0; c < 7; ++c) {
            double m = 0;
            for (double v : cols[c]) m += v;
            m /= static_cast<double>(cols[c].size());
            double var = 0;
            for (double v : cols[c]) var += (v - m) * (v - m);
            var /= static_cast<double>(cols[c].size());
            mean[c] = m;
            sd[c] = std::sqrt(var);
        }
        out << sched << ",mean";
        for (int c = 0; c < 7; ++c) out << ',' << num(mean[c]);
        for (int c = 0; c < 7; ++c) out << ',' << num(sd[c]);
        out << '\n';
    }
}

}  // namespace lsp
