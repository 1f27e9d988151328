#ifndef KCA_HARNESS_HPP
#define KCA_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kca/correlated.hpp"

namespace kca {

enum class ExperimentKind {
    oracle_kcore,     // planted pair, true-matching restriction to the k-core
    exhaustive_align, // enumerate all k-core alignments (tiny n)
    gf_verify,        // decomposition generating function vs its closed bound
    bound_eval,       // xi and union bound, no sampling
    converse,         // isolated vertices and partial-recovery success bound
    sweep             // oracle_kcore across an np11 schedule
};

// Parsed experiment description. p is either explicit cell probabilities or
// an np11 schedule (p11 = np11/n, p10 = p01 = noise_ratio*p11); sweep uses
// the schedule, every other kind the explicit form.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::oracle_kcore;
    std::vector<int> n_values;
    bool p_explicit = false;
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
    std::vector<double> np11_schedule;
    double noise_ratio = 0;
    bool k_recommended = false;
    int k = 0;
    int trials = 1;
    std::uint64_t seed = 0;
    std::string out;    // output path; CLI --out overrides
    double z = 1.5;     // gf_verify evaluation point
    long long eps = 0;  // converse tolerated wrong pairs
};

// Strict JSON schema: unknown fields are ConfigErrors. Fields: kind, n
// (int or list), p (object), k (int or "recommended"), trials, seed, out,
// z, eps.
ExperimentConfig config_from_json(const std::string& text);

// One row of output. Fields that a kind does not produce stay at the
// sentinels (-1 for counts, NaN for reals) and print as empty CSV cells.
// wall_time_ms is diagnostic only and never serialized: output bytes must
// be a pure function of (config, seed).
struct TrialRecord {
    long long trial = 0;
    int n = 0;
    double np11 = 0;
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
    int k = 0;
    long long matched_pairs = -1;
    double recovered_fraction = 0;
    long long wrong_pairs = -1;
    long long core_size = -1;
    long long num_alignments = -1;
    long long bad_alignments = -1;
    long long contains_truth = -1;  // 0/1
    double gf_exact_value = 0;
    double gf_bound_value = 0;
    double z = 0;
    double xi = 0;
    double union_bound = 0;
    double log_tail_bound = 0;
    long long isolated = -1;
    double success_bound = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    double wall_time_ms = 0;
};

struct SummaryRow {
    double x = 0;  // np11 for sweeps, n otherwise
    long long count = 0;
    double mean = 0;
    double std_error = 0;
};

struct ExperimentResult {
    std::vector<TrialRecord> records;
    std::string metric;  // which record field the summary aggregates
    std::vector<SummaryRow> summary;
};

// Deterministic: records depend only on (config, seed); trial streams are
// the flattened task index, so any jobs count yields identical bytes.
ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs = 1);

std::string csv_from_records(const std::vector<TrialRecord>& records);
// Tab-separated "x mean stderr" rows, one per summary group, no header.
std::string plot_data_from_summary(const ExperimentResult& result);

void emit_csv(const ExperimentResult& result, const std::string& path);
void emit_plot_data(const ExperimentResult& result, const std::string& path);

}  // namespace kca

#endif
