#include "kca/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include <json.hpp>

#include "kca/alignment.hpp"
#include "kca/bounds.hpp"
#include "kca/decomposition.hpp"
#include "kca/error.hpp"
#include "kca/genfunc.hpp"
#include "kca/io.hpp"

namespace kca {

namespace {

using nlohmann::json;

const char* kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::oracle_kcore: return "oracle_kcore";
        case ExperimentKind::exhaustive_align: return "exhaustive_align";
        case ExperimentKind::gf_verify: return "gf_verify";
        case ExperimentKind::bound_eval: return "bound_eval";
        case ExperimentKind::converse: return "converse";
        case ExperimentKind::sweep: return "sweep";
    }
    return "?";
}

ExperimentKind kind_from_name(const std::string& s) {
    for (ExperimentKind k :
         {ExperimentKind::oracle_kcore, ExperimentKind::exhaustive_align,
          ExperimentKind::gf_verify, ExperimentKind::bound_eval,
          ExperimentKind::converse, ExperimentKind::sweep})
        if (s == kind_name(k)) return k;
    throw ConfigError("config: unknown experiment kind \"" + s + "\"");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const char* what) {
    require_config(j.is_object(), std::string(what) + ": expected a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (item.key() == a) known = true;
        require_config(known, std::string(what) + ": unknown field \"" +
                                  item.key() + "\"");
    }
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    require_config(!j.is_discarded(), "config: malformed JSON");
    reject_unknown(j, {"kind", "n", "p", "k", "trials", "seed", "out", "z", "eps"},
                   "config");

    ExperimentConfig cfg;
    require_config(j.contains("kind") && j.at("kind").is_string(),
                   "config: \"kind\" must be a string");
    cfg.kind = kind_from_name(j.at("kind").get<std::string>());

    require_config(j.contains("n"), "config: missing field \"n\"");
    const json& jn = j.at("n");
    auto push_n = [&](const json& v) {
        require_config(v.is_number_integer(), "config: n values must be integers");
        long long n = v.get<long long>();
        require_config(n >= 1 && n <= 2'000'000'000, "config: n out of range");
        cfg.n_values.push_back(static_cast<int>(n));
    };
    if (jn.is_array()) {
        require_config(!jn.empty(), "config: \"n\" list is empty");
        for (const json& v : jn) push_n(v);
    } else {
        push_n(jn);
    }

    require_config(j.contains("p") && j.at("p").is_object(),
                   "config: \"p\" must be an object");
    const json& jp = j.at("p");
    if (jp.contains("np11")) {
        reject_unknown(jp, {"np11", "noise_ratio"}, "config p schedule");
        const json& sched = jp.at("np11");
        auto push_x = [&](const json& v) {
            require_config(v.is_number(), "config: np11 values must be numbers");
            double x = v.get<double>();
            require_config(x > 0, "config: np11 values must be positive");
            cfg.np11_schedule.push_back(x);
        };
        if (sched.is_array()) {
            require_config(!sched.empty(), "config: \"np11\" list is empty");
            for (const json& v : sched) push_x(v);
        } else {
            push_x(sched);
        }
        if (jp.contains("noise_ratio")) {
            require_config(jp.at("noise_ratio").is_number(),
                           "config: \"noise_ratio\" must be a number");
            cfg.noise_ratio = jp.at("noise_ratio").get<double>();
            require_config(cfg.noise_ratio >= 0,
                           "config: \"noise_ratio\" must be nonnegative");
        }
    } else {
        reject_unknown(jp, {"p00", "p01", "p10", "p11"}, "config p");
        CorrelationParams p = params_from_json(jp.dump());
        cfg.p_explicit = true;
        cfg.p00 = p.p00;
        cfg.p01 = p.p01;
        cfg.p10 = p.p10;
        cfg.p11 = p.p11;
    }
    if (cfg.kind == ExperimentKind::sweep)
        require_config(!cfg.p_explicit,
                       "config: sweep needs an np11 schedule under \"p\"");
    else
        require_config(cfg.p_explicit,
                       "config: this kind needs explicit cell probabilities");

    if (j.contains("k")) {
        const json& jk = j.at("k");
        if (jk.is_string()) {
            require_config(jk.get<std::string>() == "recommended",
                           "config: \"k\" must be an integer or \"recommended\"");
            cfg.k_recommended = true;
        } else {
            require_config(jk.is_number_integer() && jk.get<long long>() >= 0,
                           "config: \"k\" must be a nonnegative integer");
            cfg.k = jk.get<int>();
        }
    }

    if (j.contains("trials")) {
        require_config(j.at("trials").is_number_integer() &&
                           j.at("trials").get<long long>() >= 1,
                       "config: \"trials\" must be a positive integer");
        cfg.trials = j.at("trials").get<int>();
    }
    if (j.contains("seed")) {
        const json& js = j.at("seed");
        require_config(js.is_number_unsigned() ||
                           (js.is_number_integer() && js.get<long long>() >= 0),
                       "config: \"seed\" must be a nonnegative integer");
        cfg.seed = js.get<std::uint64_t>();
    }
    if (j.contains("out")) {
        require_config(j.at("out").is_string(), "config: \"out\" must be a string");
        cfg.out = j.at("out").get<std::string>();
    }
    if (j.contains("z")) {
        require_config(j.at("z").is_number(), "config: \"z\" must be a number");
        cfg.z = j.at("z").get<double>();
        require_config(cfg.z >= 0, "config: \"z\" must be nonnegative");
    }
    if (j.contains("eps")) {
        require_config(j.at("eps").is_number_integer() &&
                           j.at("eps").get<long long>() >= 0,
                       "config: \"eps\" must be a nonnegative integer");
        cfg.eps = j.at("eps").get<long long>();
    }
    return cfg;
}

namespace {

struct Task {
    int n;
    CorrelationParams p;
    double np11;
    int k;
    long long trial;
    std::uint64_t stream;
    double x;  // summary group key
};

CorrelationParams params_from_np11(double np11, int n, double noise_ratio) {
    double p11 = np11 / n;
    double noise = noise_ratio * p11;
    double p00 = 1.0 - p11 - 2 * noise;
    require_config(p11 <= 1 && p00 >= 0,
                   "config: np11 schedule yields invalid cell probabilities");
    return CorrelationParams(p00, noise, noise, p11);
}

int resolve_k(const ExperimentConfig& cfg, int n, double p11) {
    return cfg.k_recommended ? recommended_k(n, p11) : cfg.k;
}

int count_isolated(const Graph& g) {
    int c = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (g.degree(v) == 0) ++c;
    return c;
}

TrialRecord base_record(const Task& t, std::uint64_t seed) {
    TrialRecord r;
    r.trial = t.trial;
    r.n = t.n;
    r.np11 = t.np11;
    r.p00 = t.p.p00;
    r.p01 = t.p.p01;
    r.p10 = t.p.p10;
    r.p11 = t.p.p11;
    r.k = t.k;
    r.recovered_fraction = std::nan("");
    r.gf_exact_value = std::nan("");
    r.gf_bound_value = std::nan("");
    r.z = std::nan("");
    r.xi = std::nan("");
    r.union_bound = std::nan("");
    r.log_tail_bound = std::nan("");
    r.success_bound = std::nan("");
    r.seed = seed;
    r.stream = t.stream;
    return r;
}

void run_oracle_kcore(const Task& t, const ExperimentConfig& cfg, TrialRecord& r) {
    SeededRng rng(cfg.seed, t.stream);
    Matching mu_star = sample_uniform_bijection(t.n, rng);
    CorrelatedPair pair = sample_pair(mu_star, t.n, t.p, rng);
    Matching est = oracle_kcore_estimate(pair.ga, pair.gb, mu_star, t.k);
    r.core_size = est.size();
    r.matched_pairs = est.size();
    r.wrong_pairs = 0;  // subset of mu_star by construction
    r.recovered_fraction = static_cast<double>(est.size()) / t.n;
}

void run_exhaustive_align(const Task& t, const ExperimentConfig& cfg,
                          TrialRecord& r) {
    SeededRng rng(cfg.seed, t.stream);
    Matching mu_star = sample_uniform_bijection(t.n, rng);
    CorrelatedPair pair = sample_pair(mu_star, t.n, t.p, rng);
    auto aligns = enumerate_k_core_alignments(pair.ga, pair.gb, t.k);
    require_invariant(!aligns.empty(),
                      "a maximal matching always tops some extension chain");
    r.num_alignments = static_cast<long long>(aligns.size());
    long long bad = 0;
    for (const Matching& m : aligns)
        if (matching_difference(m, mu_star).size() > 0) ++bad;
    r.bad_alignments = bad;
    Matching oracle = oracle_kcore_estimate(pair.ga, pair.gb, mu_star, t.k);
    r.contains_truth =
        std::binary_search(aligns.begin(), aligns.end(), oracle) ? 1 : 0;
    const Matching& chosen = aligns.front();  // estimator ties break lex
    r.matched_pairs = chosen.size();
    r.wrong_pairs = matching_difference(chosen, mu_star).size();
    r.recovered_fraction =
        static_cast<double>(matching_intersection(chosen, mu_star).size()) / t.n;
}

void run_gf_verify(const Task& t, const ExperimentConfig& cfg, TrialRecord& r) {
    SeededRng rng(cfg.seed, t.stream);
    Matching mu_star = sample_uniform_bijection(t.n, rng);
    Matching mu = sample_uniform_bijection(t.n, rng);
    DecompositionStats st = decompose(mu, mu_star);
    r.matched_pairs = st.n_prime;
    r.wrong_pairs = st.d;
    r.z = cfg.z;
    r.gf_exact_value = static_cast<double>(gf_exact(st, t.p, cfg.z));
    if (cfg.z >= 1 && t.p.p11 * t.p.p00 >= t.p.p10 * t.p.p01)
        r.gf_bound_value = static_cast<double>(gf_upper_bound(st, t.p, cfg.z));
}

void run_bound_eval(const Task& t, TrialRecord& r) {
    BoundReport rep = xi_and_union_bound(t.n, t.k, t.p);
    r.xi = rep.xi;
    r.union_bound = rep.union_bound;
    r.log_tail_bound = rep.log_tail_bound;
}

void run_converse(const Task& t, const ExperimentConfig& cfg, TrialRecord& r) {
    SeededRng rng(cfg.seed, t.stream);
    Graph g = sample_er(t.n, t.p.p11, rng);
    int iso = count_isolated(g);
    r.isolated = iso;
    double log_ratio = std::lgamma(static_cast<double>(cfg.eps) + 1.0) -
                       std::lgamma(iso + 1.0);
    r.success_bound = std::exp(std::min(0.0, log_ratio));
}

std::vector<Task> expand_tasks(const ExperimentConfig& cfg) {
    std::vector<Task> tasks;
    std::uint64_t stream = 0;
    auto add_block = [&](int n, const CorrelationParams& p, double x) {
        double np11 = n * p.p11;
        int k = 0;
        switch (cfg.kind) {
            case ExperimentKind::oracle_kcore:
            case ExperimentKind::exhaustive_align:
            case ExperimentKind::bound_eval:
            case ExperimentKind::sweep:
                k = resolve_k(cfg, n, p.p11);
                break;
            default:
                k = cfg.k_recommended ? 0 : cfg.k;
        }
        int trials = cfg.kind == ExperimentKind::bound_eval ? 1 : cfg.trials;
        for (int t = 0; t < trials; ++t)
            tasks.push_back(Task{n, p, np11, k, t, stream++, x});
    };

    if (cfg.kind == ExperimentKind::sweep) {
        for (double np11 : cfg.np11_schedule)
            for (int n : cfg.n_values)
                add_block(n, params_from_np11(np11, n, cfg.noise_ratio), np11);
    } else {
        CorrelationParams p(cfg.p00, cfg.p01, cfg.p10, cfg.p11);
        for (int n : cfg.n_values) add_block(n, p, n);
        if (cfg.kind == ExperimentKind::exhaustive_align)
            for (int n : cfg.n_values)
                require_config(n <= 8, "exhaustive_align needs n <= 8");
    }
    return tasks;
}

TrialRecord run_task(const Task& t, const ExperimentConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    TrialRecord r = base_record(t, cfg.seed);
    switch (cfg.kind) {
        case ExperimentKind::oracle_kcore:
        case ExperimentKind::sweep:
            run_oracle_kcore(t, cfg, r);
            break;
        case ExperimentKind::exhaustive_align:
            run_exhaustive_align(t, cfg, r);
            break;
        case ExperimentKind::gf_verify:
            run_gf_verify(t, cfg, r);
            break;
        case ExperimentKind::bound_eval:
            run_bound_eval(t, r);
            break;
        case ExperimentKind::converse:
            run_converse(t, cfg, r);
            break;
    }
    r.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return r;
}

double metric_value(const TrialRecord& r, const std::string& metric) {
    if (metric == "recovered_fraction") return r.recovered_fraction;
    if (metric == "gf_exact_value") return r.gf_exact_value;
    if (metric == "union_bound") return r.union_bound;
    if (metric == "success_bound") return r.success_bound;
    throw InvariantError("unknown summary metric " + metric);
}

std::string summary_metric(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::gf_verify: return "gf_exact_value";
        case ExperimentKind::bound_eval: return "union_bound";
        case ExperimentKind::converse: return "success_bound";
        default: return "recovered_fraction";
    }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
    std::vector<Task> tasks = expand_tasks(cfg);
    ExperimentResult result;
    result.records.resize(tasks.size());

    int workers = std::max(1, jobs);
    workers = static_cast<int>(
        std::min<std::size_t>(workers, std::max<std::size_t>(tasks.size(), 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            result.records[i] = run_task(tasks[i], cfg);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr first_error;
        std::atomic<bool> failed{false};
        auto work = [&] {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size() || failed.load()) return;
                try {
                    result.records[i] = run_task(tasks[i], cfg);
                } catch (...) {
                    if (!failed.exchange(true)) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        if (failed.load()) std::rethrow_exception(first_error);
    }

    result.metric = summary_metric(cfg.kind);
    // Tasks are emitted group-contiguously, so one pass suffices; aggregation
    // reads records in index order, independent of completion order.
    std::size_t i = 0;
    while (i < tasks.size()) {
        std::size_t j = i;
        double x = tasks[i].x;
        double sum = 0, sumsq = 0;
        long long cnt = 0;
        while (j < tasks.size() && tasks[j].x == x) {
            double v = metric_value(result.records[j], result.metric);
            sum += v;
            sumsq += v * v;
            ++cnt;
            ++j;
        }
        SummaryRow row;
        row.x = x;
        row.count = cnt;
        row.mean = sum / cnt;
        double var =
            cnt > 1 ? std::max(0.0, (sumsq - sum * sum / cnt) / (cnt - 1)) : 0.0;
        row.std_error = std::sqrt(var / cnt);
        result.summary.push_back(row);
        i = j;
    }
    return result;
}

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_count(long long v) {
    if (v < 0) return "";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_u64(std::uint64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string csv_from_records(const std::vector<TrialRecord>& records) {
    std::string out =
        "trial,n,np11,p00,p01,p10,p11,k,matched_pairs,recovered_fraction,"
        "wrong_pairs,core_size,num_alignments,bad_alignments,contains_truth,"
        "gf_exact_value,gf_bound_value,z,xi,union_bound,log_tail_bound,"
        "isolated,success_bound,seed,stream\n";
    for (const TrialRecord& r : records) {
        out += fmt_count(r.trial);
        out += ',';
        out += fmt_count(r.n);
        out += ',';
        out += fmt_double(r.np11);
        out += ',';
        out += fmt_double(r.p00);
        out += ',';
        out += fmt_double(r.p01);
        out += ',';
        out += fmt_double(r.p10);
        out += ',';
        out += fmt_double(r.p11);
        out += ',';
        out += fmt_count(r.k);
        out += ',';
        out += fmt_count(r.matched_pairs);
        out += ',';
        out += fmt_double(r.recovered_fraction);
        out += ',';
        out += fmt_count(r.wrong_pairs);
        out += ',';
        out += fmt_count(r.core_size);
        out += ',';
        out += fmt_count(r.num_alignments);
        out += ',';
        out += fmt_count(r.bad_alignments);
        out += ',';
        out += fmt_count(r.contains_truth);
        out += ',';
        out += fmt_double(r.gf_exact_value);
        out += ',';
        out += fmt_double(r.gf_bound_value);
        out += ',';
        out += fmt_double(r.z);
        out += ',';
        out += fmt_double(r.xi);
        out += ',';
        out += fmt_double(r.union_bound);
        out += ',';
        out += fmt_double(r.log_tail_bound);
        out += ',';
        out += fmt_count(r.isolated);
        out += ',';
        out += fmt_double(r.success_bound);
        out += ',';
        out += fmt_u64(r.seed);
        out += ',';
        out += fmt_u64(r.stream);
        out += '\n';
    }
    return out;
}

std::string plot_data_from_summary(const ExperimentResult& result) {
    std::string out;
    for (const SummaryRow& row : result.summary) {
        out += fmt_double(row.x);
        out += '\t';
        out += fmt_double(row.mean);
        out += '\t';
        out += fmt_double(row.std_error);
        out += '\n';
    }
    return out;
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    write_text_file(path, csv_from_records(result.records));
}

void emit_plot_data(const ExperimentResult& result, const std::string& path) {
    write_text_file(path, plot_data_from_summary(result));
}

}  // namespace kca
