#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kca/alignment.hpp"
#include "kca/bounds.hpp"
#include "kca/converse.hpp"
#include "kca/correlated.hpp"
#include "kca/decomposition.hpp"
#include "kca/error.hpp"
#include "kca/genfunc.hpp"
#include "kca/graph.hpp"
#include "kca/harness.hpp"
#include "kca/io.hpp"
#include "kca/matching.hpp"
#include "kca/rng.hpp"

namespace {

using nlohmann::json;

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::fputs(text.c_str(), stdout);
    else
        kca::write_text_file(out_path, text);
}

// JSON has no inf/nan literals and nlohmann silently dumps them as null;
// report them as strings instead.
json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json matching_json(const kca::Matching& m) {
    json pairs = json::array();
    for (const auto& [a, b] : m.pairs()) pairs.push_back({a, b});
    return json{{"pairs", std::move(pairs)}};
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    std::string config;
};

int run(int argc, char** argv) {
    CLI::App app{"correlated graph pair alignment toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "rng seed (default 0)");
    app.add_option("--jobs", g.jobs, "worker threads for experiments")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output path (stdout when omitted)");
    app.add_option("--config", g.config, "experiment config JSON");

    // gen
    auto* gen = app.add_subcommand("gen", "sample a correlated graph pair");
    gen->fallthrough();
    int gen_n = 0;
    std::string gen_p, gen_ga, gen_gb, gen_mu_star;
    bool gen_identity = false;
    std::string gen_mode = "auto";
    gen->add_option("--n", gen_n, "vertices per side")->required();
    gen->add_option("--p", gen_p, "cell probability JSON file")->required();
    gen->add_option("--ga", gen_ga, "output path for the left graph")->required();
    gen->add_option("--gb", gen_gb, "output path for the right graph")->required();
    gen->add_option("--mu-star", gen_mu_star, "output path for the planted matching");
    gen->add_flag("--identity", gen_identity,
                  "plant the identity instead of a uniform bijection");
    gen->add_option("--mode", gen_mode, "sampler: auto|dense|sparse")
        ->check(CLI::IsMember({"auto", "dense", "sparse"}));

    // intersect
    auto* intersect = app.add_subcommand(
        "intersect", "aligned intersection of two graphs under a matching");
    intersect->fallthrough();
    std::string int_ga, int_gb, int_mu;
    intersect->add_option("--ga", int_ga)->required();
    intersect->add_option("--gb", int_gb)->required();
    intersect->add_option("--mu", int_mu, "matching JSON file")->required();

    // kcore
    auto* kcore = app.add_subcommand("kcore", "k-core vertex set of a graph");
    kcore->fallthrough();
    std::string kc_graph;
    int kc_k = 0;
    kcore->add_option("--graph", kc_graph)->required();
    kcore->add_option("--k", kc_k)->required();

    // align
    auto* align = app.add_subcommand("align", "k-core alignments of a graph pair");
    align->fallthrough();
    std::string al_ga, al_gb, al_mode = "exhaustive", al_seed_matching, al_mu_star;
    int al_k = 0, al_limit = 8;
    align->add_option("--ga", al_ga)->required();
    align->add_option("--gb", al_gb)->required();
    align->add_option("--k", al_k)->required();
    align->add_option("--mode", al_mode, "exhaustive|greedy|oracle")
        ->check(CLI::IsMember({"exhaustive", "greedy", "oracle"}));
    align->add_option("--limit", al_limit, "exhaustive size cap");
    align->add_option("--seed-matching", al_seed_matching, "greedy seed (JSON)");
    align->add_option("--mu-star", al_mu_star, "ground truth for oracle mode");

    // gf
    auto* gf = app.add_subcommand(
        "gf", "outcome generating function of a matching pair");
    gf->fallthrough();
    std::string gf_mu, gf_mu_star, gf_p;
    double gf_z = 1.0;
    bool gf_want_exact = false, gf_want_bound = false;
    gf->add_option("--mu", gf_mu)->required();
    gf->add_option("--mu-star", gf_mu_star)->required();
    gf->add_option("--p", gf_p)->required();
    gf->add_option("--z", gf_z)->required();
    gf->add_flag("--exact", gf_want_exact, "emit the exact value (default)");
    gf->add_flag("--bound", gf_want_bound, "emit the closed-form upper bound");

    // bound
    auto* bound = app.add_subcommand("bound", "tail rate and union bound");
    bound->fallthrough();
    int bd_n = 0, bd_k = 0;
    bool bd_recommended = false;
    std::string bd_p;
    bound->add_option("--n", bd_n)->required();
    bound->add_option("--k", bd_k);
    bound->add_flag("--k-recommended", bd_recommended,
                    "use floor(np11(1-(np11)^-1/4))");
    bound->add_option("--p", bd_p)->required();

    // converse
    auto* converse = app.add_subcommand(
        "converse", "partial-recovery converse diagnostics");
    converse->fallthrough();
    int cv_n = 0, cv_trials = 100;
    long long cv_eps = 0;
    std::string cv_p;
    converse->add_option("--n", cv_n)->required();
    converse->add_option("--p", cv_p)->required();
    converse->add_option("--eps", cv_eps, "tolerated wrong pairs");
    converse->add_option("--trials", cv_trials);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run an experiment config");
    sweep->fallthrough();
    std::string sw_plot;
    sweep->add_option("--plot", sw_plot, "also emit x/mean/stderr TSV here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints help or the parse diagnostic
        return code == 0 ? 0 : 2;
    }

    auto sampler_mode = [](const std::string& s) {
        if (s == "dense") return kca::SamplerMode::dense;
        if (s == "sparse") return kca::SamplerMode::sparse;
        return kca::SamplerMode::automatic;
    };

    if (gen->parsed()) {
        kca::CorrelationParams p = kca::load_params(gen_p);
        kca::SeededRng rng(g.seed, 0);
        kca::Matching mu_star =
            gen_identity ? [&] {
                std::vector<std::pair<int, int>> id;
                for (int i = 0; i < gen_n; ++i) id.emplace_back(i, i);
                return kca::Matching(std::move(id));
            }()
                         : kca::sample_uniform_bijection(gen_n, rng);
        kca::CorrelatedPair pair =
            kca::sample_pair(mu_star, gen_n, p, rng, sampler_mode(gen_mode));
        kca::save_graph(pair.ga, gen_ga);
        kca::save_graph(pair.gb, gen_gb);
        if (!gen_mu_star.empty()) kca::save_matching(mu_star, gen_mu_star);
        emit(json{{"n", gen_n},
                  {"edges_a", pair.ga.num_edges()},
                  {"edges_b", pair.gb.num_edges()},
                  {"seed", g.seed}},
             g.out);
        return 0;
    }

    if (intersect->parsed()) {
        kca::Graph ga = kca::load_graph(int_ga);
        kca::Graph gb = kca::load_graph(int_gb);
        kca::Matching mu = kca::load_matching(int_mu);
        kca::Graph inter = kca::aligned_intersection(ga, gb, mu);
        if (g.out.empty())
            std::fputs((kca::graph_to_json(inter) + "\n").c_str(), stdout);
        else
            kca::save_graph(inter, g.out);
        return 0;
    }

    if (kcore->parsed()) {
        kca::Graph graph = kca::load_graph(kc_graph);
        std::vector<int> core = kca::k_core(graph, kc_k);
        emit(json{{"k", kc_k},
                  {"size", core.size()},
                  {"vertices", core}},
             g.out);
        return 0;
    }

    if (align->parsed()) {
        kca::Graph ga = kca::load_graph(al_ga);
        kca::Graph gb = kca::load_graph(al_gb);
        if (al_mode == "exhaustive") {
            auto aligns = kca::enumerate_k_core_alignments(ga, gb, al_k, al_limit);
            json arr = json::array();
            for (const auto& m : aligns) arr.push_back(matching_json(m));
            emit(json{{"k", al_k},
                      {"count", aligns.size()},
                      {"alignments", std::move(arr)}},
                 g.out);
        } else if (al_mode == "greedy") {
            kca::Matching seed;
            if (!al_seed_matching.empty())
                seed = kca::load_matching(al_seed_matching);
            kca::Matching m = kca::kcore_align_greedy(ga, gb, al_k, seed);
            emit(matching_json(m), g.out);
        } else {
            kca::require_config(!al_mu_star.empty(),
                                "oracle mode needs --mu-star");
            kca::Matching mu_star = kca::load_matching(al_mu_star);
            kca::Matching m = kca::oracle_kcore_estimate(ga, gb, mu_star, al_k);
            emit(matching_json(m), g.out);
        }
        return 0;
    }

    if (gf->parsed()) {
        kca::Matching mu = kca::load_matching(gf_mu);
        kca::Matching mu_star = kca::load_matching(gf_mu_star);
        kca::CorrelationParams p = kca::load_params(gf_p);
        kca::DecompositionStats st = kca::decompose(mu, mu_star);
        if (!gf_want_exact && !gf_want_bound) gf_want_exact = true;
        json j{{"z", gf_z},
               {"n", st.n},
               {"n_prime", st.n_prime},
               {"d", st.d}};
        if (gf_want_exact)
            j["exact"] = json_number(static_cast<double>(kca::gf_exact(st, p, gf_z)));
        if (gf_want_bound) {
            j["log_bound"] = json_number(
                static_cast<double>(kca::gf_log_upper_bound(st, p, gf_z)));
            j["bound"] = json_number(
                static_cast<double>(kca::gf_upper_bound(st, p, gf_z)));
        }
        emit(j, g.out);
        return 0;
    }

    if (bound->parsed()) {
        kca::CorrelationParams p = kca::load_params(bd_p);
        int k = bd_recommended ? kca::recommended_k(bd_n, p.p11) : bd_k;
        kca::BoundReport rep = kca::xi_and_union_bound(bd_n, k, p);
        emit(json{{"n", rep.n},
                  {"k", rep.k},
                  {"worst_d", rep.d},
                  {"worst_t_cyc21", rep.t_cyc21},
                  {"t_tilde", rep.t_tilde},
                  {"q1", rep.q1},
                  {"q2", rep.q2},
                  {"tau", rep.tau},
                  {"z_star", rep.z_star},
                  {"zeta", rep.zeta},
                  {"log_tail_bound", json_number(rep.log_tail_bound)},
                  {"xi", rep.xi},
                  {"union_bound", json_number(rep.union_bound)}},
             g.out);
        return 0;
    }

    if (converse->parsed()) {
        kca::CorrelationParams p = kca::load_params(cv_p);
        kca::SeededRng rng(g.seed, 0);
        kca::PartialRecoveryReport rep =
            kca::partial_recovery_converse_check(cv_n, p, cv_eps, cv_trials, rng);
        emit(json{{"n", rep.n},
                  {"eps", rep.eps},
                  {"trials", rep.trials},
                  {"mean_success_bound", rep.mean_success_bound},
                  {"mean_isolated", rep.mean_isolated},
                  {"min_isolated", rep.min_isolated},
                  {"expected_isolated",
                   cv_n * std::pow(1.0 - p.p11, cv_n - 1)},
                  {"regime_ok", rep.regime_ok},
                  {"seed", g.seed}},
             g.out);
        return 0;
    }

    if (sweep->parsed()) {
        kca::require_config(!g.config.empty(), "sweep needs --config FILE");
        kca::ExperimentConfig cfg =
            kca::config_from_json(kca::read_text_file(g.config));
        if (app.count("--seed") > 0) cfg.seed = g.seed;
        if (!g.out.empty()) cfg.out = g.out;
        kca::require_config(!cfg.out.empty(),
                            "no output path: set \"out\" in the config or --out");
        kca::ExperimentResult result = kca::run_experiment(cfg, g.jobs);
        kca::emit_csv(result, cfg.out);
        if (!sw_plot.empty()) kca::emit_plot_data(result, sw_plot);
        std::cout << "wrote " << result.records.size() << " records ("
                  << result.summary.size() << " groups, metric "
                  << result.metric << ") to " << cfg.out << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const kca::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const kca::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
