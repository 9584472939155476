// mmcorrect: worst-case-to-average-case reductions for finite-field matrix
// multiplication, plus the exact Fourier-analytic checks behind them.
//
// Exit codes: 0 success, 1 config/input error, 2 a mathematical guarantee
// failed, 3 a reduction returned an incomplete matrix.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mmcorrect/errors.hpp"
#include "mmcorrect/experiment.hpp"
#include "mmcorrect/matrix_io.hpp"
#include "mmcorrect/version.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
    std::optional<uint64_t> seed;
    std::optional<uint32_t> threads;
    std::string config_path;
    std::string out_path;
};

json load_base_config(const GlobalOpts& g) {
    json cfg = json::object();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw mmc::ConfigError(g.config_path + ": cannot open config file");
        try {
            in >> cfg;
        } catch (const json::parse_error& e) {
            throw mmc::ConfigError(g.config_path + ": " + e.what());
        }
        if (!cfg.is_object()) throw mmc::ConfigError(g.config_path + ": expected a JSON object");
    }
    if (g.seed) cfg["seed"] = *g.seed;
    if (g.threads) cfg["threads"] = *g.threads;
    return cfg;
}

int run_and_emit(const json& cfg, const GlobalOpts& g) {
    const mmc::RunOutcome outcome = mmc::run_experiment(cfg.dump());
    const std::string out = g.out_path.empty()
                                ? cfg.value("out", std::string())
                                : g.out_path;
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw mmc::ConfigError(out + ": cannot open for writing");
        f << outcome.report_json;
    }
    std::cout << outcome.report_json;
    return outcome.exit_code;
}

void set_if(json& obj, const char* key, const std::optional<std::string>& v) {
    if (v) obj[key] = *v;
}
template <class T>
void set_if(json& obj, const char* key, const std::optional<T>& v) {
    if (v) obj[key] = *v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"worst-case-to-average-case reductions for matrix multiplication "
                 "over finite fields"};
    app.set_version_flag("--version", mmc::kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed (fixes every reported number)");
    app.add_option("--threads", g.threads, "trial worker threads");
    app.add_option("--config", g.config_path, "JSON config file; flags override it");
    app.add_option("--out", g.out_path, "write the JSON report here");

    // mul ---------------------------------------------------------------
    auto* mul = app.add_subcommand("mul", "multiply two matrix files exactly");
    std::string mul_a, mul_b, mul_out;
    mul->add_option("--a", mul_a, "left matrix file")->required();
    mul->add_option("--b", mul_b, "right matrix file")->required();
    mul->add_option("--product", mul_out, "output matrix file")->required();

    // reduce-high ---------------------------------------------------------
    auto* rh = app.add_subcommand("reduce-high",
                                  "high-agreement self-corrector (masking + shifts + votes)");
    std::optional<uint64_t> rh_n, rh_p, rh_trials, rh_k;
    std::optional<std::string> rh_alpha, rh_oracle, rh_flip, rh_inputs;
    std::optional<uint64_t> rh_oseed;
    rh->add_option("--n", rh_n, "matrix size");
    rh->add_option("--p", rh_p, "field characteristic (prime)");
    rh->add_option("--trials", rh_trials, "number of trials");
    rh->add_option("--alpha", rh_alpha, "error budget, rational in (0,1/8)");
    rh->add_option("--k", rh_k, "repetition override (odd over GF(2))");
    rh->add_option("--oracle", rh_oracle, "oracle kind (exact|two_sided_flip)");
    rh->add_option("--alpha-flip", rh_flip, "flip probability of the oracle");
    rh->add_option("--oracle-seed", rh_oseed, "oracle seed");
    rh->add_option("--inputs", rh_inputs, "random|all_ones|identity");

    // reduce-onesided -----------------------------------------------------
    auto* ro = app.add_subcommand("reduce-onesided",
                                  "one-sided low-agreement reduction over GF(2)");
    std::optional<uint64_t> ro_n, ro_trials, ro_t, ro_k, ro_r;
    std::optional<std::string> ro_delta, ro_oracle, ro_rho, ro_hint, ro_inputs;
    std::optional<uint64_t> ro_oseed;
    std::optional<bool> ro_theory;
    ro->add_option("--n", ro_n, "matrix size");
    ro->add_option("--trials", ro_trials, "number of trials");
    ro->add_option("--delta", ro_delta, "declared advantage, rational in (0,1/2]");
    ro->add_option("--t", ro_t, "share count");
    ro->add_option("--k", ro_k, "rank parameter");
    ro->add_option("--R", ro_r, "repetition budget");
    ro->add_option("--theory-mode", ro_theory, "enforce the theory parameter bounds");
    ro->add_option("--delta0-hint", ro_hint, "per-pass fill probability hint");
    ro->add_option("--oracle", ro_oracle, "oracle kind (one_sided_mask|exact|...)");
    ro->add_option("--rho", ro_rho, "keep probability of the one-sided oracle");
    ro->add_option("--oracle-seed", ro_oseed, "oracle seed");
    ro->add_option("--inputs", ro_inputs, "random|all_ones|identity");

    // estimate-good ---------------------------------------------------------
    auto* eg = app.add_subcommand("estimate-good", "sample the good-coordinate set");
    std::optional<uint64_t> eg_n, eg_samples, eg_oseed;
    std::optional<std::string> eg_threshold, eg_oracle, eg_rho;
    eg->add_option("--n", eg_n, "matrix size");
    eg->add_option("--samples", eg_samples, "sample count");
    eg->add_option("--threshold", eg_threshold, "estimate cutoff, rational");
    eg->add_option("--oracle", eg_oracle, "oracle kind");
    eg->add_option("--rho", eg_rho, "keep probability");
    eg->add_option("--oracle-seed", eg_oseed, "oracle seed");

    // lemma48 ----------------------------------------------------------------
    auto* lm = app.add_subcommand("lemma48", "low-rank mask subspace-hitting experiment");
    std::optional<uint64_t> lm_n, lm_k, lm_ell, lm_trials;
    lm->add_option("--n", lm_n, "matrix size");
    lm->add_option("--k", lm_k, "constraint count");
    lm->add_option("--ell", lm_ell, "rank parameter (>= 2k)");
    lm->add_option("--trials", lm_trials, "Monte-Carlo trials");

    // fourier lab -------------------------------------------------------------
    auto* pv = app.add_subcommand("parseval", "integer Parseval identity check");
    auto* cc = app.add_subcommand("chang-check", "spectral span dimension check");
    auto* bg = app.add_subcommand("bogolyubov-check", "sumset subspace bound check");
    std::optional<std::string> f_set, f_gamma, f_density;
    std::optional<uint64_t> f_rand_n, f_t;
    for (CLI::App* sc : {pv, cc, bg}) {
        sc->add_option("--set", f_set, "f2set input file");
        sc->add_option("--random-n", f_rand_n, "generate a random subset of F_2^n");
        sc->add_option("--density", f_density, "density of the random subset");
    }
    cc->add_option("--gamma", f_gamma, "spectral threshold, rational");
    bg->add_option("--t", f_t, "number of summands (>= 3)");

    // bench --------------------------------------------------------------------
    auto* bn = app.add_subcommand("bench", "overhead of the reductions vs direct product");
    std::optional<std::string> bn_reduction;
    std::vector<uint32_t> bn_sizes;
    bn->add_option("--reduction", bn_reduction, "high|onesided");
    bn->add_option("--sizes", bn_sizes, "matrix sizes to time");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mul->parsed()) {
            const mmc::ParsedMatrix a = mmc::parse_matrix_file(mul_a);
            const mmc::ParsedMatrix b = mmc::parse_matrix_file(mul_b);
            mmc::ParsedMatrix c = std::visit(
                [&](const auto& ma) -> mmc::ParsedMatrix {
                    using M = std::decay_t<decltype(ma)>;
                    if (!std::holds_alternative<M>(b)) {
                        throw mmc::ConfigError("mul: operands live in different fields");
                    }
                    return mmc::mat_mul(ma, std::get<M>(b));
                },
                a);
            mmc::write_matrix_file(mul_out, c);
            return mmc::kExitOk;
        }

        json cfg = load_base_config(g);
        if (rh->parsed()) {
            cfg["experiment"] = "reduce-high";
            set_if(cfg, "n", rh_n);
            set_if(cfg, "p", rh_p);
            set_if(cfg, "trials", rh_trials);
            set_if(cfg, "inputs", rh_inputs);
            json& oracle = cfg["oracle"];
            if (!oracle.is_object()) oracle = json::object();
            set_if(oracle, "kind", rh_oracle);
            set_if(oracle, "alpha_flip", rh_flip);
            set_if(oracle, "seed", rh_oseed);
            json& red = cfg["reduction"];
            if (!red.is_object()) red = json::object();
            set_if(red, "alpha", rh_alpha);
            set_if(red, "k", rh_k);
        } else if (ro->parsed()) {
            cfg["experiment"] = "reduce-onesided";
            set_if(cfg, "n", ro_n);
            set_if(cfg, "trials", ro_trials);
            set_if(cfg, "inputs", ro_inputs);
            json& oracle = cfg["oracle"];
            if (!oracle.is_object()) oracle = json::object();
            set_if(oracle, "kind", ro_oracle);
            set_if(oracle, "rho", ro_rho);
            set_if(oracle, "seed", ro_oseed);
            json& red = cfg["reduction"];
            if (!red.is_object()) red = json::object();
            set_if(red, "delta", ro_delta);
            set_if(red, "t", ro_t);
            set_if(red, "k", ro_k);
            set_if(red, "R", ro_r);
            set_if(red, "theory_mode", ro_theory);
            set_if(red, "delta0_hint", ro_hint);
        } else if (eg->parsed()) {
            cfg["experiment"] = "estimate-good";
            set_if(cfg, "n", eg_n);
            json& oracle = cfg["oracle"];
            if (!oracle.is_object()) oracle = json::object();
            set_if(oracle, "kind", eg_oracle);
            set_if(oracle, "rho", eg_rho);
            set_if(oracle, "seed", eg_oseed);
            json& est = cfg["estimate"];
            if (!est.is_object()) est = json::object();
            set_if(est, "samples", eg_samples);
            set_if(est, "threshold", eg_threshold);
        } else if (lm->parsed()) {
            cfg["experiment"] = "lemma48";
            set_if(cfg, "n", lm_n);
            json& l = cfg["lemma48"];
            if (!l.is_object()) l = json::object();
            set_if(l, "k", lm_k);
            set_if(l, "ell", lm_ell);
            set_if(l, "trials", lm_trials);
        } else if (pv->parsed() || cc->parsed() || bg->parsed()) {
            cfg["experiment"] = pv->parsed()  ? "parseval"
                                : cc->parsed() ? "chang-check"
                                               : "bogolyubov-check";
            json& f = cfg["fourier"];
            if (!f.is_object()) f = json::object();
            set_if(f, "set", f_set);
            set_if(f, "random_n", f_rand_n);
            set_if(f, "density", f_density);
            set_if(f, "gamma", f_gamma);
            set_if(f, "t", f_t);
        } else if (bn->parsed()) {
            cfg["experiment"] = "bench";
            json& b = cfg["bench"];
            if (!b.is_object()) b = json::object();
            set_if(b, "reduction", bn_reduction);
            if (!bn_sizes.empty()) b["sizes"] = bn_sizes;
        }
        return run_and_emit(cfg, g);
    } catch (const mmc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return mmc::kExitConfigError;
    } catch (const mmc::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return mmc::kExitAssertionFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return mmc::kExitConfigError;
    }
}
