// mshtool: command-line front end for the msh library.
//
// Exit codes: 0 pass, 1 usage error, 2 claim failure, 3 internal error.

#include "msh/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitClaim = 2;
constexpr int kExitInternal = 3;

// Options the user did not pass on the command line are filled from the
// config file; keys are long option names without the dashes.
void apply_config(const nlohmann::json& cfg, const std::vector<CLI::App*>& apps) {
    if (!cfg.is_object()) throw msh::precondition_error("config must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        CLI::Option* opt = nullptr;
        for (CLI::App* app : apps) {
            try {
                opt = app->get_option("--" + key);
                break;
            } catch (const CLI::OptionNotFound&) {
            }
        }
        if (!opt) continue;  // keys for other subcommands
        if (opt->count() > 0 || key == "config") continue;
        std::vector<std::string> values;
        auto scalar = [](const nlohmann::json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_boolean()) return std::string(v.get<bool>() ? "true" : "false");
            return v.dump();
        };
        if (value.is_array()) {
            for (const auto& v : value) values.push_back(scalar(v));
        } else {
            values.push_back(scalar(value));
        }
        if (opt->get_type_size_max() == 0) {
            // flag
            if (values.size() == 1 && values.front() == "true") opt->add_result(std::string("true"));
        } else {
            opt->add_result(values);
        }
        opt->run_callback();
    }
}

std::vector<double> parse_doubles(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(msh::parse_rational(s).get_d());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elementary symmetric cones, Hessian classes and radial integral experiments"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 0;
    double tolerance = msh::kDefaultTolerance;
    double mc_tolerance = 1e-3;
    std::string format = "text";
    std::string out_path;
    std::uint64_t budget = 1'000'000;
    std::string config_path;
    int threads = 0;

    app.add_option("--seed", seed, "Random seed");
    app.add_option("--tolerance", tolerance, "Relative tolerance for floating comparisons");
    app.add_option("--mc-tolerance", mc_tolerance, "Largest relative standard error for Monte Carlo claims");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--budget", budget, "Objective evaluation budget for searches");
    app.add_option("--config", config_path, "JSON config file; MSH_CONFIG is used when absent");
    app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    auto* verify = app.add_subcommand("verify-paper", "Run the shipped claim list");
    std::uint64_t mc_samples = 10'000'000;
    bool timings = false;
    verify->add_option("--mc-samples", mc_samples, "Monte Carlo samples for the expansion claims");
    verify->add_flag("--timings", timings, "Record per-claim runtimes (reports are then not byte-stable)");

    auto* sweep = app.add_subcommand("sweep", "Table of the ratio bound over admissible (p, k, n)");
    int n_max = 7;
    sweep->add_option("--n-max", n_max, "Largest n");

    auto* search = app.add_subcommand("search", "Search for an A- but not B-subharmonic spectrum");
    int search_n = 11, search_k = 3;
    search->add_option("--n", search_n, "Dimension");
    search->add_option("--k", search_k, "Plane dimension");

    auto* radial = app.add_subcommand("radial", "Radial ball integrals and the chi_A trajectory");
    int radial_n = 3, radial_m = 2;
    std::string alpha_text = "1";
    std::vector<std::string> A_text{"0", "1", "10", "100", "1000", "1e6"};
    radial->add_option("--n", radial_n, "Dimension");
    radial->add_option("--m", radial_m, "Subset size");
    radial->add_option("--alpha", alpha_text, "Exponent, e.g. 1/2");
    radial->add_option("--A", A_text, "chi_A parameters");

    auto* perturb = app.add_subcommand("perturb", "Eigenvalue separation as a_n grows");
    std::vector<std::string> a_text{"1", "2"};
    std::vector<std::string> an_text{"10", "100", "1000", "10000"};
    std::vector<double> z_re{0.3, 0.2, 0.1};
    std::string chi_name = "bump";
    perturb->add_option("--a", a_text, "a_1 < ... < a_{n-1}");
    perturb->add_option("--a-n", an_text, "Increasing values of a_n");
    perturb->add_option("--z", z_re, "Real evaluation point, n coordinates");
    perturb->add_option("--chi", chi_name, "bump or zero")->check(CLI::IsMember({"bump", "zero"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (config_path.empty()) {
            if (const char* env = std::getenv("MSH_CONFIG")) config_path = env;
        }
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw msh::precondition_error("cannot open config '" + config_path + "'");
            nlohmann::json cfg;
            try {
                cfg = nlohmann::json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw msh::precondition_error(std::string("config is not valid JSON: ") + e.what());
            }
            std::vector<CLI::App*> apps{&app};
            for (CLI::App* sub : app.get_subcommands()) apps.push_back(sub);
            apply_config(cfg, apps);
        }
        if (!(tolerance > 0) || !(mc_tolerance > 0)) throw msh::precondition_error("tolerances must be positive");
        const msh::Format fmt = msh::parse_format(format);

        std::ostringstream buf;
        int code = kExitPass;
        if (verify->parsed()) {
            msh::VerifyOptions opt;
            opt.seed = seed;
            opt.tolerances.relative = tolerance;
            opt.tolerances.monte_carlo = mc_tolerance;
            opt.mc_samples = mc_samples;
            opt.search_budget = budget;
            opt.timings = timings;
            opt.threads = threads;
            const auto report = msh::run_reference_claims(opt);
            msh::write_report(buf, report, fmt);
            if (!report.overall()) code = kExitClaim;
        } else if (sweep->parsed()) {
            if (n_max < 1) throw msh::precondition_error("--n-max must be at least 1");
            msh::write_sweep(buf, msh::equivalence_sweep(n_max), fmt);
        } else if (search->parsed()) {
            msh::SearchConfig cfg;
            cfg.n = search_n;
            cfg.k = search_k;
            cfg.seed = seed;
            cfg.budget = budget;
            cfg.threads = threads;
            msh::write_search(buf, msh::run_search(cfg), fmt);
        } else if (radial->parsed()) {
            const msh::Rational alpha = msh::parse_rational(alpha_text);
            msh::write_radial(buf, msh::run_radial(radial_n, radial_m, alpha, parse_doubles(A_text)), fmt);
        } else if (perturb->parsed()) {
            msh::PerturbTable t;
            t.a = parse_doubles(a_text);
            t.chi = chi_name;
            for (double x : z_re) t.z.emplace_back(x, 0.0);
            if (t.z.size() != t.a.size() + 1) throw msh::precondition_error("--z needs one more coordinate than --a");
            msh::PerturbedQuadratic f{t.a, chi_name == "bump" ? msh::ChiField::bump() : msh::ChiField::zero()};
            f.a.push_back(0.0);
            const auto seq = parse_doubles(an_text);
            t.rows = msh::perturbation_experiment(f, t.z, seq);
            t.rate_constant = msh::inverse_rate_constant(t.rows);
            msh::write_perturb(buf, t, fmt);
        }

        if (out_path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw msh::precondition_error("cannot write '" + out_path + "'");
            out << buf.str();
        }
        return code;
    } catch (const msh::precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
