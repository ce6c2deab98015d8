// Command-line front end: exact cost distributions, moment tables, the
// instrumented algorithm, limit-law simulation and the convergence-rate
// report, all reproducible from (config, seed).

#include "insitu/limit_law.hpp"
#include "insitu/metrics.hpp"
#include "insitu/permute.hpp"
#include "insitu/recurrence.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "1.0.0";

struct Output {
    std::string format = "csv";
    std::string path;  // empty = stdout
};

std::string meta_comment(const std::string& subcommand, const std::string& config,
                         std::uint64_t seed)
{
    std::string s;
    s += "# version=" + std::string(kVersion) + "\n";
    s += "# subcommand=" + subcommand + "\n";
    s += "# config=" + config + "\n";
    s += "# seed=" + std::to_string(seed) + "\n";
    return s;
}

std::string meta_json(const std::string& subcommand, const std::string& config,
                      std::uint64_t seed)
{
    return "\"meta\": {\"version\": \"" + std::string(kVersion) + "\", \"subcommand\": \"" +
           subcommand + "\", \"config\": \"" + config + "\", \"seed\": " +
           std::to_string(seed) + "}";
}

// Whole artifact is built in memory and written in one shot (temp file +
// rename), so a failed run leaves no partial output behind.
void emit(const Output& out, const std::string& payload)
{
    if (out.path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    const std::string tmp = out.path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open output file: " + tmp);
        f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!f)
            throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), out.path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move output into place: " + out.path);
    }
}

std::string format_doubles(std::span<const double> values, const std::string& format,
                           const std::string& meta)
{
    if (format == "binary") {
        std::string payload(values.size() * sizeof(double), '\0');
        std::memcpy(payload.data(), values.data(), payload.size());
        std::cerr << meta; // binary stream stays raw; metadata goes to stderr
        return payload;
    }
    std::string payload = meta;
    char buf[64];
    for (double v : values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        payload += buf;
    }
    return payload;
}

std::vector<int> parse_grid(const std::string& grid)
{
    // "a:b:steps", log-spaced integers from a to b inclusive, deduplicated.
    int a = 0, b = 0, steps = 0;
    if (std::sscanf(grid.c_str(), "%d:%d:%d", &a, &b, &steps) != 3 || a < 1 || b < a || steps < 2)
        throw CLI::ValidationError("--grid", "expected a:b:steps with 1 <= a <= b, steps >= 2");
    std::vector<int> ns;
    const double la = std::log(static_cast<double>(a));
    const double lb = std::log(static_cast<double>(b));
    for (int i = 0; i < steps; ++i) {
        const double t = la + (lb - la) * i / (steps - 1);
        const int n = static_cast<int>(std::lround(std::exp(t)));
        if (ns.empty() || n != ns.back())
            ns.push_back(n);
    }
    return ns;
}

insitu::Permutation read_permutation(const std::string& perm_file)
{
    std::vector<std::int32_t> mapping;
    auto read_from = [&](std::istream& in) {
        std::int64_t v;
        while (in >> v)
            mapping.push_back(static_cast<std::int32_t>(v));
    };
    if (perm_file.empty()) {
        read_from(std::cin);
    } else {
        std::ifstream f(perm_file);
        if (!f)
            throw std::runtime_error("cannot read permutation file: " + perm_file);
        read_from(f);
    }
    if (mapping.empty())
        throw std::runtime_error("empty permutation input");
    insitu::Permutation p{std::move(mapping)};
    p.validate();
    return p;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Probabilistic cost analysis of the in-situ permutation algorithm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Output out;
    out.format.clear();
    std::uint64_t seed = 1;
    int threads = 1;
    double tol = 1e-10;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", out.format, "Output format")
            ->check(CLI::IsMember({"csv", "json", "lines", "binary"}))
            ->envname("INSITU_FORMAT");
        sub->add_option("--out", out.path, "Output path (default: stdout)");
        sub->add_option("--seed", seed, "Random seed")->envname("INSITU_SEED");
        sub->add_option("--threads", threads, "Worker cap (never affects results)")
            ->check(CLI::PositiveNumber)
            ->envname("INSITU_THREADS");
        sub->add_option("--tol", tol, "Quadrature tolerance")->envname("INSITU_TOL");
    };

    // dist
    auto* dist_cmd = app.add_subcommand("dist", "Exact distribution of the major cost X_n");
    int dist_n = 0;
    int dist_cap = insitu::kDefaultDistributionCap;
    dist_cmd->add_option("--n", dist_n, "Size n")->required();
    dist_cmd->add_option("--cap", dist_cap, "Maximum admissible n");
    add_common(dist_cmd);

    // moments
    auto* mom_cmd = app.add_subcommand("moments", "Moment table m_n, Var, kappa3, sigma2(n)");
    int mom_nmax = 0;
    std::string mom_mode = "float";
    bool mom_residuals = false;
    mom_cmd->add_option("--nmax", mom_nmax, "Largest n")->required();
    mom_cmd->add_option("--mode", mom_mode, "Arithmetic mode")
        ->check(CLI::IsMember({"rational", "float"}));
    mom_cmd->add_flag("--residuals", mom_residuals, "Append asymptotic residual columns");
    add_common(mom_cmd);

    // algo
    auto* algo_cmd = app.add_subcommand("algo", "Run the in-situ permutation on 1..n");
    std::string perm_file;
    algo_cmd->add_option("--perm-file", perm_file,
                         "Permutation as whitespace-separated 1-based indices (default: stdin)");
    add_common(algo_cmd);

    // brute
    auto* brute_cmd = app.add_subcommand("brute", "Brute-force law vs recurrence law");
    int brute_n = 0;
    brute_cmd->add_option("--n", brute_n, "Size n (<= 8)")->required();
    add_common(brute_cmd);

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo costs of random permutations");
    int sample_n = 0;
    std::int64_t sample_trials = 10000;
    sample_cmd->add_option("--n", sample_n, "Size n")->required();
    sample_cmd->add_option("--trials", sample_trials, "Number of random permutations");
    add_common(sample_cmd);

    // limit
    auto* limit_cmd = app.add_subcommand("limit", "Limit constants and fixed-point pool");
    std::int64_t pool_size = 100000;
    std::int64_t generations = 50;
    limit_cmd->add_option("--pool", pool_size, "Pool size");
    limit_cmd->add_option("--generations", generations, "Population iterations");
    add_common(limit_cmd);

    // yn
    auto* yn_cmd = app.add_subcommand("yn", "Samples of the normalized cost Y_n");
    int yn_n = 0;
    std::int64_t yn_trials = 10000;
    yn_cmd->add_option("--n", yn_n, "Size n")->required();
    yn_cmd->add_option("--trials", yn_trials, "Number of samples");
    add_common(yn_cmd);

    // rate
    auto* rate_cmd = app.add_subcommand("rate", "Zolotarev rate series and constant fit");
    std::string grid = "1000:30000:12";
    bool rate_mc = false;
    std::int64_t rate_trials = 20000;
    std::int64_t rate_pool = 100000;
    std::int64_t rate_generations = 50;
    int rate_batches = 10;
    rate_cmd->add_option("--grid", grid, "Log grid a:b:steps");
    rate_cmd->add_flag("--mc", rate_mc, "Add Monte Carlo upper-bound estimates");
    rate_cmd->add_option("--trials", rate_trials, "Samples per rate point");
    rate_cmd->add_option("--pool", rate_pool, "Limit pool size");
    rate_cmd->add_option("--generations", rate_generations, "Limit pool iterations");
    rate_cmd->add_option("--batches", rate_batches, "Batches for the s.e. estimate");
    add_common(rate_cmd);

    CLI11_PARSE(app, argc, argv);

    if (out.format.empty()) {
        // Per-subcommand defaults when --format is not given.
        if (dist_cmd->parsed() || algo_cmd->parsed() || limit_cmd->parsed())
            out.format = "json";
        else if (brute_cmd->parsed() || sample_cmd->parsed() || yn_cmd->parsed())
            out.format = "lines";
        else
            out.format = "csv";
    }

    try {
        if (dist_cmd->parsed()) {
            const std::string config =
                "n=" + std::to_string(dist_n) + " cap=" + std::to_string(dist_cap) +
                " format=" + out.format;
            const auto dist = insitu::exact_distribution(dist_n, dist_cap);
            std::string payload;
            if (out.format == "json") {
                const std::string body = insitu::to_json(dist);
                payload = "{" + meta_json("dist", config, seed) + ", " + body.substr(1) + "\n";
            } else {
                payload = meta_comment("dist", config, seed) + "cost,probability\n";
                for (const auto& [cost, p] : dist.probabilities)
                    payload += std::to_string(cost) + "," + insitu::rational_to_string(p) + "\n";
            }
            emit(out, payload);
        } else if (mom_cmd->parsed()) {
            const std::string config = "nmax=" + std::to_string(mom_nmax) + " mode=" + mom_mode +
                                       " residuals=" + (mom_residuals ? "1" : "0") +
                                       " format=" + out.format;
            const auto mode = mom_mode == "rational" ? insitu::MomentMode::rational
                                                     : insitu::MomentMode::floating;
            const auto table = insitu::moments_exact(mom_nmax, mode);
            std::string payload = meta_comment("moments", config, seed);
            if (!mom_residuals) {
                payload += insitu::to_csv(table);
            } else {
                const auto constants = insitu::limit_constants(tol);
                std::vector<int> ns(static_cast<std::size_t>(mom_nmax));
                for (int n = 1; n <= mom_nmax; ++n)
                    ns[static_cast<std::size_t>(n - 1)] = n;
                const auto res = insitu::asymptotic_residuals(table, ns, constants.M3);
                payload += "n,mean,variance,kappa3,sigma2_n,mean_residual,variance_residual,"
                           "cumulant_residual\n";
                char buf[256];
                for (const auto& r : res) {
                    std::snprintf(buf, sizeof(buf),
                                  "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n,
                                  table.mean[static_cast<std::size_t>(r.n)], table.variance(r.n),
                                  table.kappa3(r.n), table.sigma2_n(r.n), r.mean_residual,
                                  r.variance_residual, r.cumulant_residual);
                    payload += buf;
                }
            }
            emit(out, payload);
        } else if (algo_cmd->parsed()) {
            const auto p = read_permutation(perm_file);
            const int n = p.size();
            const std::string config = "n=" + std::to_string(n) + " format=" + out.format;
            std::vector<std::int64_t> x(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                x[static_cast<std::size_t>(i)] = i + 1;
            const auto cost = insitu::permute_in_place(std::span<std::int64_t>(x), p);
            std::string payload;
            if (out.format == "json") {
                payload = "{" + meta_json("algo", config, seed) + ", \"permuted\": [";
                for (int i = 0; i < n; ++i)
                    payload += (i ? ", " : "") + std::to_string(x[static_cast<std::size_t>(i)]);
                payload += "], \"search_steps\": " + std::to_string(cost.search_steps) +
                           ", \"value_writes\": " + std::to_string(cost.value_writes) +
                           ", \"cycle_leaders\": " + std::to_string(cost.cycle_leaders) + "}\n";
            } else {
                payload = meta_comment("algo", config, seed);
                for (int i = 0; i < n; ++i)
                    payload += (i ? " " : "") + std::to_string(x[static_cast<std::size_t>(i)]);
                payload += "\nsearch_steps=" + std::to_string(cost.search_steps) +
                           "\nvalue_writes=" + std::to_string(cost.value_writes) +
                           "\ncycle_leaders=" + std::to_string(cost.cycle_leaders) + "\n";
            }
            emit(out, payload);
        } else if (brute_cmd->parsed()) {
            const std::string config = "n=" + std::to_string(brute_n) + " format=" + out.format;
            const auto brute = insitu::cost_distribution_bruteforce(brute_n);
            const auto exact = insitu::exact_distribution(brute_n);
            const bool equal = brute.probabilities == exact.probabilities;
            std::string payload = meta_comment("brute", config, seed);
            if (equal) {
                payload += "PASS: brute-force law equals recurrence law (support 0.." +
                           std::to_string(exact.max_cost()) + ")\n";
                emit(out, payload);
            } else {
                payload += "FAIL: brute-force law differs from recurrence law at n=" +
                           std::to_string(brute_n) + "\n";
                emit(out, payload);
                return 1;
            }
        } else if (sample_cmd->parsed()) {
            const std::string config = "n=" + std::to_string(sample_n) +
                                       " trials=" + std::to_string(sample_trials) +
                                       " format=" + out.format;
            const auto costs = insitu::cost_sample(sample_n, sample_trials, seed);
            const std::string meta = meta_comment("sample", config, seed);
            std::string payload;
            if (out.format == "csv") {
                payload = meta + "trial,search_steps\n";
                for (std::size_t i = 0; i < costs.size(); ++i)
                    payload += std::to_string(i) + "," + std::to_string(costs[i]) + "\n";
            } else {
                payload = meta;
                for (std::int64_t c : costs)
                    payload += std::to_string(c) + "\n";
            }
            emit(out, payload);
        } else if (limit_cmd->parsed()) {
            const std::string config = "pool=" + std::to_string(pool_size) +
                                       " generations=" + std::to_string(generations) +
                                       " tol=" + std::to_string(tol) + " format=" + out.format;
            const auto constants = insitu::limit_constants(tol);
            const auto pool = insitu::simulate_limit(pool_size, generations, seed, threads);
            if (out.format == "lines" || out.format == "binary") {
                emit(out, format_doubles(pool.values, out.format,
                                         meta_comment("limit", config, seed)));
            } else {
                double mean = 0;
                for (double v : pool.values)
                    mean += v;
                mean /= static_cast<double>(pool.values.size());
                double var = 0, third = 0;
                for (double v : pool.values) {
                    const double d = v - mean;
                    var += d * d;
                    third += d * d * d;
                }
                var /= static_cast<double>(pool.values.size());
                third /= static_cast<double>(pool.values.size());
                char buf[256];
                std::snprintf(buf, sizeof(buf),
                              "\"pool\": {\"size\": %zu, \"generations\": %lld, \"mean\": %.17g, "
                              "\"variance\": %.17g, \"third_central\": %.17g}",
                              pool.values.size(), static_cast<long long>(pool.generation), mean,
                              var, third);
                std::string payload = "{" + meta_json("limit", config, seed) +
                                      ", \"constants\": " + insitu::to_json(constants) + ", " +
                                      buf + "}\n";
                emit(out, payload);
            }
        } else if (yn_cmd->parsed()) {
            const std::string config = "n=" + std::to_string(yn_n) +
                                       " trials=" + std::to_string(yn_trials) +
                                       " format=" + out.format;
            const auto table = insitu::moments_exact(yn_n, insitu::MomentMode::floating);
            const auto samples = insitu::simulate_Yn(yn_n, yn_trials, table, seed, threads);
            emit(out, format_doubles(samples, out.format, meta_comment("yn", config, seed)));
        } else if (rate_cmd->parsed()) {
            const std::string config = "grid=" + grid + " mc=" + (rate_mc ? "1" : "0") +
                                       " trials=" + std::to_string(rate_trials) +
                                       " pool=" + std::to_string(rate_pool) +
                                       " generations=" + std::to_string(rate_generations) +
                                       " batches=" + std::to_string(rate_batches) +
                                       " format=" + out.format;
            const auto ns = parse_grid(grid);
            const auto table = insitu::moments_exact(ns.back(), insitu::MomentMode::floating);
            const auto constants = insitu::limit_constants(tol);
            std::optional<insitu::McConfig> mc;
            if (rate_mc)
                mc = insitu::McConfig{rate_pool, rate_generations, rate_trials, rate_batches,
                                      seed, threads};
            const auto points = insitu::rate_series(ns, table, constants, mc);
            const auto fit = insitu::fit_rate_constant(points);
            const double sigma = std::sqrt(constants.sigma2);
            const double theory = constants.M3 / (4.0 * constants.sigma2 * constants.sigma2 * sigma);
            std::string payload = meta_comment("rate", config, seed);
            char buf[128];
            std::snprintf(buf, sizeof(buf), "# fit_intercept=%.17g\n# fit_slope=%.17g\n# rate_constant_theory=%.17g\n",
                          fit.intercept, fit.slope, theory);
            payload += buf;
            payload += insitu::to_csv(points);
            emit(out, payload);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
