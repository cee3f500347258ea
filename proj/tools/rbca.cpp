// rbca: simulate random Boolean cellular automata, estimate and enumerate
// stabilization probabilities, verify and search block structure, classify
// supports, and run the bundled verification suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rbca/blocks.hpp"
#include "rbca/distribution.hpp"
#include "rbca/engine.hpp"
#include "rbca/errors.hpp"
#include "rbca/parallel.hpp"
#include "rbca/pbm.hpp"
#include "rbca/repro.hpp"
#include "rbca/stability.hpp"
#include "rbca/version.hpp"

namespace {

using namespace rbca;

// Textual distribution form: uniform | uniform-on:J1,J2,... | weights:J1=w1,...
RuleDistribution parse_distribution(const std::string& spec) {
    if (spec == "uniform") return RuleDistribution::uniform();
    if (spec.rfind("uniform-on:", 0) == 0) {
        Support support;
        std::stringstream ss(spec.substr(11));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const int j = std::stoi(tok);
            if (j < 0 || j > 15) throw CLI::ValidationError("--dist", "rule index out of range");
            support.mask |= std::uint16_t(1u << j);
        }
        if (support.empty()) throw CLI::ValidationError("--dist", "empty support");
        return RuleDistribution::uniform_on(support);
    }
    if (spec.rfind("weights:", 0) == 0) {
        std::array<double, 16> weights{};
        std::stringstream ss(spec.substr(8));
        std::string tok;
        double sum = 0.0;
        while (std::getline(ss, tok, ',')) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--dist", "expected J=w entries");
            const int j = std::stoi(tok.substr(0, eq));
            const double w = std::stod(tok.substr(eq + 1));
            if (j < 0 || j > 15) throw CLI::ValidationError("--dist", "rule index out of range");
            if (w < 0.0) throw CLI::ValidationError("--dist", "weights must be nonnegative");
            weights[static_cast<std::size_t>(j)] += w;
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw CLI::ValidationError("--dist", "weights must sum to 1 within 1e-9");
        for (auto& w : weights) w /= sum; // normalize away the allowed slop
        return RuleDistribution::from_weights(weights);
    }
    throw CLI::ValidationError("--dist", "expected uniform | uniform-on:... | weights:...");
}

Support parse_support(const std::string& csv) {
    Support support;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const int j = std::stoi(tok);
        if (j < 0 || j > 15) throw CLI::ValidationError("--support", "rule index out of range");
        support.mask |= std::uint16_t(1u << j);
    }
    if (support.empty()) throw CLI::ValidationError("--support", "empty support");
    return support;
}

std::string manifest_line(int argc, char** argv) {
    std::string out = std::string("rbca ") + kVersionString + " |";
    for (int i = 0; i < argc; ++i) {
        out += ' ';
        out += argv[i];
    }
    return out;
}

// output sink: file when --out is given, stdout otherwise
struct Sink {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            stream = &file;
        }
    }
    std::ostream& out() { return *stream; }
};

void write_sigma_csv(std::ostream& out, const SigmaEstimate& est, const std::string& dist_text,
                     const std::string& manifest) {
    out << "n,mode,estimate,stderr,ci95,samples,seed,distribution\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%s,%.9g,%.9g,%.9g,%llu,%llu,%s\n", est.n,
                  est.mode == SigmaMode::Exact ? "exact" : "montecarlo", est.estimate,
                  est.stderr_value, est.ci95, static_cast<unsigned long long>(est.samples),
                  static_cast<unsigned long long>(est.seed), dist_text.c_str());
    out << buf;
    if (est.mode == SigmaMode::Exact) out << "# exact = " << est.fraction_string() << "\n";
    out << "# " << manifest << "\n";
}

// --family 001101010110???? with --forbid xz=11,yw=11: wildcards are named
// x,y,z,w in order of appearance and forbidden pairwise combinations are
// excluded from the enumerated family.
std::vector<BlockWord> expand_family(const std::string& pattern, const std::string& forbid) {
    const int p = static_cast<int>(pattern.size());
    std::vector<int> wildcard_pos;
    BlockWord fixed = 0;
    for (int k = 0; k < p; ++k) {
        const char c = pattern[static_cast<std::size_t>(k)];
        if (c == '1') fixed |= BlockWord(1) << k;
        else if (c == '?') wildcard_pos.push_back(k);
        else if (c != '0') throw CLI::ValidationError("--family", "pattern must be 0/1/?");
    }
    if (wildcard_pos.size() > 8) throw CLI::ValidationError("--family", "too many wildcards");

    const std::string names = "xyzwabcd";
    struct Constraint { int a, b; int va, vb; };
    std::vector<Constraint> constraints;
    if (!forbid.empty()) {
        std::stringstream ss(forbid);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto eq = tok.find('=');
            if (eq != 2 || tok.size() != 5)
                throw CLI::ValidationError("--forbid", "expected entries like xz=11");
            const auto idx_of = [&](char c) {
                const auto pos = names.find(c);
                if (pos == std::string::npos || pos >= wildcard_pos.size())
                    throw CLI::ValidationError("--forbid", "unknown wildcard name");
                return static_cast<int>(pos);
            };
            constraints.push_back({idx_of(tok[0]), idx_of(tok[1]), tok[3] - '0', tok[4] - '0'});
        }
    }

    std::vector<BlockWord> out;
    for (std::uint32_t assign = 0; assign < (1u << wildcard_pos.size()); ++assign) {
        bool allowed = true;
        for (const auto& c : constraints) {
            const int va = (assign >> c.a) & 1;
            const int vb = (assign >> c.b) & 1;
            if (va == c.va && vb == c.vb) allowed = false;
        }
        if (!allowed) continue;
        BlockWord b = fixed;
        for (std::size_t i = 0; i < wildcard_pos.size(); ++i)
            if ((assign >> i) & 1) b |= BlockWord(1) << wildcard_pos[static_cast<std::size_t>(i)];
        out.push_back(b);
    }
    return out;
}

std::string verdict_line(const BlockSpec& spec, const BlockVerdict& v) {
    std::string out = to_string(spec) + " kind=" + to_string(v.kind) +
                      " period=" + std::to_string(v.period) + " stable=" + v.stable_string();
    if (v.center_value_period)
        out += " center_period=" + std::to_string(*v.center_value_period) +
               (v.center_constant ? " center_constant=yes" : " center_constant=no");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-dimensional random Boolean cellular automata laboratory"};
    app.set_version_flag("--version", std::string("rbca ") + kVersionString);
    app.require_subcommand(1);
    app.fallthrough();

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: RBCA_THREADS or machine parallelism)");

    const std::string manifest = manifest_line(argc, argv);
    int exit_code = 0;

    // ---- simulate -----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "evolve one ring and write its space-time diagram");
    struct {
        int n = 64;
        std::string dist = "uniform";
        std::uint64_t seed = 0;
        std::int64_t steps = 64;
        std::string out;
        std::string format = "pbm";
        bool raw = false;
    } sim_opts;
    sim->add_option("--n", sim_opts.n, "ring size")->required();
    sim->add_option("--dist", sim_opts.dist, "rule distribution");
    sim->add_option("--seed", sim_opts.seed, "random seed");
    sim->add_option("--steps", sim_opts.steps, "time steps to draw")->required();
    sim->add_option("--out", sim_opts.out, "output path (default stdout)");
    sim->add_option("--format", sim_opts.format, "pbm | csv")
        ->check(CLI::IsMember({"pbm", "csv"}));
    sim->add_flag("--pbm-raw", sim_opts.raw, "write binary P4 instead of ASCII P1");
    sim->callback([&] {
        const RuleDistribution distribution = parse_distribution(sim_opts.dist);
        Xoshiro256ss rng(sim_opts.seed);
        RuleVector rules;
        rules.rules.resize(static_cast<std::size_t>(sim_opts.n));
        for (auto& r : rules.rules) r = static_cast<std::uint8_t>(distribution.sample(rng));
        RingConfiguration init(sim_opts.n);
        for (int i = 0; i < sim_opts.n; ++i) init.set_cell(i, rng.next_bit());

        const auto rows = trajectory(init, rules, sim_opts.steps);
        Sink sink(sim_opts.out);
        if (sim_opts.format == "pbm") {
            write_pbm(sink.out(), rows, sim_opts.raw, manifest);
        } else {
            sink.out() << "t,configuration\n";
            for (std::size_t t = 0; t < rows.size(); ++t) {
                sink.out() << t << ',';
                for (int i = 0; i < sim_opts.n; ++i) sink.out() << (rows[t].cell(i) ? '1' : '0');
                sink.out() << '\n';
            }
            sink.out() << "# " << manifest << "\n";
        }

        RunOptions run_options;
        run_options.max_steps = std::max<std::int64_t>(sim_opts.steps + 1, std::int64_t(1) << 20);
        const CycleSummary summary = run_until_cycle(init, rules, run_options);
        std::cout << "preperiod=" << summary.preperiod << " period=" << summary.period
                  << " stable_fraction=" << summary.stable_fraction() << "\n";
    });

    // ---- estimate -----------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "Monte Carlo estimate of sigma_N");
    struct {
        int n = 100;
        std::string dist = "uniform";
        std::uint64_t samples = 10000;
        std::uint64_t seed = 0;
        std::int64_t horizon = std::int64_t(1) << 20;
        std::string out;
    } est_opts;
    est->add_option("--n", est_opts.n, "ring size")->required();
    est->add_option("--dist", est_opts.dist, "rule distribution");
    est->add_option("--samples", est_opts.samples, "replica count")->required();
    est->add_option("--seed", est_opts.seed, "random seed");
    est->add_option("--horizon", est_opts.horizon, "cycle-search step cap");
    est->add_option("--out", est_opts.out, "output path (default stdout)");
    est->callback([&] {
        const RuleDistribution distribution = parse_distribution(est_opts.dist);
        EstimateOptions options;
        options.horizon_cap = est_opts.horizon;
        options.threads = threads;
        const SigmaEstimate result =
            estimate_sigma(est_opts.n, distribution, est_opts.samples, est_opts.seed, options);
        Sink sink(est_opts.out);
        write_sigma_csv(sink.out(), result, est_opts.dist, manifest);
    });

    // ---- exact --------------------------------------------------------------
    auto* exa = app.add_subcommand("exact", "exact sigma_N by exhaustive enumeration");
    struct {
        int n = 6;
        std::string dist;
        std::string support;
        std::uint64_t budget = std::uint64_t(1) << 36;
        std::string out;
    } exa_opts;
    exa->add_option("--n", exa_opts.n, "ring size")->required();
    exa->add_option("--dist", exa_opts.dist, "uniform or uniform-on:... distribution");
    exa->add_option("--support", exa_opts.support, "support as comma-separated rule indices");
    exa->add_option("--budget", exa_opts.budget, "work budget (rule vectors x initials)");
    exa->add_option("--out", exa_opts.out, "output path (default stdout)");
    exa->callback([&] {
        Support support;
        std::string dist_text;
        if (!exa_opts.support.empty()) {
            support = parse_support(exa_opts.support);
            dist_text = "uniform-on:" + to_string(support);
        } else if (!exa_opts.dist.empty()) {
            const RuleDistribution d = parse_distribution(exa_opts.dist);
            support = d.support();
            const double uniform_weight = 1.0 / support.size();
            for (int j : support.members())
                if (std::abs(d.weight(j) - uniform_weight) > 1e-12)
                    throw CLI::ValidationError(
                        "--dist", "exact enumeration requires uniform weights on the support");
            dist_text = exa_opts.dist;
        } else {
            throw CLI::ValidationError("exact", "need --dist or --support");
        }
        ExactOptions options;
        options.work_budget = exa_opts.budget;
        options.threads = threads;
        const SigmaEstimate result = exact_sigma(exa_opts.n, support, options);
        Sink sink(exa_opts.out);
        write_sigma_csv(sink.out(), result, dist_text, manifest);
    });

    // ---- blocks ---------------------------------------------------------------
    auto* blocks = app.add_subcommand("blocks", "verify or search impermeable/absorbing blocks");
    blocks->require_subcommand(1);

    auto* verify = blocks->add_subcommand("verify", "analyze one block or block family");
    struct {
        std::string phi;
        std::string b;
        int center = 0;
        std::string family;
        std::string forbid;
        std::int64_t max_layers = (1 << 16) + 2;
    } ver_opts;
    verify->add_option("--phi", ver_opts.phi, "phi-block, e.g. 2,9,9,2")->required();
    verify->add_option("--b", ver_opts.b, "b-word as a bit string, e.g. 0010");
    verify->add_option("--center", ver_opts.center, "center cell (1-based)");
    verify->add_option("--family", ver_opts.family, "b-word pattern with ? wildcards");
    verify->add_option("--forbid", ver_opts.forbid, "forbidden wildcard pairs, e.g. xz=11,yw=11");
    verify->add_option("--max-layers", ver_opts.max_layers, "layer cycle search cap");
    verify->callback([&] {
        BlockSpec spec;
        std::optional<int> center;
        if (ver_opts.center > 0) center = ver_opts.center;
        if (!ver_opts.family.empty()) {
            spec = BlockSpec::parse(ver_opts.phi, std::string(ver_opts.family.size(), '0'), center);
            spec.b_states = expand_family(ver_opts.family, ver_opts.forbid);
        } else if (!ver_opts.b.empty()) {
            spec = BlockSpec::parse(ver_opts.phi, ver_opts.b, center);
        } else {
            throw CLI::ValidationError("verify", "need --b or --family");
        }
        const BlockVerdict v = analyze_block(spec, ver_opts.max_layers);
        std::cout << verdict_line(spec, v) << "\n";
    });

    auto* search = blocks->add_subcommand("search", "exhaustive block search over a support");
    struct {
        std::string support;
        int p_max = 4;
        bool absorbing = false;
        bool constant_center = false;
        bool all_sizes = false;
        std::uint64_t limit = 0;
    } sea_opts;
    search->add_option("--support", sea_opts.support, "support, e.g. 2,3")->required();
    search->add_option("--pmax", sea_opts.p_max, "largest block size")->required();
    search->add_flag("--absorbing", sea_opts.absorbing, "search absorbing instead of impermeable");
    search->add_flag("--constant-center", sea_opts.constant_center,
                     "absorbing witnesses with a constant center only");
    search->add_flag("--all", sea_opts.all_sizes, "keep searching past the first size with witnesses");
    search->add_option("--limit", sea_opts.limit, "stop after this many witnesses (0 = no limit)");
    search->callback([&] {
        const Support support = parse_support(sea_opts.support);
        SearchOptions options;
        options.threads = threads;
        options.stop_at_first_size = !sea_opts.all_sizes;
        if (sea_opts.limit > 0) options.max_witnesses = sea_opts.limit;
        const std::vector<BlockSpec> witnesses =
            sea_opts.absorbing
                ? search_absorbing(support, sea_opts.p_max, sea_opts.constant_center, options)
                : search_impermeable(support, sea_opts.p_max, options);
        if (witnesses.empty()) {
            std::cout << "no witness up to p=" << sea_opts.p_max << "\n";
        } else {
            for (const BlockSpec& w : witnesses) {
                const BlockVerdict v = analyze_block(w);
                std::cout << verdict_line(w, v) << "\n";
            }
        }
    });

    // ---- classify -------------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "sigma_* status of a support");
    struct {
        std::string support;
    } cls_opts;
    classify->add_option("--support", cls_opts.support, "support, e.g. 6,9")->required();
    classify->callback([&] {
        const ClassificationVerdict v = theorem1_classify(parse_support(cls_opts.support));
        if (v.status == SigmaStarStatus::Zero)
            std::cout << "sigma_star=0 (" << v.evidence << ")\n";
        else
            std::cout << "sigma_star>0 (" << v.evidence << ")\n";
    });

    // ---- repro ------------------------------------------------------------------
    auto* repro = app.add_subcommand("repro", "run one bundled verification suite");
    struct {
        std::string suite;
    } rep_opts;
    std::string suite_help = "suite name:";
    for (const auto& [name, criterion] : repro_suites()) suite_help += " " + name;
    repro->add_option("--suite", rep_opts.suite, suite_help)->required();
    repro->callback([&] {
        bool known = false;
        for (const auto& [name, criterion] : repro_suites()) known = known || name == rep_opts.suite;
        if (!known) throw CLI::ValidationError("--suite", "unknown suite: " + rep_opts.suite);
        const auto start = std::chrono::steady_clock::now();
        const ReproResult result = run_repro_suite(rep_opts.suite, threads);
        const auto stop = std::chrono::steady_clock::now();
        for (const auto& line : result.lines) std::cout << line << "\n";
        std::cout << (result.pass ? "PASS " : "FAIL ") << result.name << "\n";
        std::fprintf(stderr, "# wall-clock: %.3fs\n",
                     std::chrono::duration<double>(stop - start).count());
        if (!result.pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CycleNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const LayerCycleNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
