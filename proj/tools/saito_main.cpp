// saito — command-line front end for the orbit-space pipeline.
//
// Subcommands: invariants, metric, eta, flat, potential, verify. Artifacts
// land in a per-group cache directory as canonical polynomial text plus a
// manifest with content hashes; reruns are byte-stable and a damaged cache
// heals itself. Exit codes: 0 success, 1 verification failure, 2 usage
// error, 3 internal inconsistency detected by the pipeline's own checks.
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "saito/fixtures.hpp"
#include "saito/manifest.hpp"
#include "saito/poly_text.hpp"

namespace {

using namespace saito;

GroupId parse_group(std::string name) {
    for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return group_from_string(name);  // throws invalid_argument on bad names
}

struct Cli {
    std::string group;
    std::string solver = "modular";
    std::string threads = "auto";
    std::string metric_scale = "2";
    std::string cache = "saito_cache";
    std::string fixtures_dir;
    std::uint64_t seed = 271828182845904523ULL;
    std::optional<std::uint32_t> degree;
    bool against_fixtures = false;
    bool symbolic_wdvv = false;
};

RunConfig make_config(const Cli& cli) {
    RunConfig cfg;
    if (cli.group.empty()) throw std::invalid_argument("no group given");
    cfg.group = parse_group(cli.group);
    if (cli.solver == "exact")
        cfg.solver = SolverKind::Exact;
    else if (cli.solver == "modular")
        cfg.solver = SolverKind::Modular;
    else
        throw std::invalid_argument("--solver must be 'exact' or 'modular'");
    cfg.threads = cli.threads;
    resolve_threads(cfg.threads);  // validate now so bad input is a usage error
    try {
        cfg.sigma = rational_from_string(cli.metric_scale);
    } catch (const std::exception&) {
        throw std::invalid_argument("--metric-scale must be a rational number");
    }
    if (cfg.sigma <= 0) throw std::invalid_argument("--metric-scale must be positive");
    cfg.seed = cli.seed;
    cfg.cache_dir = cli.cache;
    return cfg;
}

int cmd_invariants(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    const GroupSpec& s = group_spec(cfg.group);
    if (cli.degree) {
        if (cfg.group == GroupId::E8 && *cli.degree % 2)
            throw std::invalid_argument("E8 has even invariant degrees only");
        bool known = false;
        for (auto d : s.weights.degrees) known |= (d == *cli.degree);
        if (!known)
            throw std::invalid_argument("degree " + std::to_string(*cli.degree) +
                                        " is not an invariant degree of " + s.name);
    }
    auto gdir = write_invariant_artifacts(cfg, cli.degree);
    std::size_t count = cli.degree ? 1 : s.rank;
    std::cout << "invariants " << s.name << ": " << count << " file(s) under "
              << (gdir / "invariants").string() << ", manifest updated\n";
    return 0;
}

int cmd_stage(const Cli& cli, Stage stage) {
    RunConfig cfg = make_config(cli);
    PipelineResult res = run_pipeline(cfg, stage);
    const GroupSpec& s = group_spec(cfg.group);
    switch (stage) {
        case Stage::Metric: {
            std::size_t terms = 0;
            for (std::size_t a = 0; a < s.rank; ++a)
                for (std::size_t b = a; b < s.rank; ++b) terms += res.gtable.entries[a][b].term_count();
            std::cout << "metric " << s.name << ": " << s.rank * (s.rank + 1) / 2
                      << " entries, " << terms << " terms -> "
                      << (res.group_dir / "metric.txt").string() << "\n";
            break;
        }
        case Stage::Eta: {
            std::size_t nonzero = 0;
            for (std::size_t a = 0; a < s.rank; ++a)
                for (std::size_t b = a; b < s.rank; ++b) nonzero += !res.eta.entries[a][b].is_zero();
            std::cout << "eta " << s.name << ": " << nonzero << " nonzero entries -> "
                      << (res.group_dir / "eta.txt").string() << "\n";
            break;
        }
        case Stage::Flat: {
            std::cout << "frame " << s.name << ": antidiagonal constant "
                      << rational_to_string(res.frame->eta_const) << "; scales";
            for (const auto& sc : res.frame->scales) std::cout << " " << rational_to_string(sc);
            std::cout << " -> " << (res.group_dir / "frame.txt").string() << "\n";
            break;
        }
        case Stage::Potential:
            std::cout << "potential " << s.name << ": " << res.potential->F.term_count()
                      << " terms, weighted degree " << 2 * s.coxeter_number() + 2 << " -> "
                      << (res.group_dir / "potential.txt").string() << "\n";
            break;
    }
    return 0;
}

int cmd_verify(const Cli& cli) {
    RunConfig cfg = make_config(cli);
    const GroupSpec& s = group_spec(cfg.group);
    PipelineResult res = run_pipeline(cfg, Stage::Potential);
    const FlatFrame& frame = *res.frame;
    const Potential& pot = *res.potential;
    bool ok = true;
    auto report = [&](const std::string& name, const std::optional<std::string>& problem) {
        if (problem) {
            ok = false;
            std::cout << "FAIL " << name << ": " << *problem << "\n";
        } else {
            std::cout << "ok   " << name << "\n";
        }
    };

    {  // the top-coordinate derivative of the transformed table must be the
       // constant antidiagonal; the chain rule turns the frame's antidiagonal
       // value into eta_const / s_top because d/dt_h = (1/s_top) d/du_h
        std::optional<std::string> problem;
        auto flat_g = metric_in_flat(frame, res.gtable);
        Rational want_const = frame.eta_const / frame.scales[s.rank - 1];
        for (std::size_t a = 0; a < s.rank && !problem; ++a)
            for (std::size_t b = a; b < s.rank && !problem; ++b) {
                Poly d = flat_g[a][b].diff(s.rank - 1);
                Poly want = s.dual_index(a) == b ? Poly::constant(s.flat_ring, want_const)
                                                 : Poly::zero(s.flat_ring);
                if (d != want)
                    problem = "entry (" + std::to_string(s.weights.degrees[a]) + "," +
                              std::to_string(s.weights.degrees[b]) + ") is not constant";
            }
        report("secondary metric constant in flat coordinates", problem);
    }
    report("Euler quasi-homogeneity of the potential",
           check_euler(pot) ? std::nullopt : std::make_optional<std::string>("identity fails"));
    {
        std::optional<std::string> problem;
        if (!check_wdvv_sampled(pot, 50, cfg.seed))
            problem = "associativity fails at a sample point";
        report("associativity at 50 sample points", problem);
    }
    if (cli.symbolic_wdvv)
        report("associativity as a polynomial identity",
               check_wdvv_symbolic(pot) ? std::nullopt
                                        : std::make_optional<std::string>("identity fails"));
    report("cache manifest integrity", verify_manifest(res.group_dir, res.manifest));

    if (cli.against_fixtures) {
        if (cfg.sigma != 2)
            throw std::invalid_argument(
                "fixtures are recorded at the default --metric-scale of 2");
        FixtureSet fx = load_fixtures(cfg.group, cli.fixtures_dir);
        if (fx.empty())
            throw std::invalid_argument("no fixtures recorded for " + s.name + " under " +
                                        cli.fixtures_dir);
        if (fx.metric) report("metric table matches fixtures", compare_metric(fx, res.gtable));
        if (fx.eta) report("eta table matches fixtures", compare_eta(fx, res.eta));
        if (fx.frame) report("flat frame matches fixtures", compare_frame(fx, frame));
        if (fx.potential) report("potential matches fixtures", compare_potential(fx, pot));
        report("fixture checksums", verify_fixture_checksums(cli.fixtures_dir));
    }

    std::cout << (ok ? "verify " : "verify FAILED ") << s.name << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    if (const char* env = std::getenv("SAITO_FIXTURES")) cli.fixtures_dir = env;
    if (cli.fixtures_dir.empty()) cli.fixtures_dir = "fixtures";

    CLI::App app{"Flat structures on reflection-group orbit spaces"};
    app.require_subcommand(1);
    app.add_option("--group", cli.group, "Group name (A2, A3, E6, E7, E8)");
    app.add_option("--solver", cli.solver, "Linear solver: exact or modular")
        ->capture_default_str();
    app.add_option("--threads", cli.threads, "Worker threads: auto or a positive integer")
        ->envname("SAITO_THREADS")
        ->capture_default_str();
    app.add_option("--seed", cli.seed, "Sample-point seed")->capture_default_str();
    app.add_option("--metric-scale", cli.metric_scale, "Overall pairing scale (rational)")
        ->capture_default_str();
    app.add_option("--cache", cli.cache, "Artifact cache directory")
        ->envname("SAITO_CACHE")
        ->capture_default_str();

    CLI::App* inv = app.add_subcommand("invariants", "Write the basic invariants");
    inv->add_option("group", cli.group, "Group name");
    inv->add_option("--degree", cli.degree, "Only this invariant degree");

    CLI::App* metric = app.add_subcommand("metric", "Compute the orbit-space pairing table");
    metric->add_option("group", cli.group, "Group name");
    CLI::App* eta = app.add_subcommand("eta", "Compute the secondary pairing table");
    eta->add_option("group", cli.group, "Group name");
    CLI::App* flat = app.add_subcommand("flat", "Solve for the flat coordinate frame");
    flat->add_option("group", cli.group, "Group name");
    CLI::App* potential = app.add_subcommand("potential", "Reconstruct the potential");
    potential->add_option("group", cli.group, "Group name");

    CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("group", cli.group, "Group name");
    verify->add_flag("--against-fixtures", cli.against_fixtures,
                     "Also compare every artifact against the fixture tables");
    verify->add_flag("--symbolic-wdvv", cli.symbolic_wdvv,
                     "Prove associativity as a polynomial identity, not just at points");
    verify->add_option("--fixtures", cli.fixtures_dir, "Fixture directory root")
        ->capture_default_str();

    for (CLI::App* sub : {inv, metric, eta, flat, potential, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (inv->parsed()) return cmd_invariants(cli);
        if (metric->parsed()) return cmd_stage(cli, Stage::Metric);
        if (eta->parsed()) return cmd_stage(cli, Stage::Eta);
        if (flat->parsed()) return cmd_stage(cli, Stage::Flat);
        if (potential->parsed()) return cmd_stage(cli, Stage::Potential);
        if (verify->parsed()) return cmd_verify(cli);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
