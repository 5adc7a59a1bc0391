// Command-line front end. Every subcommand except `check` builds a run spec, executes it
// into --out, and echoes the primary result on stdout.
#include <cmath>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "annealsig/bath.hpp"
#include "annealsig/embedding.hpp"
#include "annealsig/errors.hpp"
#include "annealsig/harness.hpp"
#include "annealsig/perturbation.hpp"
#include "annealsig/sa.hpp"

using namespace annealsig;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string model;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--model", c.model, "model JSON {n, h, couplings}");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"csv", "json", "svg"}));
    app->add_option("--seed", c.seed, "random seed");
}

void emit(const RunResult& r, const std::string& outdir, const std::string& format) {
    if (format == "json") {
        std::cout << r.manifest.at("results").dump(2) << "\n";
        return;
    }
    const std::string ext = "." + format;
    for (const auto& f : r.files)
        if (fs::path(f).extension() == ext) {
            if (format == "csv")
                std::cout << read_text((fs::path(outdir) / f).string());
            else
                std::cout << (fs::path(outdir) / f).string() << "\n";
            if (format == "csv") return;
        }
}

int execute(json spec, const Common& c, const std::string& name) {
    if (!c.model.empty()) spec["model_file"] = fs::absolute(c.model).string();
    spec["seed"] = c.seed;
    std::string outdir = c.out.empty() ? "annealsig_" + name : c.out;
    RunResult r = run(spec, outdir, ".");
    emit(r, outdir, c.format);
    return 0;
}

int check_line(bool ok, const std::string& what) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    return ok ? 0 : 1;
}

// Fast structural checks of a model against the reference expectations.
int quick_check(const Common& c) {
    IsingModel m = c.model.empty() ? build_reference_model() : load_model(c.model);
    int bad = 0;
    GroundSpace gs = ground_space(m);
    bad += check_line(gs.states.size() == 17 && gs.energy == -8.0 && gs.isolated.size() == 1 && gs.cluster.size() == 16,
                      "ground space 17 = 16 + 1 at -8");
    bool descent = true;
    for (State x = 0; x < m.dim(); ++x)
        descent = descent && energy(m, greedy_descent(m, SpinConfig::from_state(x, m.n()))) == gs.energy;
    bad += check_line(descent, "greedy descent reaches the ground energy from every start");
    bad += check_line(enumerate_embeddings(m).size() == 144, "144 embeddings");
    BathSpec b = default_bath();
    double kms = 0.0;
    for (double w = 0.01; w <= 100.0; w *= 1.5)
        kms = std::max(kms, std::abs(gamma(b, -w) - std::exp(-b.beta * w) * gamma(b, w)) / gamma(b, w));
    bad += check_line(kms < 1e-12, "KMS relation of the bath spectrum");
    auto ps = project_transverse(ground_projector(m), m);
    std::vector<std::pair<double, int>> want{{-4, 1}, {-2, 4}, {0, 7}, {2, 4}, {4, 1}}, got;
    for (const auto& mu : ps.multiplets) got.emplace_back(mu.value, mu.multiplicity);
    bad += check_line(got == want, "projected transverse field spectrum");
    return bad == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"annealsig: isolated-state suppression in classical and quantum annealing"};
    app.require_subcommand(1);
    Common c;

    auto* spectrum = app.add_subcommand("spectrum", "classical spectrum; --instantaneous adds the lowest quantum levels");
    add_common(spectrum, c);
    bool inst = false;
    double inst_T = 100.0;
    int levels = 7;
    spectrum->add_flag("--instantaneous", inst);
    spectrum->add_option("--levels", levels);
    spectrum->add_option("--T", inst_T, "annealing time, ns");

    auto* emb = app.add_subcommand("embeddings", "distinct K4,4 embeddings");
    add_common(emb, c);

    auto* sa = app.add_subcommand("sa", "simulated annealing (master equation or Monte Carlo)");
    add_common(sa, c);
    std::vector<std::string> rules{"metropolis"}, kinds{"exponential"};
    std::vector<double> ntot{10000};
    double dt = 0.01;
    bool mc = false;
    long reads = 1000, record_every = 100;
    sa->add_option("--rule", rules)->check(CLI::IsMember({"metropolis", "glauber"}));
    sa->add_option("--schedule", kinds)->check(CLI::IsMember({"exponential", "linear", "logarithmic", "constant"}));
    sa->add_option("--n-tot", ntot);
    sa->add_option("--dt", dt);
    sa->add_option("--record-every", record_every);
    sa->add_flag("--mc", mc, "Monte Carlo reads instead of the master equation");
    sa->add_option("--reads", reads);

    auto* qa = app.add_subcommand("qa", "quantum annealing dynamics");
    add_common(qa, c);
    std::string qengine = "wcl", coupling;
    std::vector<double> Ts;
    int steps = 0, gauges = 0;
    double delta = 0.0;
    qa->add_option("--engine", qengine)->check(CLI::IsMember({"closed", "wcl", "scl"}));
    qa->add_option("--T", Ts, "annealing times, ns");
    qa->add_option("--steps", steps);
    qa->add_option("--coupling", coupling, "sigma_z | sigma_pm (wcl), per_qubit | collective (scl)");
    qa->add_option("--delta", delta, "perturb_isolated strength");
    qa->add_option("--gauges", gauges, "random gauges, each paired with its inversion");
    std::string sched_file;
    qa->add_option("--schedule-file", sched_file, "CSV t_fraction,A_GHz,B_GHz");

    auto* pert = app.add_subcommand("perturb", "projected transverse field on the ground space");
    add_common(pert, c);

    auto* conc = app.add_subcommand("concurrence", "pair concurrence along a WCL run");
    add_common(conc, c);
    double cT = 1e4;
    std::vector<int> edge;
    conc->add_option("--T", cT);
    conc->add_option("--edge", edge)->expected(2);
    conc->add_option("--steps", steps);

    auto* sweep = app.add_subcommand("sweep", "run a JSON run spec");
    add_common(sweep, c);
    std::string spec_path;
    sweep->add_option("--spec", spec_path)->required();

    auto* check = app.add_subcommand("check", "fast structural checks; exit 4 on failure");
    add_common(check, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*spectrum) {
            json s = {{"engine", "spectrum"}};
            if (inst) s["instantaneous"] = {{"levels", levels}, {"T_ns", inst_T}};
            return execute(s, c, "spectrum");
        }
        if (*emb) return execute({{"engine", "embeddings"}}, c, "embeddings");
        if (*sa)
            return execute({{"engine", mc ? "sa-mc" : "sa-master"},
                            {"sa",
                             {{"rules", rules},
                              {"schedules", kinds},
                              {"n_tot", ntot},
                              {"dt", dt},
                              {"reads", reads},
                              {"record_every", record_every},
                              {"seeds", {c.seed}}}}},
                           c, "sa");
        if (*qa) {
            json s = {{"engine", "qa-" + qengine}, {"perturb_delta", delta}};
            if (!Ts.empty()) s["T_ns"] = Ts;
            if (steps > 0) s["steps"] = steps;
            if (!coupling.empty()) s["coupling"] = coupling;
            if (gauges > 0) s["gauges"] = {{"random", gauges}, {"seed", c.seed}};
            if (!sched_file.empty()) s["schedule"] = {{"file", fs::absolute(sched_file).string()}};
            return execute(s, c, "qa");
        }
        if (*pert) return execute({{"engine", "perturb"}}, c, "perturb");
        if (*conc) {
            json s = {{"engine", "concurrence"}, {"T_ns", cT}};
            if (!edge.empty()) s["edges"] = {{edge[0], edge[1]}};
            if (steps > 0) s["steps"] = steps;
            return execute(s, c, "concurrence");
        }
        if (*sweep) {
            json s = json::parse(read_text(spec_path));
            std::string outdir = c.out.empty() ? "annealsig_sweep" : c.out;
            RunResult r = run(s, outdir, fs::path(spec_path).parent_path().string());
            emit(r, outdir, c.format);
            return 0;
        }
        if (*check) return quick_check(c);
    } catch (const SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
