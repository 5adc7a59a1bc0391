#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "annealsig/errors.hpp"
#include "annealsig/harness.hpp"
#include "annealsig/stats.hpp"

using namespace annealsig;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("annealsig_unit_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("box statistics") {
    BoxStats b = box_stats({5, 1, 4, 2, 3});
    CHECK(b.median == 3.0);
    CHECK(b.lower_quartile == 2.0);
    CHECK(b.upper_quartile == 4.0);
    CHECK(b.whisker_low == 1.0);
    CHECK(b.whisker_high == 5.0);
    CHECK(b.outliers.empty());

    BoxStats one = box_stats({0.25});
    CHECK(one.median == 0.25);
    CHECK(one.whisker_low == 0.25);
    CHECK(one.whisker_high == 0.25);

    BoxStats o = box_stats({1, 1, 1, 1, 100});
    CHECK(o.median == 1.0);
    CHECK(o.outliers == std::vector<double>{100});
    CHECK(o.whisker_high == 1.0);

    // even count: midpoint between neighbours
    CHECK(quantile({1, 2, 3, 4}, 0.5) == 2.5);
    CHECK(quantile({1, 2, 3, 4}, 0.25) == 1.5);
    CHECK_THROWS_AS(box_stats({}), RangeError);
    CHECK_THROWS_AS(box_stats({1.0, std::nan("")}), RangeError);
}

TEST_CASE("gauges are deterministic and complement is an involution") {
    auto a = random_gauges(8, 20, 42), b = random_gauges(8, 20, 42), c = random_gauges(8, 20, 43);
    CHECK(a == b);
    CHECK(a != c);
    for (const auto& g : a) {
        CHECK(complement(complement(g, 8), 8) == g);
        CHECK(g.size() + complement(g, 8).size() == 8);
    }
    GroundSpace base = ground_space(build_reference_model());
    GroundSpace lab = gauge_labels(base, {0, 7}, 8);
    CHECK(lab.isolated == std::vector<State>{255 ^ 0x81});
    CHECK(lab.cluster.size() == 16);
}

TEST_CASE("a gauge-covariant engine gives identical statistics in every gauge") {
    IsingModel m = build_reference_model();
    TemperatureSchedule s{ScheduleKind::exponential, 10.0, 0.35, 200};
    MasterOptions o;
    o.dt = 0.05;
    GaugeEngine eng = [&](const IsingModel& g) { return anneal_master(g, {RuleKind::metropolis}, s, o).final; };
    auto gauges = random_gauges(8, 6, 1);
    gauges.insert(gauges.begin(), Gauge{});
    GaugeSweep sw = gauge_averaged_sweep(m, gauges, eng);
    const double ref = sw.records[0].direct.p_s;
    CHECK(ref > 0);
    for (const auto& r : sw.records) {
        CHECK(r.direct.p_s == doctest::Approx(ref).epsilon(1e-10));
        CHECK(r.inverted.p_s == doctest::Approx(ref).epsilon(1e-10));
    }
    CHECK(sw.paired_p_s.median == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("pairing with the inverted gauge cancels a fixed-state bias") {
    IsingModel m = build_reference_model();
    // engine that always lands in the all-down configuration
    GaugeEngine biased = [](const IsingModel&) {
        Distribution d = Distribution::Zero(256);
        d[255] = 1.0;
        return d;
    };
    GaugeSweep sw = gauge_averaged_sweep(m, {Gauge{}}, biased);
    CHECK(sw.records[0].direct.p_s == 1.0);
    CHECK(sw.records[0].inverted.p_s == 0.0);
    CHECK(sw.records[0].paired_p_s == 0.5);
    CHECK_THROWS_AS(gauge_averaged_sweep(m, {}, biased), RangeError);
}

TEST_CASE("worker count honours the environment") {
    setenv("ANNEAL_SIG_THREADS", "3", 1);
    CHECK(worker_count() == 3);
    std::vector<int> hit(50, 0);
    parallel_for(50, [&](int k) { hit[k] += 1; });
    CHECK(std::count(hit.begin(), hit.end(), 1) == 50);
    CHECK_THROWS_AS(parallel_for(10, [](int k) { if (k == 7) throw RangeError("boom"); }), RangeError);
    setenv("ANNEAL_SIG_THREADS", "0", 1);
    CHECK(worker_count() >= 1);
    unsetenv("ANNEAL_SIG_THREADS");
}

TEST_CASE("run: spectrum, embeddings, perturb") {
    fs::path d = scratch("spec");
    RunResult r = run({{"engine", "spectrum"}}, d.string());
    CHECK(read_text((d / "spectrum.csv").string()).rfind("energy,multiplicity\n-8,17\n", 0) == 0);
    CHECK(fs::exists(d / "manifest.json"));
    CHECK(r.manifest["results"]["ground_degeneracy"] == 17);

    RunResult e = run({{"engine", "embeddings"}}, scratch("emb").string());
    CHECK(e.manifest["results"]["count"] == 144);
    CHECK(e.manifest["results"]["assignments"] == 1152);

    RunResult p = run({{"engine", "perturb"}}, scratch("pert").string());
    CHECK(p.manifest["results"]["rank"] == 17);
}

TEST_CASE("run: repeated SA sweeps are byte-identical") {
    json spec = {{"engine", "sa-master"},
                 {"sa", {{"rules", {"metropolis", "glauber"}}, {"n_tot", {100, 300}}, {"dt", 0.05}}},
                 {"gauges", {{"identity", true}, {"random", 2}, {"seed", 5}}}};
    fs::path a = scratch("det_a"), b = scratch("det_b");
    RunResult ra = run(spec, a.string()), rb = run(spec, b.string());
    REQUIRE(ra.files == rb.files);
    CHECK(!ra.files.empty());
    for (const auto& f : ra.files)
        if (fs::path(f).extension() == ".csv") CHECK(read_text((a / f).string()) == read_text((b / f).string()));
    CHECK(fs::exists(a / "box_p_s.svg"));
}

TEST_CASE("run: spec errors") {
    fs::path d = scratch("err");
    CHECK_THROWS_AS(run({{"engine", "nonsense"}}, d.string()), SpecError);
    CHECK_THROWS_AS(run(json::array(), d.string()), SpecError);
    CHECK_THROWS_AS(run({{"engine", "spectrum"}, {"model_file", "missing.json"}}, d.string()), SpecError);
    CHECK_THROWS_AS(run({{"engine", "sa-master"}, {"gauges", {{9}}}}, d.string()), RangeError);
    CHECK_THROWS_AS(bath_from_json({{"beta", -1.0}}), RangeError);
    CHECK_THROWS_AS(schedule_from_json({{"kind", "cubic"}}, 10.0, "."), SpecError);
}
