#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "annealsig/bath.hpp"
#include "annealsig/io.hpp"
#include "annealsig/ising.hpp"
#include "annealsig/sa.hpp"
#include "annealsig/schedule.hpp"
#include "annealsig/stats.hpp"

namespace annealsig {

using Gauge = std::vector<int>;  // spins flipped

// Random subsets, each spin flipped with probability 1/2. Deterministic in the seed.
std::vector<Gauge> random_gauges(int n, int count, std::uint64_t seed);
Gauge complement(const Gauge& g, int n);

// Labels (isolated, cluster) of `base` carried through the gauge.
GroundSpace gauge_labels(const GroundSpace& base, const Gauge& g, int n);

struct GaugeRecord {
    Gauge flips;
    ClusterStats direct;
    ClusterStats inverted;  // same gauge composed with full inversion
    double paired_p_s = 0.0;
    double paired_p_C = 0.0;
};

struct GaugeSweep {
    std::vector<GaugeRecord> records;
    BoxStats paired_p_s;
    BoxStats paired_p_C;
};

// engine(gauged model) returns a distribution over gauged configurations. The labels are
// those of `model` mapped through each gauge, so a perturbed engine keeps the reference
// labels of the unperturbed problem.
using GaugeEngine = std::function<Distribution(const IsingModel&)>;
GaugeSweep gauge_averaged_sweep(const IsingModel& model, const std::vector<Gauge>& gauges, const GaugeEngine& engine);

// ANNEAL_SIG_THREADS when set, else hardware concurrency; at least 1.
int worker_count();
// Runs job(k) for k in [0, count) on up to worker_count() threads. The first exception
// is rethrown after all workers stop.
void parallel_for(int count, const std::function<void(int)>& job);

BathSpec bath_from_json(const json& j);
AnnealScheduleQ schedule_from_json(const json& j, double total_ns, const std::string& base_dir);

struct RunResult {
    json manifest;
    std::vector<std::string> files;  // relative to the output directory
};

// Executes a run spec and writes CSV, SVG and manifest.json into `outdir`.
// Spec fields are described in the README; unknown engines raise SpecError.
RunResult run(const json& spec, const std::string& outdir, const std::string& base_dir = ".");

}  // namespace annealsig
