// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned below.
// Usage: acceptance [--outdir DIR] [--only N[,N...]]
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annealsig/bath.hpp"
#include "annealsig/embedding.hpp"
#include "annealsig/entanglement.hpp"
#include "annealsig/harness.hpp"
#include "annealsig/io.hpp"
#include "annealsig/ising.hpp"
#include "annealsig/perturbation.hpp"
#include "annealsig/quantum.hpp"
#include "annealsig/sa.hpp"
#include "annealsig/scl.hpp"
#include "annealsig/svg.hpp"

using namespace annealsig;
namespace fs = std::filesystem;

namespace {

// pinned tolerances
constexpr double kDetailedBalanceTol = 1e-12;
constexpr double kStationaryTol = 1e-10;
constexpr double kGibbsTvTol = 1e-8;
constexpr double kReductionTol = 1e-12;
constexpr double kKmsTol = 1e-12;
constexpr double kEnhancementTol = 1e-10;
constexpr double kClosedPsMax = 0.01;
constexpr double kClosedPcMin = 0.05;
constexpr double kOracleAgreement = 1e-6;
constexpr double kFlatFraction = 0.30;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kResidualRatioLo = 3.5, kResidualRatioHi = 4.5;
constexpr double kGapClosedRel = 1e-9;
constexpr double kBandSlack = 1e-5;  // integrator accuracy of the WCL state
constexpr double kExcursion = 0.05;
constexpr double kGaugeExact = 1e-10;    // classical master equation
constexpr double kGaugeQuantum = 1e-7;   // eigensolver and integrator roundoff

const std::vector<double> kTGrid{1e4, 3.16227766016838e4, 1e5, 3.16227766016838e5, 1e6};
const std::vector<long> kStepGrid{10000, 31623, 100000, 316228, 1000000};
constexpr double kDelta = 0.05;

struct Report {
    int failed = 0;
    int run = 0;
    void line(int id, bool ok, const std::string& what, const std::string& detail) {
        ++run;
        if (!ok) ++failed;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << what << " | " << detail << std::endl;
    }
    void info(int id, const std::string& text) { std::cout << "INFO [" << id << "] " << text << std::endl; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<RuleKind> kRules{RuleKind::metropolis, RuleKind::glauber};
const std::vector<ScheduleKind> kSchedules{ScheduleKind::exponential, ScheduleKind::linear, ScheduleKind::logarithmic};

// ---- shared engines -------------------------------------------------------------------

MasterRun sa_run(const IsingModel& m, RuleKind r, ScheduleKind k, long n_tot, long record_every) {
    TemperatureSchedule s{k, 10.0, 0.35, n_tot};
    MasterOptions o;
    o.dt = 0.01;
    o.record_every = record_every;
    return anneal_master(m, {r}, s, o);
}

struct EnhancementOutcome {
    bool ok = true;
    double worst_step = 1.0;  // min over recorded steps of p_s - p_C
    std::vector<double> finals;  // p_s per (rule, schedule, n_tot)
    std::string detail;
};

// Criterion 5 on one (possibly gauged) model; labels are the remapped reference labels.
EnhancementOutcome enhancement(const IsingModel& m, const GroundSpace& labels) {
    EnhancementOutcome out;
    std::ostringstream os;
    for (auto r : kRules)
        for (auto k : kSchedules) {
            std::vector<double> gaps;
            for (long n : {100L, 1000L, 10000L}) {
                MasterRun run = sa_run(m, r, k, n, n == 10000 ? 1 : n);
                if (n == 10000) {
                    for (const auto& p : run.trajectory) out.worst_step = std::min(out.worst_step, p.p_s - p.p_C);
                }
                ClusterStats c = cluster_stats(run.final, labels);
                gaps.push_back(c.p_s - c.p_C);
                out.finals.push_back(c.p_s);
                out.finals.push_back(c.p_C);
            }
            bool grows = gaps[0] < gaps[1] && gaps[1] < gaps[2];
            bool final_ok = gaps[2] > kEnhancementTol;
            if (!grows || !final_ok) {
                out.ok = false;
                os << to_string(r) << "/" << to_string(k) << " gaps " << num(gaps[0]) << "," << num(gaps[1]) << ","
                   << num(gaps[2]) << "; ";
            }
        }
    if (out.worst_step < -kEnhancementTol) out.ok = false;
    os << "min step gap " << num(out.worst_step);
    out.detail = os.str();
    return out;
}

ClusterStats closed_stats(const IsingModel& m, const GroundSpace& labels) {
    ClosedResult r = evolve_closed(m, AnnealScheduleQ::linear(100.0));
    return cluster_stats(r.populations, labels);
}

std::vector<double> wcl_curve(const IsingModel& m, const GroundSpace& labels) {
    std::vector<double> ps;
    for (double T : kTGrid) {
        WclOptions o;
        o.labels = labels;
        o.record_every = o.n_steps;
        ps.push_back(evolve_wcl(m, AnnealScheduleQ::linear(T), default_bath(), o).trajectory.back().p_s);
    }
    return ps;
}

double total_variation_of(const std::vector<double>& y) {
    double tv = 0;
    for (std::size_t k = 1; k < y.size(); ++k) tv += std::abs(y[k] - y[k - 1]);
    return tv;
}

bool non_decreasing(const std::vector<double>& y) {
    for (std::size_t k = 1; k < y.size(); ++k)
        if (y[k] < y[k - 1] - kMonotoneSlack) return false;
    return true;
}

bool non_increasing(const std::vector<double>& y) {
    for (std::size_t k = 1; k < y.size(); ++k)
        if (y[k] > y[k - 1] + kMonotoneSlack) return false;
    return true;
}

std::string list(const std::vector<double>& y) {
    std::string s;
    for (std::size_t k = 0; k < y.size(); ++k) s += (k ? "," : "") + num(y[k]);
    return s;
}

struct TrendOutcome {
    std::vector<double> ideal, perturbed;
    std::map<RuleKind, std::vector<double>> sa;
    bool ideal_ok = false, flat_ok = false, sa_ok = true;
    double rise = 0, tv = 0;
};

TrendOutcome trend(const IsingModel& m, const GroundSpace& labels, const std::vector<RuleKind>& rules) {
    TrendOutcome t;
    t.ideal = wcl_curve(m, labels);
    t.perturbed = wcl_curve(perturb_isolated(m, kDelta), labels);
    t.rise = t.ideal.back() - t.ideal.front();
    t.tv = total_variation_of(t.perturbed);
    t.ideal_ok = non_decreasing(t.ideal) && t.rise > 0;
    t.flat_ok = t.tv < kFlatFraction * t.rise;
    for (auto r : rules) {
        std::vector<double> ps;
        for (long n : kStepGrid)
            ps.push_back(cluster_stats(sa_run(m, r, ScheduleKind::exponential, n, n).final, labels).p_s);
        t.sa_ok = t.sa_ok && non_increasing(ps);
        t.sa[r] = ps;
    }
    return t;
}

// ---- independent closed-system oracle -------------------------------------------------
// Classical RK4 on the Schrodinger equation with a hand-rolled sparse H: diagonal Ising
// term plus single flips. Starts from the uniform superposition.
Distribution rk4_closed_oracle(const IsingModel& m, double T, int steps) {
    using cd = std::complex<double>;
    const int n = m.n();
    const int d = 1 << n;
    std::vector<double> E(d);
    for (int x = 0; x < d; ++x) {
        double e = 0;
        for (int j = 0; j < n; ++j) e -= m.h()[j] * ((x >> j & 1) ? -1.0 : 1.0);
        for (const auto& c : m.couplings())
            e -= c.J * ((x >> c.i & 1) ? -1.0 : 1.0) * ((x >> c.j & 1) ? -1.0 : 1.0);
        E[x] = e;
    }
    const double twopi = 2 * std::acos(-1.0);
    auto deriv = [&](double t, const std::vector<cd>& psi, std::vector<cd>& out) {
        double s = t / T, A = 10.0 * (1 - s), B = 5.3 * s;
        for (int x = 0; x < d; ++x) {
            cd acc = B * E[x] * psi[x];
            for (int j = 0; j < n; ++j) acc -= A * psi[x ^ (1 << j)];
            out[x] = cd(0, -twopi) * acc;
        }
    };
    std::vector<cd> psi(d, cd(1.0 / std::sqrt(double(d)), 0)), k1(d), k2(d), k3(d), k4(d), tmp(d);
    const double h = T / steps;
    for (int k = 0; k < steps; ++k) {
        double t = k * h;
        deriv(t, psi, k1);
        for (int x = 0; x < d; ++x) tmp[x] = psi[x] + 0.5 * h * k1[x];
        deriv(t + 0.5 * h, tmp, k2);
        for (int x = 0; x < d; ++x) tmp[x] = psi[x] + 0.5 * h * k2[x];
        deriv(t + 0.5 * h, tmp, k3);
        for (int x = 0; x < d; ++x) tmp[x] = psi[x] + h * k3[x];
        deriv(t + h, tmp, k4);
        for (int x = 0; x < d; ++x) psi[x] += h / 6 * (k1[x] + 2.0 * k2[x] + 2.0 * k3[x] + k4[x]);
    }
    Distribution p(d);
    for (int x = 0; x < d; ++x) p[x] = std::norm(psi[x]);
    return p;
}

// ---- criteria ---------------------------------------------------------------------------

void c1(Report& rep) {
    auto t0 = std::chrono::steady_clock::now();
    GroundSpace gs = ground_space(build_reference_model());
    bool ok = gs.energy == -8.0 && gs.states.size() == 17 && gs.cluster.size() == 16 && gs.isolated.size() == 1 &&
              gs.isolated[0] == 255;
    double el = seconds_since(t0);
    rep.line(1, ok && el < 1.0, "ground space 17 = 16 + 1 at -8",
             "E0 " + num(gs.energy) + ", states " + std::to_string(gs.states.size()) + ", cluster " +
                 std::to_string(gs.cluster.size()) + ", " + num(el) + " s");
}

void c2(Report& rep) {
    auto e = build_core_ancilla_pair().energies();
    // (up,up) (down,up) (up,down) (down,down) in bit order
    std::vector<double> got(e.begin(), e.end()), want{-1, 3, -1, -1};
    rep.line(2, got == want, "core-ancilla pair spectrum", list(got));
}

void c3(Report& rep) {
    auto t0 = std::chrono::steady_clock::now();
    IsingModel m = build_reference_model();
    int stuck = 0;
    for (State x = 0; x < 256; ++x)
        if (energy(m, greedy_descent(m, SpinConfig::from_state(x, 8))) != -8.0) ++stuck;
    double el = seconds_since(t0);
    rep.line(3, stuck == 0 && el < 1.0, "no local minima", std::to_string(stuck) + " stuck starts, " + num(el) + " s");
}

void c4(Report& rep) {
    auto n = enumerate_embeddings(build_reference_model()).size();
    rep.line(4, n == 144, "distinct embeddings", std::to_string(n));
}

void c5(Report& rep) {
    IsingModel m = build_reference_model();
    auto e = enhancement(m, ground_space(m));
    rep.line(5, e.ok, "classical enhancement p_s >= p_C, gap grows 1e2 -> 1e3 -> 1e4", e.detail);
}

void c6(Report& rep) {
    IsingModel m = build_reference_model();
    double db = 0, st = 0, tv = 0;
    for (auto r : kRules)
        for (double beta : {0.1, 1.0, 1 / 0.35}) {
            ClassicalGenerator gen(m);
            gen.set_rule({r}, beta);
            Eigen::MatrixXd L = gen.dense();
            Distribution pi = gibbs_distribution(m, beta);
            for (int a = 0; a < 256; ++a)
                for (int b = 0; b < 256; ++b) db = std::max(db, std::abs(L(b, a) * pi[a] - L(a, b) * pi[b]));
            st = std::max(st, gen.apply(pi).cwiseAbs().maxCoeff());
        }
    for (auto r : kRules) {
        TemperatureSchedule s{ScheduleKind::constant, 2.0, 2.0, 4000};
        MasterOptions o;
        o.dt = 1.0;
        o.steps_per_temp = 4;
        o.record_every = 4000;
        tv = std::max(tv, total_variation(anneal_master(m, {r}, s, o).final, gibbs_distribution(m, 0.5)));
    }
    rep.line(6, db < kDetailedBalanceTol && st < kStationaryTol && tv < kGibbsTvTol,
             "detailed balance, stationarity, convergence to Gibbs",
             "balance " + num(db) + ", stationarity " + num(st) + ", TV " + num(tv));
}

void c7(Report& rep) {
    BathSpec b = default_bath();
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0;
    int models = 0;
    for (int n = 1; n <= 3; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> h(n);
            for (auto& x : h) x = u(rng);
            std::vector<Coupling> c;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) c.push_back({i, j, u(rng)});
            if (trial == 0) {
                std::fill(h.begin(), h.end(), 1.0);
                for (auto& k : c) k.J = 1.0;
            }
            IsingModel m(n, h, c);
            AnnealScheduleQ sched = AnnealScheduleQ::linear(100.0);
            Eigen::MatrixXd R = diagonal_reduction(hamiltonian_at(m, sched, 100.0), n, b);
            const double scale = kTwoPi * sched.B(100.0);
            ClassicalGenerator gen(m);
            gen.set_rates([&](double dE) { return gamma(b, -scale * dE); });
            worst = std::max(worst, (R - gen.dense()).cwiseAbs().maxCoeff());
            ++models;
        }
    rep.line(7, worst < kReductionTol, "diagonal reduction of the sigma_pm generator equals the SA generator",
             std::to_string(models) + " models, max entry diff " + num(worst));
}

void c8(Report& rep) {
    double worst = 0;
    for (double beta : {0.1, 1.0, 10.0}) {
        BathSpec b = default_bath();
        b.beta = beta;
        for (int k = 0; k <= 40; ++k) {
            double w = 0.01 * std::pow(10.0, k / 10.0);
            double g = gamma(b, w), gm = gamma(b, -w);
            if (g > 0) worst = std::max(worst, std::abs(gm - std::exp(-beta * w) * g) / std::max(gm, std::exp(-beta * w) * g));
        }
    }
    rep.line(8, worst < kKmsTol, "KMS relation", "max relative violation " + num(worst));
}

void c9(Report& rep) {
    IsingModel m = build_reference_model();
    GroundSpace gs = ground_space(m);
    ClusterStats c = closed_stats(m, gs);
    // h |H| ~ 0.04; coarser RK4 steps visibly damp the norm
    Distribution oracle = rk4_closed_oracle(m, 100.0, 2000000);
    ClusterStats o = cluster_stats(oracle, gs);
    bool ok = c.p_s < kClosedPsMax && c.p_C > kClosedPcMin && o.p_s < kClosedPsMax && o.p_C > kClosedPcMin &&
              std::abs(c.p_s - o.p_s) < kOracleAgreement && std::abs(c.p_C - o.p_C) < kOracleAgreement;
    rep.line(9, ok, "closed-system suppression at T = 100 ns",
             "p_s " + num(c.p_s) + ", p_C " + num(c.p_C) + "; rk4 oracle p_s " + num(o.p_s) + ", p_C " + num(o.p_C));
}

void c10(Report& rep) {
    IsingModel m = build_reference_model();
    TrendOutcome t = trend(m, ground_space(m), kRules);
    std::string sa;
    for (auto& [r, ps] : t.sa) sa += to_string(r) + " [" + list(ps) + "] ";
    rep.line(10, t.ideal_ok && t.flat_ok && t.sa_ok, "WCL p_s rises with T, flat when perturbed; SA p_s falls",
             "ideal [" + list(t.ideal) + "], perturbed [" + list(t.perturbed) + "], TV/rise " + num(t.tv / t.rise) +
                 ", SA " + sa);
}

void c11(Report& rep) {
    IsingModel m = build_reference_model();
    SclResult r = evolve_scl(m, AnnealScheduleQ::linear(100.0), default_bath());
    const auto& f = r.trajectory.back();
    rep.line(11, f.p_s >= f.p_C, "SCL final p_s >= p_C", "p_s " + num(f.p_s) + ", p_C " + num(f.p_C));
}

void c12(Report& rep) {
    IsingModel m = build_reference_model();
    PerturbationSpectrum s = project_transverse(ground_projector(m), m);
    std::vector<std::pair<double, int>> got, want{{-4, 1}, {-2, 4}, {0, 7}, {2, 4}, {4, 1}};
    for (const auto& mu : s.multiplets) got.emplace_back(mu.value, mu.multiplicity);
    bool confined = true;
    for (int k = 0; k < 17; ++k)
        if (s.isolated_overlap[k] > 1e-12 && std::abs(s.eigenvalues[k]) > 1e-12) confined = false;
    double r1 = first_order_residual(m, 0.02), r2 = first_order_residual(m, 0.01);
    double ratio = r1 / r2;
    rep.line(12, got == want && confined && ratio > kResidualRatioLo && ratio < kResidualRatioHi,
             "projected transverse field spectrum and first-order agreement",
             std::string(got == want ? "multiplets exact" : "multiplets differ") + ", isolated overlap on 0: " +
                 (confined ? "yes" : "no") + ", residual " + num(r1) + " -> " + num(r2) + " (ratio " + num(ratio) +
                 ")");
}

void c13(Report& rep, const fs::path& outdir) {
    IsingModel m = build_reference_model();
    const State iso = ground_space(m).isolated.front();
    const double T = 100.0;
    AnnealScheduleQ sched = AnnealScheduleQ::linear(T);
    const int levels = 7, points = 71;
    std::ostringstream csv;
    csv << "t_fraction";
    for (int k = 0; k < levels; ++k) csv << ",E" << k << "_GHz";
    csv << ",isolated_level\n";
    std::vector<Series> series(levels);
    for (int k = 0; k < levels; ++k) series[k].label = "E" + std::to_string(k);
    Series marker{"isolated", {}, {}};
    bool highest = true;
    double first_highest_miss = -1;
    std::set<int> seen_late;
    double gap_end = 0, e0_end = 0;
    std::vector<double> late_gaps;
    for (int p = 0; p < points; ++p) {
        double f = 0.3 + 0.7 * p / (points - 1);
        auto sp = instantaneous_spectrum(m, sched, f * T, levels);
        Eigen::Index idx;
        sp.basis.row(static_cast<Eigen::Index>(iso)).cwiseAbs2().maxCoeff(&idx);
        csv << fmt_double(f);
        for (int k = 0; k < levels; ++k) {
            csv << ',' << fmt_double(sp.energies[k] / kTwoPi);
            series[k].x.push_back(f);
            series[k].y.push_back(sp.energies[k] / kTwoPi);
        }
        csv << ',' << idx << '\n';
        marker.x.push_back(f);
        marker.y.push_back(sp.energies[idx] / kTwoPi);
        // at t = T the 17 ground states are degenerate and the index is arbitrary
        if (f >= 0.5 - 1e-12 && p < points - 1) {
            seen_late.insert(int(idx));
            if (idx != levels - 1 && highest) {
                highest = false;
                first_highest_miss = f;
            }
        }
        double gap = sp.energies[idx] - sp.energies[0];
        if (f >= 0.9 - 1e-12) late_gaps.push_back(gap);
        gap_end = gap;
        e0_end = sp.energies[0];
    }
    fs::create_directories(outdir);
    write_text((outdir / "instantaneous_spectrum.csv").string(), csv.str());
    series.push_back(marker);
    write_text((outdir / "instantaneous_spectrum.svg").string(),
               line_plot_svg({"lowest levels of H(t)", "t/T", "E (GHz)"}, series));
    bool closing = std::abs(gap_end) < kGapClosedRel * std::abs(e0_end) && non_increasing(late_gaps);
    std::string idxs;
    for (int i : seen_late) idxs += (idxs.empty() ? "" : ",") + std::to_string(i);
    rep.line(13, highest && closing, "isolated-overlap level highest of the lowest 7 for 0.5 <= t/T < 1, gap closes at T",
             "isolated level index for 0.5 <= t/T < 1: {" + idxs + "}" +
                 (highest ? "" : ", first miss at t/T " + num(first_highest_miss)) + ", final gap " + num(gap_end) +
                 " rad/ns, csv+svg in " + outdir.string());
    if (!highest)
        rep.info(13, "the isolated level sits at index " + idxs +
                         " (highest of the lowest 6): second-order shifts put it below the six-fold zero multiplet");
}

void c14(Report& rep) {
    // exact two-qubit references
    Eigen::Vector4cd bell(1, 0, 0, 1);
    bell /= std::sqrt(2.0);
    Eigen::Vector4cd prod(0, 1, 0, 0);
    double cb = concurrence(bell * bell.adjoint()), cp = concurrence(prod * prod.adjoint());
    bool exact = std::abs(cb - 1.0) < 1e-12 && std::abs(cp) < 1e-12;

    IsingModel m = build_reference_model();
    WclOptions o;
    o.record_every = 10;
    const double T = 1e4;
    int excursions = 0, adjacent = 0, too_far = 0, points = 0;
    double worst = 0;
    for (auto e : std::vector<std::array<int, 2>>{{0, 4}, {0, 1}}) {
        ConcurrenceCurves c = baseline_curves(m, AnnealScheduleQ::linear(T), default_bath(), e[0], e[1], o);
        bool prev_out = false;
        for (std::size_t k = 0; k < c.t.size(); ++k) {
            ++points;
            double lo = std::min(c.ground[k], c.gibbs[k]), hi = std::max(c.ground[k], c.gibbs[k]);
            double dev = std::max({0.0, lo - c.trajectory[k], c.trajectory[k] - hi});
            bool out = dev > kBandSlack;
            if (out) {
                ++excursions;
                worst = std::max(worst, dev);
                if (prev_out) ++adjacent;
                if (dev > kExcursion * std::max(hi, kBandSlack)) ++too_far;
            }
            prev_out = out;
        }
    }
    rep.line(14, exact && adjacent == 0 && too_far == 0,
             "concurrence: Bell 1, product 0; WCL curve between ground and Gibbs",
             "Bell " + num(cb) + ", product " + num(cp) + "; " + std::to_string(excursions) + " excursions of " +
                 std::to_string(points) + " points, worst " + num(worst));
}

void c15(Report& rep) {
    IsingModel m = build_reference_model();
    GroundSpace base = ground_space(m);
    auto gauges = random_gauges(8, 20, 20240601);
    gauges.push_back(complement({}, 8));  // full inversion

    auto ref5 = enhancement(m, base);
    ClusterStats ref9 = closed_stats(m, base);
    TrendOutcome ref10 = trend(m, base, {RuleKind::metropolis});

    int hold = 0, identical = 0;
    double d5 = 0, d9 = 0, d10q = 0, d10c = 0;
    for (const auto& g : gauges) {
        IsingModel mg = apply_gauge(m, g);
        GroundSpace lab = gauge_labels(base, g, 8);
        auto e5 = enhancement(mg, lab);
        ClusterStats c9 = closed_stats(mg, lab);
        TrendOutcome t10 = trend(mg, lab, {RuleKind::metropolis});
        bool ok9 = c9.p_s < kClosedPsMax && c9.p_C > kClosedPcMin;
        if (e5.ok && ok9 && t10.ideal_ok && t10.flat_ok && t10.sa_ok) ++hold;

        double a = 0, b = 0, q = 0, s = 0;
        for (std::size_t k = 0; k < e5.finals.size(); ++k) a = std::max(a, std::abs(e5.finals[k] - ref5.finals[k]));
        b = std::max(std::abs(c9.p_s - ref9.p_s), std::abs(c9.p_C - ref9.p_C));
        for (std::size_t k = 0; k < kTGrid.size(); ++k) {
            q = std::max({q, std::abs(t10.ideal[k] - ref10.ideal[k]), std::abs(t10.perturbed[k] - ref10.perturbed[k])});
            s = std::max(s, std::abs(t10.sa[RuleKind::metropolis][k] - ref10.sa[RuleKind::metropolis][k]));
        }
        d5 = std::max(d5, a);
        d9 = std::max(d9, b);
        d10q = std::max(d10q, q);
        d10c = std::max(d10c, s);
        if (a < kGaugeExact && s < kGaugeExact && b < kGaugeQuantum && q < kGaugeQuantum) ++identical;
    }
    const int total = static_cast<int>(gauges.size());
    rep.line(15, hold == total && identical == total, "criteria 5, 9, 10 under 20 random gauges and full inversion",
             std::to_string(hold) + "/" + std::to_string(total) + " hold, " + std::to_string(identical) +
                 " identical; max diff SA " + num(std::max(d5, d10c)) + ", closed " + num(d9) + ", WCL " + num(d10q));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::string outdir = "acceptance_out";
    std::vector<int> only;
    app.add_option("--outdir", outdir);
    app.add_option("--only", only)->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    Report rep;
    std::vector<std::pair<int, std::function<void()>>> all{
        {1, [&] { c1(rep); }},   {2, [&] { c2(rep); }},   {3, [&] { c3(rep); }},
        {4, [&] { c4(rep); }},   {5, [&] { c5(rep); }},   {6, [&] { c6(rep); }},
        {7, [&] { c7(rep); }},   {8, [&] { c8(rep); }},   {9, [&] { c9(rep); }},
        {10, [&] { c10(rep); }}, {11, [&] { c11(rep); }}, {12, [&] { c12(rep); }},
        {13, [&] { c13(rep, outdir); }}, {14, [&] { c14(rep); }}, {15, [&] { c15(rep); }}};
    for (auto& [id, f] : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        auto t0 = std::chrono::steady_clock::now();
        try {
            f();
        } catch (const std::exception& e) {
            rep.line(id, false, "criterion raised", e.what());
        }
        rep.info(id, "elapsed " + num(seconds_since(t0)) + " s");
    }
    std::cout << rep.run - rep.failed << "/" << rep.run << " criteria passed" << std::endl;
    return rep.failed == 0 ? 0 : 1;
}
