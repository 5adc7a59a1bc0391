#include "annealsig/sa.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>

#include "annealsig/errors.hpp"
#include "annealsig/io.hpp"

namespace annealsig {

void TemperatureSchedule::validate() const {
    if (!(T_f > 0.0) || !(T_i >= T_f)) throw RangeError("schedule needs T_i >= T_f > 0");
    if (n_tot < 1) throw RangeError("schedule needs n_tot >= 1");
}

double temperature_at(const TemperatureSchedule& s, long n) {
    s.validate();
    if (n < 0 || n > s.n_tot) throw RangeError("schedule step out of range");
    const double nt = static_cast<double>(s.n_tot);
    switch (s.kind) {
        case ScheduleKind::exponential:
            return s.T_i * std::pow(s.T_f / s.T_i, n / nt);
        case ScheduleKind::linear: {
            double r = (s.T_i / s.T_f - 1.0) / nt;
            return s.T_i / (n * r + 1.0);
        }
        case ScheduleKind::logarithmic: {
            double r = (s.T_i / s.T_f - 1.0) / std::log(nt + 1.0);
            return s.T_i / (std::log(n + 1.0) * r + 1.0);
        }
        case ScheduleKind::constant:
            return s.T_f;
    }
    return s.T_f;
}

double transition_weight(const UpdateRule& rule, double dE, double beta, int n_spins) {
    if (!(beta > 0.0)) throw RangeError("beta must be positive");
    if (n_spins < 1) throw RangeError("n_spins must be positive");
    double x = beta * dE;
    double w;
    if (rule.kind == RuleKind::metropolis) {
        w = x <= 0 ? 1.0 : std::exp(-x);
    } else {
        w = x > 0 ? std::exp(-x) / (1.0 + std::exp(-x)) : 1.0 / (1.0 + std::exp(x));
    }
    return rule.attempt_scale * w / n_spins;
}

ScheduleKind parse_schedule_kind(const std::string& s) {
    if (s == "exponential" || s == "exp") return ScheduleKind::exponential;
    if (s == "linear" || s == "lin") return ScheduleKind::linear;
    if (s == "logarithmic" || s == "log") return ScheduleKind::logarithmic;
    if (s == "constant") return ScheduleKind::constant;
    throw SpecError("unknown schedule kind " + s);
}

RuleKind parse_rule_kind(const std::string& s) {
    if (s == "metropolis") return RuleKind::metropolis;
    if (s == "glauber") return RuleKind::glauber;
    throw SpecError("unknown update rule " + s);
}

std::string to_string(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::exponential: return "exponential";
        case ScheduleKind::linear: return "linear";
        case ScheduleKind::logarithmic: return "logarithmic";
        case ScheduleKind::constant: return "constant";
    }
    return "?";
}

std::string to_string(RuleKind k) { return k == RuleKind::metropolis ? "metropolis" : "glauber"; }

Distribution uniform_distribution(int n) {
    std::size_t d = std::size_t{1} << n;
    return Distribution::Constant(static_cast<Eigen::Index>(d), 1.0 / static_cast<double>(d));
}

Distribution gibbs_distribution(const IsingModel& model, double beta) {
    auto e = model.energies();
    double emin = *std::min_element(e.begin(), e.end());
    Distribution p(e.size());
    for (std::size_t a = 0; a < e.size(); ++a) p[a] = std::exp(-beta * (e[a] - emin));
    return p / p.sum();
}

double total_variation(const Distribution& a, const Distribution& b) {
    return 0.5 * (a - b).cwiseAbs().sum();
}

ClassicalGenerator::ClassicalGenerator(const IsingModel& model) : n_(model.n()), dim_(model.dim()) {
    auto e = model.energies();
    cls_.resize(dim_ * n_);
    std::unordered_map<double, int> index;
    for (State a = 0; a < dim_; ++a) {
        for (int j = 0; j < n_; ++j) {
            double d = e[a ^ (State{1} << j)] - e[a];
            auto [it, fresh] = index.try_emplace(d, static_cast<int>(dE_.size()));
            if (fresh) dE_.push_back(d);
            cls_[a * n_ + j] = it->second;
        }
    }
    w_.assign(dE_.size(), 0.0);
}

void ClassicalGenerator::set_rates(const RateFunction& f) {
    for (std::size_t k = 0; k < dE_.size(); ++k) w_[k] = f(dE_[k]);
}

void ClassicalGenerator::set_rule(const UpdateRule& rule, double beta) {
    for (std::size_t k = 0; k < dE_.size(); ++k) w_[k] = transition_weight(rule, dE_[k], beta, n_);
}

void ClassicalGenerator::apply(const double* p, double* out) const {
    for (State a = 0; a < dim_; ++a) {
        double acc = 0.0;
        const int* ca = &cls_[a * n_];
        for (int j = 0; j < n_; ++j) {
            State b = a ^ (State{1} << j);
            acc += w_[cls_[b * n_ + j]] * p[b] - w_[ca[j]] * p[a];
        }
        out[a] = acc;
    }
}

Distribution ClassicalGenerator::apply(const Distribution& p) const {
    if (static_cast<std::size_t>(p.size()) != dim_) throw DimensionError("distribution has wrong size");
    Distribution out(p.size());
    apply(p.data(), out.data());
    return out;
}

Eigen::MatrixXd ClassicalGenerator::dense() const {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim_, dim_);
    for (State a = 0; a < dim_; ++a) {
        for (int j = 0; j < n_; ++j) {
            State b = a ^ (State{1} << j);
            L(b, a) += rate(a, j);
            L(a, a) -= rate(a, j);
        }
    }
    return L;
}

namespace {

struct StepWork {
    Distribution k1, k2, k3, k4, tmp;
    explicit StepWork(Eigen::Index d) : k1(d), k2(d), k3(d), k4(d), tmp(d) {}
};

void step_inplace(const ClassicalGenerator& gen, Distribution& p, double dt, Integrator integ, StepWork& w) {
    if (dt == 0.0) return;
    if (integ == Integrator::euler) {
        gen.apply(p.data(), w.k1.data());
        p += dt * w.k1;
    } else {
        gen.apply(p.data(), w.k1.data());
        w.tmp = p + 0.5 * dt * w.k1;
        gen.apply(w.tmp.data(), w.k2.data());
        w.tmp = p + 0.5 * dt * w.k2;
        gen.apply(w.tmp.data(), w.k3.data());
        w.tmp = p + dt * w.k3;
        gen.apply(w.tmp.data(), w.k4.data());
        p += (dt / 6.0) * (w.k1 + 2.0 * w.k2 + 2.0 * w.k3 + w.k4);
    }
    double lo = p.minCoeff();
    if (lo < -1e-12) {
        std::ostringstream os;
        os << "master step produced probability " << lo << "; reduce dt";
        throw StepSizeError(os.str());
    }
}

}  // namespace

Distribution master_step(const ClassicalGenerator& gen, const Distribution& p, double dt, Integrator integrator) {
    if (static_cast<std::size_t>(p.size()) != gen.dim()) throw DimensionError("distribution has wrong size");
    if (dt < 0) throw RangeError("dt must be non-negative");
    Distribution q = p;
    StepWork w(p.size());
    step_inplace(gen, q, dt, integrator, w);
    return q;
}

Distribution master_step(const IsingModel& model, const Distribution& p, const UpdateRule& rule, double beta,
                         double dt, Integrator integrator) {
    ClassicalGenerator gen(model);
    gen.set_rule(rule, beta);
    return master_step(gen, p, dt, integrator);
}

ClusterStats cluster_stats(const Distribution& dist, const GroundSpace& gs) {
    if (gs.isolated.empty()) throw UndefinedIsolated("ground space has no isolated state");
    ClusterStats c;
    for (State x : gs.isolated) c.p_s += dist[static_cast<Eigen::Index>(x)];
    c.p_s /= static_cast<double>(gs.isolated.size());
    for (State x : gs.cluster) c.p_C += dist[static_cast<Eigen::Index>(x)];
    if (!gs.cluster.empty()) c.p_C /= static_cast<double>(gs.cluster.size());
    return c;
}

MasterRun anneal_master(const IsingModel& model, const UpdateRule& rule, const TemperatureSchedule& schedule,
                        const MasterOptions& opt) {
    schedule.validate();
    if (opt.steps_per_temp < 1 || opt.record_every < 1) throw RangeError("bad master options");
    ClassicalGenerator gen(model);
    MasterRun run;
    Distribution p = opt.initial ? *opt.initial : uniform_distribution(model.n());
    if (static_cast<std::size_t>(p.size()) != gen.dim()) throw DimensionError("initial distribution has wrong size");

    GroundSpace gs = ground_space(model);
    run.has_cluster_stats = !gs.isolated.empty();
    auto record = [&](long step, double T) {
        TrajectoryPoint pt{step, T, std::nan(""), std::nan("")};
        if (run.has_cluster_stats) {
            auto c = cluster_stats(p, gs);
            pt.p_s = c.p_s;
            pt.p_C = c.p_C;
        }
        run.trajectory.push_back(pt);
    };

    StepWork w(p.size());
    const double h = opt.dt / opt.steps_per_temp;
    record(0, temperature_at(schedule, 0));
    for (long n = 0; n < schedule.n_tot; ++n) {
        double T = temperature_at(schedule, n);
        gen.set_rule(rule, 1.0 / T);
        for (int k = 0; k < opt.steps_per_temp; ++k) step_inplace(gen, p, h, opt.integrator, w);
        if ((n + 1) % opt.record_every == 0 || n + 1 == schedule.n_tot) record(n + 1, T);
    }
    run.final = p;
    return run;
}

std::string trajectory_csv(const std::vector<TrajectoryPoint>& traj) {
    std::ostringstream os;
    os << "step,temperature,p_s,p_C\n";
    for (const auto& t : traj)
        os << t.step << "," << fmt_double(t.temperature) << "," << fmt_double(t.p_s) << "," << fmt_double(t.p_C)
           << "\n";
    return os.str();
}

McRun anneal_mc(const IsingModel& model, const UpdateRule& rule, const TemperatureSchedule& schedule, long n_reads,
                std::uint64_t seed, const McOptions& opt) {
    schedule.validate();
    if (n_reads < 1) throw RangeError("n_reads must be at least 1");
    const int n = model.n();
    ClassicalGenerator gen(model);
    const std::size_t d = gen.dim();
    if (opt.start && *opt.start >= d) throw DimensionError("start state out of range");

    // Acceptance of a chosen spin, per schedule step and energy-change class.
    std::vector<std::vector<double>> accept(schedule.n_tot);
    for (long s = 0; s < schedule.n_tot; ++s) {
        gen.set_rule(rule, 1.0 / temperature_at(schedule, s));
        accept[s] = gen.class_rates();
        for (double& a : accept[s]) a *= n;
    }
    std::vector<int> cls(d * n);
    for (State a = 0; a < d; ++a)
        for (int j = 0; j < n; ++j) cls[a * n + j] = gen.rate_class(a, j);

    McRun run;
    run.n_reads = n_reads;
    run.counts.assign(d, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_int_distribution<State> any(0, d - 1);
    for (long r = 0; r < n_reads; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
        std::mt19937_64 rng(seq);
        State x = opt.start ? *opt.start : any(rng);
        for (long s = 0; s < schedule.n_tot; ++s) {
            int j = pick(rng);
            if (unit(rng) < accept[s][cls[x * n + j]]) x ^= State{1} << j;
        }
        ++run.counts[x];
    }
    run.empirical = Distribution(d);
    for (std::size_t a = 0; a < d; ++a) run.empirical[a] = static_cast<double>(run.counts[a]) / n_reads;
    return run;
}

ReducedState reduced_state(const Distribution& dist, const IsingModel& model) {
    auto gs = ground_space(model);
    auto c = cluster_stats(dist, gs);
    auto e = model.energies();
    ReducedState r{c.p_s, c.p_C, 0.0, 0.0};
    int ne = 0, n0 = 0;
    for (std::size_t a = 0; a < e.size(); ++a) {
        if (std::abs(e[a] - (gs.energy + 4.0)) < 1e-9) {
            r.p_e += dist[a];
            ++ne;
        } else if (std::abs(e[a] - (gs.energy + 8.0)) < 1e-9) {
            r.p_0 += dist[a];
            ++n0;
        }
    }
    if (ne) r.p_e /= ne;
    if (n0) r.p_0 /= n0;
    return r;
}

ReducedRates reduced_derivative(const ReducedState& s, const RateFunction& f, bool dominant) {
    ReducedRates r;
    r.ds = 8.0 * f(-4.0) * s.p_e - 8.0 * f(4.0) * s.p_s;
    r.dC = 2.0 * (f(-4.0) * s.p_e - f(4.0) * s.p_C);
    if (!dominant) r.dC += 2.0 * (f(-8.0) * s.p_0 - f(8.0) * s.p_C);
    return r;
}

ReducedState reduced_step(const ReducedState& s, const RateFunction& f, double dt, bool dominant) {
    auto at = [&](double ps, double pc) {
        ReducedState t = s;
        t.p_s = ps;
        t.p_C = pc;
        return reduced_derivative(t, f, dominant);
    };
    auto k1 = at(s.p_s, s.p_C);
    auto k2 = at(s.p_s + 0.5 * dt * k1.ds, s.p_C + 0.5 * dt * k1.dC);
    auto k3 = at(s.p_s + 0.5 * dt * k2.ds, s.p_C + 0.5 * dt * k2.dC);
    auto k4 = at(s.p_s + dt * k3.ds, s.p_C + dt * k3.dC);
    ReducedState out = s;
    out.p_s += dt / 6.0 * (k1.ds + 2 * k2.ds + 2 * k3.ds + k4.ds);
    out.p_C += dt / 6.0 * (k1.dC + 2 * k2.dC + 2 * k3.dC + k4.dC);
    return out;
}

}  // namespace annealsig
