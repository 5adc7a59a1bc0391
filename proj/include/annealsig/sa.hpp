#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "annealsig/ising.hpp"

namespace annealsig {

using Distribution = Eigen::VectorXd;

enum class ScheduleKind { exponential, linear, logarithmic, constant };

struct TemperatureSchedule {
    ScheduleKind kind = ScheduleKind::exponential;
    double T_i = 10.0;
    double T_f = 0.35;
    long n_tot = 10000;
    void validate() const;
};

double temperature_at(const TemperatureSchedule& s, long n);

enum class RuleKind { metropolis, glauber };

struct UpdateRule {
    RuleKind kind = RuleKind::metropolis;
    double attempt_scale = 1.0;
};

// Probability of flipping one chosen spin, dE = E_target - E_source.
double transition_weight(const UpdateRule& rule, double dE, double beta, int n_spins);

ScheduleKind parse_schedule_kind(const std::string& s);
RuleKind parse_rule_kind(const std::string& s);
std::string to_string(ScheduleKind k);
std::string to_string(RuleKind k);

Distribution uniform_distribution(int n);
Distribution gibbs_distribution(const IsingModel& model, double beta);
double total_variation(const Distribution& a, const Distribution& b);

using RateFunction = std::function<double(double dE)>;

// Single-spin-flip generator: rate(a -> a^j) = f(E(a^j) - E(a)).
class ClassicalGenerator {
public:
    explicit ClassicalGenerator(const IsingModel& model);

    void set_rates(const RateFunction& f);
    void set_rule(const UpdateRule& rule, double beta);

    int n() const { return n_; }
    std::size_t dim() const { return dim_; }
    double rate(State from, int j) const { return w_[cls_[from * n_ + j]]; }
    double delta_energy(State from, int j) const { return dE_[cls_[from * n_ + j]]; }
    // Flips sharing an energy change share a class and a rate.
    int rate_class(State from, int j) const { return cls_[from * n_ + j]; }
    const std::vector<double>& class_rates() const { return w_; }

    void apply(const double* p, double* out) const;
    Distribution apply(const Distribution& p) const;
    // L(b, a) is the rate a -> b; columns sum to zero.
    Eigen::MatrixXd dense() const;

private:
    int n_ = 0;
    std::size_t dim_ = 0;
    std::vector<int> cls_;
    std::vector<double> dE_;
    std::vector<double> w_;
};

enum class Integrator { euler, rk4 };

Distribution master_step(const ClassicalGenerator& gen, const Distribution& p, double dt,
                         Integrator integrator = Integrator::rk4);
Distribution master_step(const IsingModel& model, const Distribution& p, const UpdateRule& rule,
                         double beta, double dt, Integrator integrator = Integrator::rk4);

struct ClusterStats {
    double p_s = 0.0;
    double p_C = 0.0;
};

ClusterStats cluster_stats(const Distribution& dist, const GroundSpace& gs);

struct TrajectoryPoint {
    long step = 0;
    double temperature = 0.0;
    double p_s = 0.0;
    double p_C = 0.0;
};

struct MasterOptions {
    double dt = 0.01;  // time per schedule step
    int steps_per_temp = 1;
    Integrator integrator = Integrator::rk4;
    long record_every = 1;
    std::optional<Distribution> initial;  // uniform when unset
};

struct MasterRun {
    std::vector<TrajectoryPoint> trajectory;
    Distribution final;
    bool has_cluster_stats = false;
};

MasterRun anneal_master(const IsingModel& model, const UpdateRule& rule, const TemperatureSchedule& schedule,
                        const MasterOptions& opt = {});

std::string trajectory_csv(const std::vector<TrajectoryPoint>& traj);

struct McOptions {
    std::optional<State> start;  // uniformly random start when unset
};

struct McRun {
    std::vector<std::uint64_t> counts;
    Distribution empirical;
    long n_reads = 0;
};

McRun anneal_mc(const IsingModel& model, const UpdateRule& rule, const TemperatureSchedule& schedule, long n_reads,
                std::uint64_t seed, const McOptions& opt = {});

struct ReducedState {
    double p_s = 0.0;
    double p_C = 0.0;
    double p_e = 0.0;
    double p_0 = 0.0;
};

// Averages over the isolated state, cluster, energy -4 and energy 0 states of the reference model.
ReducedState reduced_state(const Distribution& dist, const IsingModel& model);

struct ReducedRates {
    double ds = 0.0;
    double dC = 0.0;
};

// p_e and p_0 are held fixed; `dominant` drops the transitions to and from energy 0.
ReducedRates reduced_derivative(const ReducedState& s, const RateFunction& f, bool dominant = false);
ReducedState reduced_step(const ReducedState& s, const RateFunction& f, double dt, bool dominant = false);

}  // namespace annealsig
