#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace annealsig {

using State = std::uint64_t;  // bit j set <=> spin j is down (-1)

struct Coupling {
    int i = 0;
    int j = 0;
    double J = 0.0;
};

class IsingModel {
public:
    IsingModel() = default;
    IsingModel(int n, std::vector<double> h, std::vector<Coupling> couplings);

    int n() const { return n_; }
    const std::vector<double>& h() const { return h_; }
    const std::vector<Coupling>& couplings() const { return couplings_; }
    std::size_t dim() const { return std::size_t{1} << n_; }

    double energy(State x) const;
    // Energy of every basis state, indexed by State. Throws CapacityError above max_n.
    std::vector<double> energies(int max_n = 24) const;

    std::vector<std::vector<int>> adjacency() const;

    bool operator==(const IsingModel& o) const;

private:
    int n_ = 0;
    std::vector<double> h_;
    std::vector<Coupling> couplings_;
};

struct SpinConfig {
    std::vector<int> s;  // +1 up, -1 down

    static SpinConfig from_state(State x, int n);
    static SpinConfig all(int n, int value);
    State state() const;
    int size() const { return static_cast<int>(s.size()); }
    std::string arrows() const;
    bool operator==(const SpinConfig&) const = default;
};

IsingModel build_reference_model();
// Single core spin (h = +1) coupled to one ancilla (h = -1), J = +1.
IsingModel build_core_ancilla_pair();

double energy(const IsingModel& model, const SpinConfig& config);

struct SpectrumLevel {
    double energy = 0.0;
    std::vector<State> states;
};

struct SpectrumTable {
    int n = 0;
    std::vector<SpectrumLevel> levels;  // ascending energy
    std::size_t total() const;
};

SpectrumTable full_spectrum(const IsingModel& model, int max_n = 24);

struct GroundSpace {
    double energy = 0.0;
    std::vector<State> states;
    std::vector<State> isolated;
    std::vector<State> cluster;
    // Components under single spin flips restricted to the ground set.
    std::vector<std::vector<State>> components;
};

GroundSpace ground_space(const IsingModel& model, int max_n = 24);

SpinConfig greedy_descent(const IsingModel& model, const SpinConfig& start);
// Every configuration visited, start included.
std::vector<SpinConfig> greedy_path(const IsingModel& model, const SpinConfig& start);

IsingModel apply_gauge(const IsingModel& model, const std::vector<int>& flips);
SpinConfig flip(const SpinConfig& config, const std::vector<int>& flips);
State flip_mask(const std::vector<int>& flips, int n);

// Spins with more than one coupling; for the reference model these are the core.
std::vector<int> core_spins(const IsingModel& model);
IsingModel perturb_isolated(const IsingModel& model, double delta);

std::string spectrum_csv(const SpectrumTable& table, bool list_states = false);

}  // namespace annealsig
