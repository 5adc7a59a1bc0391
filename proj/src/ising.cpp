#include "annealsig/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "annealsig/errors.hpp"
#include "annealsig/io.hpp"

namespace annealsig {

IsingModel::IsingModel(int n, std::vector<double> h, std::vector<Coupling> couplings)
    : n_(n), h_(std::move(h)), couplings_(std::move(couplings)) {
    if (n_ < 1 || n_ > 62) throw DimensionError("spin count must be in [1, 62]");
    if (static_cast<int>(h_.size()) != n_) throw DimensionError("h has wrong length");
    std::set<std::pair<int, int>> seen;
    for (auto& c : couplings_) {
        if (c.i > c.j) std::swap(c.i, c.j);
        if (c.i < 0 || c.j >= n_) throw DimensionError("coupling index out of range");
        if (c.i == c.j) throw SpecError("self coupling");
        if (!seen.insert({c.i, c.j}).second) throw SpecError("duplicate coupling");
    }
}

double IsingModel::energy(State x) const {
    auto s = [x](int j) { return ((x >> j) & 1U) ? -1.0 : 1.0; };
    double e = 0.0;
    for (int j = 0; j < n_; ++j) e -= h_[j] * s(j);
    for (const auto& c : couplings_) e -= c.J * s(c.i) * s(c.j);
    return e;
}

std::vector<double> IsingModel::energies(int max_n) const {
    if (n_ > max_n) throw CapacityError("exhaustive enumeration limited to n <= " + std::to_string(max_n));
    std::vector<double> e(dim());
    for (State x = 0; x < dim(); ++x) e[x] = energy(x);
    return e;
}

std::vector<std::vector<int>> IsingModel::adjacency() const {
    std::vector<std::vector<int>> adj(n_);
    for (const auto& c : couplings_) {
        adj[c.i].push_back(c.j);
        adj[c.j].push_back(c.i);
    }
    return adj;
}

bool IsingModel::operator==(const IsingModel& o) const {
    if (n_ != o.n_ || h_ != o.h_ || couplings_.size() != o.couplings_.size()) return false;
    auto key = [](const std::vector<Coupling>& cs) {
        std::vector<std::tuple<int, int, double>> k;
        for (const auto& c : cs) k.emplace_back(c.i, c.j, c.J);
        std::sort(k.begin(), k.end());
        return k;
    };
    return key(couplings_) == key(o.couplings_);
}

SpinConfig SpinConfig::from_state(State x, int n) {
    SpinConfig c;
    c.s.resize(n);
    for (int j = 0; j < n; ++j) c.s[j] = ((x >> j) & 1U) ? -1 : 1;
    return c;
}

SpinConfig SpinConfig::all(int n, int value) {
    return SpinConfig{std::vector<int>(n, value)};
}

State SpinConfig::state() const {
    State x = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] != 1 && s[j] != -1) throw SpecError("spin values must be +1 or -1");
        if (s[j] == -1) x |= State{1} << j;
    }
    return x;
}

std::string SpinConfig::arrows() const {
    std::string out;
    for (int v : s) out += v > 0 ? "↑" : "↓";
    return out;
}

IsingModel build_reference_model() {
    std::vector<double> h{1, 1, 1, 1, -1, -1, -1, -1};
    std::vector<Coupling> c{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0},
                            {0, 4, 1.0}, {1, 5, 1.0}, {2, 6, 1.0}, {3, 7, 1.0}};
    return IsingModel(8, h, c);
}

IsingModel build_core_ancilla_pair() {
    return IsingModel(2, {1.0, -1.0}, {{0, 1, 1.0}});
}

double energy(const IsingModel& model, const SpinConfig& config) {
    if (config.size() != model.n()) throw DimensionError("config length does not match model");
    return model.energy(config.state());
}

std::size_t SpectrumTable::total() const {
    std::size_t t = 0;
    for (const auto& l : levels) t += l.states.size();
    return t;
}

namespace {
bool same_energy(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
}  // namespace

SpectrumTable full_spectrum(const IsingModel& model, int max_n) {
    auto e = model.energies(max_n);
    std::vector<State> order(e.size());
    std::iota(order.begin(), order.end(), State{0});
    std::stable_sort(order.begin(), order.end(), [&](State a, State b) { return e[a] < e[b]; });
    SpectrumTable t;
    t.n = model.n();
    for (State x : order) {
        if (t.levels.empty() || !same_energy(t.levels.back().energy, e[x]))
            t.levels.push_back({e[x], {}});
        t.levels.back().states.push_back(x);
    }
    for (auto& l : t.levels) std::sort(l.states.begin(), l.states.end());
    return t;
}

GroundSpace ground_space(const IsingModel& model, int max_n) {
    auto table = full_spectrum(model, max_n);
    GroundSpace gs;
    gs.energy = table.levels.front().energy;
    gs.states = table.levels.front().states;
    std::unordered_set<State> members(gs.states.begin(), gs.states.end());
    std::unordered_set<State> seen;
    for (State root : gs.states) {
        if (seen.count(root)) continue;
        std::vector<State> comp{root}, stack{root};
        seen.insert(root);
        while (!stack.empty()) {
            State x = stack.back();
            stack.pop_back();
            for (int j = 0; j < model.n(); ++j) {
                State y = x ^ (State{1} << j);
                if (members.count(y) && seen.insert(y).second) {
                    comp.push_back(y);
                    stack.push_back(y);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        gs.components.push_back(comp);
    }
    for (const auto& comp : gs.components) {
        auto& dst = comp.size() == 1 ? gs.isolated : gs.cluster;
        dst.insert(dst.end(), comp.begin(), comp.end());
    }
    std::sort(gs.isolated.begin(), gs.isolated.end());
    std::sort(gs.cluster.begin(), gs.cluster.end());
    return gs;
}

namespace {

double flip_delta(const IsingModel& model, const std::vector<std::vector<std::pair<int, double>>>& nb,
                  const std::vector<int>& s, int j) {
    double local = model.h()[j];
    for (auto [k, J] : nb[j]) local += J * s[k];
    return 2.0 * s[j] * local;
}

int orientation(double h) { return h < 0 ? -1 : 1; }

}  // namespace

std::vector<SpinConfig> greedy_path(const IsingModel& model, const SpinConfig& start) {
    if (start.size() != model.n()) throw DimensionError("config length does not match model");
    const int n = model.n();
    std::vector<std::vector<std::pair<int, double>>> nb(n);
    for (const auto& c : model.couplings()) {
        nb[c.i].push_back({c.j, c.J});
        nb[c.j].push_back({c.i, c.J});
    }
    std::vector<int> s = start.s;
    std::vector<SpinConfig> path{start};
    auto do_flip = [&](int j) {
        s[j] = -s[j];
        path.push_back(SpinConfig{s});
    };

    // Leaves first: each takes the sign of its local field, ties toward its own field.
    std::vector<int> leaves, core;
    for (int j = 0; j < n; ++j) (nb[j].size() == 1 ? leaves : core).push_back(j);
    for (int j : leaves) {
        double local = model.h()[j];
        for (auto [k, J] : nb[j]) local += J * s[k];
        int want = local > 0 ? 1 : local < 0 ? -1 : orientation(model.h()[j]);
        if (s[j] != want && flip_delta(model, nb, s, j) <= 0) do_flip(j);
    }

    // Core: align with the majority, measured relative to each spin's field orientation.
    if (!core.empty()) {
        int votes = 0;
        for (int j : core) votes += s[j] * orientation(model.h()[j]);
        int maj = votes > 0 ? 1 : -1;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int j : core) {
                int want = maj * orientation(model.h()[j]);
                if (s[j] != want && flip_delta(model, nb, s, j) <= 0) {
                    do_flip(j);
                    moved = true;
                }
            }
        }
        for (int j : leaves) {
            double local = model.h()[j];
            for (auto [k, J] : nb[j]) local += J * s[k];
            int want = local > 0 ? 1 : local < 0 ? -1 : s[j];
            if (s[j] != want) do_flip(j);
        }
    }

    // Strict descent until no single flip lowers the energy.
    bool moved = true;
    while (moved) {
        moved = false;
        for (int j = 0; j < n; ++j) {
            if (flip_delta(model, nb, s, j) < -1e-12) {
                do_flip(j);
                moved = true;
            }
        }
    }
    return path;
}

SpinConfig greedy_descent(const IsingModel& model, const SpinConfig& start) {
    return greedy_path(model, start).back();
}

IsingModel apply_gauge(const IsingModel& model, const std::vector<int>& flips) {
    std::vector<bool> f(model.n(), false);
    for (int j : flips) {
        if (j < 0 || j >= model.n()) throw DimensionError("gauge index out of range");
        f[j] = !f[j];
    }
    auto h = model.h();
    for (int j = 0; j < model.n(); ++j)
        if (f[j]) h[j] = -h[j];
    auto c = model.couplings();
    for (auto& e : c)
        if (f[e.i] != f[e.j]) e.J = -e.J;
    return IsingModel(model.n(), h, c);
}

SpinConfig flip(const SpinConfig& config, const std::vector<int>& flips) {
    SpinConfig out = config;
    for (int j : flips) {
        if (j < 0 || j >= config.size()) throw DimensionError("flip index out of range");
        out.s[j] = -out.s[j];
    }
    return out;
}

State flip_mask(const std::vector<int>& flips, int n) {
    State m = 0;
    for (int j : flips) {
        if (j < 0 || j >= n) throw DimensionError("flip index out of range");
        m ^= State{1} << j;
    }
    return m;
}

std::vector<int> core_spins(const IsingModel& model) {
    auto adj = model.adjacency();
    std::vector<int> out;
    for (int j = 0; j < model.n(); ++j)
        if (adj[j].size() > 1) out.push_back(j);
    return out;
}

IsingModel perturb_isolated(const IsingModel& model, double delta) {
    if (delta < 0) throw RangeError("delta must be non-negative");
    auto h = model.h();
    // Shift along each core field's own sign so the perturbation commutes with gauges.
    for (int j : core_spins(model)) h[j] += delta * (h[j] < 0 ? -1.0 : 1.0);
    return IsingModel(model.n(), h, model.couplings());
}

std::string spectrum_csv(const SpectrumTable& table, bool list_states) {
    std::ostringstream os;
    os << "energy,multiplicity" << (list_states ? ",states" : "") << "\n";
    for (const auto& l : table.levels) {
        os << fmt_double(l.energy) << "," << l.states.size();
        if (list_states) {
            os << ",";
            for (std::size_t k = 0; k < l.states.size(); ++k)
                os << (k ? " " : "") << SpinConfig::from_state(l.states[k], table.n).arrows();
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace annealsig
