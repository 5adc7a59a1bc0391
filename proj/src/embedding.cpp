#include "annealsig/embedding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "annealsig/errors.hpp"

namespace annealsig {

bool k44_edge(int u, int v) { return (u < 4) != (v < 4); }

namespace {

void check_topology(const IsingModel& model) {
    if (model.n() != kUnitCellSize)
        throw UnsupportedTopology("unit-cell embedding needs exactly 8 logical spins");
    auto adj = model.adjacency();
    std::vector<int> side(model.n(), -1);
    for (int r = 0; r < model.n(); ++r) {
        if (adj[r].size() > 4) throw UnsupportedTopology("a spin has more than 4 couplings");
        if (side[r] >= 0) continue;
        side[r] = 0;
        std::vector<int> stack{r};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (side[v] < 0) {
                    side[v] = 1 - side[u];
                    stack.push_back(v);
                } else if (side[v] == side[u]) {
                    throw UnsupportedTopology("logical graph is not bipartite");
                }
            }
        }
    }
}

std::map<std::pair<int, int>, double> coupling_map(const IsingModel& model) {
    std::map<std::pair<int, int>, double> m;
    for (const auto& c : model.couplings()) m[{std::min(c.i, c.j), std::max(c.i, c.j)}] = c.J;
    return m;
}

}  // namespace

bool is_valid_embedding(const IsingModel& model, const Embedding& e) {
    if (model.n() != kUnitCellSize) return false;
    std::array<bool, kUnitCellSize> used{};
    for (int v : e.vertex) {
        if (v < 0 || v >= kUnitCellSize || used[v]) return false;
        used[v] = true;
    }
    for (const auto& c : model.couplings())
        if (!k44_edge(e.vertex[c.i], e.vertex[c.j])) return false;
    return true;
}

std::vector<std::array<int, kUnitCellSize>> model_automorphisms(const IsingModel& model) {
    check_topology(model);
    auto cm = coupling_map(model);
    std::array<int, kUnitCellSize> p{};
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::array<int, kUnitCellSize>> out;
    do {
        bool ok = true;
        for (int j = 0; j < kUnitCellSize && ok; ++j) ok = model.h()[p[j]] == model.h()[j];
        for (auto it = cm.begin(); it != cm.end() && ok; ++it) {
            auto [i, j] = it->first;
            auto img = cm.find({std::min(p[i], p[j]), std::max(p[i], p[j])});
            ok = img != cm.end() && img->second == it->second;
        }
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Embedding> enumerate_assignments(const IsingModel& model) {
    check_topology(model);
    Embedding e;
    std::iota(e.vertex.begin(), e.vertex.end(), 0);
    std::vector<Embedding> out;
    do {
        if (is_valid_embedding(model, e)) out.push_back(e);
    } while (std::next_permutation(e.vertex.begin(), e.vertex.end()));
    return out;
}

std::vector<Embedding> enumerate_embeddings(const IsingModel& model) {
    auto raw = enumerate_assignments(model);
    auto aut = model_automorphisms(model);
    std::set<Embedding> reps;
    for (const auto& e : raw) {
        Embedding best = e;
        for (const auto& p : aut) {
            Embedding f;
            for (int j = 0; j < kUnitCellSize; ++j) f.vertex[j] = e.vertex[p[j]];
            best = std::min(best, f);
        }
        reps.insert(best);
    }
    return {reps.begin(), reps.end()};
}

IsingModel embed(const IsingModel& model, const Embedding& e) {
    if (!is_valid_embedding(model, e)) throw UnsupportedTopology("invalid embedding");
    std::vector<double> h(kUnitCellSize, 0.0);
    std::vector<Coupling> c;
    for (int j = 0; j < kUnitCellSize; ++j) h[e.vertex[j]] = model.h()[j];
    for (const auto& x : model.couplings()) c.push_back({e.vertex[x.i], e.vertex[x.j], x.J});
    return IsingModel(kUnitCellSize, h, c);
}

}  // namespace annealsig
