#pragma once

#include <array>
#include <vector>

#include "annealsig/ising.hpp"

namespace annealsig {

// K4,4 unit cell: vertices 0-3 form one side, 4-7 the other; every cross pair is an edge.
constexpr int kUnitCellSize = 8;
bool k44_edge(int u, int v);

struct Embedding {
    std::array<int, kUnitCellSize> vertex{};  // logical spin -> unit-cell vertex
    bool operator==(const Embedding&) const = default;
    auto operator<=>(const Embedding&) const = default;
};

bool is_valid_embedding(const IsingModel& model, const Embedding& e);

// Permutations of logical spins that leave h and every J unchanged.
std::vector<std::array<int, kUnitCellSize>> model_automorphisms(const IsingModel& model);

// Every valid vertex bijection (1152 for the reference model).
std::vector<Embedding> enumerate_assignments(const IsingModel& model);

// One representative per programmed unit-cell Hamiltonian, i.e. valid bijections up to
// automorphisms of the weighted model. 144 for the reference model.
std::vector<Embedding> enumerate_embeddings(const IsingModel& model);

// Unit-cell model obtained by programming `model` through `e`.
IsingModel embed(const IsingModel& model, const Embedding& e);

}  // namespace annealsig
