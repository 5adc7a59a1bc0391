#pragma once

#include <vector>

#include <Eigen/Dense>

#include "annealsig/ising.hpp"

namespace annealsig {

struct GroundProjector {
    int n = 0;
    std::vector<State> basis;  // ground configurations, ascending
    Eigen::MatrixXd matrix;    // dense projector on the full space
    int rank() const { return static_cast<int>(basis.size()); }
};

GroundProjector ground_projector(const IsingModel& model);

struct Multiplet {
    double value = 0.0;
    int multiplicity = 0;
};

struct PerturbationSpectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns, in the ground basis
    std::vector<Multiplet> multiplets;
    std::vector<double> isolated_overlap;  // per eigenvector
};

// Projected transverse field -sum_j sigma_x^j on the ground space.
Eigen::MatrixXd projected_transverse_matrix(const GroundProjector& proj);
PerturbationSpectrum project_transverse(const GroundProjector& proj, const IsingModel& model);

std::vector<Multiplet> group_multiplets(const Eigen::VectorXd& sorted, double tol = 1e-9);

// Largest deviation between the lowest levels of H_Ising + eps (-sum sigma_x) and
// E_0 + eps * eig(P_g).
double first_order_residual(const IsingModel& model, double eps);

}  // namespace annealsig
