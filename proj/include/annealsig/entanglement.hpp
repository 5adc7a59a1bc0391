#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "annealsig/bath.hpp"
#include "annealsig/ising.hpp"
#include "annealsig/quantum.hpp"
#include "annealsig/schedule.hpp"

namespace annealsig {

// Pair basis index 2 * b_i + b_j, b = 1 for spin down.
using TwoQubitState = Eigen::Matrix4cd;

TwoQubitState reduce_pair(const DensityMatrix& rho, int n, int i, int j);
double concurrence(const TwoQubitState& rho);

// Equal mixture over the lowest degenerate level (tolerance relative to the spectral norm).
DensityMatrix ground_mixture(const Eigen::MatrixXd& H, double rel_tol = 1e-8);

struct ConcurrenceCurves {
    std::vector<double> t;
    std::vector<double> ground;
    std::vector<double> gibbs;
    std::vector<double> trajectory;
};

// The shared grid is the set of times recorded by the WCL run.
ConcurrenceCurves baseline_curves(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath, int i,
                                  int j, const WclOptions& wcl);

std::string concurrence_csv(const ConcurrenceCurves& c);

}  // namespace annealsig
