#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "annealsig/bath.hpp"
#include "annealsig/davies.hpp"
#include "annealsig/ising.hpp"
#include "annealsig/sa.hpp"
#include "annealsig/schedule.hpp"

namespace annealsig {

using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// H(t) = 2 pi [A(t) (-sum sigma_x) + B(t) H_Ising] in rad/ns, computational basis.
Eigen::MatrixXd hamiltonian_at(const IsingModel& model, const AnnealScheduleQ& sched, double t);
Eigen::MatrixXd transverse_matrix(int n);  // -sum_j sigma_x^j

struct SpectralDecomposition {
    Eigen::VectorXd energies;  // rad/ns, ascending
    Eigen::MatrixXd basis;     // columns are eigenvectors
};

SpectralDecomposition instantaneous_spectrum(const IsingModel& model, const AnnealScheduleQ& sched, double t,
                                             int k = -1);

// Smallest window of lowest levels holding at least `target` states without splitting a
// degenerate level (gap tolerance `tol`).
int window_size(const Eigen::VectorXd& sorted_energies, int target, double tol);

enum class CouplingKind { sigma_z, sigma_pm };
CouplingKind parse_coupling(const std::string& s);
std::vector<Eigen::MatrixXd> coupling_operators(int n, CouplingKind kind);

struct ClosedOptions {
    int n_steps = 5000;
    int samples = 0;  // additional evenly spaced recorded states
};

struct ClosedResult {
    std::vector<double> times;
    std::vector<StateVector> states;  // recorded states; last one is final
    StateVector final_state;
    Distribution populations;
    double norm_drift = 0.0;
};

// Fourth-order commutator-free Magnus steps from the ground state of H(0).
ClosedResult evolve_closed(const IsingModel& model, const AnnealScheduleQ& sched, const ClosedOptions& opt = {});

struct WclOptions {
    int n_steps = 200;  // adiabatic-frame steps; the generator is rebuilt every step
    CouplingKind coupling = CouplingKind::sigma_z;
    int window = 32;  // lowest eigenstates kept; <= 0 keeps all
    double bin_tol_rel = 1e-8;
    int record_every = 1;
    // Ground-space labels for p_s and p_C; taken from the model when unset. A perturbed
    // model keeps the labels of the model it came from.
    std::optional<GroundSpace> labels;
    // Called at recorded times with the computational-basis density matrix.
    std::function<void(double, const DensityMatrix&)> observer;
};

struct WclPoint {
    double t = 0.0;
    double p_s = 0.0;
    double p_C = 0.0;
};

struct WclResult {
    std::vector<WclPoint> trajectory;
    DensityMatrix final_rho;
    Distribution populations;
    double leaked = 0.0;        // population dropped at window edges
    double min_eigenvalue = 0.0;
    int unbalanced_steps = 0;   // steps falling back to plain projection for a block
};

WclResult evolve_wcl(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath,
                     const WclOptions& opt = {});

// Frozen generator at time t in the full instantaneous eigenbasis.
struct WclGenerator {
    SpectralDecomposition spectrum;
    DaviesGenerator davies;
};
WclGenerator build_wcl_generator(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath,
                                 double t, CouplingKind coupling = CouplingKind::sigma_z, double bin_tol_rel = 1e-8);

DensityMatrix gibbs_state(const Eigen::MatrixXd& H, double beta);

// Classical rate matrix induced on diagonal states by the sigma_pm generator of
// H_S = energy_scale * H_Ising. Entry (b, a) is the rate a -> b.
Eigen::MatrixXd diagonal_reduction(const IsingModel& model, const BathSpec& bath, double energy_scale = 1.0);
// Same for an explicit system Hamiltonian; throws PreconditionError unless it is diagonal.
Eigen::MatrixXd diagonal_reduction(const Eigen::MatrixXd& H_S, int n, const BathSpec& bath);

Distribution populations(const DensityMatrix& rho);

}  // namespace annealsig
