#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "annealsig/bath.hpp"
#include "annealsig/ising.hpp"
#include "annealsig/quantum.hpp"
#include "annealsig/schedule.hpp"

namespace annealsig {

// per_qubit: one sigma_z^j per qubit. collective: a single sum_j sigma_z^j.
enum class SclCoupling { per_qubit, collective };
SclCoupling parse_scl_coupling(const std::string& s);

struct SclOptions {
    int n_steps = 10000;
    SclCoupling coupling = SclCoupling::per_qubit;
    PrincipalValueOptions pv;
    int record_every = 250;
    std::optional<GroundSpace> labels;
    std::function<void(double, const DensityMatrix&)> observer;
};

struct SclResult {
    std::vector<WclPoint> trajectory;
    DensityMatrix final_rho;
    Distribution populations;
    double lamb_integral = 0.0;  // principal value of gamma(w)/w
    double min_eigenvalue = 0.0;
    double trace_error = 0.0;
};

// Computational-basis dephasing master equation with the diagonal Lamb shift.
// Strang splitting: exact diagonal phases and dephasing around an exact transverse rotation.
SclResult evolve_scl(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath,
                     const SclOptions& opt = {});

// Right-hand side of the SCL equation, used for checks.
DensityMatrix scl_rhs(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath, double t,
                      const DensityMatrix& rho, SclCoupling coupling, double lamb_integral);

}  // namespace annealsig
