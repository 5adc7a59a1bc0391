#pragma once

namespace annealsig {

// Ohmic bath. Frequencies and rates in rad/ns, beta in ns.
struct BathSpec {
    double beta = 0.0;
    double eta_g2 = 0.0;
    double omega_c = 0.0;
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double beta_from_temp_ghz(double temp_ghz);
// Coupling giving a single-qubit sigma_z dephasing time t2_ns (coherence decay rate 2*gamma(0)).
double eta_for_decoherence(double t2_ns, double beta);
// 17 mK (0.35 GHz), 150 ns dephasing, cutoff 8*pi rad/ns.
BathSpec default_bath();

double gamma(const BathSpec& bath, double omega);

// Principal value of the integral of gamma(w)/w over the real line, by pairing +w and -w
// samples on a uniform grid with the interval (-eps, eps) excised.
struct PrincipalValueOptions {
    int points = 20000;
    double omega_max_factor = 60.0;  // upper limit in units of omega_c
    double eps_factor = 1e-9;        // excised half-width in units of omega_c
};
double lamb_shift_integral(const BathSpec& bath, const PrincipalValueOptions& opt = {});

}  // namespace annealsig
