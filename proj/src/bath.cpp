#include "annealsig/bath.hpp"

#include <cmath>

#include "annealsig/errors.hpp"

namespace annealsig {

double beta_from_temp_ghz(double temp_ghz) {
    if (!(temp_ghz > 0)) throw RangeError("temperature must be positive");
    return 1.0 / (kTwoPi * temp_ghz);
}

double eta_for_decoherence(double t2_ns, double beta) {
    if (!(t2_ns > 0) || !(beta > 0)) throw RangeError("decoherence time and beta must be positive");
    // 2 gamma(0) = 1/T2 with gamma(0) = 2 pi eta / beta
    return beta / (4.0 * kPi * t2_ns);
}

BathSpec default_bath() {
    BathSpec b;
    b.beta = beta_from_temp_ghz(0.35);
    b.eta_g2 = eta_for_decoherence(150.0, b.beta);
    b.omega_c = 8.0 * kPi;
    return b;
}

double gamma(const BathSpec& bath, double omega) {
    const double pre = kTwoPi * bath.eta_g2;
    const double x = bath.beta * omega;
    double thermal;  // omega / (1 - exp(-beta omega))
    if (std::abs(x) < 1e-10)
        thermal = 1.0 / bath.beta + 0.5 * omega;
    else
        thermal = omega / -std::expm1(-x);
    return pre * thermal * std::exp(-std::abs(omega) / bath.omega_c);
}

double lamb_shift_integral(const BathSpec& bath, const PrincipalValueOptions& opt) {
    if (opt.points < 2 || !(opt.omega_max_factor > opt.eps_factor)) throw RangeError("bad quadrature options");
    const double lo = opt.eps_factor * bath.omega_c;
    const double hi = opt.omega_max_factor * bath.omega_c;
    int m = opt.points + (opt.points % 2);  // Simpson needs an even count
    const double h = (hi - lo) / m;
    auto paired = [&](double w) { return (gamma(bath, w) - gamma(bath, -w)) / w; };
    double s = paired(lo) + paired(hi);
    for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * paired(lo + k * h);
    return s * h / 3.0;
}

}  // namespace annealsig
