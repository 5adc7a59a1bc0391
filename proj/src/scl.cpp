#include "annealsig/scl.hpp"

#include <cmath>
#include <bit>
#include <complex>

#include <Eigen/Eigenvalues>

#include "annealsig/errors.hpp"

namespace annealsig {

using cplx = std::complex<double>;

SclCoupling parse_scl_coupling(const std::string& s) {
    if (s == "per_qubit") return SclCoupling::per_qubit;
    if (s == "collective") return SclCoupling::collective;
    throw SpecError("unknown SCL coupling " + s);
}

namespace {

struct SclTerms {
    Eigen::VectorXd e;      // Ising energies
    Eigen::VectorXd lamb;   // diagonal Lamb shift, rad/ns
    Eigen::MatrixXd decay;  // elementwise coherence decay rate
};

SclTerms scl_terms(const IsingModel& model, const BathSpec& bath, SclCoupling coupling, double pv) {
    const int n = model.n();
    const Eigen::Index d = static_cast<Eigen::Index>(model.dim());
    auto ev = model.energies(14);
    SclTerms t;
    t.e = Eigen::Map<Eigen::VectorXd>(ev.data(), d);
    t.lamb.resize(d);
    t.decay.resize(d, d);
    const double g0 = gamma(bath, 0.0);
    Eigen::VectorXd m(d);
    for (State x = 0; x < static_cast<State>(d); ++x) m[x] = n - 2.0 * std::popcount(x);
    for (Eigen::Index x = 0; x < d; ++x) {
        // A^2 summed over coupling operators: n for single-qubit sigma_z, m^2 for the collective sum
        t.lamb[x] = -pv * (coupling == SclCoupling::per_qubit ? double(n) : m[x] * m[x]);
        for (Eigen::Index y = 0; y < d; ++y) {
            if (coupling == SclCoupling::per_qubit)
                t.decay(x, y) = 2.0 * g0 * std::popcount(static_cast<State>(x ^ y));
            else
                t.decay(x, y) = 0.5 * g0 * (m[x] - m[y]) * (m[x] - m[y]);
        }
    }
    return t;
}

// rho <- (prod_j exp(i theta sigma_x^j)) rho (...)^dagger
void rotate(Eigen::MatrixXcd& rho, int n, double theta) {
    const Eigen::Index d = rho.rows();
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx is(0.0, s);
    cplx* p = rho.data();
    for (int j = 0; j < n; ++j) {
        const Eigen::Index bit = Eigen::Index{1} << j;
        for (Eigen::Index y = 0; y < d; ++y) {
            cplx* col = p + y * d;
            for (Eigen::Index x = 0; x < d; ++x) {
                if (x & bit) continue;
                cplx a = col[x], b = col[x | bit];
                col[x] = c * a + is * b;
                col[x | bit] = is * a + c * b;
            }
        }
        for (Eigen::Index y = 0; y < d; ++y) {
            if (y & bit) continue;
            cplx* ca = p + y * d;
            cplx* cb = p + (y | bit) * d;
            for (Eigen::Index x = 0; x < d; ++x) {
                cplx a = ca[x], b = cb[x];
                ca[x] = c * a - is * b;
                cb[x] = -is * a + c * b;
            }
        }
    }
}

}  // namespace

DensityMatrix scl_rhs(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath, double t,
                      const DensityMatrix& rho, SclCoupling coupling, double lamb_integral) {
    SclTerms terms = scl_terms(model, bath, coupling, lamb_integral);
    Eigen::MatrixXd H = hamiltonian_at(model, sched, t);
    H.diagonal() += terms.lamb;
    const cplx I(0.0, 1.0);
    DensityMatrix out = -I * (H * rho - rho * H);
    out -= terms.decay.cwiseProduct(rho.real()).cast<cplx>() + I * terms.decay.cwiseProduct(rho.imag()).cast<cplx>();
    return out;
}

SclResult evolve_scl(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath,
                     const SclOptions& opt) {
    if (opt.n_steps < 1 || opt.record_every < 1) throw RangeError("bad SCL options");
    const int n = model.n();
    const Eigen::Index d = static_cast<Eigen::Index>(model.dim());
    const double T = sched.total_time();
    const double dt = T / opt.n_steps;

    SclResult res;
    res.lamb_integral = lamb_shift_integral(bath, opt.pv);
    SclTerms terms = scl_terms(model, bath, opt.coupling, res.lamb_integral);
    Eigen::MatrixXd half_decay = (-0.5 * dt * terms.decay).array().exp();

    GroundSpace gs = opt.labels ? *opt.labels : ground_space(model);
    const bool stats = !gs.isolated.empty();

    DensityMatrix rho = DensityMatrix::Constant(d, d, 1.0 / static_cast<double>(d));
    res.min_eigenvalue = 1.0;
    auto record = [&](double t) {
        Distribution p = populations(rho);
        WclPoint pt{t, std::nan(""), std::nan("")};
        if (stats) {
            auto c = cluster_stats(p, gs);
            pt.p_s = c.p_s;
            pt.p_C = c.p_C;
        }
        res.trajectory.push_back(pt);
        res.trace_error = std::max(res.trace_error, std::abs(rho.trace().real() - 1.0));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        res.min_eigenvalue = std::min(res.min_eigenvalue, es.eigenvalues().minCoeff());
        if (opt.observer) opt.observer(t, rho);
    };
    record(0.0);

    Eigen::VectorXcd ph(d);
    for (int k = 0; k < opt.n_steps; ++k) {
        const double tm = (k + 0.5) * dt;
        const double b = kTwoPi * sched.B(tm);
        for (Eigen::Index x = 0; x < d; ++x) ph[x] = std::polar(1.0, -0.5 * dt * (b * terms.e[x] + terms.lamb[x]));
        auto diag_half = [&] {
            for (Eigen::Index y = 0; y < d; ++y) {
                cplx cy = std::conj(ph[y]);
                for (Eigen::Index x = 0; x < d; ++x) rho(x, y) *= ph[x] * cy * half_decay(x, y);
            }
        };
        diag_half();
        rotate(rho, n, kTwoPi * sched.A(tm) * dt);
        diag_half();
        if ((k + 1) % opt.record_every == 0 || k + 1 == opt.n_steps) record((k + 1) * dt);
    }
    if (res.min_eigenvalue < -1e-8) throw IntegrationError("SCL density matrix lost positivity");
    res.final_rho = rho;
    res.populations = populations(rho);
    return res;
}

}  // namespace annealsig
