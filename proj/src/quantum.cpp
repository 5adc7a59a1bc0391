#include "annealsig/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "annealsig/errors.hpp"

namespace annealsig {

using cplx = std::complex<double>;
static const cplx kI(0.0, 1.0);

Eigen::MatrixXd transverse_matrix(int n) {
    const std::size_t d = std::size_t{1} << n;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(d, d);
    for (State x = 0; x < d; ++x)
        for (int j = 0; j < n; ++j) T(x ^ (State{1} << j), x) = -1.0;
    return T;
}

Eigen::MatrixXd hamiltonian_at(const IsingModel& model, const AnnealScheduleQ& sched, double t) {
    const double a = kTwoPi * sched.A(t), b = kTwoPi * sched.B(t);
    Eigen::MatrixXd H = a * transverse_matrix(model.n());
    auto e = model.energies(14);
    for (std::size_t x = 0; x < e.size(); ++x) H(x, x) += b * e[x];
    return H;
}

SpectralDecomposition instantaneous_spectrum(const IsingModel& model, const AnnealScheduleQ& sched, double t,
                                             int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian_at(model, sched, t));
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    const int d = static_cast<int>(es.eigenvalues().size());
    if (k < 0) k = d;
    if (k > d) throw RangeError("requested more eigenpairs than the dimension");
    return {es.eigenvalues().head(k), es.eigenvectors().leftCols(k)};
}

int window_size(const Eigen::VectorXd& E, int target, double tol) {
    const int d = static_cast<int>(E.size());
    if (target <= 0 || target >= d) return d;
    int K = target;
    while (K < d && E[K] - E[K - 1] <= tol) ++K;
    return K;
}

CouplingKind parse_coupling(const std::string& s) {
    if (s == "sigma_z" || s == "z") return CouplingKind::sigma_z;
    if (s == "sigma_pm" || s == "pm") return CouplingKind::sigma_pm;
    throw SpecError("unknown coupling " + s);
}

std::vector<Eigen::MatrixXd> coupling_operators(int n, CouplingKind kind) {
    const std::size_t d = std::size_t{1} << n;
    std::vector<Eigen::MatrixXd> ops;
    for (int j = 0; j < n; ++j) {
        const State bit = State{1} << j;
        if (kind == CouplingKind::sigma_z) {
            Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(d, d);
            for (State x = 0; x < d; ++x) Z(x, x) = (x & bit) ? -1.0 : 1.0;
            ops.push_back(std::move(Z));
        } else {
            // sigma_plus raises spin j: |down> -> |up>, i.e. clears the bit
            Eigen::MatrixXd P = Eigen::MatrixXd::Zero(d, d);
            for (State x = 0; x < d; ++x)
                if (x & bit) P(x ^ bit, x) = 1.0;
            ops.push_back(P);
            ops.push_back(P.transpose());
        }
    }
    return ops;
}

namespace {

// Sparse pieces of H(t): x-field part and diagonal Ising energies.
struct SparseTfim {
    int n;
    std::size_t d;
    Eigen::VectorXd e;

    explicit SparseTfim(const IsingModel& m) : n(m.n()), d(m.dim()) {
        auto v = m.energies(14);
        e = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    void transverse(const StateVector& v, StateVector& out) const {
        for (State x = 0; x < d; ++x) {
            cplx acc = 0.0;
            for (int j = 0; j < n; ++j) acc -= v[x ^ (State{1} << j)];
            out[x] = acc;
        }
    }
};

}  // namespace

ClosedResult evolve_closed(const IsingModel& model, const AnnealScheduleQ& sched, const ClosedOptions& opt) {
    if (opt.n_steps < 1) throw RangeError("n_steps must be positive");
    SparseTfim H(model);
    const double T = sched.total_time();
    const double h = T / opt.n_steps;
    const double emax = H.e.cwiseAbs().maxCoeff();
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;

    ClosedResult res;
    StateVector psi = StateVector::Constant(H.d, 1.0 / std::sqrt(static_cast<double>(H.d)));
    StateVector t1(H.d), t2(H.d), term(H.d), acc(H.d);

    std::vector<int> marks;
    for (int s = 1; s <= opt.samples; ++s) marks.push_back(static_cast<int>(std::lround(double(s) * opt.n_steps / (opt.samples + 1))));

    for (int k = 0; k < opt.n_steps; ++k) {
        const double t0 = k * h;
        const double a1 = kTwoPi * sched.A(t0 + c1 * h), a2 = kTwoPi * sched.A(t0 + c2 * h);
        const double b1 = kTwoPi * sched.B(t0 + c1 * h), b2 = kTwoPi * sched.B(t0 + c2 * h);
        const double abar = 0.5 * (a1 + a2), bbar = 0.5 * (b1 + b2);
        const double kappa = std::sqrt(3.0) / 12.0 * h * h * (a2 * b1 - a1 * b2);
        // Omega v = -i h (abar X + bbar D) v - kappa [X, D] v
        auto omega = [&](const StateVector& v, StateVector& out) {
            H.transverse(v, t1);                       // X v
            t2 = H.e.cwiseProduct(v);                  // D v
            out = -kI * h * (abar * t1 + bbar * t2);
            H.transverse(t2, term);                    // X D v
            out -= kappa * (term - H.e.cwiseProduct(t1));
        };
        const double nu = h * (std::abs(abar) * H.n + std::abs(bbar) * emax) + std::abs(kappa) * 2.0 * H.n * emax;
        const int sub = std::max(1, static_cast<int>(std::ceil(nu / 1.5)));
        for (int s = 0; s < sub; ++s) {
            acc = psi;
            term = psi;
            StateVector next(H.d);
            for (int m = 1; m < 60; ++m) {
                omega(term, next);
                term = next / (static_cast<double>(sub) * m);
                acc += term;
                if (term.norm() < 1e-17 * acc.norm()) break;
            }
            psi = acc;
        }
        if (std::find(marks.begin(), marks.end(), k + 1) != marks.end()) {
            res.times.push_back((k + 1) * h);
            res.states.push_back(psi);
        }
        double drift = std::abs(psi.norm() - 1.0);
        res.norm_drift = std::max(res.norm_drift, drift);
        if (drift > 1e-6) throw IntegrationError("closed evolution lost unitarity; increase n_steps");
    }
    res.times.push_back(T);
    res.states.push_back(psi);
    res.final_state = psi;
    res.populations = psi.cwiseAbs2();
    return res;
}

namespace {

cplx phi(cplx z) {
    if (std::abs(z) < 1e-6) return 1.0 + z / 2.0 + z * z / 6.0;
    return (std::exp(z) - 1.0) / z;
}

struct Frame {
    Eigen::VectorXd E;
    Eigen::MatrixXd V;
};

struct StepStats {
    double leaked = 0.0;
    int unbalanced = 0;
};

// Carry rho from the eigenframe `o` to the eigenframe `n` over a time dt.
// Overlap blocks between old and new eigenvectors fix the gauge; the residual rotation is
// integrated in the interaction picture of the averaged energies.
Eigen::MatrixXcd frame_step(const Eigen::MatrixXcd& rho, const Frame& o, const Frame& n, double dt,
                            StepStats& stats) {
    const int Ko = static_cast<int>(o.E.size()), Kn = static_cast<int>(n.E.size());
    Eigen::MatrixXd G = o.V.transpose() * n.V;

    // Components of the bipartite graph of large overlaps.
    std::vector<int> parent(Ko + Kn);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < Ko; ++a)
        for (int c = 0; c < Kn; ++c)
            if (std::abs(G(a, c)) > 0.1) {
                int ra = find(a), rc = find(Ko + c);
                if (ra != rc) parent[std::max(ra, rc)] = std::min(ra, rc);
            }
    std::vector<std::vector<int>> rows(Ko + Kn), cols(Ko + Kn);
    for (int a = 0; a < Ko; ++a) rows[find(a)].push_back(a);
    for (int c = 0; c < Kn; ++c) cols[find(Ko + c)].push_back(c);

    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(Ko, Kn);
    bool unbalanced = false;
    for (int r = 0; r < Ko + Kn; ++r) {
        const auto& ri = rows[r];
        const auto& ci = cols[r];
        if (ri.empty() || ci.empty()) {
            if (!ri.empty() || !ci.empty()) unbalanced = true;
            continue;
        }
        Eigen::MatrixXd sub(ri.size(), ci.size());
        for (std::size_t p = 0; p < ri.size(); ++p)
            for (std::size_t q = 0; q < ci.size(); ++q) sub(p, q) = G(ri[p], ci[q]);
        Eigen::MatrixXd blk;
        if (ri.size() == ci.size()) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeFullU | Eigen::ComputeFullV);
            blk = svd.matrixU() * svd.matrixV().transpose();
        } else {
            blk = sub;
            unbalanced = true;
        }
        for (std::size_t p = 0; p < ri.size(); ++p)
            for (std::size_t q = 0; q < ci.size(); ++q) Q(ri[p], ci[q]) = blk(p, q);
    }
    if (unbalanced) ++stats.unbalanced;

    Eigen::MatrixXd GQ = G * Q.transpose();
    Eigen::MatrixXd Mdt = 0.5 * (GQ - GQ.transpose());
    Eigen::VectorXd w = Q.cwiseAbs2().rowwise().sum();
    Eigen::VectorXd Epath = Q.cwiseAbs2() * n.E + (Eigen::VectorXd::Ones(Ko) - w).cwiseProduct(o.E);
    Eigen::VectorXd Em = 0.5 * (o.E + Epath);

    Eigen::MatrixXcd Om(Ko, Ko);
    for (int a = 0; a < Ko; ++a)
        for (int b = 0; b < Ko; ++b) Om(a, b) = Mdt(a, b) * phi(kI * (Em[a] - Em[b]) * dt);
    Eigen::MatrixXcd Hm = kI * Om;
    Hm = 0.5 * (Hm + Hm.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hm);
    Eigen::VectorXcd ph = (kI * es.eigenvalues().cast<cplx>()).array().exp();
    Eigen::MatrixXcd U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    for (int a = 0; a < Ko; ++a) U.row(a) *= std::exp(-kI * Em[a] * dt);

    Eigen::MatrixXcd r1 = U * rho * U.adjoint();
    Eigen::MatrixXcd Qc = Q.cast<cplx>();
    Eigen::MatrixXcd out = Qc.transpose() * r1 * Qc;
    out = 0.5 * (out + out.adjoint());
    stats.leaked += (r1.trace() - out.trace()).real();
    return out;
}

std::vector<Eigen::MatrixXd> ops_in_frame(const std::vector<Eigen::MatrixXd>& ops, CouplingKind kind, int n,
                                          const Eigen::MatrixXd& V) {
    std::vector<Eigen::MatrixXd> out;
    if (kind == CouplingKind::sigma_z) {
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd z = ops[j].diagonal();
            out.push_back(V.transpose() * (z.asDiagonal() * V));
        }
    } else {
        for (const auto& A : ops) out.push_back(V.transpose() * (A * V));
    }
    return out;
}

}  // namespace

WclResult evolve_wcl(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath,
                     const WclOptions& opt) {
    if (opt.n_steps < 1 || opt.record_every < 1) throw RangeError("bad WCL options");
    const int n = model.n();
    const double T = sched.total_time();
    const double dt = T / opt.n_steps;
    auto ops = coupling_operators(n, opt.coupling);
    GroundSpace gs = opt.labels ? *opt.labels : ground_space(model);
    const bool stats = !gs.isolated.empty();
    const bool coupled = bath.eta_g2 != 0.0;

    double hnorm = 0.0;
    auto frame_at = [&](double t) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hamiltonian_at(model, sched, t));
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
        const auto& E = es.eigenvalues();
        hnorm = std::max(std::abs(E[0]), std::abs(E[E.size() - 1]));
        int K = window_size(E, opt.window, opt.bin_tol_rel * hnorm);
        return Frame{E.head(K), es.eigenvectors().leftCols(K)};
    };

    WclResult res;
    StepStats st;
    res.min_eigenvalue = 1.0;
    Frame cur = frame_at(0.0);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(cur.E.size(), cur.E.size());
    rho(0, 0) = 1.0;

    auto record = [&](double t) {
        Eigen::MatrixXcd W = cur.V.cast<cplx>() * rho;
        Distribution p = (W.array() * cur.V.cast<cplx>().array()).rowwise().sum().real();
        WclPoint pt{t, std::nan(""), std::nan("")};
        if (stats) {
            auto c = cluster_stats(p, gs);
            pt.p_s = c.p_s;
            pt.p_C = c.p_C;
        }
        res.trajectory.push_back(pt);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues().minCoeff();
        res.min_eigenvalue = std::min(res.min_eigenvalue, lo);
        if (lo < -1e-6) throw IntegrationError("density matrix lost positivity; increase n_steps");
        if (opt.observer) opt.observer(t, W * cur.V.transpose().cast<cplx>());
    };

    double t_prev = 0.0;
    for (int k = 0; k < opt.n_steps; ++k) {
        const double t_mid = (k + 0.5) * dt;
        Frame next = frame_at(t_mid);
        rho = frame_step(rho, cur, next, t_mid - t_prev, st);
        cur = std::move(next);
        if (k % opt.record_every == 0) record(t_mid);
        if (coupled) {
            DaviesGenerator D(cur.E, ops_in_frame(ops, opt.coupling, n, cur.V), bath, opt.bin_tol_rel * hnorm);
            D.propagate(rho, dt);
            rho = 0.5 * (rho + rho.adjoint());
        }
        t_prev = t_mid;
    }
    Frame last = frame_at(T);
    rho = frame_step(rho, cur, last, T - t_prev, st);
    cur = std::move(last);
    record(T);

    res.final_rho = cur.V.cast<cplx>() * rho * cur.V.transpose().cast<cplx>();
    res.populations = populations(res.final_rho);
    res.leaked = st.leaked;
    res.unbalanced_steps = st.unbalanced;
    return res;
}

WclGenerator build_wcl_generator(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath,
                                 double t, CouplingKind coupling, double bin_tol_rel) {
    WclGenerator g;
    g.spectrum = instantaneous_spectrum(model, sched, t);
    const auto& E = g.spectrum.energies;
    double hnorm = std::max(std::abs(E[0]), std::abs(E[E.size() - 1]));
    double tol = bin_tol_rel * std::max(hnorm, 1e-300);
    auto ops = ops_in_frame(coupling_operators(model.n(), coupling), coupling, model.n(), g.spectrum.basis);
    g.davies = DaviesGenerator(E, ops, bath, tol);
    return g;
}

DensityMatrix gibbs_state(const Eigen::MatrixXd& H, double beta) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const auto& E = es.eigenvalues();
    Eigen::VectorXd w = (-beta * (E.array() - E.minCoeff())).exp();
    w /= w.sum();
    Eigen::MatrixXd rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
    return rho.cast<cplx>();
}

Eigen::MatrixXd diagonal_reduction(const Eigen::MatrixXd& H_S, int n, const BathSpec& bath) {
    const Eigen::Index d = H_S.rows();
    if (H_S.cols() != d || d != (Eigen::Index{1} << n)) throw DimensionError("Hamiltonian has wrong size");
    Eigen::MatrixXd off = H_S;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 0.0) throw PreconditionError("diagonal reduction needs a diagonal H_S");
    Eigen::VectorXd E = H_S.diagonal();
    double tol = 1e-8 * std::max(1.0, E.cwiseAbs().maxCoeff());
    DaviesGenerator D(E, coupling_operators(n, CouplingKind::sigma_pm), bath, tol);
    Eigen::MatrixXd R(d, d);
    for (Eigen::Index a = 0; a < d; ++a) {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
        rho(a, a) = 1.0;
        R.col(a) = D.dissipator(rho).diagonal().real();
    }
    return R;
}

Eigen::MatrixXd diagonal_reduction(const IsingModel& model, const BathSpec& bath, double energy_scale) {
    auto e = model.energies(14);
    Eigen::VectorXd E = Eigen::Map<Eigen::VectorXd>(e.data(), static_cast<Eigen::Index>(e.size()));
    Eigen::MatrixXd H = (energy_scale * E).asDiagonal();
    return diagonal_reduction(H, model.n(), bath);
}

Distribution populations(const DensityMatrix& rho) {
    Distribution p = rho.diagonal().real();
    double clipped = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k)
        if (p[k] < 0) {
            clipped -= p[k];
            p[k] = 0.0;
        }
    if (clipped > 1e-8) throw PositivityError("density matrix has negative populations");
    if (clipped > 0) p /= p.sum();
    return p;
}

}  // namespace annealsig
