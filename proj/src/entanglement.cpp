#include "annealsig/entanglement.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "annealsig/errors.hpp"
#include "annealsig/io.hpp"

namespace annealsig {

using cplx = std::complex<double>;

TwoQubitState reduce_pair(const DensityMatrix& rho, int n, int i, int j) {
    if (n < 2 || n > 14) throw RangeError("qubit count out of range");
    if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw RangeError("bad qubit pair");
    const Eigen::Index d = Eigen::Index{1} << n;
    if (rho.rows() != d || rho.cols() != d) throw DimensionError("density matrix has wrong size");
    const State bi = State{1} << i, bj = State{1} << j;
    auto pair_index = [&](State x) { return static_cast<int>(2 * ((x & bi) ? 1 : 0) + ((x & bj) ? 1 : 0)); };
    TwoQubitState out = TwoQubitState::Zero();
    for (State x = 0; x < static_cast<State>(d); ++x) {
        const State rest = x & ~(bi | bj);
        const int px = pair_index(x);
        for (int q = 0; q < 4; ++q) {
            State y = rest | ((q & 2) ? bi : 0) | ((q & 1) ? bj : 0);
            out(px, q) += rho(x, y);
        }
    }
    return out;
}

double concurrence(const TwoQubitState& rho) {
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    // sigma_y x sigma_y is real: anti-diagonal (-1, 1, 1, -1)
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    Eigen::Matrix4cd tilde = yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rho * tilde, false);
    std::array<double, 4> lam;
    for (int k = 0; k < 4; ++k) {
        double v = es.eigenvalues()[k].real();
        if (v < -1e-10) throw PositivityError("pair state is not positive");
        lam[k] = std::sqrt(std::max(v, 0.0));
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

DensityMatrix ground_mixture(const Eigen::MatrixXd& H, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const auto& E = es.eigenvalues();
    const double tol = rel_tol * std::max(std::abs(E[0]), std::abs(E[E.size() - 1]));
    Eigen::Index g = 1;
    while (g < E.size() && E[g] - E[0] <= tol) ++g;
    Eigen::MatrixXd V = es.eigenvectors().leftCols(g);
    return (V * V.transpose() / static_cast<double>(g)).cast<cplx>();
}

ConcurrenceCurves baseline_curves(const IsingModel& model, const AnnealScheduleQ& sched, const BathSpec& bath, int i,
                                  int j, const WclOptions& wcl) {
    ConcurrenceCurves c;
    WclOptions opt = wcl;
    auto inner = wcl.observer;
    opt.observer = [&](double t, const DensityMatrix& rho) {
        c.t.push_back(t);
        c.trajectory.push_back(concurrence(reduce_pair(rho, model.n(), i, j)));
        if (inner) inner(t, rho);
    };
    evolve_wcl(model, sched, bath, opt);
    for (double t : c.t) {
        Eigen::MatrixXd H = hamiltonian_at(model, sched, t);
        c.ground.push_back(concurrence(reduce_pair(ground_mixture(H), model.n(), i, j)));
        c.gibbs.push_back(concurrence(reduce_pair(gibbs_state(H, bath.beta), model.n(), i, j)));
    }
    return c;
}

std::string concurrence_csv(const ConcurrenceCurves& c) {
    std::ostringstream os;
    os << "t_ns,c_ground,c_gibbs,c_trajectory\n";
    for (std::size_t k = 0; k < c.t.size(); ++k)
        os << fmt_double(c.t[k]) << ',' << fmt_double(c.ground[k]) << ',' << fmt_double(c.gibbs[k]) << ','
           << fmt_double(c.trajectory[k]) << '\n';
    return os.str();
}

}  // namespace annealsig
