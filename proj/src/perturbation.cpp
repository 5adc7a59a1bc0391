#include "annealsig/perturbation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "annealsig/errors.hpp"
#include "annealsig/quantum.hpp"

namespace annealsig {

GroundProjector ground_projector(const IsingModel& model) {
    GroundSpace gs = ground_space(model, 14);
    GroundProjector p;
    p.n = model.n();
    p.basis = gs.states;
    std::sort(p.basis.begin(), p.basis.end());
    const auto d = static_cast<Eigen::Index>(model.dim());
    p.matrix = Eigen::MatrixXd::Zero(d, d);
    for (State x : p.basis) p.matrix(x, x) = 1.0;
    return p;
}

Eigen::MatrixXd projected_transverse_matrix(const GroundProjector& proj) {
    const int g = proj.rank();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(g, g);
    for (int a = 0; a < g; ++a)
        for (int b = 0; b < g; ++b)
            if (std::popcount(proj.basis[a] ^ proj.basis[b]) == 1) P(a, b) = -1.0;
    return P;
}

std::vector<Multiplet> group_multiplets(const Eigen::VectorXd& v, double tol) {
    std::vector<Multiplet> out;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (!out.empty() && std::abs(v[k] - out.back().value) <= tol) {
            ++out.back().multiplicity;
            continue;
        }
        out.push_back({v[k], 1});
    }
    for (auto& m : out)
        if (std::abs(m.value - std::round(m.value)) <= tol) m.value = std::round(m.value) + 0.0;
    return out;
}

PerturbationSpectrum project_transverse(const GroundProjector& proj, const IsingModel& model) {
    if (proj.rank() == 0) throw PreconditionError("empty ground space");
    GroundSpace gs = ground_space(model, 14);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(projected_transverse_matrix(proj));
    PerturbationSpectrum s;
    s.eigenvalues = es.eigenvalues();
    s.eigenvectors = es.eigenvectors();
    s.multiplets = group_multiplets(s.eigenvalues);
    s.isolated_overlap.assign(proj.rank(), 0.0);
    for (int a = 0; a < proj.rank(); ++a)
        if (std::find(gs.isolated.begin(), gs.isolated.end(), proj.basis[a]) != gs.isolated.end())
            for (int k = 0; k < proj.rank(); ++k) s.isolated_overlap[k] += s.eigenvectors(a, k) * s.eigenvectors(a, k);
    return s;
}

double first_order_residual(const IsingModel& model, double eps) {
    GroundProjector proj = ground_projector(model);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ps(projected_transverse_matrix(proj), Eigen::EigenvaluesOnly);
    const int g = proj.rank();
    Eigen::MatrixXd H = eps * transverse_matrix(model.n());
    auto e = model.energies(14);
    for (std::size_t x = 0; x < e.size(); ++x) H(x, x) += e[x];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> hs(H, Eigen::EigenvaluesOnly);
    const double E0 = *std::min_element(e.begin(), e.end());
    double r = 0.0;
    for (int k = 0; k < g; ++k) r = std::max(r, std::abs(hs.eigenvalues()[k] - (E0 + eps * ps.eigenvalues()[k])));
    return r;
}

}  // namespace annealsig
