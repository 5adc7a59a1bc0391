#pragma once

#include <vector>

#include <Eigen/Dense>

#include "annealsig/bath.hpp"

namespace annealsig {

struct LindbladChannel {
    Eigen::MatrixXd L;  // instantaneous eigenbasis
    double omega = 0.0;
    double rate = 0.0;
    int op = 0;
};

// Rotating-wave (Davies) dissipator built from coupling operators expressed in the
// eigenbasis of a frozen Hamiltonian. Bohr frequencies closer than `bin_tol` share a
// jump operator. Lamb shift omitted.
class DaviesGenerator {
public:
    DaviesGenerator() = default;
    DaviesGenerator(const Eigen::VectorXd& energies, const std::vector<Eigen::MatrixXd>& ops, const BathSpec& bath,
                    double bin_tol);

    int dim() const { return static_cast<int>(E_.size()); }
    const Eigen::VectorXd& energies() const { return E_; }
    const std::vector<int>& level_of() const { return level_; }
    int num_levels() const { return n_levels_; }
    const std::vector<double>& bohr_bins() const { return bin_omega_; }

    std::vector<LindbladChannel> channels() const;
    Eigen::MatrixXcd dissipator(const Eigen::MatrixXcd& rho) const;
    // -i[H, rho] + dissipator(rho), H = diag(energies).
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
    // Column-major vectorised generator; intended for small dimensions.
    Eigen::MatrixXcd superoperator() const;

    // Exact exp(h * dissipator) applied in place. The dissipator commutes with the
    // Hamiltonian part, so this is the interaction-picture propagator.
    void propagate(Eigen::MatrixXcd& rho, double h) const;

    std::size_t largest_sector() const;

private:
    struct Entry {
        int a, c;
        double v;
    };
    struct Bin {
        double omega;
        double rate;
        std::vector<std::vector<Entry>> entries;  // per coupling operator
    };
    struct Sector {
        std::vector<int> pairs;  // a * K + b
        Eigen::MatrixXd M;
    };

    Eigen::VectorXd E_;
    std::vector<int> level_;
    int n_levels_ = 0;
    std::vector<double> bin_omega_;
    std::vector<Bin> bins_;
    Eigen::MatrixXd Gamma_;  // sum of rate * L^T L
    mutable std::vector<Sector> sectors_;
    mutable bool sectors_ready_ = false;
    bool zero_ = true;
    std::size_t pair_work_ = 0;

    void build_sectors() const;
    void integrate(Eigen::MatrixXcd& rho, double h) const;
};

}  // namespace annealsig
