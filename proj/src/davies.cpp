#include "annealsig/davies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "annealsig/errors.hpp"

namespace annealsig {

namespace {

constexpr std::size_t kMaxSector = 1500;
constexpr std::size_t kMaxPairWork = 50'000'000;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// Single-linkage clusters of sorted values; returns cluster id per input index.
std::vector<int> cluster_values(const std::vector<double>& v, double tol, std::vector<double>& means, double& span) {
    std::vector<int> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v[a] < v[b]; });
    std::vector<int> id(v.size());
    means.clear();
    span = 0.0;
    std::size_t start = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        bool last = k + 1 == order.size() || v[order[k + 1]] - v[order[k]] > tol;
        if (!last) continue;
        double sum = 0.0;
        for (std::size_t q = start; q <= k; ++q) {
            id[order[q]] = static_cast<int>(means.size());
            sum += v[order[q]];
        }
        span = std::max(span, v[order[k]] - v[order[start]]);
        means.push_back(sum / static_cast<double>(k - start + 1));
        start = k + 1;
    }
    return id;
}

}  // namespace

DaviesGenerator::DaviesGenerator(const Eigen::VectorXd& energies, const std::vector<Eigen::MatrixXd>& ops,
                                 const BathSpec& bath, double bin_tol)
    : E_(energies) {
    const int K = static_cast<int>(E_.size());
    if (K == 0) throw DimensionError("empty spectrum");
    for (const auto& A : ops)
        if (A.rows() != K || A.cols() != K) throw DimensionError("coupling operator has wrong size");
    if (!(bin_tol > 0)) throw RangeError("binning tolerance must be positive");

    std::vector<double> ev(E_.data(), E_.data() + K), level_E;
    double span = 0.0;
    level_ = cluster_values(ev, bin_tol, level_E, span);
    n_levels_ = static_cast<int>(level_E.size());
    if (span > 100.0 * bin_tol) throw BinningError("energy levels chain beyond the binning tolerance");

    const int NL = n_levels_;
    std::vector<double> pair_omega(static_cast<std::size_t>(NL) * NL);
    for (int l = 0; l < NL; ++l)
        for (int m = 0; m < NL; ++m) pair_omega[l * NL + m] = level_E[m] - level_E[l];
    std::vector<int> pair_bin = cluster_values(pair_omega, bin_tol, bin_omega_, span);
    if (span > 100.0 * bin_tol) throw BinningError("Bohr frequencies chain beyond the binning tolerance");

    bins_.resize(bin_omega_.size());
    for (std::size_t b = 0; b < bins_.size(); ++b) {
        bins_[b].omega = bin_omega_[b];
        bins_[b].rate = gamma(bath, bin_omega_[b]);
        if (!(bins_[b].rate >= 0)) throw BinningError("negative or undefined rate");
        bins_[b].entries.resize(ops.size());
    }
    for (std::size_t al = 0; al < ops.size(); ++al) {
        const auto& A = ops[al];
        double cut = 1e-14 * std::max(1.0, A.cwiseAbs().maxCoeff());
        for (int a = 0; a < K; ++a)
            for (int c = 0; c < K; ++c)
                if (std::abs(A(a, c)) > cut)
                    bins_[pair_bin[level_[a] * NL + level_[c]]].entries[al].push_back({a, c, A(a, c)});
    }

    Gamma_ = Eigen::MatrixXd::Zero(K, K);
    zero_ = true;
    for (const auto& bin : bins_) {
        if (bin.rate == 0.0) continue;
        for (const auto& list : bin.entries) {
            if (!list.empty()) zero_ = false;
            pair_work_ += list.size() * list.size();
            // entries are grouped by row a
            for (std::size_t s = 0; s < list.size();) {
                std::size_t e = s;
                while (e < list.size() && list[e].a == list[s].a) ++e;
                for (std::size_t p = s; p < e; ++p)
                    for (std::size_t q = s; q < e; ++q) Gamma_(list[p].c, list[q].c) += bin.rate * list[p].v * list[q].v;
                s = e;
            }
        }
    }
}

void DaviesGenerator::build_sectors() const {
    if (sectors_ready_) return;
    sectors_ready_ = true;
    const int K = dim();
    UnionFind uf(K * K);
    for (const auto& bin : bins_) {
        if (bin.rate == 0.0) continue;
        for (const auto& list : bin.entries)
            for (const auto& e1 : list)
                for (const auto& e2 : list) uf.unite(e1.a * K + e2.a, e1.c * K + e2.c);
    }
    for (int a = 0; a < K; ++a)
        for (int c = 0; c < K; ++c)
            if (a != c && Gamma_(a, c) != 0.0)
                for (int b = 0; b < K; ++b) {
                    uf.unite(a * K + b, c * K + b);
                    uf.unite(b * K + a, b * K + c);
                }

    std::vector<int> sector_of(K * K, -1), local(K * K, -1);
    sectors_.clear();
    for (int p = 0; p < K * K; ++p) {
        int r = uf.find(p);
        if (sector_of[r] < 0) {
            sector_of[r] = static_cast<int>(sectors_.size());
            sectors_.emplace_back();
        }
        auto& s = sectors_[sector_of[r]];
        local[p] = static_cast<int>(s.pairs.size());
        s.pairs.push_back(p);
        sector_of[p] = sector_of[r];
    }
    for (auto& s : sectors_) s.M = Eigen::MatrixXd::Zero(s.pairs.size(), s.pairs.size());

    for (const auto& bin : bins_) {
        if (bin.rate == 0.0) continue;
        for (const auto& list : bin.entries)
            for (const auto& e1 : list)
                for (const auto& e2 : list) {
                    int row = e1.a * K + e2.a, col = e1.c * K + e2.c;
                    sectors_[sector_of[row]].M(local[row], local[col]) += bin.rate * e1.v * e2.v;
                }
    }
    for (int a = 0; a < K; ++a)
        for (int c = 0; c < K; ++c) {
            double g = Gamma_(a, c);
            if (g == 0.0) continue;
            for (int b = 0; b < K; ++b) {
                int row = a * K + b;
                sectors_[sector_of[row]].M(local[row], local[c * K + b]) -= 0.5 * g;
                row = b * K + c;
                sectors_[sector_of[row]].M(local[row], local[b * K + a]) -= 0.5 * g;
            }
        }
}

std::size_t DaviesGenerator::largest_sector() const {
    build_sectors();
    std::size_t m = 0;
    for (const auto& s : sectors_) m = std::max(m, s.pairs.size());
    return m;
}

std::vector<LindbladChannel> DaviesGenerator::channels() const {
    const int K = dim();
    std::vector<LindbladChannel> out;
    for (const auto& bin : bins_)
        for (std::size_t al = 0; al < bin.entries.size(); ++al) {
            if (bin.entries[al].empty()) continue;
            LindbladChannel ch;
            ch.L = Eigen::MatrixXd::Zero(K, K);
            for (const auto& e : bin.entries[al]) ch.L(e.a, e.c) = e.v;
            ch.omega = bin.omega;
            ch.rate = bin.rate;
            ch.op = static_cast<int>(al);
            out.push_back(std::move(ch));
        }
    return out;
}

Eigen::MatrixXcd DaviesGenerator::dissipator(const Eigen::MatrixXcd& rho) const {
    const int K = dim();
    if (rho.rows() != K || rho.cols() != K) throw DimensionError("density matrix has wrong size");
    Eigen::MatrixXcd out = -0.5 * (Gamma_ * rho + rho * Gamma_);
    for (const auto& bin : bins_) {
        if (bin.rate == 0.0) continue;
        for (const auto& list : bin.entries)
            for (const auto& e1 : list)
                for (const auto& e2 : list) out(e1.a, e2.a) += bin.rate * e1.v * e2.v * rho(e1.c, e2.c);
    }
    return out;
}

Eigen::MatrixXcd DaviesGenerator::apply(const Eigen::MatrixXcd& rho) const {
    const std::complex<double> I(0.0, 1.0);
    Eigen::MatrixXcd comm = E_.asDiagonal() * rho - rho * E_.asDiagonal();
    return -I * comm + dissipator(rho);
}

Eigen::MatrixXcd DaviesGenerator::superoperator() const {
    const int K = dim();
    const std::complex<double> I(0.0, 1.0);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(K * K, K * K);
    // vec(X rho Y) = (Y^T kron X) vec(rho)
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) S(a + b * K, a + b * K) += -I * (E_[a] - E_[b]);
    for (const auto& ch : channels()) {
        const auto& L = ch.L;
        Eigen::MatrixXd LtL = L.transpose() * L;
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b)
                for (int c = 0; c < K; ++c)
                    for (int d = 0; d < K; ++d) S(a + b * K, c + d * K) += ch.rate * L(a, c) * L(b, d);
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b)
                for (int c = 0; c < K; ++c) {
                    S(a + b * K, c + b * K) -= 0.5 * ch.rate * LtL(a, c);
                    S(a + b * K, a + c * K) -= 0.5 * ch.rate * LtL(c, b);
                }
    }
    return S;
}

void DaviesGenerator::propagate(Eigen::MatrixXcd& rho, double h) const {
    const int K = dim();
    if (rho.rows() != K || rho.cols() != K) throw DimensionError("density matrix has wrong size");
    if (zero_ || h == 0.0) return;
    if (!sectors_ready_ && pair_work_ > kMaxPairWork) {
        // Too many coupled coherences for dense sector blocks: integrate directly.
        integrate(rho, h);
        return;
    }
    build_sectors();
    if (largest_sector() > kMaxSector) {
        integrate(rho, h);
        return;
    }
    for (const auto& s : sectors_) {
        const auto d = static_cast<Eigen::Index>(s.pairs.size());
        if (d == 1) {
            int p = s.pairs[0];
            rho(p / K, p % K) *= std::exp(h * s.M(0, 0));
            continue;
        }
        Eigen::VectorXcd v(d);
        for (Eigen::Index k = 0; k < d; ++k) v[k] = rho(s.pairs[k] / K, s.pairs[k] % K);
        if (v.squaredNorm() == 0.0) continue;
        Eigen::MatrixXd P = (h * s.M).exp();
        v = P.cast<std::complex<double>>() * v;
        for (Eigen::Index k = 0; k < d; ++k) rho(s.pairs[k] / K, s.pairs[k] % K) = v[k];
    }
}

void DaviesGenerator::integrate(Eigen::MatrixXcd& rho, double h) const {
    double rate = Gamma_.cwiseAbs().rowwise().sum().maxCoeff();
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(h) * rate / 0.1)));
    double dt = h / steps;
    for (int k = 0; k < steps; ++k) {
        Eigen::MatrixXcd k1 = dissipator(rho);
        Eigen::MatrixXcd k2 = dissipator(rho + 0.5 * dt * k1);
        Eigen::MatrixXcd k3 = dissipator(rho + 0.5 * dt * k2);
        Eigen::MatrixXcd k4 = dissipator(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
}

}  // namespace annealsig
