#pragma once

#include <string>
#include <vector>

namespace annealsig {

// A(t), B(t) envelopes in GHz over [0, T] ns.
class AnnealScheduleQ {
public:
    static AnnealScheduleQ linear(double total_ns, double A0_ghz = 10.0, double B0_ghz = 5.3);
    // Rows of (t_fraction, A_GHz, B_GHz), linearly interpolated.
    static AnnealScheduleQ tabulated(double total_ns, std::vector<double> s, std::vector<double> A,
                                     std::vector<double> B);
    static AnnealScheduleQ from_csv(double total_ns, const std::string& path);

    double total_time() const { return T_; }
    double A(double t) const;
    double B(double t) const;
    bool is_linear() const { return s_.empty(); }
    AnnealScheduleQ with_total_time(double total_ns) const;
    std::string describe() const;

private:
    double T_ = 1.0;
    double A0_ = 10.0, B0_ = 5.3;
    std::vector<double> s_, a_, b_;
    double frac(double t) const;
    double interp(const std::vector<double>& v, double f) const;
};

}  // namespace annealsig
