#include "annealsig/schedule.hpp"

#include <algorithm>
#include <sstream>

#include "annealsig/errors.hpp"
#include "annealsig/io.hpp"

namespace annealsig {

AnnealScheduleQ AnnealScheduleQ::linear(double total_ns, double A0, double B0) {
    if (!(total_ns > 0)) throw RangeError("annealing time must be positive");
    if (!(A0 > 0) || !(B0 > 0)) throw RangeError("A0 and B0 must be positive");
    AnnealScheduleQ s;
    s.T_ = total_ns;
    s.A0_ = A0;
    s.B0_ = B0;
    return s;
}

AnnealScheduleQ AnnealScheduleQ::tabulated(double total_ns, std::vector<double> sf, std::vector<double> A,
                                           std::vector<double> B) {
    if (!(total_ns > 0)) throw RangeError("annealing time must be positive");
    if (sf.size() < 2 || sf.size() != A.size() || sf.size() != B.size())
        throw SpecError("schedule table needs at least two rows of equal length");
    if (sf.front() != 0.0 || sf.back() != 1.0) throw SpecError("schedule table must span t_fraction 0..1");
    for (std::size_t k = 1; k < sf.size(); ++k)
        if (!(sf[k] > sf[k - 1])) throw SpecError("t_fraction must increase strictly");
    if (!(A.front() > 0) || B.front() != 0.0 || A.back() != 0.0 || !(B.back() > 0))
        throw SpecError("schedule needs A(0) > 0, B(0) = 0, A(T) = 0, B(T) > 0");
    AnnealScheduleQ s;
    s.T_ = total_ns;
    s.s_ = std::move(sf);
    s.a_ = std::move(A);
    s.b_ = std::move(B);
    return s;
}

AnnealScheduleQ AnnealScheduleQ::from_csv(double total_ns, const std::string& path) {
    auto t = parse_csv(read_text(path));
    int cs = t.column("t_fraction"), ca = t.column("A_GHz"), cb = t.column("B_GHz");
    std::vector<double> s, a, b;
    for (const auto& r : t.rows) {
        s.push_back(r[cs]);
        a.push_back(r[ca]);
        b.push_back(r[cb]);
    }
    return tabulated(total_ns, s, a, b);
}

AnnealScheduleQ AnnealScheduleQ::with_total_time(double total_ns) const {
    if (!(total_ns > 0)) throw RangeError("annealing time must be positive");
    AnnealScheduleQ s = *this;
    s.T_ = total_ns;
    return s;
}

double AnnealScheduleQ::frac(double t) const {
    if (t < -1e-12 * T_ || t > T_ * (1 + 1e-12)) throw RangeError("time outside [0, T]");
    return std::clamp(t / T_, 0.0, 1.0);
}

double AnnealScheduleQ::interp(const std::vector<double>& v, double f) const {
    auto it = std::upper_bound(s_.begin(), s_.end(), f);
    if (it == s_.end()) return v.back();
    std::size_t k = static_cast<std::size_t>(it - s_.begin());
    double w = (f - s_[k - 1]) / (s_[k] - s_[k - 1]);
    return v[k - 1] + w * (v[k] - v[k - 1]);
}

double AnnealScheduleQ::A(double t) const {
    double f = frac(t);
    return is_linear() ? A0_ * (1.0 - f) : interp(a_, f);
}

double AnnealScheduleQ::B(double t) const {
    double f = frac(t);
    return is_linear() ? B0_ * f : interp(b_, f);
}

std::string AnnealScheduleQ::describe() const {
    std::ostringstream os;
    if (is_linear())
        os << "linear A0=" << A0_ << "GHz B0=" << B0_ << "GHz";
    else
        os << "tabulated " << s_.size() << " rows";
    os << " T=" << T_ << "ns";
    return os.str();
}

}  // namespace annealsig
