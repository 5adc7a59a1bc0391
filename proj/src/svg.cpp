#include "annealsig/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "annealsig/errors.hpp"

namespace annealsig {

namespace {

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
    double lo, hi;
    bool log;
    double pix0, pix1;
    double map(double v) const {
        double a = log ? std::log10(v) : v, l = log ? std::log10(lo) : lo, h = log ? std::log10(hi) : hi;
        if (h == l) return 0.5 * (pix0 + pix1);
        return pix0 + (a - l) / (h - l) * (pix1 - pix0);
    }
};

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

void frame(std::ostringstream& os, const PlotSpec& spec, const Axis& x, const Axis& y) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
       << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << spec.width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << esc(spec.title)
       << "</text>\n";
    os << "<line x1=\"" << x.pix0 << "\" y1=\"" << y.pix0 << "\" x2=\"" << x.pix1 << "\" y2=\"" << y.pix0
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << x.pix0 << "\" y1=\"" << y.pix0 << "\" x2=\"" << x.pix0 << "\" y2=\"" << y.pix1
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << 0.5 * (x.pix0 + x.pix1) << "\" y=\"" << spec.height - 6 << "\" text-anchor=\"middle\">"
       << esc(spec.x_label) << "</text>\n";
    os << "<text x=\"14\" y=\"" << 0.5 * (y.pix0 + y.pix1) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
       << 0.5 * (y.pix0 + y.pix1) << ")\">" << esc(spec.y_label) << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        double f = k / 4.0;
        double yv = y.log ? std::pow(10.0, std::log10(y.lo) + f * (std::log10(y.hi) - std::log10(y.lo)))
                          : y.lo + f * (y.hi - y.lo);
        double py = y.map(yv);
        os << "<text x=\"" << x.pix0 - 4 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
    }
}

}  // namespace

std::string line_plot_svg(const PlotSpec& spec, const std::vector<Series>& series) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw DimensionError("series x and y differ in length");
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if ((spec.log_x && !(s.x[k] > 0)) || (spec.log_y && !(s.y[k] > 0)) || !std::isfinite(s.y[k])) continue;
            xlo = std::min(xlo, s.x[k]);
            xhi = std::max(xhi, s.x[k]);
            ylo = std::min(ylo, s.y[k]);
            yhi = std::max(yhi, s.y[k]);
        }
    }
    if (!(xlo <= xhi)) xlo = xhi = ylo = yhi = 1.0;
    Axis x{xlo, xhi, spec.log_x, 60.0, spec.width - 130.0};
    Axis y{ylo, yhi, spec.log_y, spec.height - 40.0, 30.0};
    std::ostringstream os;
    frame(os, spec, x, y);
    os << "<text x=\"" << x.pix0 << "\" y=\"" << y.pix0 + 14 << "\">" << num(xlo) << "</text>\n";
    os << "<text x=\"" << x.pix1 << "\" y=\"" << y.pix0 + 14 << "\" text-anchor=\"end\">" << num(xhi) << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = kColors[s % 8];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < series[s].x.size(); ++k) {
            double xv = series[s].x[k], yv = series[s].y[k];
            if ((spec.log_x && !(xv > 0)) || (spec.log_y && !(yv > 0)) || !std::isfinite(yv)) continue;
            os << x.map(xv) << ',' << y.map(yv) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << spec.width - 124 << "\" y=\"" << 40 + 14 * s << "\" fill=\"" << col << "\">"
           << esc(series[s].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string box_plot_svg(const PlotSpec& spec, const std::vector<std::string>& labels,
                         const std::vector<BoxStats>& boxes) {
    if (labels.size() != boxes.size()) throw DimensionError("one label per box");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& b : boxes) {
        lo = std::min(lo, b.whisker_low);
        hi = std::max(hi, b.whisker_high);
        for (double o : b.outliers) {
            lo = std::min(lo, o);
            hi = std::max(hi, o);
        }
    }
    if (boxes.empty()) lo = hi = 1.0;
    if (spec.log_y && !(lo > 0)) throw RangeError("log axis needs positive values");
    Axis x{0.0, 1.0, false, 60.0, spec.width - 20.0};
    Axis y{lo, hi, spec.log_y, spec.height - 40.0, 30.0};
    std::ostringstream os;
    frame(os, spec, x, y);
    const double slot = (x.pix1 - x.pix0) / std::max<std::size_t>(1, boxes.size());
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        const auto& b = boxes[k];
        double cx = x.pix0 + (k + 0.5) * slot, w = 0.3 * slot;
        os << "<line x1=\"" << cx << "\" y1=\"" << y.map(b.whisker_low) << "\" x2=\"" << cx << "\" y2=\""
           << y.map(b.whisker_high) << "\" stroke=\"black\"/>\n";
        os << "<rect x=\"" << cx - w << "\" y=\"" << y.map(b.upper_quartile) << "\" width=\"" << 2 * w
           << "\" height=\"" << std::max(0.5, y.map(b.lower_quartile) - y.map(b.upper_quartile))
           << "\" fill=\"#cfe2f3\" stroke=\"black\"/>\n";
        os << "<line x1=\"" << cx - w << "\" y1=\"" << y.map(b.median) << "\" x2=\"" << cx + w << "\" y2=\""
           << y.map(b.median) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
        for (double o : b.outliers)
            os << "<circle cx=\"" << cx << "\" cy=\"" << y.map(o) << "\" r=\"2.5\" fill=\"none\" stroke=\"black\"/>\n";
        os << "<text x=\"" << cx << "\" y=\"" << y.pix0 + 14 << "\" text-anchor=\"middle\">" << esc(labels[k])
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace annealsig
