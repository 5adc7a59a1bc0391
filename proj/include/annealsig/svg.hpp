#pragma once

#include <string>
#include <vector>

#include "annealsig/stats.hpp"

namespace annealsig {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 640;
    int height = 420;
};

std::string line_plot_svg(const PlotSpec& spec, const std::vector<Series>& series);
std::string box_plot_svg(const PlotSpec& spec, const std::vector<std::string>& labels,
                         const std::vector<BoxStats>& boxes);

}  // namespace annealsig
