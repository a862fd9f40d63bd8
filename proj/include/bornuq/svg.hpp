#ifndef BORNUQ_SVG_HPP
#define BORNUQ_SVG_HPP

#include <string>
#include <vector>

namespace bornuq::svg {

// Minimal self-contained SVG charts: line and scatter series on linear
// or log10 axes. Enough for the experiment figures, nothing more.

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool scatter = false;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Series> series;
};

std::string render(const PlotSpec& spec);

} // namespace bornuq::svg

#endif
