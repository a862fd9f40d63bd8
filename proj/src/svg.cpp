#include "bornuq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bornuq::svg {

namespace {

constexpr double width = 760.0;
constexpr double height = 520.0;
constexpr double margin_left = 86.0;
constexpr double margin_right = 24.0;
constexpr double margin_top = 46.0;
constexpr double margin_bottom = 64.0;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double place(double v, double pix_lo, double pix_hi) const {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        return pix_lo + (a - l) / (h - l) * (pix_hi - pix_lo);
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

// tick label: short general format
std::string tick_label(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        ticks.push_back(t);
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    for (int e = static_cast<int>(std::floor(std::log10(lo)));
         e <= static_cast<int>(std::ceil(std::log10(hi))); ++e) {
        const double t = std::pow(10.0, e);
        if (t >= lo * (1.0 - 1e-12) && t <= hi * (1.0 + 1e-12))
            ticks.push_back(t);
    }
    return ticks;
}

void expand(Axis& axis) {
    if (axis.log) {
        axis.lo /= 1.3;
        axis.hi *= 1.3;
    } else {
        double pad = 0.06 * (axis.hi - axis.lo);
        if (pad == 0.0)
            pad = axis.lo == 0.0 ? 1.0 : 0.1 * std::abs(axis.lo);
        axis.lo -= pad;
        axis.hi += pad;
    }
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render(const PlotSpec& spec) {
    if (spec.series.empty())
        throw std::invalid_argument("svg::render: no series");

    Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            spec.log_x};
    Axis ay{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            spec.log_y};
    for (const Series& s : spec.series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("svg::render: series x/y length mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((spec.log_x && !(s.x[i] > 0.0)) || (spec.log_y && !(s.y[i] > 0.0)))
                throw std::invalid_argument("svg::render: log axis requires positive values");
            ax.lo = std::min(ax.lo, s.x[i]);
            ax.hi = std::max(ax.hi, s.x[i]);
            ay.lo = std::min(ay.lo, s.y[i]);
            ay.hi = std::max(ay.hi, s.y[i]);
        }
    }
    if (!(ax.lo <= ax.hi) || !(ay.lo <= ay.hi))
        throw std::invalid_argument("svg::render: empty series data");
    if (ax.lo == ax.hi) {
        ax.lo -= 0.5;
        ax.hi += 0.5;
    }
    if (ay.lo == ay.hi) {
        ay.lo = spec.log_y ? ay.lo / 2.0 : ay.lo - 0.5;
        ay.hi = spec.log_y ? ay.hi * 2.0 : ay.hi + 0.5;
    }
    expand(ax);
    expand(ay);

    const double px_lo = margin_left, px_hi = width - margin_right;
    const double py_lo = height - margin_bottom, py_hi = margin_top; // y grows downward

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << escape(spec.title) << "</text>\n";

    // frame
    out << "<rect x=\"" << px_lo << "\" y=\"" << py_hi << "\" width=\"" << (px_hi - px_lo)
        << "\" height=\"" << (py_lo - py_hi)
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    const auto xticks = spec.log_x ? log_ticks(ax.lo, ax.hi) : linear_ticks(ax.lo, ax.hi);
    for (double t : xticks) {
        const double px = ax.place(t, px_lo, px_hi);
        out << "<line x1=\"" << px << "\" y1=\"" << py_lo << "\" x2=\"" << px << "\" y2=\""
            << py_lo + 5 << "\" stroke=\"#333\"/>\n";
        out << "<line x1=\"" << px << "\" y1=\"" << py_lo << "\" x2=\"" << px << "\" y2=\""
            << py_hi << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << py_lo + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(t) << "</text>\n";
    }
    const auto yticks = spec.log_y ? log_ticks(ay.lo, ay.hi) : linear_ticks(ay.lo, ay.hi);
    for (double t : yticks) {
        const double py = ay.place(t, py_lo, py_hi);
        out << "<line x1=\"" << px_lo - 5 << "\" y1=\"" << py << "\" x2=\"" << px_lo
            << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
        out << "<line x1=\"" << px_lo << "\" y1=\"" << py << "\" x2=\"" << px_hi << "\" y2=\""
            << py << "\" stroke=\"#ddd\" stroke-width=\"0.5\"/>\n";
        out << "<text x=\"" << px_lo - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(t) << "</text>\n";
    }

    out << "<text x=\"" << (px_lo + px_hi) / 2 << "\" y=\"" << height - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape(spec.x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << (py_lo + py_hi) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 20 " << (py_lo + py_hi) / 2 << ")\">"
        << escape(spec.y_label) << "</text>\n";

    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const Series& s = spec.series[si];
        const char* color = palette[si % (sizeof(palette) / sizeof(palette[0]))];
        if (!s.scatter && s.x.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\"";
            if (s.dashed)
                out << " stroke-dasharray=\"6 4\"";
            out << " points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << fmt(ax.place(s.x[i], px_lo, px_hi)) << ','
                    << fmt(ay.place(s.y[i], py_lo, py_hi)) << ' ';
            out << "\"/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << "<circle cx=\"" << fmt(ax.place(s.x[i], px_lo, px_hi)) << "\" cy=\""
                << fmt(ay.place(s.y[i], py_lo, py_hi)) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
    }

    // legend, top-right inside the frame
    double ly = py_hi + 16;
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const char* color = palette[si % (sizeof(palette) / sizeof(palette[0]))];
        const double lx = px_hi - 190;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 24
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"";
        if (spec.series[si].dashed)
            out << " stroke-dasharray=\"6 4\"";
        out << "/>\n";
        out << "<text x=\"" << lx + 30 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << escape(spec.series[si].label) << "</text>\n";
        ly += 16;
    }

    out << "</svg>\n";
    return out.str();
}

} // namespace bornuq::svg
