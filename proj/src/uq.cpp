#include "bornuq/uq.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "bornuq/textio.hpp"

namespace bornuq::uq {

/*
 * Inverse normal CDF, Peter Acklam's rational approximation (2003).
 * Relative error of the raw approximation is below 1.15e-9 over the full
 * range; one Halley refinement step against erfc brings it to a few ulp.
 */
double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must be in (0, 1)");

    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
    return x;
}

double z_for_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("z_for_level: level must be in (0, 1)");
    return normal_quantile(0.5 * (1.0 + level));
}

PredictionInterval quantum_interval(double o_hat, long n_shots, double level) {
    if (!(std::abs(o_hat) <= 1.0))
        throw std::invalid_argument("quantum_interval: |o_hat| must be <= 1");
    if (n_shots < 1)
        throw std::invalid_argument("quantum_interval: n_shots must be >= 1");
    const double z = z_for_level(level);
    const double var = (1.0 - o_hat * o_hat) / static_cast<double>(n_shots);
    return {o_hat, z * std::sqrt(var), level};
}

PredictionInterval gaussian_interval(double mean, double variance, double level) {
    if (!(variance >= 0.0))
        throw std::invalid_argument("gaussian_interval: variance must be >= 0");
    const double z = z_for_level(level);
    return {mean, z * std::sqrt(variance), level};
}

double coverage(std::span<const PredictionInterval> intervals, std::span<const double> truths) {
    if (intervals.size() != truths.size())
        throw std::invalid_argument("coverage: intervals/truths length mismatch");
    if (intervals.empty())
        throw std::invalid_argument("coverage: empty input");
    std::size_t hit = 0;
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (intervals[i].contains(truths[i]))
            ++hit;
    return static_cast<double>(hit) / static_cast<double>(intervals.size());
}

double mean_width(std::span<const PredictionInterval> intervals) {
    if (intervals.empty())
        throw std::invalid_argument("mean_width: empty input");
    double s = 0.0;
    for (const auto& iv : intervals)
        s += iv.width();
    return s / static_cast<double>(intervals.size());
}

PredictiveSource PredictiveSource::gaussian(double mean, double sigma) {
    if (!(sigma >= 0.0))
        throw std::invalid_argument("PredictiveSource: sigma must be >= 0");
    return {Kind::gaussian, mean, sigma, 0};
}

PredictiveSource PredictiveSource::shots(double o_hat, long n_shots) {
    if (!(std::abs(o_hat) <= 1.0))
        throw std::invalid_argument("PredictiveSource: |o_hat| must be <= 1");
    if (n_shots < 1)
        throw std::invalid_argument("PredictiveSource: n_shots must be >= 1");
    return {Kind::quantum, o_hat, 0.0, n_shots};
}

PredictionInterval PredictiveSource::interval(double level) const {
    if (kind == Kind::gaussian)
        return gaussian_interval(center, sigma * sigma, level);
    return quantum_interval(center, n_shots, level);
}

double CalibrationReport::recompute_ece() const {
    long total = 0;
    for (long c : counts)
        total += c;
    double s = 0.0;
    for (std::size_t b = 0; b < levels.size(); ++b)
        s += (static_cast<double>(counts[b]) / static_cast<double>(total)) *
             std::abs(empirical[b] - levels[b]);
    return s;
}

CalibrationReport calibration_report(std::span<const PredictiveSource> predictive,
                                     std::span<const double> truths,
                                     std::span<const double> levels) {
    if (predictive.size() != truths.size())
        throw std::invalid_argument("calibration_report: predictive/truths length mismatch");
    if (predictive.empty())
        throw std::invalid_argument("calibration_report: empty input");
    if (levels.empty())
        throw std::invalid_argument("calibration_report: no levels");
    for (std::size_t b = 0; b < levels.size(); ++b) {
        if (!(levels[b] > 0.0 && levels[b] < 1.0))
            throw std::invalid_argument("calibration_report: levels must lie in (0, 1)");
        if (b > 0 && !(levels[b] > levels[b - 1]))
            throw std::invalid_argument("calibration_report: levels must be strictly increasing");
    }

    CalibrationReport report;
    report.levels.assign(levels.begin(), levels.end());
    report.empirical.resize(levels.size());
    report.counts.assign(levels.size(), static_cast<long>(predictive.size()));
    for (std::size_t b = 0; b < levels.size(); ++b) {
        std::size_t hit = 0;
        for (std::size_t i = 0; i < predictive.size(); ++i)
            if (predictive[i].interval(levels[b]).contains(truths[i]))
                ++hit;
        report.empirical[b] = static_cast<double>(hit) / static_cast<double>(predictive.size());
    }
    report.ece = report.recompute_ece();
    return report;
}

std::vector<std::pair<double, double>> reliability_curve(const CalibrationReport& report) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(report.levels.size());
    for (std::size_t b = 0; b < report.levels.size(); ++b)
        pts.emplace_back(report.levels[b], report.empirical[b]);
    return pts;
}

std::vector<double> default_levels() {
    std::vector<double> q;
    for (int i = 1; i <= 19; ++i)
        q.push_back(0.05 * i);
    return q;
}

InfoBudget InfoBudget::quantum(int n_qubits, long n_shots, long evaluations) {
    if (n_qubits < 1 || n_shots < 1 || evaluations < 1)
        throw std::invalid_argument("InfoBudget: counts must be positive");
    InfoBudget b;
    b.method = Method::quantum;
    b.n_qubits = n_qubits;
    b.n_shots = n_shots;
    b.evaluations = evaluations;
    return b;
}

InfoBudget InfoBudget::mc_dropout(long passes, long evaluations) {
    if (passes < 1 || evaluations < 1)
        throw std::invalid_argument("InfoBudget: counts must be positive");
    InfoBudget b;
    b.method = Method::mc_dropout;
    b.passes = passes;
    b.evaluations = evaluations;
    return b;
}

InfoBudget InfoBudget::ensemble(long members, long evaluations) {
    if (members < 1 || evaluations < 1)
        throw std::invalid_argument("InfoBudget: counts must be positive");
    InfoBudget b;
    b.method = Method::ensemble;
    b.members = members;
    b.evaluations = evaluations;
    return b;
}

double info_bits(const InfoBudget& budget) {
    switch (budget.method) {
    case InfoBudget::Method::quantum:
        return static_cast<double>(budget.n_qubits) *
               std::log2(static_cast<double>(budget.n_shots) + 1.0);
    case InfoBudget::Method::mc_dropout:
        return std::log2(static_cast<double>(budget.passes));
    case InfoBudget::Method::ensemble:
        return std::log2(static_cast<double>(budget.members));
    }
    throw std::logic_error("info_bits: unknown method");
}

std::string report_to_csv(const CalibrationReport& report) {
    using textio::format_double;
    std::ostringstream out;
    out << "level,empirical,count\n";
    for (std::size_t b = 0; b < report.levels.size(); ++b)
        out << format_double(report.levels[b]) << ',' << format_double(report.empirical[b]) << ','
            << report.counts[b] << '\n';
    return out.str();
}

CalibrationReport report_from_csv(std::string_view csv) {
    CalibrationReport report;
    std::size_t pos = 0;
    bool header = true;
    while (pos < csv.size()) {
        std::size_t eol = csv.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = csv.size();
        std::string_view line = csv.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty())
            continue;
        if (header) {
            if (line != "level,empirical,count")
                throw std::invalid_argument("report_from_csv: unexpected header");
            header = false;
            continue;
        }
        double level = 0.0, emp = 0.0;
        long count = 0;
        const char* ptr = line.data();
        const char* end = line.data() + line.size();
        auto r1 = std::from_chars(ptr, end, level);
        if (r1.ec != std::errc{} || r1.ptr == end || *r1.ptr != ',')
            throw std::invalid_argument("report_from_csv: bad row");
        auto r2 = std::from_chars(r1.ptr + 1, end, emp);
        if (r2.ec != std::errc{} || r2.ptr == end || *r2.ptr != ',')
            throw std::invalid_argument("report_from_csv: bad row");
        auto r3 = std::from_chars(r2.ptr + 1, end, count);
        if (r3.ec != std::errc{})
            throw std::invalid_argument("report_from_csv: bad row");
        report.levels.push_back(level);
        report.empirical.push_back(emp);
        report.counts.push_back(count);
    }
    if (report.levels.empty())
        throw std::invalid_argument("report_from_csv: no rows");
    report.ece = report.recompute_ece();
    return report;
}

} // namespace bornuq::uq
