#include "collabmetrics/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "collabmetrics/textio.hpp"

namespace collabmetrics {

namespace {

double median_of(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

BinnedCurve log_bin(std::span<const ScalingPoint> points, int bins_per_decade, int min_bin_count) {
    if (points.empty()) throw std::invalid_argument("log_bin: no points");
    if (bins_per_decade < 1) throw std::invalid_argument("log_bin: bins_per_decade must be >= 1");
    if (min_bin_count < 1) throw std::invalid_argument("log_bin: min_bin_count must be >= 1");

    std::map<int, std::vector<double>> by_bin;
    for (const auto& p : points) {
        if (!(p.n_aut >= 1.0)) throw std::invalid_argument("log_bin: n_aut must be >= 1");
        if (!(p.value >= 0.0)) throw std::invalid_argument("log_bin: values must be >= 0");
        const int bin = static_cast<int>(std::floor(std::log10(p.n_aut) * bins_per_decade));
        by_bin[bin].push_back(p.value);
    }

    BinnedCurve curve;
    curve.bins_per_decade = bins_per_decade;
    curve.min_bin_count = min_bin_count;
    for (auto& [bin, values] : by_bin) {
        if (values.size() < static_cast<std::size_t>(min_bin_count)) continue;
        BinSummary summary;
        summary.center = std::pow(10.0, (bin + 0.5) / static_cast<double>(bins_per_decade));
        summary.count = values.size();
        double sum = 0.0;
        for (double v : values) sum += v;
        summary.mean = sum / static_cast<double>(values.size());
        summary.median = median_of(values);
        curve.bins.push_back(summary);
    }
    if (curve.bins.empty()) {
        throw std::runtime_error("insufficient data: no bin reaches min_bin_count=" +
                                 std::to_string(min_bin_count));
    }
    return curve;
}

std::string_view estimator_name(Estimator e) {
    return e == Estimator::Mean ? "mean" : "median";
}

Estimator estimator_from_name(std::string_view name) {
    if (name == "mean") return Estimator::Mean;
    if (name == "median") return Estimator::Median;
    throw std::invalid_argument("unknown estimator '" + std::string(name) + "'");
}

ScalingFit fit_power_law(const BinnedCurve& curve, Estimator estimator) {
    const std::size_t n = curve.bins.size();
    if (n < 2) {
        throw std::runtime_error("insufficient data: power-law fit needs >= 2 bins, got " +
                                 std::to_string(n));
    }

    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = estimator == Estimator::Mean ? curve.bins[i].mean : curve.bins[i].median;
        if (!(v > 0.0)) {
            throw std::runtime_error("power-law fit: non-positive " +
                                     std::string(estimator_name(estimator)) + " in bin at n_aut=" +
                                     format_sig(curve.bins[i].center, 6) + " (log undefined)");
        }
        x[i] = std::log(curve.bins[i].center);
        y[i] = std::log(v);
    }

    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x_mean += x[i];
        y_mean += y[i];
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - x_mean;
        const double dy = y[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) {
        throw std::runtime_error("power-law fit: all bins share one n_aut value");
    }

    const double slope = sxy / sxx;
    const double intercept = y_mean - slope * x_mean;

    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        sse += r * r;
    }

    ScalingFit fit;
    fit.exponent = slope;
    fit.amplitude = std::exp(intercept);
    fit.exponent_stderr = n > 2 ? std::sqrt(std::max(sse, 0.0) / static_cast<double>(n - 2) / sxx) : 0.0;
    // All-equal y gives SST = 0: the flat line is an exact fit.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
    fit.n_bins_used = static_cast<int>(n);
    fit.estimator = estimator;
    fit.bins_per_decade = curve.bins_per_decade;
    fit.min_bin_count = curve.min_bin_count;
    return fit;
}

LogNormalFit fit_lognormal(std::span<const double> values) {
    LogNormalFit fit;
    fit.n_values = values.size();
    std::vector<double> logs;
    logs.reserve(values.size());
    for (double v : values) {
        if (v < 0.0) throw std::invalid_argument("fit_lognormal: values must be >= 0");
        if (v > 0.0) {
            logs.push_back(std::log(v));
        } else {
            ++fit.n_zero;
        }
    }
    if (logs.size() < 2) {
        throw std::runtime_error("fit_lognormal: needs >= 2 positive values, got " +
                                 std::to_string(logs.size()));
    }
    fit.zero_fraction = static_cast<double>(fit.n_zero) / static_cast<double>(fit.n_values);

    double sum = 0.0;
    for (double l : logs) sum += l;
    fit.mu_log = sum / static_cast<double>(logs.size());

    double ss = 0.0;
    for (double l : logs) {
        const double d = l - fit.mu_log;
        ss += d * d;
    }
    fit.sigma_log = std::sqrt(ss / static_cast<double>(logs.size() - 1));
    return fit;
}

ExponentDecomposition decompose_exponents(const ScalingFit& fit_pap, const ScalingFit& fit_cit,
                                          const ScalingFit& fit_totcit, double tolerance) {
    auto same_binning = [](const ScalingFit& a, const ScalingFit& b) {
        return a.bins_per_decade == b.bins_per_decade && a.min_bin_count == b.min_bin_count &&
               a.estimator == b.estimator;
    };
    if (!same_binning(fit_pap, fit_cit) || !same_binning(fit_pap, fit_totcit)) {
        throw std::runtime_error("decompose_exponents: mismatched binning metadata");
    }
    ExponentDecomposition d;
    d.p_pap = fit_pap.exponent;
    d.p_cit = fit_cit.exponent;
    d.p_totcit = fit_totcit.exponent;
    d.delta = d.p_totcit - (d.p_cit + d.p_pap);
    d.tolerance = tolerance;
    d.pass = std::abs(d.delta) <= tolerance;
    return d;
}

void write_curve_csv(std::ostream& out, const BinnedCurve& curve) {
    out << "bin_center,count,mean,median\n";
    for (const auto& b : curve.bins) {
        out << format_sig(b.center, 9) << ',' << b.count << ',' << format_sig(b.mean, 9) << ','
            << format_sig(b.median, 9) << '\n';
    }
}

BinnedCurve read_curve_csv(std::istream& in) {
    BinnedCurve curve;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "bin_center,count,mean,median") {
                throw std::runtime_error("curve csv: unexpected header '" + line + "'");
            }
            continue;
        }
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                     ": expected 4 fields");
        }
        BinSummary b;
        try {
            b.center = std::stod(fields[0]);
            b.count = static_cast<std::size_t>(std::stoull(fields[1]));
            b.mean = std::stod(fields[2]);
            b.median = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                     ": invalid number");
        }
        curve.bins.push_back(b);
    }
    return curve;
}

void write_fit_csv(std::ostream& out, const ScalingFit& fit) {
    out << "exponent,stderr,amplitude,r2,n_bins,estimator\n";
    out << format_sig(fit.exponent, 9) << ',' << format_sig(fit.exponent_stderr, 9) << ','
        << format_sig(fit.amplitude, 9) << ',' << format_sig(fit.r_squared, 9) << ','
        << fit.n_bins_used << ',' << estimator_name(fit.estimator) << '\n';
}

ScalingFit read_fit_csv(std::istream& in) {
    std::string header, row;
    if (!std::getline(in, header) || !std::getline(in, row)) {
        throw std::runtime_error("fit csv: expected header plus one data row");
    }
    if (!row.empty() && row.back() == '\r') row.pop_back();
    auto fields = split_csv_line(row);
    if (fields.size() != 6) throw std::runtime_error("fit csv: expected 6 fields");
    ScalingFit fit;
    try {
        fit.exponent = std::stod(fields[0]);
        fit.exponent_stderr = std::stod(fields[1]);
        fit.amplitude = std::stod(fields[2]);
        fit.r_squared = std::stod(fields[3]);
        fit.n_bins_used = std::stoi(fields[4]);
    } catch (const std::exception&) {
        throw std::runtime_error("fit csv: invalid number");
    }
    fit.estimator = estimator_from_name(fields[5]);
    return fit;
}

} // namespace collabmetrics
