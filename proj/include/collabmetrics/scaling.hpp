#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace collabmetrics {

// One (collaboration size, index value) observation.
struct ScalingPoint {
    double n_aut = 1.0;  // >= 1
    double value = 0.0;  // >= 0
};

struct BinSummary {
    double center = 0.0;  // geometric bin center
    std::size_t count = 0;
    double mean = 0.0;
    double median = 0.0;
};

struct BinnedCurve {
    std::vector<BinSummary> bins;  // centers strictly increasing
    int bins_per_decade = 4;
    int min_bin_count = 3;
};

/// Assigns points to logarithmically spaced n_aut bins and summarises each
/// retained bin by count, mean and median. Bins with fewer than
/// min_bin_count points are dropped; if nothing survives, throws
/// std::runtime_error("insufficient data").
BinnedCurve log_bin(std::span<const ScalingPoint> points, int bins_per_decade, int min_bin_count);

enum class Estimator { Mean, Median };

std::string_view estimator_name(Estimator e);
Estimator estimator_from_name(std::string_view name);

// Power law <N_I> = C_I * n_aut^p_I fitted on the binned curve.
struct ScalingFit {
    double exponent = 0.0;         // p_I
    double amplitude = 1.0;        // C_I
    double exponent_stderr = 0.0;
    double r_squared = 1.0;
    int n_bins_used = 0;
    Estimator estimator = Estimator::Mean;
    // binning metadata, carried so fits can be checked for compatibility
    int bins_per_decade = 4;
    int min_bin_count = 3;
};

/// Ordinary least squares of log(value) on log(bin center) over the bin
/// representatives (mean or median). Needs >= 2 bins with positive values;
/// a non-positive value is an error naming the offending bin.
ScalingFit fit_power_law(const BinnedCurve& curve, Estimator estimator);

struct LogNormalFit {
    double mu_log = 0.0;     // mean of ln(v) over v > 0
    double sigma_log = 0.0;  // sample standard deviation of ln(v)
    double zero_fraction = 0.0;
    std::size_t n_values = 0;
    std::size_t n_zero = 0;
};

/// Gaussian moments of ln(v) over the strictly positive values; zeros are
/// excluded and reported via zero_fraction. Needs >= 2 positive values.
LogNormalFit fit_lognormal(std::span<const double> values);

struct ExponentDecomposition {
    double p_pap = 0.0;
    double p_cit = 0.0;
    double p_totcit = 0.0;
    double delta = 0.0;  // p_totcit - (p_cit + p_pap)
    double tolerance = 0.0;
    bool pass = false;
};

/// Checks p_totcit = p_cit + p_pap across three fits sharing binning and
/// estimator; mismatched binning metadata is an error.
ExponentDecomposition decompose_exponents(const ScalingFit& fit_pap, const ScalingFit& fit_cit,
                                          const ScalingFit& fit_totcit, double tolerance = 0.07);

/// `bin_center,count,mean,median` rows with a header.
void write_curve_csv(std::ostream& out, const BinnedCurve& curve);
BinnedCurve read_curve_csv(std::istream& in);

/// Single data row `exponent,stderr,amplitude,r2,n_bins,estimator` plus header.
void write_fit_csv(std::ostream& out, const ScalingFit& fit);
ScalingFit read_fit_csv(std::istream& in);

} // namespace collabmetrics
