#pragma once

#include <optional>
#include <string>

namespace collabmetrics {

/// Renders a binned curve CSV (and optionally its fit CSV) as a log-log SVG
/// plot: mean in red, median in magenta, fitted power law as a dotted blue
/// line. Pure function of the CSV text.
std::string render_curve_svg(const std::string& curve_csv,
                             const std::optional<std::string>& fit_csv = std::nullopt);

/// Renders a log-binned size histogram from a profiles CSV (mean_naut
/// column). Pure function of the CSV text.
std::string render_histogram_svg(const std::string& profiles_csv, int bins_per_decade = 4);

} // namespace collabmetrics
