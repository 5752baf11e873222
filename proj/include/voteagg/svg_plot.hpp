#ifndef VOTEAGG_SVG_PLOT_HPP
#define VOTEAGG_SVG_PLOT_HPP

#include <string>
#include <vector>

#include "voteagg/sweep.hpp"

namespace voteagg {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Renders a small line chart as a standalone SVG document.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<PlotSeries>& series);

/// Writes accuracy.svg, seconds.svg and iterations.svg (metric vs. k, one
/// line per algorithm) into `directory`.
void write_sweep_plots(const SweepReport& sweep, const std::string& directory);

}  // namespace voteagg

#endif  // VOTEAGG_SVG_PLOT_HPP
