#include "voteagg/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "voteagg/errors.hpp"

namespace voteagg {

namespace {

constexpr int kWidth = 560;
constexpr int kHeight = 360;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 120;  // room for the legend
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#4363d8", "#3cb44b", "#e6194b", "#f58231",
                          "#911eb4", "#469990", "#9a6324", "#000075"};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const PlotSeries& s : series) {
    for (double v : s.x) {
      xmin = std::min(xmin, v);
      xmax = std::max(xmax, v);
    }
    for (double v : s.y) {
      if (!std::isfinite(v)) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; }
  if (!std::isfinite(ymin)) { ymin = 0; ymax = 1; }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) { ymax = ymin + 0.5; ymin -= 0.5; }
  const double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto sx = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
  const auto sy = [&](double y) {
    return kMarginTop + plot_h - (y - ymin) / (ymax - ymin) * plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";

  // axes
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
      << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    svg << "<text x=\"" << sx(xv) << "\" y=\"" << kMarginTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << sy(yv) + 4
        << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << sy(yv) << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << sy(yv)
        << "\" stroke=\"#dddddd\" stroke-dasharray=\"3,3\"/>\n";
  }
  svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << x_label << "</text>\n";
  svg << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2
      << ")\">" << y_label << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < series[i].x.size(); ++j) {
      if (!std::isfinite(series[i].y[j])) continue;
      svg << sx(series[i].x[j]) << ',' << sy(series[i].y[j]) << ' ';
    }
    svg << "\"/>\n";
    for (std::size_t j = 0; j < series[i].x.size(); ++j) {
      if (!std::isfinite(series[i].y[j])) continue;
      svg << "<circle cx=\"" << sx(series[i].x[j]) << "\" cy=\"" << sy(series[i].y[j])
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kMarginTop + 16.0 * static_cast<double>(i);
    svg << "<line x1=\"" << kMarginLeft + plot_w + 10 << "\" y1=\"" << ly + 4 << "\" x2=\""
        << kMarginLeft + plot_w + 30 << "\" y2=\"" << ly + 4 << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kMarginLeft + plot_w + 34 << "\" y=\"" << ly + 8 << "\">"
        << series[i].name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_sweep_plots(const SweepReport& sweep, const std::string& directory) {
  std::filesystem::create_directories(directory);
  const struct {
    const char* file;
    const char* label;
    double (*pick)(const SweepCell&);
  } panels[] = {
      {"accuracy.svg", "accuracy", [](const SweepCell& c) { return c.accuracy; }},
      {"seconds.svg", "seconds", [](const SweepCell& c) { return c.seconds; }},
      {"iterations.svg", "iterations", [](const SweepCell& c) { return c.iterations; }},
  };
  for (const auto& panel : panels) {
    std::vector<PlotSeries> series;
    for (Algorithm a : sweep.algorithms) {
      PlotSeries s;
      s.name = algorithm_name(a);
      for (int k : sweep.ks) {
        s.x.push_back(k);
        s.y.push_back(panel.pick(sweep.cell(k, a)));
      }
      series.push_back(std::move(s));
    }
    // merged baseline results from other implementations, one series per name
    for (const ExternalCell& cell : sweep.external) {
      PlotSeries* s = nullptr;
      for (PlotSeries& existing : series)
        if (existing.name == cell.algorithm) s = &existing;
      if (!s) {
        series.push_back({cell.algorithm, {}, {}});
        s = &series.back();
      }
      s->x.push_back(cell.k);
      if (std::string(panel.label) == "accuracy")
        s->y.push_back(cell.accuracy);
      else if (std::string(panel.label) == "seconds")
        s->y.push_back(cell.seconds);
      else
        s->y.push_back(cell.iterations);
    }
    const std::string path = directory + "/" + panel.file;
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << render_line_chart(std::string(panel.label) + " vs annotators", "annotators per question",
                             panel.label, series);
  }
}

}  // namespace voteagg
