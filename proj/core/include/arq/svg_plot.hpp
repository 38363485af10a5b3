#pragma once

#include <string>
#include <vector>

#include "arq/rational.hpp"
#include "arq/report.hpp"

namespace arq {

struct PlotPoint {
    std::string condition;
    double rair_mean = 0.0;
    double rsr_mean = 0.0;
    double rair_se = 0.0;
    double rsr_se = 0.0;
};

// The two-dimensional reliance space: RAIR on x, RSR on y, both [0, 1],
// dashed baseline lines at the threshold, and the appropriate-reliance
// region as the open quadrant above both.
struct ReliancePlot {
    std::vector<PlotPoint> points;  // one per condition with both metrics defined
    Rational threshold = Rational::make(1, 2);
    int width = 560;
    int height = 560;
    int margin_left = 70;
    int margin_top = 30;
    int margin_right = 30;
    int margin_bottom = 70;  // square plot area with the defaults
};

// Extracts plottable conditions (mean +- 1 SE per axis) from a report.
// Throws PreconditionError when no condition has both metrics defined.
ReliancePlot make_reliance_plot(const AnalysisReport& report);

// Self-contained SVG, byte-stable for identical input.
std::string render_svg(const ReliancePlot& plot);

// The plotted numbers as CSV: condition,rair,rair_se,rsr,rsr_se,threshold.
std::string plot_points_csv(const ReliancePlot& plot);

// Data-to-pixel mapping, exposed for geometry tests.
double x_pixel(const ReliancePlot& plot, double rair);
double y_pixel(const ReliancePlot& plot, double rsr);

}  // namespace arq
