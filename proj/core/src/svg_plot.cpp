#include "arq/svg_plot.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "arq/errors.hpp"

namespace arq {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fixed(double v, int precision = 2) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

const AggregateResult* find_aggregate(const ConditionReport& cr, Metric m) {
    for (const AggregateResult& a : cr.aggregates)
        if (a.metric == m) return &a;
    return nullptr;
}

}  // namespace

double x_pixel(const ReliancePlot& plot, double rair) {
    const double span = plot.width - plot.margin_left - plot.margin_right;
    return plot.margin_left + rair * span;
}

double y_pixel(const ReliancePlot& plot, double rsr) {
    const double span = plot.height - plot.margin_top - plot.margin_bottom;
    return plot.margin_top + (1.0 - rsr) * span;
}

ReliancePlot make_reliance_plot(const AnalysisReport& report) {
    ReliancePlot plot;
    plot.threshold = report.options.threshold;
    for (const ConditionReport& cr : report.conditions) {
        const AggregateResult* rair_agg = find_aggregate(cr, Metric::Rair);
        const AggregateResult* rsr_agg = find_aggregate(cr, Metric::Rsr);
        if (!rair_agg || !rsr_agg) continue;
        if (!rair_agg->defined() || !rsr_agg->defined()) continue;
        PlotPoint p;
        p.condition = cr.condition;
        p.rair_mean = rair_agg->mean;
        p.rsr_mean = rsr_agg->mean;
        p.rair_se = rair_agg->std_error.value_or(0.0);
        p.rsr_se = rsr_agg->std_error.value_or(0.0);
        plot.points.push_back(std::move(p));
    }
    if (plot.points.empty())
        throw PreconditionError("no condition has both reliance metrics defined; nothing to plot");
    return plot;
}

std::string render_svg(const ReliancePlot& plot) {
    const double x0 = x_pixel(plot, 0.0), x1 = x_pixel(plot, 1.0);
    const double y0 = y_pixel(plot, 0.0), y1 = y_pixel(plot, 1.0);
    const double tau = plot.threshold.value();
    const double xt = x_pixel(plot, tau), yt = y_pixel(plot, tau);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\""
        << plot.height << "\" viewBox=\"0 0 " << plot.width << " " << plot.height << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << plot.width << "\" height=\"" << plot.height
        << "\" fill=\"#ffffff\"/>\n";

    // Appropriate-reliance region: both metrics strictly above the threshold.
    svg << "<rect x=\"" << fixed(xt) << "\" y=\"" << fixed(y1) << "\" width=\""
        << fixed(x1 - xt) << "\" height=\"" << fixed(yt - y1)
        << "\" fill=\"#e9f3ec\"/>\n";

    // Grid and ticks every 0.25.
    for (int i = 0; i <= 4; ++i) {
        const double v = 0.25 * i;
        const double gx = x_pixel(plot, v);
        const double gy = y_pixel(plot, v);
        svg << "<line x1=\"" << fixed(gx) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(gx)
            << "\" y2=\"" << fixed(y1) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(gy) << "\" x2=\"" << fixed(x1)
            << "\" y2=\"" << fixed(gy) << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fixed(gx) << "\" y=\"" << fixed(y0 + 18)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" "
               "fill=\"#333333\">"
            << fixed(v) << "</text>\n";
        svg << "<text x=\"" << fixed(x0 - 8) << "\" y=\"" << fixed(gy + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" "
               "fill=\"#333333\">"
            << fixed(v) << "</text>\n";
    }

    // Baseline threshold, dashed on both axes.
    svg << "<line x1=\"" << fixed(xt) << "\" y1=\"" << fixed(y0) << "\" x2=\"" << fixed(xt)
        << "\" y2=\"" << fixed(y1)
        << "\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    svg << "<line x1=\"" << fixed(x0) << "\" y1=\"" << fixed(yt) << "\" x2=\"" << fixed(x1)
        << "\" y2=\"" << fixed(yt)
        << "\" stroke=\"#888888\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";

    // Frame.
    svg << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y1) << "\" width=\"" << fixed(x1 - x0)
        << "\" height=\"" << fixed(y0 - y1)
        << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // Axis titles and footnote.
    svg << "<text x=\"" << fixed((x0 + x1) / 2.0) << "\" y=\"" << fixed(y0 + 40)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
           "fill=\"#000000\">RAIR</text>\n";
    svg << "<text x=\"" << fixed(x0 - 40) << "\" y=\"" << fixed((y0 + y1) / 2.0)
        << "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 "
        << fixed(x0 - 40) << " " << fixed((y0 + y1) / 2.0) << ")\" fill=\"#000000\">RSR</text>\n";
    svg << "<text x=\"" << fixed(x1) << "\" y=\"" << fixed(y0 + 40)
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\" "
           "fill=\"#666666\">error bars: &#177;1 SE; baseline "
        << fixed(tau) << "</text>\n";

    // Condition markers with +-1 SE bars on both axes.
    const int n_colors = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
    for (std::size_t i = 0; i < plot.points.size(); ++i) {
        const PlotPoint& p = plot.points[i];
        const char* color = kPalette[i % n_colors];
        const double cx = x_pixel(plot, p.rair_mean);
        const double cy = y_pixel(plot, p.rsr_mean);
        const double ex0 = x_pixel(plot, p.rair_mean - p.rair_se);
        const double ex1 = x_pixel(plot, p.rair_mean + p.rair_se);
        const double ey0 = y_pixel(plot, p.rsr_mean - p.rsr_se);
        const double ey1 = y_pixel(plot, p.rsr_mean + p.rsr_se);
        svg << "<g stroke=\"" << color << "\" stroke-width=\"1.5\">\n";
        svg << "<line x1=\"" << fixed(ex0) << "\" y1=\"" << fixed(cy) << "\" x2=\"" << fixed(ex1)
            << "\" y2=\"" << fixed(cy) << "\"/>\n";
        svg << "<line x1=\"" << fixed(ex0) << "\" y1=\"" << fixed(cy - 4) << "\" x2=\""
            << fixed(ex0) << "\" y2=\"" << fixed(cy + 4) << "\"/>\n";
        svg << "<line x1=\"" << fixed(ex1) << "\" y1=\"" << fixed(cy - 4) << "\" x2=\""
            << fixed(ex1) << "\" y2=\"" << fixed(cy + 4) << "\"/>\n";
        svg << "<line x1=\"" << fixed(cx) << "\" y1=\"" << fixed(ey0) << "\" x2=\"" << fixed(cx)
            << "\" y2=\"" << fixed(ey1) << "\"/>\n";
        svg << "<line x1=\"" << fixed(cx - 4) << "\" y1=\"" << fixed(ey0) << "\" x2=\""
            << fixed(cx + 4) << "\" y2=\"" << fixed(ey0) << "\"/>\n";
        svg << "<line x1=\"" << fixed(cx - 4) << "\" y1=\"" << fixed(ey1) << "\" x2=\""
            << fixed(cx + 4) << "\" y2=\"" << fixed(ey1) << "\"/>\n";
        svg << "</g>\n";
        svg << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\"4.5\" fill=\""
            << color << "\"/>\n";
    }

    // Legend, one row per condition.
    for (std::size_t i = 0; i < plot.points.size(); ++i) {
        const char* color = kPalette[i % n_colors];
        const double lx = x0 + 14;
        const double ly = y1 + 16 + 18.0 * static_cast<double>(i);
        svg << "<circle cx=\"" << fixed(lx) << "\" cy=\"" << fixed(ly - 4) << "\" r=\"4.5\" fill=\""
            << color << "\"/>\n";
        svg << "<text x=\"" << fixed(lx + 10) << "\" y=\"" << fixed(ly)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">"
            << xml_escape(plot.points[i].condition) << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string plot_points_csv(const ReliancePlot& plot) {
    std::string out = "condition,rair,rair_se,rsr,rsr_se,threshold\n";
    for (const PlotPoint& p : plot.points) {
        out += p.condition;
        out += ',';
        out += fixed(p.rair_mean, 6);
        out += ',';
        out += fixed(p.rair_se, 6);
        out += ',';
        out += fixed(p.rsr_mean, 6);
        out += ',';
        out += fixed(p.rsr_se, 6);
        out += ',';
        out += fixed(plot.threshold.value(), 6);
        out += '\n';
    }
    return out;
}

}  // namespace arq
