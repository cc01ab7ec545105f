#include "thresh/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "thresh/io.hpp"

namespace thresh {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 590;
constexpr double kTop = 50;
constexpr double kBottom = 440;

struct Axis {
    double lo;
    double hi;
    double px_lo;
    double px_hi;

    double map(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

std::string num(double v) { return fixed(v, 2); }

void open_document(std::ostringstream& out, std::string_view title) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << xml_escape(title) << "</text>\n";
}

void draw_axes(std::ostringstream& out, const Axis& x, const Axis& y, const std::vector<double>& xticks,
               const std::vector<double>& yticks, int xdecimals, int ydecimals, std::string_view xlabel,
               std::string_view ylabel) {
    out << "<g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\" fill=\"none\">\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(kRight) << "\" y2=\""
        << num(kBottom) << "\"/>\n"
        << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(kBottom) << "\"/>\n"
        << "</g>\n";
    out << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (double t : xticks) {
        const double px = x.map(t);
        out << "<line x1=\"" << num(px) << "\" y1=\"" << num(kBottom) << "\" x2=\"" << num(px) << "\" y2=\""
            << num(kBottom + 5) << "\" stroke=\"#333333\"/>\n"
            << "<text x=\"" << num(px) << "\" y=\"" << num(kBottom + 18) << "\" text-anchor=\"middle\">"
            << fixed(t, xdecimals) << "</text>\n";
    }
    for (double t : yticks) {
        const double py = y.map(t);
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kRight) << "\" y2=\""
            << num(py) << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
            << fixed(t, ydecimals) << "</text>\n";
    }
    out << "</g>\n"
        << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << num(kBottom + 40)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(xlabel)
        << "</text>\n"
        << "<text x=\"18\" y=\"" << num((kTop + kBottom) / 2) << "\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " << num((kTop + kBottom) / 2)
        << ")\">" << xml_escape(ylabel) << "</text>\n";
}

struct SeriesStyle {
    const char* label;
    const char* color;
    bool dashed;
    bool square;
};

constexpr std::array<SeriesStyle, 4> kLandscapeStyles = {{
    {"Overall F1 (action)", "#1f4e9c", false, false},
    {"Mean F1 (action)", "#5b8fd6", true, true},
    {"Overall F1 (reason)", "#b2182b", false, false},
    {"Mean F1 (reason)", "#e0605a", true, true},
}};

constexpr std::array<const char*, 6> kBlues = {"#08306b", "#1f4e9c", "#2171b5", "#4292c6", "#6baed6", "#9ecae1"};
constexpr std::array<const char*, 6> kReds = {"#67000d", "#a50f15", "#cb181d", "#ef3b2c", "#fb6a4a", "#fc9272"};

}  // namespace

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string render_landscape_svg(const MetricLandscape& ls) {
    std::array<std::vector<double>, 4> pct;
    double lo = 100.0, hi = 0.0;
    for (Metric m : kMetrics) {
        auto& series = pct[static_cast<std::size_t>(m)];
        for (double v : ls.profile(m)) {
            series.push_back(100.0 * v);
            lo = std::min(lo, 100.0 * v);
            hi = std::max(hi, 100.0 * v);
        }
    }
    if (ls.grid.empty()) lo = 0.0, hi = 100.0;
    lo = std::max(0.0, std::floor(lo / 5.0) * 5.0);
    hi = std::min(100.0, std::ceil(hi / 5.0) * 5.0);
    if (hi <= lo) {
        lo = std::max(0.0, lo - 5.0);
        hi = lo + 10.0;
    }

    double xlo = ls.grid.empty() ? 0.0 : ls.grid.front();
    double xhi = ls.grid.empty() ? 1.0 : ls.grid.back();
    if (xhi - xlo < 1e-9) {
        xlo -= 0.05;
        xhi += 0.05;
    }
    const Axis x{xlo, xhi, kLeft + 15, kRight - 15};
    const Axis y{lo, hi, kBottom, kTop};

    std::vector<double> yticks;
    const double ystep = (hi - lo) > 30 ? 10.0 : 5.0;
    for (double t = lo; t <= hi + 1e-9; t += ystep) yticks.push_back(t);

    std::ostringstream out;
    open_document(out, "F1 score vs. confidence threshold");
    draw_axes(out, x, y, ls.grid, yticks, 2, 0, "Confidence threshold", "F1 score (%)");

    for (std::size_t s = 0; s < 4; ++s) {
        const auto& style = kLandscapeStyles[s];
        out << "<g class=\"series\" data-metric=\"" << metric_name(kMetrics[s]) << "\">\n"
            << "<polyline fill=\"none\" stroke=\"" << style.color << "\" stroke-width=\"2\""
            << (style.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (std::size_t k = 0; k < ls.grid.size(); ++k) {
            out << (k ? " " : "") << num(x.map(ls.grid[k])) << "," << num(y.map(pct[s][k]));
        }
        out << "\"/>\n";
        for (std::size_t k = 0; k < ls.grid.size(); ++k) {
            const double px = x.map(ls.grid[k]);
            const double py = y.map(pct[s][k]);
            if (style.square) {
                out << "<rect class=\"vertex\" x=\"" << num(px - 3.5) << "\" y=\"" << num(py - 3.5)
                    << "\" width=\"7\" height=\"7\" fill=\"" << style.color << "\"/>\n";
            } else {
                out << "<circle class=\"vertex\" cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"4\" fill=\""
                    << style.color << "\"/>\n";
            }
        }
        out << "</g>\n";
    }

    out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t s = 0; s < 4; ++s) {
        const auto& style = kLandscapeStyles[s];
        const double ly = kTop + 10 + 22.0 * static_cast<double>(s);
        out << "<line x1=\"610\" y1=\"" << num(ly) << "\" x2=\"640\" y2=\"" << num(ly) << "\" stroke=\""
            << style.color << "\" stroke-width=\"2\"" << (style.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
            << "<text x=\"648\" y=\"" << num(ly + 4) << "\">" << xml_escape(style.label) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

std::string render_pr_svg(const std::vector<PRCurve>& curves, const EvalSchema* schema) {
    const Axis x{0.0, 1.0, kLeft, kRight};
    const Axis y{0.0, 1.0, kBottom, kTop};
    const std::vector<double> ticks = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

    std::string title = "Precision-recall curves";
    if (!curves.empty()) title += " (" + std::string(to_string(curves.front().task)) + ")";

    std::ostringstream out;
    open_document(out, title);
    draw_axes(out, x, y, ticks, ticks, 1, 1, "Recall", "Precision");

    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        const auto& palette = curve.task == Task::action ? kBlues : kReds;
        const char* color = palette[c % palette.size()];
        const bool dashed = (c / palette.size()) % 2 == 1;
        out << "<g class=\"curve\" data-task=\"" << to_string(curve.task) << "\" data-class=\"" << curve.class_index
            << "\">\n<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (dashed ? " stroke-dasharray=\"5 3\"" : "") << " points=\"";
        bool first = true;
        for (const auto& p : curve.points) {
            if (p.is_grid_marker) continue;
            out << (first ? "" : " ") << num(x.map(p.recall)) << "," << num(y.map(p.precision));
            first = false;
        }
        out << "\"/>\n";
        for (const auto& p : curve.points) {
            if (!p.is_grid_marker) continue;
            out << "<circle class=\"marker\" data-threshold=\"" << fixed(p.threshold, 2) << "\" cx=\""
                << num(x.map(p.recall)) << "\" cy=\"" << num(y.map(p.precision)) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }
        out << "</g>\n";
    }

    out << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"10\">\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& curve = curves[c];
        const auto& palette = curve.task == Task::action ? kBlues : kReds;
        std::string name = "class " + std::to_string(curve.class_index);
        if (schema && curve.class_index < schema->task(curve.task).size()) {
            name = schema->task(curve.task).class_names[curve.class_index];
        }
        name += curve.average_precision ? " (AP=" + fixed(*curve.average_precision, 3) + ")" : " (AP n/a)";
        const double ly = kTop + 6 + 17.0 * static_cast<double>(c);
        out << "<rect x=\"600\" y=\"" << num(ly - 5) << "\" width=\"10\" height=\"10\" fill=\""
            << palette[c % palette.size()] << "\"/>\n"
            << "<text x=\"615\" y=\"" << num(ly + 4) << "\">" << xml_escape(name) << "</text>\n";
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace thresh
