#pragma once

// Minimal standalone SVG rendering for walks (with the ±sqrt(t) envelope),
// Gaussian-prime scatter plots and averaged ratio curves.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "legwalk/errors.hpp"
#include "legwalk/gaussian.hpp"
#include "legwalk/walks.hpp"

namespace legwalk {

struct SvgStyle {
    int width = 900;
    int height = 500;
    bool envelope = false;    ///< draw +sqrt(t) and -sqrt(t) for walks
    bool timestamp = true;    ///< leading `<!-- generated ... -->` comment
    std::size_t max_points = 0;  ///< stride-decimate polylines above this many points (0 = never)
    double marker_radius = 1.5;
    std::string title;
};

namespace detail {

inline std::string num(double v) { return format_fixed(v, 2); }

inline std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
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

inline std::string svg_open(const SvgStyle& style) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (style.timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out += std::string("<!-- generated ") + buf + " -->\n";
    }
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
           std::to_string(style.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty())
        out += "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + svg_escape(style.title) +
               "</text>\n";
    return out;
}

/// Affine map from data space to the plot area (y flipped).
struct Frame {
    double x0, x1, y0, y1;
    double left, top, w, h;
    [[nodiscard]] double px(double x) const { return left + (x1 == x0 ? 0 : (x - x0) / (x1 - x0) * w); }
    [[nodiscard]] double py(double y) const { return top + h - (y1 == y0 ? h / 2 : (y - y0) / (y1 - y0) * h); }
};

inline Frame frame_for(const SvgStyle& s, double x0, double x1, double y0, double y1) {
    constexpr double margin = 40;
    return {x0, x1, y0, y1, margin, margin, s.width - 2 * margin, s.height - 2 * margin};
}

inline std::string axis(const Frame& f) {
    std::string out;
    if (f.y0 <= 0 && f.y1 >= 0)
        out += "<line class=\"axis\" x1=\"" + num(f.px(f.x0)) + "\" y1=\"" + num(f.py(0)) + "\" x2=\"" +
               num(f.px(f.x1)) + "\" y2=\"" + num(f.py(0)) + "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    return out;
}

}  // namespace detail

/// Walk polyline through (t, S(t)) for t = 0..n, plus optional ±sqrt(t) envelope paths.
inline std::string walk_svg(const WalkSeries& w, const SvgStyle& style = {}) {
    if (w.size() == 0) throw undefined_input_error("walk_svg: empty walk");
    const auto s = w.sums();
    const double n = static_cast<double>(w.size());
    double lo = 0, hi = 0;
    for (i64 v : s) {
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
    }
    if (style.envelope) {
        lo = std::min(lo, -std::sqrt(n));
        hi = std::max(hi, std::sqrt(n));
    }
    if (lo == hi) hi = lo + 1;
    const auto f = detail::frame_for(style, 0, n, lo, hi);

    std::size_t stride = 1;
    if (style.max_points > 1 && s.size() > style.max_points) stride = (s.size() + style.max_points - 2) / (style.max_points - 1);

    std::string out = detail::svg_open(style) + detail::axis(f);
    out += "<polyline class=\"walk\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (std::size_t t = 0; t < s.size(); t += stride) {
        if (t) out += " ";
        out += detail::num(f.px(static_cast<double>(t))) + "," + detail::num(f.py(static_cast<double>(s[t])));
    }
    if ((s.size() - 1) % stride != 0)
        out += " " + detail::num(f.px(n)) + "," + detail::num(f.py(static_cast<double>(s.back())));
    out += "\"/>\n";

    if (style.envelope) {
        constexpr int samples = 200;
        for (int sign : {1, -1}) {
            out += "<path class=\"envelope\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1\" d=\"";
            for (int i = 0; i <= samples; ++i) {
                const double t = n * i / samples;
                out += (i == 0 ? "M" : " L") + detail::num(f.px(t)) + "," + detail::num(f.py(sign * std::sqrt(t)));
            }
            out += "\"/>\n";
        }
    }
    return out + "</svg>\n";
}

/// Scatter plot with equal scaling on both axes.
inline std::string scatter_svg(const std::vector<std::pair<i64, i64>>& points, const SvgStyle& style = {}) {
    if (points.empty()) throw undefined_input_error("scatter_svg: no points");
    double extent = 1;
    for (auto [x, y] : points) extent = std::max({extent, std::abs(static_cast<double>(x)), std::abs(static_cast<double>(y))});
    SvgStyle sq = style;
    sq.width = sq.height = std::min(style.width, style.height);
    const auto f = detail::frame_for(sq, -extent, extent, -extent, extent);
    std::string out = detail::svg_open(sq);
    for (auto [x, y] : points)
        out += "<circle cx=\"" + detail::num(f.px(static_cast<double>(x))) + "\" cy=\"" +
               detail::num(f.py(static_cast<double>(y))) + "\" r=\"" + detail::num(style.marker_radius) +
               "\" fill=\"black\"/>\n";
    return out + "</svg>\n";
}

/// Mean per checkpoint against log10(checkpoint), with ±1 stdev bars.
inline std::string ratio_curve_svg(const RatioCurve& c, const SvgStyle& style = {}) {
    if (c.checkpoints.empty()) throw undefined_input_error("ratio_curve_svg: empty curve");
    double lo = 1, hi = 0;
    for (std::size_t i = 0; i < c.mean.size(); ++i) {
        if (std::isnan(c.mean[i])) continue;
        lo = std::min(lo, c.mean[i] - c.stdev[i]);
        hi = std::max(hi, c.mean[i] + c.stdev[i]);
    }
    if (lo >= hi) {
        lo = 0;
        hi = 1;
    }
    const double x0 = std::log10(static_cast<double>(c.checkpoints.front()));
    const double x1 = std::log10(static_cast<double>(c.checkpoints.back()));
    const auto f = detail::frame_for(style, x0, x1 == x0 ? x0 + 1 : x1, lo, hi);
    std::string out = detail::svg_open(style);
    std::string line = "<polyline class=\"mean\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
        if (std::isnan(c.mean[i])) continue;
        const double x = f.px(std::log10(static_cast<double>(c.checkpoints[i])));
        line += (first ? "" : " ") + detail::num(x) + "," + detail::num(f.py(c.mean[i]));
        first = false;
        out += "<line class=\"stdev\" x1=\"" + detail::num(x) + "\" y1=\"" + detail::num(f.py(c.mean[i] - c.stdev[i])) +
               "\" x2=\"" + detail::num(x) + "\" y2=\"" + detail::num(f.py(c.mean[i] + c.stdev[i])) +
               "\" stroke=\"#c0392b\" stroke-width=\"1\"/>\n";
    }
    out += line + "\"/>\n";
    return out + "</svg>\n";
}

/// Every associate of the first-quadrant Gaussian primes of norm <= max_norm (four rotations).
inline std::vector<std::pair<i64, i64>> gaussian_plot_points(const PrimeTable& table, i64 max_norm) {
    std::set<std::pair<i64, i64>> seen;
    for (GaussInt z : enumerate_gaussian_primes(table, max_norm))
        for (GaussInt w : associates(z)) seen.insert({w.re, w.im});
    return {seen.begin(), seen.end()};
}

}  // namespace legwalk
