#include "dtasa/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dtasa {

namespace {

const int kMargin = 48;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace

SvgPlot::SvgPlot(double x_min, double x_max, double y_min, double y_max, int width, int height,
                 std::string x_label, std::string y_label)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width),
      height_(height), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

double SvgPlot::px(double x) const {
    return kMargin + (x - x_min_) / (x_max_ - x_min_) * (width_ - 2 * kMargin);
}

double SvgPlot::py(double y) const {
    return height_ - kMargin - (y - y_min_) / (y_max_ - y_min_) * (height_ - 2 * kMargin);
}

void SvgPlot::polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, double stroke_width, const std::string& dash) {
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke_width
      << "\"";
    if (!dash.empty()) s << " stroke-dasharray=\"" << dash << "\"";
    s << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s << ' ';
        s << num(px(xs[i])) << ',' << num(py(ys[i]));
    }
    s << "\"/>";
    body_.push_back(s.str());
}

void SvgPlot::circles(const std::vector<double>& xs, const std::vector<double>& ys,
                      const std::string& color, double radius, bool filled) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::ostringstream s;
        s << "<circle cx=\"" << num(px(xs[i])) << "\" cy=\"" << num(py(ys[i])) << "\" r=\""
          << radius << "\" stroke=\"" << color << "\" fill=\"" << (filled ? color : "none")
          << "\"/>";
        body_.push_back(s.str());
    }
}

void SvgPlot::diamonds(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, double half) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double cx = px(xs[i]), cy = py(ys[i]);
        std::ostringstream s;
        s << "<polygon fill=\"" << color << "\" points=\"" << num(cx) << ',' << num(cy - half)
          << ' ' << num(cx + half) << ',' << num(cy) << ' ' << num(cx) << ',' << num(cy + half)
          << ' ' << num(cx - half) << ',' << num(cy) << "\"/>";
        body_.push_back(s.str());
    }
}

void SvgPlot::rug(const std::vector<double>& xs, const std::string& color, double len) {
    const double y0 = height_ - kMargin;
    for (double x : xs) {
        std::ostringstream s;
        s << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px(x))
          << "\" y2=\"" << num(y0 - len) << "\" stroke=\"" << color << "\"/>";
        body_.push_back(s.str());
    }
}

void SvgPlot::label(double x, double y, const std::string& text, const std::string& color) {
    std::ostringstream s;
    s << "<text x=\"" << num(px(x)) << "\" y=\"" << num(py(y)) << "\" fill=\"" << color
      << "\" font-size=\"11\">" << text << "</text>";
    body_.push_back(s.str());
}

std::string SvgPlot::render() const {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
    s << "<rect width=\"" << width_ << "\" height=\"" << height_ << "\" fill=\"white\"/>\n";
    // axes
    s << "<line x1=\"" << kMargin << "\" y1=\"" << height_ - kMargin << "\" x2=\""
      << width_ - kMargin << "\" y2=\"" << height_ - kMargin << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << height_ - kMargin << "\" stroke=\"black\"/>\n";
    // axis extremes
    s << "<text x=\"" << kMargin << "\" y=\"" << height_ - kMargin + 16
      << "\" font-size=\"10\">" << num(x_min_) << "</text>\n";
    s << "<text x=\"" << width_ - kMargin - 12 << "\" y=\"" << height_ - kMargin + 16
      << "\" font-size=\"10\">" << num(x_max_) << "</text>\n";
    s << "<text x=\"" << 8 << "\" y=\"" << height_ - kMargin << "\" font-size=\"10\">"
      << num(y_min_) << "</text>\n";
    s << "<text x=\"" << 8 << "\" y=\"" << kMargin + 4 << "\" font-size=\"10\">" << num(y_max_)
      << "</text>\n";
    if (!x_label_.empty()) {
        s << "<text x=\"" << width_ / 2 - 20 << "\" y=\"" << height_ - 10
          << "\" font-size=\"12\">" << x_label_ << "</text>\n";
    }
    if (!y_label_.empty()) {
        s << "<text x=\"12\" y=\"" << height_ / 2 << "\" font-size=\"12\" transform=\"rotate(-90 12 "
          << height_ / 2 << ")\">" << y_label_ << "</text>\n";
    }
    for (const auto& b : body_) s << b << '\n';
    s << "</svg>\n";
    return s.str();
}

void SvgPlot::save(const std::string& path) const {
    std::ofstream out(path);
    out << render();
}

} // namespace dtasa
