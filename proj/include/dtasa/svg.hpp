#ifndef DTASA_SVG_HPP
#define DTASA_SVG_HPP

#include <string>
#include <vector>

namespace dtasa {

// Minimal SVG plot: one coordinate frame with axes, polylines, markers and
// short tick marks. No interaction, no external dependencies.
class SvgPlot {
public:
    SvgPlot(double x_min, double x_max, double y_min, double y_max, int width = 480,
            int height = 480, std::string x_label = "", std::string y_label = "");

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color, double stroke_width = 1.5,
                  const std::string& dash = "");
    void circles(const std::vector<double>& xs, const std::vector<double>& ys,
                 const std::string& color, double radius = 3.0, bool filled = false);
    void diamonds(const std::vector<double>& xs, const std::vector<double>& ys,
                  const std::string& color, double half = 4.0);
    // short vertical ticks at the bottom edge (rug plot)
    void rug(const std::vector<double>& xs, const std::string& color, double len = 8.0);
    void label(double x, double y, const std::string& text, const std::string& color = "#000");

    std::string render() const;
    void save(const std::string& path) const;

private:
    double px(double x) const;
    double py(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    int width_, height_;
    std::string x_label_, y_label_;
    std::vector<std::string> body_;
};

} // namespace dtasa

#endif
