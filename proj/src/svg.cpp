#include "paleo/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "paleo/special.hpp"

namespace paleo::report {

namespace {

// Figure styling, kept in one place.
constexpr int kWidth = 800;
constexpr int kHeight = 500;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 25.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;
constexpr const char* kMeanColor = "#1f77b4";
constexpr const char* kMapColor = "#d62728";
constexpr const char* kBandColor = "#1f77b4";
constexpr const char* kBandOpacity = "0.25";
constexpr const char* kAxisColor = "#333333";
constexpr const char* kFont = "font-family=\"sans-serif\" font-size=\"13\"";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string year_label(double year) {
    double y = std::round(year);
    if (y < 0) return num(-y) + " BCE";
    if (y > 0) return num(y) + " CE";
    return "0";
}

// Round tick spacing to a 1/2/5 decade.
double nice_step(double span, int target_ticks) {
    double raw = span / target_ticks;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double frac = raw / mag;
    double step = frac < 1.5 ? 1.0 : frac < 3.5 ? 2.0 : frac < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

struct Frame {
    double x0, x1, y0, y1;  // data ranges
    double sx(double x) const {
        return kMarginLeft + (x - x0) / (x1 - x0) * (kWidth - kMarginLeft - kMarginRight);
    }
    double sy(double y) const {
        return kHeight - kMarginBottom -
               (y - y0) / (y1 - y0) * (kHeight - kMarginTop - kMarginBottom);
    }
};

void open_svg(std::string& s) {
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "width=\"800\" height=\"500\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
}

void axes(std::string& s, const Frame& f, const std::string& x_title,
          const std::string& y_title, bool calendar_x) {
    s += "<g stroke=\"" + std::string(kAxisColor) + "\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + num(f.sx(f.x0)) + "\" y1=\"" + num(f.sy(f.y0)) + "\" x2=\"" +
         num(f.sx(f.x1)) + "\" y2=\"" + num(f.sy(f.y0)) + "\"/>\n";
    s += "<line x1=\"" + num(f.sx(f.x0)) + "\" y1=\"" + num(f.sy(f.y0)) + "\" x2=\"" +
         num(f.sx(f.x0)) + "\" y2=\"" + num(f.sy(f.y1)) + "\"/>\n";
    s += "</g>\n";

    double xstep = nice_step(f.x1 - f.x0, 6);
    double first = std::ceil(f.x0 / xstep) * xstep;
    for (double t = first; t <= f.x1 + 1e-9 * xstep; t += xstep) {
        double px = f.sx(t);
        s += "<line x1=\"" + num(px) + "\" y1=\"" + num(f.sy(f.y0)) + "\" x2=\"" + num(px) +
             "\" y2=\"" + num(f.sy(f.y0) + 5) + "\" stroke=\"" + kAxisColor + "\"/>\n";
        std::string label = calendar_x ? year_label(t) : num(t);
        s += "<text x=\"" + num(px) + "\" y=\"" + num(f.sy(f.y0) + 20) + "\" " + kFont +
             " fill=\"" + kAxisColor + "\" text-anchor=\"middle\">" + label + "</text>\n";
    }
    double ystep = nice_step(f.y1 - f.y0, 5);
    double yfirst = std::ceil(f.y0 / ystep) * ystep;
    for (double t = yfirst; t <= f.y1 + 1e-9 * ystep; t += ystep) {
        double py = f.sy(t);
        s += "<line x1=\"" + num(f.sx(f.x0) - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
             num(f.sx(f.x0)) + "\" y2=\"" + num(py) + "\" stroke=\"" + kAxisColor + "\"/>\n";
        s += "<text x=\"" + num(f.sx(f.x0) - 8) + "\" y=\"" + num(py + 4) + "\" " + kFont +
             " fill=\"" + kAxisColor + "\" text-anchor=\"end\">" + num(t) + "</text>\n";
    }
    s += "<text x=\"" + num(0.5 * (f.sx(f.x0) + f.sx(f.x1))) + "\" y=\"" +
         num(kHeight - 15.0) + "\" " + kFont + " fill=\"" + kAxisColor +
         "\" text-anchor=\"middle\">" + x_title + "</text>\n";
    s += "<text x=\"18\" y=\"" + num(0.5 * (f.sy(f.y0) + f.sy(f.y1))) + "\" " + kFont +
         " fill=\"" + std::string(kAxisColor) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(0.5 * (f.sy(f.y0) + f.sy(f.y1))) + ")\">" + y_title + "</text>\n";
}

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     const Frame& f, const char* color, const char* dash) {
    std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                    "\" stroke-width=\"1.5\"";
    if (dash) s += " stroke-dasharray=\"" + std::string(dash) + "\"";
    s += " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        s += num(f.sx(xs[i])) + "," + num(f.sy(ys[i]));
    }
    s += "\"/>\n";
    return s;
}

}  // namespace

std::string render_trajectory_svg(const PosteriorSummary& summary,
                                  const model::TimeGrid& grid) {
    const auto& rows = summary.trajectory;
    if (rows.empty()) {
        throw std::invalid_argument("render_trajectory_svg: empty trajectory");
    }
    if (rows.size() != grid.n_bins()) {
        throw std::invalid_argument("render_trajectory_svg: trajectory/grid mismatch");
    }

    double ymax = 0.0;
    for (const auto& r : rows) {
        ymax = std::max({ymax, r.mean, r.map, r.q75});
    }
    Frame f{static_cast<double>(grid.start_year()), static_cast<double>(grid.end_year()),
            0.0, ymax * 1.05};
    if (rows.size() == 1) {
        // Give the single midpoint some horizontal room.
        f.x0 = rows[0].year - grid.bin_width();
        f.x1 = rows[0].year + grid.bin_width();
    }

    std::string s;
    open_svg(s);
    s += "<title>Posterior population trajectory</title>\n";

    // Interquartile band, clamped at zero population.
    std::string band = "<path fill=\"" + std::string(kBandColor) + "\" fill-opacity=\"" +
                       kBandOpacity + "\" stroke=\"none\" d=\"";
    if (rows.size() == 1) {
        double x = f.sx(rows[0].year);
        band += "M" + num(x - 6) + " " + num(f.sy(std::max(0.0, rows[0].q25)));
        band += " L" + num(x - 6) + " " + num(f.sy(rows[0].q75));
        band += " L" + num(x + 6) + " " + num(f.sy(rows[0].q75));
        band += " L" + num(x + 6) + " " + num(f.sy(std::max(0.0, rows[0].q25)));
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            band += (i == 0 ? "M" : " L") + num(f.sx(rows[i].year)) + " " +
                    num(f.sy(rows[i].q75));
        }
        for (std::size_t i = rows.size(); i-- > 0;) {
            band += " L" + num(f.sx(rows[i].year)) + " " +
                    num(f.sy(std::max(0.0, rows[i].q25)));
        }
    }
    band += " Z\"/>\n";
    s += band;

    if (rows.size() == 1) {
        s += "<circle cx=\"" + num(f.sx(rows[0].year)) + "\" cy=\"" + num(f.sy(rows[0].mean)) +
             "\" r=\"4\" fill=\"" + kMeanColor + "\"/>\n";
        s += "<circle cx=\"" + num(f.sx(rows[0].year)) + "\" cy=\"" + num(f.sy(rows[0].map)) +
             "\" r=\"4\" fill=\"" + kMapColor + "\"/>\n";
    } else {
        std::vector<double> xs, mean, map;
        xs.reserve(rows.size());
        for (const auto& r : rows) {
            xs.push_back(r.year);
            mean.push_back(r.mean);
            map.push_back(r.map);
        }
        s += polyline(xs, mean, f, kMeanColor, nullptr);
        s += polyline(xs, map, f, kMapColor, "6,4");
    }

    axes(s, f, "year", "population (persons)", true);

    // Legend.
    s += "<g " + std::string(kFont) + " fill=\"" + kAxisColor + "\">\n";
    s += "<rect x=\"100\" y=\"18\" width=\"18\" height=\"10\" fill=\"" +
         std::string(kBandColor) + "\" fill-opacity=\"" + kBandOpacity + "\"/>"
         "<text x=\"124\" y=\"27\">interquartile range</text>\n";
    s += "<line x1=\"280\" y1=\"23\" x2=\"310\" y2=\"23\" stroke=\"" +
         std::string(kMeanColor) + "\" stroke-width=\"1.5\"/><text x=\"316\" y=\"27\">mean</text>\n";
    s += "<line x1=\"390\" y1=\"23\" x2=\"420\" y2=\"23\" stroke=\"" + std::string(kMapColor) +
         "\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/><text x=\"426\" y=\"27\">MAP</text>\n";
    s += "</g>\n";

    s += "</svg>\n";
    return s;
}

std::string render_density_svg(const infer::GuideState& guide) {
    if (guide.dim() < 3) {
        throw std::invalid_argument("render_density_svg: guide has no shared latents");
    }
    std::size_t j = guide.n_bins;
    struct Panel {
        const char* title;
        double loc, scale;
        bool logit;
    } panels[3] = {
        {"loss rate (per year)", guide.locations[j], guide.scales[j], false},
        {"scaling factor (persons)", guide.locations[j + 1], guide.scales[j + 1], false},
        {"sampling probability", guide.locations[j + 2], guide.scales[j + 2], true},
    };

    std::string s;
    open_svg(s);
    s += "<title>Posterior parameter densities</title>\n";

    const double panel_w = (kWidth - 60.0) / 3.0;
    const int n_pts = 256;
    for (int k = 0; k < 3; ++k) {
        const auto& p = panels[k];
        double lo, hi;
        if (p.logit) {
            lo = dists::logit_normal_quantile(p.loc, p.scale, 0.001);
            hi = dists::logit_normal_quantile(p.loc, p.scale, 0.999);
        } else {
            lo = dists::lognormal_quantile({p.loc, p.scale}, 0.001);
            hi = dists::lognormal_quantile({p.loc, p.scale}, 0.999);
        }
        std::vector<double> xs(n_pts), ys(n_pts);
        double ymax = 0.0;
        for (int i = 0; i < n_pts; ++i) {
            double x = lo + (hi - lo) * i / (n_pts - 1);
            double ld;
            if (p.logit) {
                double z = dists::logit(x);
                double u = (z - p.loc) / p.scale;
                ld = -0.5 * u * u - 0.5 * dists::kLogTwoPi - std::log(p.scale) - std::log(x) -
                     std::log1p(-x);
            } else {
                ld = dists::log_pdf_lognormal(x, {p.loc, p.scale});
            }
            xs[i] = x;
            ys[i] = std::exp(ld);
            ymax = std::max(ymax, ys[i]);
        }
        double px0 = 40.0 + k * (panel_w + 10.0);
        double px1 = px0 + panel_w;
        double py0 = kHeight - 70.0, py1 = 60.0;
        auto sx = [&](double x) { return px0 + (x - lo) / (hi - lo) * (px1 - px0); };
        auto sy = [&](double y) { return py0 - y / (ymax * 1.05) * (py0 - py1); };

        std::string path = "<path fill=\"" + std::string(kBandColor) + "\" fill-opacity=\"" +
                           kBandOpacity + "\" stroke=\"" + kMeanColor +
                           "\" stroke-width=\"1.5\" d=\"M" + num(sx(xs[0])) + " " + num(py0);
        for (int i = 0; i < n_pts; ++i) {
            path += " L" + num(sx(xs[i])) + " " + num(sy(ys[i]));
        }
        path += " L" + num(sx(xs[n_pts - 1])) + " " + num(py0) + " Z\"/>\n";
        s += path;

        s += "<line x1=\"" + num(px0) + "\" y1=\"" + num(py0) + "\" x2=\"" + num(px1) +
             "\" y2=\"" + num(py0) + "\" stroke=\"" + kAxisColor + "\"/>\n";
        for (double frac : {0.0, 0.5, 1.0}) {
            double x = lo + frac * (hi - lo);
            s += "<text x=\"" + num(sx(x)) + "\" y=\"" + num(py0 + 18) + "\" " + kFont +
                 " fill=\"" + kAxisColor + "\" text-anchor=\"middle\">" + num(x) + "</text>\n";
        }
        s += "<text x=\"" + num(0.5 * (px0 + px1)) + "\" y=\"40\" " + std::string(kFont) +
             " fill=\"" + kAxisColor + "\" text-anchor=\"middle\">" + p.title + "</text>\n";
    }

    s += "</svg>\n";
    return s;
}

}  // namespace paleo::report
