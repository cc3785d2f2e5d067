#include <erdlab/svg.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace erdlab {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 30;
constexpr double kTop = 40;
constexpr double kBottom = 50;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::ofstream open(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finalize() {
    if (lo > hi) {
      lo = 0;
      hi = 1;
    }
    if (hi - lo < 1e-300) {
      lo -= 1;
      hi += 1;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

}  // namespace

void svg_chart(const std::string& path, const SvgChartOptions& options,
               const std::vector<SvgSeries>& series) {
  Bounds bx, by;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (options.log_y && y <= 0) continue;
      bx.add(x);
      by.add(options.log_y ? std::log10(y) : y);
    }
  }
  bx.finalize();
  by.finalize();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + plot_w * bx.frac(x); };
  const auto py = [&](double y) {
    return kTop + plot_h * (1.0 - by.frac(options.log_y ? std::log10(y) : y));
  };

  auto out = open(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"15\">" << escape(options.title) << "</text>\n";

  out << "<g stroke=\"#333\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n";
  out << "</g>\n";

  out << "<g font-family=\"monospace\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    const double vx = bx.lo + fx * (bx.hi - bx.lo);
    const double cx = kLeft + plot_w * fx;
    out << "<line x1=\"" << cx << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << cx << "\" y2=\""
        << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << cx << "\" y=\"" << kTop + plot_h + 18 << "\" text-anchor=\"middle\">"
        << num(vx) << "</text>\n";

    const double vy = by.lo + fx * (by.hi - by.lo);
    const double cy = kTop + plot_h * (1.0 - fx);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << cy << "\" x2=\"" << kLeft << "\" y2=\""
        << cy << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << cy + 4 << "\" text-anchor=\"end\">"
        << num(options.log_y ? std::pow(10.0, vy) : vy) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">" << escape(options.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << kTop + plot_h / 2 << ")\">" << escape(options.y_label)
      << "</text>\n";
  out << "</g>\n";

  if (options.diagonal && !options.log_y) {
    const double lo = std::max(bx.lo, by.lo);
    const double hi = std::min(bx.hi, by.hi);
    if (lo < hi)
      out << "<line x1=\"" << px(lo) << "\" y1=\"" << py(lo) << "\" x2=\"" << px(hi)
          << "\" y2=\"" << py(hi)
          << "\" stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"5,4\"/>\n";
  }

  for (const auto& s : series) {
    std::vector<std::pair<double, double>> kept;
    for (const auto& p : s.points) {
      if (!std::isfinite(p.first) || !std::isfinite(p.second)) continue;
      if (options.log_y && p.second <= 0) continue;
      kept.push_back(p);
    }
    if (kept.empty()) continue;
    if (s.line) {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : kept) out << num(px(x)) << "," << num(py(y)) << " ";
      out << "\"/>\n";
    } else {
      out << "<g fill=\"" << s.color << "\" fill-opacity=\"0.7\">\n";
      for (const auto& [x, y] : kept)
        out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"2.5\"/>\n";
      out << "</g>\n";
    }
  }

  double ly = kTop + 14;
  out << "<g font-family=\"monospace\" font-size=\"11\">\n";
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    const double lx = kLeft + plot_w - 150;
    out << "<rect x=\"" << lx << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"12\" fill=\""
        << s.color << "\"/>\n";
    out << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 1 << "\">" << escape(s.label)
        << "</text>\n";
    ly += 16;
  }
  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void svg_heatmap(const std::string& path, const std::string& title, const Matrix& values) {
  const auto n = values.rows();
  const auto m = values.cols();
  if (n == 0 || m == 0) throw std::invalid_argument("svg_heatmap: empty matrix");
  const double cell = std::clamp(512.0 / static_cast<double>(std::max(n, m)), 1.0, 16.0);
  const double grid_w = cell * static_cast<double>(m);
  const double grid_h = cell * static_cast<double>(n);
  const double width = grid_w + 40;
  const double height = grid_h + 60;

  const double vmax = values.cwiseAbs().maxCoeff();
  const bool diverging = values.minCoeff() < 0;
  const double scale = vmax > 0 ? vmax : 1.0;

  auto out = open(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"14\">" << escape(title) << "</text>\n";
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double v = values(i, j) / scale;
      int r = 255, g = 255, b = 255;
      if (diverging) {
        // -1 blue, 0 white, +1 red
        const double a = std::clamp(std::abs(v), 0.0, 1.0);
        if (v >= 0) {
          g = b = static_cast<int>(std::lround(255 * (1 - a)));
        } else {
          r = g = static_cast<int>(std::lround(255 * (1 - a)));
        }
      } else {
        const double a = std::clamp(v, 0.0, 1.0);
        g = static_cast<int>(std::lround(255 * (1 - 0.7 * a)));
        b = static_cast<int>(std::lround(255 * (1 - a)));
      }
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", r, g, b);
      out << "<rect x=\"" << num(20 + cell * static_cast<double>(j)) << "\" y=\""
          << num(40 + cell * static_cast<double>(i)) << "\" width=\"" << num(cell)
          << "\" height=\"" << num(cell) << "\" fill=\"" << color << "\"/>\n";
    }
  }
  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace erdlab
