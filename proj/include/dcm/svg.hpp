#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "dcm/vec.hpp"

namespace dcm {

struct SvgSeries {
  std::string label;
  std::vector<double> y;  // indexed by t
};

// Self-contained line chart: inline styling, no fonts beyond defaults, no
// timestamps, so identical inputs yield identical bytes.
inline void write_svg_line_chart(std::ostream& out, const std::string& title,
                                 const std::vector<SvgSeries>& series,
                                 bool log_y = true,
                                 const std::string& y_label = "mean gap",
                                 const std::string& x_label = "iteration t") {
  const double W = 760, H = 480;
  const double ml = 70, mr = 180, mt = 40, mb = 50;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  std::size_t tmax = 1;
  for (const auto& s : series) {
    tmax = std::max(tmax, s.y.size());
    for (double v : s.y) {
      if (!std::isfinite(v)) continue;
      if (log_y && v <= 0.0) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  if (!(ymin < ymax)) {
    ymin = log_y ? 0.1 : 0.0;
    ymax = log_y ? 10.0 : 1.0;
  }
  double lo = log_y ? std::log10(ymin) : ymin;
  double hi = log_y ? std::log10(ymax) : ymax;
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }

  auto xpix = [&](double t) {
    return ml + pw * (tmax > 1 ? t / static_cast<double>(tmax - 1) : 0.5);
  };
  auto ypix = [&](double v) {
    double u = log_y ? std::log10(v) : v;
    return mt + ph * (1.0 - (u - lo) / (hi - lo));
  };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#17becf", "#bcbd22"};
  const int npal = 10;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"24\" font-size=\"15\">" << title
      << "</text>\n";

  // frame
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#333\"/>\n";

  // y ticks (decades in log mode, 5 even ticks otherwise)
  if (log_y) {
    int d0 = static_cast<int>(std::ceil(lo - 1e-9));
    int d1 = static_cast<int>(std::floor(hi + 1e-9));
    if (d1 - d0 >= 1) {
      for (int d = d0; d <= d1; ++d) {
        double y = ypix(std::pow(10.0, d));
        out << "<line x1=\"" << ml << "\" y1=\"" << fmt(y) << "\" x2=\""
            << ml + pw << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
      }
    } else {
      // the data spans less than a decade; use even ticks in log space
      for (int i = 0; i <= 4; ++i) {
        double v = std::pow(10.0, lo + (hi - lo) * i / 4.0);
        double y = ypix(v);
        out << "<line x1=\"" << ml << "\" y1=\"" << fmt(y) << "\" x2=\""
            << ml + pw << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(v)
            << "</text>\n";
      }
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      double v = lo + (hi - lo) * i / 4.0;
      double y = ypix(v);
      out << "<line x1=\"" << ml << "\" y1=\"" << fmt(y) << "\" x2=\""
          << ml + pw << "\" y2=\"" << fmt(y)
          << "\" stroke=\"#ddd\" stroke-width=\"1\"/>\n";
      out << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(y + 4)
          << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(v)
          << "</text>\n";
    }
  }
  // x ticks
  for (int i = 0; i <= 4; ++i) {
    double t = (tmax - 1) * i / 4.0;
    double x = xpix(t);
    out << "<text x=\"" << fmt(x) << "\" y=\"" << mt + ph + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << static_cast<long long>(t) << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 "
      << mt + ph / 2 << ")\">" << y_label << "</text>\n";

  // polylines
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::string pts;
    bool pen_down = false;
    std::string path;
    for (std::size_t t = 0; t < s.y.size(); ++t) {
      double v = s.y[t];
      bool ok = std::isfinite(v) && (!log_y || v > 0.0);
      if (!ok) {
        pen_down = false;
        continue;
      }
      path += pen_down ? 'L' : 'M';
      path += fmt(xpix(static_cast<double>(t))) + " " + fmt(ypix(v));
      pen_down = true;
    }
    out << "<path d=\"" << path << "\" fill=\"none\" stroke=\""
        << palette[si % npal] << "\" stroke-width=\"1.5\"/>\n";
    // legend
    double ly = mt + 14 + 16.0 * static_cast<double>(si);
    out << "<line x1=\"" << ml + pw + 10 << "\" y1=\"" << fmt(ly - 4)
        << "\" x2=\"" << ml + pw + 28 << "\" y2=\"" << fmt(ly - 4)
        << "\" stroke=\"" << palette[si % npal]
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw + 33 << "\" y=\"" << fmt(ly)
        << "\" font-size=\"11\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

inline void write_svg_file(const std::string& path, const std::string& title,
                           const std::vector<SvgSeries>& series,
                           bool log_y = true,
                           const std::string& y_label = "mean gap",
                           const std::string& x_label = "iteration t") {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidConfigError("cannot write SVG '" + path + "'");
  write_svg_line_chart(out, title, series, log_y, y_label, x_label);
}

}  // namespace dcm
