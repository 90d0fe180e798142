#include "fairclust/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fairclust {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#d1495b", "#30638e", "#66a182", "#edae49",
                          "#8d5a97", "#5c5c5c"};

}  // namespace

std::string welfare_bar_chart(const std::vector<ComparisonRow>& rows,
                              const std::vector<std::string>& color_names) {
  const int n_rows = static_cast<int>(rows.size());
  const int n_groups = static_cast<int>(color_names.size());

  const double bar_w = 28;
  const double gap = 8;
  const double cluster_gap = 36;
  const double cluster_w = n_groups * bar_w + (n_groups - 1) * gap;
  const double margin_left = 56;
  const double margin_bottom = 44;
  const double margin_top = 24;
  const double plot_h = 220;
  const double width =
      margin_left + n_rows * cluster_w + (n_rows + 1) * cluster_gap;
  const double height = margin_top + plot_h + margin_bottom;

  double lo = 0, hi = 0;
  for (const auto& row : rows)
    for (const auto& name : color_names) {
      const auto it = row.welfare.group_average.find(name);
      if (it == row.welfare.group_average.end() || !std::isfinite(it->second))
        continue;
      lo = std::min(lo, it->second);
      hi = std::max(hi, it->second);
    }
  if (hi - lo < 1e-12) hi = lo + 1;
  const double scale = plot_h / (hi - lo);
  const auto ypos = [&](double v) {
    return margin_top + (hi - v) * scale;
  };
  const double y0 = ypos(0);

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width)
      << " " << num(height) << "\">\n";
  out << "  <rect width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << num(margin_left - 8) << "\" y1=\"" << num(y0)
      << "\" x2=\"" << num(width - 8) << "\" y2=\"" << num(y0)
      << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  out << "  <text x=\"" << num(margin_left - 12) << "\" y=\"" << num(y0 + 4)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\""
      << ">0</text>\n";

  for (int r = 0; r < n_rows; ++r) {
    const double x0 = margin_left + cluster_gap + r * (cluster_w + cluster_gap);
    for (int g = 0; g < n_groups; ++g) {
      const auto it = rows[r].welfare.group_average.find(color_names[g]);
      if (it == rows[r].welfare.group_average.end() ||
          !std::isfinite(it->second))
        continue;
      const double v = it->second;
      const double x = x0 + g * (bar_w + gap);
      const double top = std::min(y0, ypos(v));
      const double h = std::abs(ypos(v) - y0);
      out << "  <rect x=\"" << num(x) << "\" y=\"" << num(top) << "\" width=\""
          << num(bar_w) << "\" height=\"" << num(h) << "\" fill=\""
          << kPalette[g % 6] << "\"/>\n";
      out << "  <text x=\"" << num(x + bar_w / 2) << "\" y=\""
          << num(top - 4 > margin_top ? top - 4 : top + 12)
          << "\" font-family=\"sans-serif\" font-size=\"10\""
          << " text-anchor=\"middle\">" << num(v) << "</text>\n";
    }
    out << "  <text x=\"" << num(x0 + cluster_w / 2) << "\" y=\""
        << num(margin_top + plot_h + 18)
        << "\" font-family=\"sans-serif\" font-size=\"12\""
        << " text-anchor=\"middle\">" << rows[r].notion << "</text>\n";
  }

  double lx = margin_left;
  const double ly = height - 10;
  for (int g = 0; g < n_groups; ++g) {
    out << "  <rect x=\"" << num(lx) << "\" y=\"" << num(ly - 9)
        << "\" width=\"10\" height=\"10\" fill=\"" << kPalette[g % 6]
        << "\"/>\n";
    out << "  <text x=\"" << num(lx + 14) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << color_names[g]
        << "</text>\n";
    lx += 24 + 7.0 * static_cast<double>(color_names[g].size());
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace fairclust
