#include "pseudopass/svg.hpp"

#include <cmath>
#include <cstdio>

namespace pseudopass {

namespace {

constexpr double kPanel = 220.0;   // plot area, px
constexpr double kMarginL = 34.0;  // room for the label row
constexpr double kMarginT = 26.0;
constexpr double kGap = 26.0;
constexpr int kCirclePoints = 256;

const char* kFill = "#a6cee3";
const char* kStroke = "#1f78b4";
const char* kAxis = "#bbbbbb";

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", std::round(v * 1000.0) / 1000.0);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct PanelFrame {
  double x0, y0;  // top-left pixel of the plot area
  Viewport vp;

  double X(double wx) const { return x0 + (wx - vp.x_min) / (vp.x_max - vp.x_min) * kPanel; }
  double Y(double wy) const { return y0 + (vp.y_max - wy) / (vp.y_max - vp.y_min) * kPanel; }
};

std::string polygon_path(const PanelFrame& f, const std::vector<Complex>& pts,
                         bool close) {
  std::string d;
  for (size_t i = 0; i < pts.size(); ++i) {
    d += (i == 0 ? "M" : "L");
    d += px(f.X(pts[i].real())) + " " + px(f.Y(pts[i].imag()));
  }
  if (close) d += "Z";
  return d;
}

std::string rect_path(const PanelFrame& f) {
  return "M" + px(f.x0) + " " + px(f.y0) + "H" + px(f.x0 + kPanel) + "V" +
         px(f.y0 + kPanel) + "H" + px(f.x0) + "Z";
}

void render_panel(std::string& out, const PanelFrame& f, const Region& r,
                  const std::string& label, int clip_id) {
  char buf[256];
  const std::string clip = "clip" + std::to_string(clip_id);
  out += "<clipPath id=\"" + clip + "\"><rect x=\"" + px(f.x0) + "\" y=\"" + px(f.y0) +
         "\" width=\"" + px(kPanel) + "\" height=\"" + px(kPanel) + "\"/></clipPath>\n";
  std::snprintf(buf, sizeof(buf),
                "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"white\" "
                "stroke=\"#444444\" stroke-width=\"1\"/>\n",
                px(f.x0).c_str(), px(f.y0).c_str(), px(kPanel).c_str(), px(kPanel).c_str());
  out += buf;

  out += "<g clip-path=\"url(#" + clip + ")\">\n";
  // Axes through the origin.
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"%s\"/>\n",
                px(f.X(f.vp.x_min)).c_str(), px(f.Y(0)).c_str(),
                px(f.X(f.vp.x_max)).c_str(), px(f.Y(0)).c_str(), kAxis);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"%s\"/>\n",
                px(f.X(0)).c_str(), px(f.Y(f.vp.y_min)).c_str(), px(f.X(0)).c_str(),
                px(f.Y(f.vp.y_max)).c_str(), kAxis);
  out += buf;

  const std::vector<Complex> boundary = boundary_points(r, kCirclePoints, f.vp);
  switch (r.shape) {
    case RegionShape::FullPlane:
      out += "<path d=\"" + rect_path(f) + "\" fill=\"" + kFill + "\"/>\n";
      break;
    case RegionShape::Empty:
      break;
    case RegionShape::HalfPlane: {
      double lo = f.vp.x_min, hi = f.vp.x_max;
      if (r.side == HalfPlaneSide::GreaterEq)
        lo = std::max(lo, r.bound);
      else
        hi = std::min(hi, r.bound);
      if (lo < hi) {
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%s\" y=\"%s\" width=\"%s\" height=\"%s\" fill=\"%s\"/>\n",
                      px(f.X(lo)).c_str(), px(f.y0).c_str(), px(f.X(hi) - f.X(lo)).c_str(),
                      px(kPanel).c_str(), kFill);
        out += buf;
      }
      if (!boundary.empty())
        out += "<path d=\"" + polygon_path(f, boundary, false) + "\" fill=\"none\" stroke=\"" +
               kStroke + "\" stroke-width=\"1.5\"/>\n";
      break;
    }
    case RegionShape::Disk:
      out += "<path d=\"" + polygon_path(f, boundary, true) + "\" fill=\"" + kFill +
             "\" stroke=\"" + kStroke + "\" stroke-width=\"1.5\"/>\n";
      break;
    case RegionShape::DiskComplement:
      out += "<path d=\"" + rect_path(f) + " " + polygon_path(f, boundary, true) +
             "\" fill=\"" + kFill + "\" fill-rule=\"evenodd\"/>\n";
      out += "<path d=\"" + polygon_path(f, boundary, true) + "\" fill=\"none\" stroke=\"" +
             kStroke + "\" stroke-width=\"1.5\"/>\n";
      break;
    case RegionShape::Point:
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%s\" cy=\"%s\" r=\"2.500\" fill=\"%s\"/>\n",
                    px(f.X(r.center.real())).c_str(), px(f.Y(r.center.imag())).c_str(),
                    kStroke);
      out += buf;
      break;
  }
  out += "</g>\n";

  std::snprintf(buf, sizeof(buf),
                "<text x=\"%s\" y=\"%s\" font-family=\"monospace\" font-size=\"12\" "
                "fill=\"#222222\">%s</text>\n",
                px(f.x0).c_str(), px(f.y0 - 7.0).c_str(), label.c_str());
  out += buf;
}

std::string svg_open(double w, double h) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%s\" height=\"%s\" "
                "viewBox=\"0 0 %s %s\">\n",
                px(w).c_str(), px(h).c_str(), px(w).c_str(), px(h).c_str());
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string region_svg(const Region& r, const std::string& title) {
  const double W = kMarginL + kPanel + 20.0;
  const double H = kMarginT + kPanel + 20.0;
  std::string out = svg_open(W, H);
  PanelFrame f{kMarginL, kMarginT, Viewport{}};
  render_panel(out, f, r, title, 0);
  out += "</svg>\n";
  return out;
}

std::string admittance_grid_svg(const std::vector<std::pair<double, double>>& panels) {
  if (panels.size() != 9) throw ValidationError("grid plot: expected nine panels");
  const double W = kMarginL + 3 * kPanel + 2 * kGap + 20.0;
  const double H = kMarginT + 3 * kPanel + 2 * kGap + 20.0;
  std::string out = svg_open(W, H);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      const int idx = row * 3 + col;
      const auto& [c, d] = panels[idx];
      PanelFrame f{kMarginL + col * (kPanel + kGap), kMarginT + row * (kPanel + kGap),
                   Viewport{}};
      const Region r = classify_admittance(c, d);
      const std::string label =
          "c=" + short_num(c) + " d=" + short_num(d) + " (" + r.case_label() + ")";
      render_panel(out, f, r, label, idx);
    }
  }
  out += "</svg>\n";
  return out;
}

const std::vector<std::pair<double, double>>& default_taxonomy_panels() {
  static const std::vector<std::pair<double, double>> panels = {
      {-1.0, -1.0},        {0.0, -1.0},       {2.0, -1.0},
      {-1.0 / 8.0, -0.1},  {0.0, 0.0},        {-2.0, 1.0 / 8.0},
      {0.0, 1.0 / 3.0},    {0.0, 1.0},        {1.0, 1.0}};
  return panels;
}

}  // namespace pseudopass
