#include "angulation/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace angulation {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Pt {
  double x, y;
};

}  // namespace

std::string render_angulation_svg(const Angulation& ang, const RenderConfig& cfg) {
  const SurfaceSpec& spec = ang.spec();
  const int N = spec.boundary_count();
  const double C = cfg.canvas;
  const double cx = C / 2, cy = C / 2;
  const double R = cfg.boundary_radius * C;

  // vertex 1 at the bottom, numbering clockwise on screen (svg y points down)
  auto vertex_pt = [&](int v) {
    double theta = M_PI / 2 - 2 * M_PI * (v - 1) / N;
    return Pt{cx + R * std::cos(theta), cy + R * std::sin(theta)};
  };
  Pt pole_pt[2] = {{cx - cfg.pole_offset * C, cy - 0.02 * C},
                   {cx + cfg.pole_offset * C, cy - 0.02 * C}};
  const double pole_r = 0.035 * C;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cfg.canvas << "\" height=\""
     << cfg.canvas << "\" viewBox=\"0 0 " << cfg.canvas << " " << cfg.canvas << "\">\n";
  os << "<rect width=\"" << cfg.canvas << "\" height=\"" << cfg.canvas
     << "\" fill=\"white\"/>\n";

  for (int i = 1; i <= N; ++i) {
    Pt a = vertex_pt(i), b = vertex_pt(i % N + 1);
    os << "<line class=\"boundary\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\""
       << num(b.x) << "\" y2=\"" << num(b.y) << "\" stroke=\"black\"/>\n";
  }
  for (int p = 0; p < 2; ++p) {
    os << "<circle class=\"pole\" cx=\"" << num(pole_pt[p].x) << "\" cy=\""
       << num(pole_pt[p].y) << "\" r=\"" << num(pole_r) << "\" fill=\"black\"/>\n";
    // inner polygon sides drawn as a ring per side
    for (int s = 0; s < spec.pole_side_count(); ++s) {
      double rr = pole_r + 3.0 + 3.0 * s;
      os << "<circle class=\"pole-side\" cx=\"" << num(pole_pt[p].x) << "\" cy=\""
         << num(pole_pt[p].y) << "\" r=\"" << num(rr)
         << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
  }

  auto path_through = [&](const Pt& a, const Pt& mid, const Pt& b) {
    std::ostringstream p;
    p << "M " << num(a.x) << " " << num(a.y) << " Q " << num(mid.x) << " " << num(mid.y)
      << " " << num(b.x) << " " << num(b.y);
    return p.str();
  };

  for (const auto& label : ang.labels()) {
    const auto& d = ang.diagonal(label);
    std::string path;
    bool overflow = false;
    Pt label_at{cx, cy};
    if (const auto* s = std::get_if<SplitArc>(&d.cls)) {
      auto f = split_fields(spec, *s);
      Pt a = vertex_pt(f.a), b = vertex_pt(f.b);
      overflow = std::llabs(f.w) > cfg.max_drawn_winding;
      Pt gate{cx, cy - 0.02 * C};
      // pull the midpoint toward the R side so nested caps stay separated
      double bulge = 0.12 * C * (static_cast<double>(s->y - s->x) / N);
      Pt mid{gate.x, gate.y - bulge};
      path = path_through(a, mid, b);
      label_at = {(a.x + 2 * mid.x + b.x) / 4, (a.y + 2 * mid.y + b.y) / 4};
    } else if (const auto* b = std::get_if<BoundaryArc>(&d.cls)) {
      overflow = b->s > N;
      Pt a = vertex_pt(b->a), bb = vertex_pt(static_cast<int>(project_lift(spec, b->a + b->s)));
      Pt mid{(a.x + bb.x) / 2 + 0.12 * (cx - (a.x + bb.x) / 2),
             (a.y + bb.y) / 2 + 0.12 * (cy - (a.y + bb.y) / 2)};
      path = path_through(a, mid, bb);
      label_at = mid;
    } else if (const auto* t = std::get_if<TangentArc>(&d.cls)) {
      int v = static_cast<int>(project_lift(spec, t->p));
      Pt a = vertex_pt(v);
      Pt pp = pole_pt[static_cast<int>(t->pole)];
      double off = (t->side == Side::Left ? -1 : 1) * 0.05 * C;
      if (d.loop_rep) {
        Pt mid{pp.x + off, pp.y - 0.11 * C};
        Pt mid2{pp.x - off, pp.y + 0.11 * C};
        std::ostringstream p;
        p << "M " << num(a.x) << " " << num(a.y) << " Q " << num(mid.x) << " " << num(mid.y)
          << " " << num(pp.x) << " " << num(pp.y - 0.14 * C) << " Q " << num(mid2.x) << " "
          << num(mid2.y) << " " << num(a.x) << " " << num(a.y);
        path = p.str();
        label_at = {pp.x, pp.y - 0.17 * C};
      } else {
        Pt mid{(a.x + pp.x) / 2 + off, (a.y + pp.y) / 2};
        path = path_through(a, mid, pp);
        label_at = mid;
      }
    } else {
      const auto& br = std::get<BridgeArc>(d.cls);
      overflow = br.level > 1;
      double lift = (br.family == 0 ? -0.06 : -0.18) * C * (br.rim == 0 ? 1 : -1);
      Pt mid{cx, cy + lift};
      path = path_through(pole_pt[0], mid, pole_pt[1]);
      label_at = mid;
    }
    os << "<path class=\"diagonal\" id=\"arc-" << label << "\" d=\"" << path
       << "\" fill=\"none\" stroke=\"steelblue\"";
    if (overflow) {
      os << " stroke-dasharray=\"6 4\"";
    }
    os << "/>\n";
    if (overflow)
      os << "<!-- warning: winding beyond drawable bound for arc " << label << " -->\n";
    if (cfg.labels)
      os << "<text class=\"label\" x=\"" << num(label_at.x) << "\" y=\"" << num(label_at.y)
         << "\" font-size=\"12\">" << label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_quiver_dot(const ColoredQuiver& q) { return q.to_dot(); }
std::string render_window_dot(const TranslationQuiverWindow& w) { return w.to_dot(); }

}  // namespace angulation
