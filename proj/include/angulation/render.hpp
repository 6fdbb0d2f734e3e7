#pragma once
#include <string>

#include "angulation/angulation.hpp"
#include "angulation/category.hpp"
#include "angulation/quiver.hpp"

namespace angulation {

struct RenderConfig {
  int canvas = 640;
  double boundary_radius = 0.42;  // fraction of canvas
  double pole_offset = 0.16;      // horizontal pole placement, fraction of canvas
  bool labels = true;
  int max_drawn_winding = 1;
};

// Deterministic SVG: boundary polygon on a circle, poles at fixed positions,
// diagonals as splines. Windings past the drawable bound render as dashed
// placeholders with a warning annotation.
std::string render_angulation_svg(const Angulation& ang, const RenderConfig& cfg = {});

std::string render_quiver_dot(const ColoredQuiver& q);
std::string render_window_dot(const TranslationQuiverWindow& w);

}  // namespace angulation
