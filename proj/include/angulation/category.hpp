#pragma once
#include <string>
#include <vector>

#include "angulation/surface.hpp"

namespace angulation {

struct WindowVertex {
  ArCoord coord;
  MDiagonal arc;
};

struct MeshRelation {
  int target = -1;                          // vertex index of alpha
  std::vector<std::pair<int, int>> terms;   // (f: beta->alpha, fbar: tau(alpha)->beta) as
                                            // (beta, tau_alpha) vertex indices
};

struct WindowReport {
  bool ok = true;
  std::vector<std::string> issues;
  std::vector<std::string> boundary_exemptions;
};

// Finite excerpt of the translation quiver of m-diagonals. `tau` is the
// Auslander-Reiten translation of the window (the inverse of the arc-dragging
// translation: dragging moves arcs clockwise, the AR translate points the
// other way along the component).
struct TranslationQuiverWindow {
  SurfaceSpec spec;
  std::vector<WindowVertex> vertices;
  std::vector<std::pair<int, int>> arrows;  // indices into vertices
  std::vector<int> tau;                     // -1 when the image leaves the window

  int index_of(const ArCoord& c) const;
  std::string to_dot() const;
  std::string to_json() const;
};

struct WindowOptions {
  // testing hook: suppress the odd-m tangency side flip in the arc translation
  bool fault_no_side_flip = false;
};

TranslationQuiverWindow transjective_window(const SurfaceSpec& spec, int d, long long t_min,
                                            long long t_max, WindowOptions opts = {});

enum class TubeFamily { Big, Small0, Small1 };
TranslationQuiverWindow tube_window(const SurfaceSpec& spec, TubeFamily family, int d,
                                    long long max_level);

std::vector<MeshRelation> mesh_relations(const TranslationQuiverWindow& w);

WindowReport is_stable_translation_quiver(const TranslationQuiverWindow& w);

// Independent oracle: knit the repetition quiver ZQ of the fixed initial
// orientation and compare with the arc-generated window label-for-label.
WindowReport ar_oracle_check(const SurfaceSpec& spec, int d, long long t_min, long long t_max,
                             WindowOptions opts = {});

bool is_rigid(const SurfaceSpec& spec, const ArCoord& coord);

// The quiver the knitting starts from: the plain quiver of the initial
// angulation, as slot labels 1..n+1.
std::vector<std::pair<int, int>> initial_orientation_arrows(const SurfaceSpec& spec);

}  // namespace angulation
