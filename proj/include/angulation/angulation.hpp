#pragma once
#include <optional>
#include <string>
#include <vector>

#include "angulation/comb_map.hpp"
#include "angulation/quiver.hpp"
#include "angulation/surface.hpp"

namespace angulation {

struct AngulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One endpoint of a drawn diagonal: either a boundary marked point with its
// lifted coordinate (sheet-aware) or a pole.
struct DiagEnd {
  bool at_pole = false;
  Pole pole = Pole::R;
  long long lift = 0;  // boundary lift when !at_pole
};

struct DrawnDiagonal {
  std::string label;
  MDiagonal cls;
  DiagEnd ends[2];          // ends[0] <-> edge dart0, ends[1] <-> dart1
  bool loop_rep = false;    // tangent class drawn as a loop at its base vertex
};

struct AngReport {
  bool ok = true;
  std::vector<std::string> issues;
};

struct FaceView {
  std::vector<std::string> sides;  // labels, "edge i-j", "pole-sides k"
  int side_count = 0;
};

// An (m+2)-angulation: a rotation system whose diagonal edges carry
// m-diagonal classes. Faces are always derived, never stored.
class Angulation {
 public:
  static Angulation initial(SurfaceSpec spec);

  const SurfaceSpec& spec() const { return spec_; }
  int diagonal_count() const { return static_cast<int>(diags_.size()); }
  std::vector<std::string> labels() const;
  const DrawnDiagonal& diagonal(const std::string& label) const;
  const MDiagonal& arc_class(const std::string& label) const;

  AngReport validate() const;
  std::vector<FaceView> faces() const;  // interior faces only

  // Representative normalization before a flip (the loop rules); idempotent.
  Angulation normalize_for_flip(const std::string& label) const;

  // Class of the clockwise slip of `label` (the flip target).
  MDiagonal twist(const std::string& label) const;

  Angulation flip(const std::string& label) const;
  Angulation flip_inverse(const std::string& label) const;

  PlainQuiver plain_quiver() const;
  ColoredQuiver colored_quiver() const;

  std::string to_json(bool with_rotations = true) const;
  static Angulation from_json(const std::string& text);
  std::string canonical_form() const;
  bool equals(const Angulation& other) const;

 private:
  Angulation(SurfaceSpec spec, CombMap map) : spec_(spec), map_(std::move(map)) {}

  int diag_index(const std::string& label) const;
  void canonicalize_reps();
  void swap_pair_reps(int tangent_idx, int loop_idx);
  void redraw_as_loop(int loop_idx, int keep_idx);
  Angulation flipped_impl(const std::string& label, bool inverse) const;
  std::vector<int> partners_of(int diag) const;  // classes hung to a common pole
  MDiagonal classify_new_arc(const CombMap& map, int edge_id, const DiagEnd ends[2],
                             const std::optional<Side> carried_side[2],
                             const long long origin_lifts[2], bool map_trivial) const;
  MDiagonal pin_winding_sheet(int idx, MDiagonal cls) const;
  void align_ends_with_class(int idx);
  void reconstruct_rotations();

  SurfaceSpec spec_;
  CombMap map_;
  std::vector<DrawnDiagonal> diags_;

  friend class AngulationBuilder;
};

}  // namespace angulation
