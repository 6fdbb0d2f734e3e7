#pragma once
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "angulation/surface.hpp"

namespace angulation {

struct MapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A vertex of the combinatorial map: a boundary marked point or a pole.
struct VertexRef {
  enum class Kind { Boundary, PoleVertex } kind = Kind::Boundary;
  int boundary = 0;      // 1..N
  Pole pole = Pole::R;   // when kind == PoleVertex

  static VertexRef at_boundary(int i) { return {Kind::Boundary, i, Pole::R}; }
  static VertexRef at_pole(Pole p) { return {Kind::PoleVertex, 0, p}; }
  bool operator==(const VertexRef&) const = default;
};

// Rotation system on the marked surface. Boundary rotations are stored
// clockwise starting with the forward boundary dart (edge to i+1) and ending
// with the backward one (edge to i-1). Each pole is a single map vertex whose
// rotation carries the m-1 inner-polygon sides as corner weights between
// consecutive attached darts.
class CombMap {
 public:
  struct Dart {
    int twin = -1;
    VertexRef at;
    int edge = -1;
    bool alive = false;
  };
  struct Edge {
    enum class Kind { Boundary, Diagonal } kind = Kind::Boundary;
    int boundary_index = 0;  // i for boundary edge {i, i+1}
    int diag = -1;           // index into the owner's diagonal table
    int dart0 = -1, dart1 = -1;
    bool alive = false;
  };

  struct FaceItem {
    enum class Kind { BoundaryEdge, Diagonal, PoleSides } kind = Kind::BoundaryEdge;
    int edge = -1;   // edge id (boundary or diagonal)
    int dart = -1;   // traversal dart (base = walk position)
    int diag = -1;
    int count = 0;   // pole sides for PoleSides
  };
  struct Face {
    std::vector<FaceItem> items;
    int side_count = 0;
    bool outer = false;
  };

  explicit CombMap(SurfaceSpec spec);

  const SurfaceSpec& spec() const { return spec_; }

  // boundary skeleton accessors
  int forward_dart(int vertex) const;   // dart of edge {v, v+1} based at v
  int backward_dart(int vertex) const;  // dart of edge {v-1, v} based at v

  const Dart& dart(int id) const { return darts_.at(id); }
  const Edge& edge(int id) const { return edges_.at(id); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int diagonal_edge(int diag) const;  // edge id carrying this diagonal

  std::vector<int>& rotation(const VertexRef& v);
  const std::vector<int>& rotation(const VertexRef& v) const;
  std::vector<int>& pole_gaps(Pole p) { return gap_after_[static_cast<int>(p)]; }
  const std::vector<int>& pole_gaps(Pole p) const { return gap_after_[static_cast<int>(p)]; }

  int position_in_rotation(int dart_id) const;

  // Insert a diagonal edge. Each end is given by a vertex, the dart id before
  // which the new dart is inserted (or -1 to append), plus for poles the
  // number of inner sides kept on the clockwise-before side of the new dart.
  struct EndSpec {
    VertexRef vertex;
    int before_dart = -1;  // insert cw-before this dart; -1 = append at end
    bool after = false;    // insert cw-after `before_dart` instead
    int gap_before = 0;    // pole only: sides kept between predecessor and the new dart
  };
  int add_diagonal(int diag, const EndSpec& a, const EndSpec& b);  // returns edge id
  void remove_diagonal_edge(int edge_id);
  void swap_edge_darts(int edge_id);  // relabel dart0 <-> dart1

  std::vector<Face> trace_faces() const;

  // Structural integrity of the rotation system (twin involution, rotation
  // membership, pole gap totals).
  void check_integrity() const;

  CombMap without_diagonals(const std::vector<int>& diags) const;

 private:
  int new_dart(const VertexRef& at, int edge);
  void insert_into_rotation(int dart_id, const EndSpec& spec);
  void remove_from_rotation(int dart_id);

  SurfaceSpec spec_;
  std::vector<Dart> darts_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> rot_boundary_;  // index 1..N
  std::vector<int> rot_pole_[2];
  std::vector<int> gap_after_[2];
  std::vector<int> fwd_dart_, bwd_dart_;  // per boundary vertex
};

}  // namespace angulation
