#pragma once
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace angulation {

struct SurfaceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a crossing computation would need windings beyond the supported
// bound; never a silent wrong answer.
struct UnsupportedRange : SurfaceError {
  using SurfaceError::SurfaceError;
};

// Marked surface: an (n-2)m-gon with two inner polygons R and S, each carrying
// max(m-1, 1) thick vertices (disks when m = 1). Boundary vertices are
// numbered 1..N clockwise.
struct SurfaceSpec {
  int n = 4;
  int m = 1;

  int boundary_count() const { return (n - 2) * m; }
  int thick_vertices_per_pole() const { return m > 1 ? m - 1 : 1; }
  int pole_side_count() const { return m - 1; }  // 0 for disks
  void check() const;
};

enum class Pole : int { R = 0, S = 1 };
enum class Side : int { Left = 0, Right = 1 };

inline char pole_char(Pole p) { return p == Pole::R ? 'R' : 'S'; }
inline Side flip_side(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

// --- m-diagonal classes -----------------------------------------------------
//
// Transjective arcs carry lifted boundary coordinates in Z (projection to
// 1..N is the marked point; the integer sheet tracks how the class winds
// around the inner-polygon pair, which homotopy modulo the two Dehn twists
// does not forget).

// Type-1 arc separating R from S. Lifts satisfy 1 <= y-x <= N-1; the region
// swept clockwise from pi(x) to pi(y) contains R.
struct SplitArc {
  long long x = 0, y = 0;
  bool operator==(const SplitArc&) const = default;
  auto operator<=>(const SplitArc&) const = default;
};

// Type-2 arc homotopic to a boundary path: from a, spanning s edges clockwise;
// the complementary side encloses both inner polygons. s >= N encodes extra
// full wraps (tube levels at and above the rank self-cross).
struct BoundaryArc {
  int a = 1;
  long long s = 1;
  bool operator==(const BoundaryArc&) const = default;
  auto operator<=>(const BoundaryArc&) const = default;
};

// Dehn-twist class of arcs from a boundary vertex tangent to a pole; includes
// the loop representative.
struct TangentArc {
  long long p = 1;
  Pole pole = Pole::R;
  Side side = Side::Right;
  bool operator==(const TangentArc&) const = default;
  auto operator<=>(const TangentArc&) const = default;
};

// Arc linking R to S. Two rigid families per shift component; levels >= 2
// self-cross. Geometric data is exposed at level 1 only; higher levels are
// coordinates propagated by tau.
struct BridgeArc {
  int family = 0;  // 0 | 1
  long long level = 1;
  int rim = 0;  // 0 | 1
  int d = 1;    // shift component, 1..m
  bool operator==(const BridgeArc&) const = default;
  auto operator<=>(const BridgeArc&) const = default;
};

using MDiagonal = std::variant<SplitArc, BoundaryArc, TangentArc, BridgeArc>;

// --- Auslander-Reiten coordinates -------------------------------------------

struct Transjective {
  int d = 1;
  long long t = 0;
  int slot = 1;  // 1..n+1, the labels of the fixed initial slice
  bool operator==(const Transjective&) const = default;
  auto operator<=>(const Transjective&) const = default;
};

struct TubeBigCoord {
  int d = 1;
  int rim = 0;  // Z mod (n-2)
  long long level = 1;
  bool operator==(const TubeBigCoord&) const = default;
  auto operator<=>(const TubeBigCoord&) const = default;
};

struct TubeSmallCoord {
  int family = 0;
  int d = 1;
  int rim = 0;  // Z mod 2
  long long level = 1;
  bool operator==(const TubeSmallCoord&) const = default;
  auto operator<=>(const TubeSmallCoord&) const = default;
};

using ArCoord = std::variant<Transjective, TubeBigCoord, TubeSmallCoord>;

struct ComponentTag {
  enum class Kind { Transjective, TubeBig, TubeSmall } kind = Kind::Transjective;
  int d = 1;
  int family = 0;  // small tubes only
  bool operator==(const ComponentTag&) const = default;
};

// --- operations ---------------------------------------------------------------

// l(a,b) = (b - a) mod N, edges counted clockwise.
int boundary_length(const SurfaceSpec& spec, int a, int b);

long long project_lift(const SurfaceSpec& spec, long long lift);  // into 1..N

// Serialization fields for a split: a = pi(x), b = pi(y), w = sheet of x.
struct SplitFields {
  int a, b;
  long long w;
};
SplitFields split_fields(const SurfaceSpec& spec, const SplitArc& arc);
SplitArc split_from_fields(const SurfaceSpec& spec, int a, int b, long long w);

bool is_admissible(const SurfaceSpec& spec, const MDiagonal& arc);

MDiagonal tau(const SurfaceSpec& spec, const MDiagonal& arc);
MDiagonal tau_inverse(const SurfaceSpec& spec, const MDiagonal& arc);
MDiagonal shift(const SurfaceSpec& spec, const MDiagonal& arc, int count = 1);

bool elementary_move_exists(const SurfaceSpec& spec, const MDiagonal& from,
                            const MDiagonal& to);

bool is_self_crossing(const SurfaceSpec& spec, const MDiagonal& arc);

// Minimal geometric intersection count between class representatives. Bounded
// winding scope: throws UnsupportedRange past `winding_bound`.
int crossing_number(const SurfaceSpec& spec, const MDiagonal& a, const MDiagonal& b,
                    int winding_bound = 3);

ComponentTag component_of(const SurfaceSpec& spec, const MDiagonal& arc);

// Big-tube base convention: the flip of the last type-1 arc of the initial
// angulation lands at this boundary vertex (level 1, rim 0, d 1).
int big_tube_base_vertex(const SurfaceSpec& spec);

ArCoord ar_coord(const SurfaceSpec& spec, const MDiagonal& arc);
MDiagonal arc_of_coord(const SurfaceSpec& spec, const ArCoord& coord);

// Arcs of the fixed initial slice (d=1, t=0), keyed by slot label 1..n+1.
std::vector<std::pair<int, MDiagonal>> initial_slice_arcs(const SurfaceSpec& spec);

std::string to_json(const SurfaceSpec& spec, const MDiagonal& arc);
MDiagonal mdiagonal_from_json(const SurfaceSpec& spec, const std::string& text);

std::string describe(const MDiagonal& arc);

}  // namespace angulation
