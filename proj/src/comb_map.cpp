#include "angulation/comb_map.hpp"

#include <algorithm>
#include <set>

namespace angulation {

CombMap::CombMap(SurfaceSpec spec) : spec_(spec) {
  spec_.check();
  const int N = spec_.boundary_count();
  rot_boundary_.resize(N + 1);
  fwd_dart_.resize(N + 1, -1);
  bwd_dart_.resize(N + 1, -1);
  for (int i = 1; i <= N; ++i) {
    int j = i % N + 1;
    int eid = static_cast<int>(edges_.size());
    edges_.push_back({Edge::Kind::Boundary, i, -1, -1, -1, true});
    int d0 = new_dart(VertexRef::at_boundary(i), eid);
    int d1 = new_dart(VertexRef::at_boundary(j), eid);
    darts_[d0].twin = d1;
    darts_[d1].twin = d0;
    edges_[eid].dart0 = d0;
    edges_[eid].dart1 = d1;
    fwd_dart_[i] = d0;
    bwd_dart_[j] = d1;
  }
  for (int i = 1; i <= N; ++i) rot_boundary_[i] = {fwd_dart_[i], bwd_dart_[i]};
}

int CombMap::new_dart(const VertexRef& at, int edge) {
  int id = static_cast<int>(darts_.size());
  darts_.push_back({-1, at, edge, true});
  return id;
}

int CombMap::forward_dart(int vertex) const { return fwd_dart_.at(vertex); }
int CombMap::backward_dart(int vertex) const { return bwd_dart_.at(vertex); }

int CombMap::diagonal_edge(int diag) const {
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e)
    if (edges_[e].alive && edges_[e].kind == Edge::Kind::Diagonal && edges_[e].diag == diag)
      return e;
  throw MapError("no edge for diagonal index " + std::to_string(diag));
}

std::vector<int>& CombMap::rotation(const VertexRef& v) {
  if (v.kind == VertexRef::Kind::Boundary) return rot_boundary_.at(v.boundary);
  return rot_pole_[static_cast<int>(v.pole)];
}
const std::vector<int>& CombMap::rotation(const VertexRef& v) const {
  if (v.kind == VertexRef::Kind::Boundary) return rot_boundary_.at(v.boundary);
  return rot_pole_[static_cast<int>(v.pole)];
}

int CombMap::position_in_rotation(int dart_id) const {
  const auto& rot = rotation(darts_.at(dart_id).at);
  for (int i = 0; i < static_cast<int>(rot.size()); ++i)
    if (rot[i] == dart_id) return i;
  throw MapError("dart missing from its rotation");
}

void CombMap::insert_into_rotation(int dart_id, const EndSpec& spec) {
  auto& rot = rotation(spec.vertex);
  int pos;
  if (spec.before_dart < 0) {
    pos = static_cast<int>(rot.size());
  } else {
    auto it = std::find(rot.begin(), rot.end(), spec.before_dart);
    if (it == rot.end()) throw MapError("anchor dart not in rotation");
    pos = static_cast<int>(it - rot.begin()) + (spec.after ? 1 : 0);
  }
  rot.insert(rot.begin() + pos, dart_id);
  if (spec.vertex.kind == VertexRef::Kind::PoleVertex) {
    auto& gaps = gap_after_[static_cast<int>(spec.vertex.pole)];
    if (rot.size() == 1) {
      gaps = {spec_.pole_side_count()};
      return;
    }
    // split the gap that preceded the slot
    int prev = (pos - 1 + static_cast<int>(rot.size())) % static_cast<int>(rot.size());
    // gaps currently indexed against the pre-insertion rotation; rebuild:
    // gap between rot[i] and rot[i+1]. Insert a slot at pos with gap_before
    // taken from the predecessor's gap.
    std::vector<int> ng(rot.size(), 0);
    // positions in the old rotation: all except `pos`
    int old_i = 0;
    std::vector<int> old_index(rot.size(), -1);
    for (int i = 0; i < static_cast<int>(rot.size()); ++i)
      if (i != pos) old_index[i] = old_i++;
    int old_n = old_i;
    auto old_gap = [&](int oi) { return gaps.at((oi % old_n + old_n) % old_n); };
    for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
      int next = (i + 1) % static_cast<int>(rot.size());
      if (i == pos) {
        // gap between new dart and its successor = remainder of split gap
        int pred_old = old_index[(pos - 1 + rot.size()) % rot.size()];
        ng[i] = old_gap(pred_old) - spec.gap_before;
      } else if (next == pos) {
        ng[i] = spec.gap_before;
      } else {
        ng[i] = old_gap(old_index[i]);
      }
      if (ng[i] < 0) throw MapError("negative pole gap on insertion");
    }
    (void)prev;
    gaps = ng;
  }
}

void CombMap::remove_from_rotation(int dart_id) {
  const VertexRef at = darts_.at(dart_id).at;
  auto& rot = rotation(at);
  auto it = std::find(rot.begin(), rot.end(), dart_id);
  if (it == rot.end()) throw MapError("dart missing from rotation on removal");
  int pos = static_cast<int>(it - rot.begin());
  if (at.kind == VertexRef::Kind::PoleVertex) {
    auto& gaps = gap_after_[static_cast<int>(at.pole)];
    int n = static_cast<int>(rot.size());
    if (n == 1) {
      gaps.clear();
    } else {
      int prev = (pos - 1 + n) % n;
      std::vector<int> ng;
      ng.reserve(n - 1);
      // merge gap_after[prev] + gap_after[pos] into the predecessor's slot
      for (int i = 0; i < n; ++i) {
        if (i == pos) continue;
        int g = gaps[i];
        if (i == prev) g += gaps[pos];
        ng.push_back(g);
      }
      gaps = ng;
    }
  }
  rot.erase(it);
}

int CombMap::add_diagonal(int diag, const EndSpec& a, const EndSpec& b) {
  int eid = static_cast<int>(edges_.size());
  edges_.push_back({Edge::Kind::Diagonal, 0, diag, -1, -1, true});
  int d0 = new_dart(a.vertex, eid);
  int d1 = new_dart(b.vertex, eid);
  darts_[d0].twin = d1;
  darts_[d1].twin = d0;
  edges_[eid].dart0 = d0;
  edges_[eid].dart1 = d1;
  insert_into_rotation(d0, a);
  insert_into_rotation(d1, b);
  return eid;
}

void CombMap::swap_edge_darts(int edge_id) {
  Edge& e = edges_.at(edge_id);
  std::swap(e.dart0, e.dart1);
}

void CombMap::remove_diagonal_edge(int edge_id) {
  Edge& e = edges_.at(edge_id);
  if (!e.alive || e.kind != Edge::Kind::Diagonal) throw MapError("not a live diagonal edge");
  remove_from_rotation(e.dart0);
  remove_from_rotation(e.dart1);
  darts_[e.dart0].alive = false;
  darts_[e.dart1].alive = false;
  e.alive = false;
}

std::vector<CombMap::Face> CombMap::trace_faces() const {
  std::vector<Face> faces;
  std::vector<char> seen(darts_.size(), 0);

  bool any_diagonal = false;
  for (const auto& e : edges_)
    if (e.alive && e.kind == Edge::Kind::Diagonal) any_diagonal = true;

  for (int start = 0; start < static_cast<int>(darts_.size()); ++start) {
    if (!darts_[start].alive || seen[start]) continue;
    Face face;
    int d = start;
    do {
      seen[d] = 1;
      const Dart& dd = darts_[d];
      const Edge& e = edges_[dd.edge];
      FaceItem item;
      item.edge = dd.edge;
      item.dart = d;
      if (e.kind == Edge::Kind::Boundary) {
        item.kind = FaceItem::Kind::BoundaryEdge;
      } else {
        item.kind = FaceItem::Kind::Diagonal;
        item.diag = e.diag;
      }
      face.items.push_back(item);
      face.side_count += 1;

      // step: arrive via twin, continue with clockwise predecessor
      int t = dd.twin;
      const VertexRef at = darts_[t].at;
      const auto& rot = rotation(at);
      int n = static_cast<int>(rot.size());
      int pos = -1;
      for (int i = 0; i < n; ++i)
        if (rot[i] == t) pos = i;
      if (pos < 0) throw MapError("twin dart missing from rotation");
      int prev = (pos - 1 + n) % n;
      if (at.kind == VertexRef::Kind::PoleVertex) {
        int g = gap_after_[static_cast<int>(at.pole)].at(prev);
        if (g > 0) {
          FaceItem gi;
          gi.kind = FaceItem::Kind::PoleSides;
          gi.count = g;
          face.items.push_back(gi);
          face.side_count += g;
        }
      }
      d = rot[prev];
    } while (d != start);

    // outer face: traverses every boundary edge backward
    face.outer = true;
    for (const auto& it : face.items) {
      if (it.kind != FaceItem::Kind::BoundaryEdge) {
        face.outer = false;
        break;
      }
      if (it.dart != edges_[it.edge].dart1) {
        face.outer = false;
        break;
      }
    }
    if (!any_diagonal && !face.outer) {
      // single interior region; floating poles contribute their sides
      face.side_count += 2 * spec_.pole_side_count();
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

void CombMap::check_integrity() const {
  for (int d = 0; d < static_cast<int>(darts_.size()); ++d) {
    if (!darts_[d].alive) continue;
    if (darts_[d].twin < 0 || !darts_[darts_[d].twin].alive || darts_[darts_[d].twin].twin != d)
      throw MapError("twin involution broken");
    position_in_rotation(d);
  }
  for (int p = 0; p < 2; ++p) {
    const auto& rot = rot_pole_[p];
    const auto& gaps = gap_after_[p];
    if (rot.empty()) continue;
    if (gaps.size() != rot.size()) throw MapError("pole gap table size mismatch");
    int total = 0;
    for (int g : gaps) {
      if (g < 0) throw MapError("negative pole gap");
      total += g;
    }
    if (total != spec_.pole_side_count()) throw MapError("pole side total mismatch");
  }
}

CombMap CombMap::without_diagonals(const std::vector<int>& diags) const {
  CombMap copy = *this;
  for (int dg : diags) copy.remove_diagonal_edge(copy.diagonal_edge(dg));
  return copy;
}

}  // namespace angulation
