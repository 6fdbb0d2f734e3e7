#include "angulation/angulation.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace angulation {

using nlohmann::json;
using nlohmann::ordered_json;
using Face = CombMap::Face;
using FaceItem = CombMap::FaceItem;
using EndSpec = CombMap::EndSpec;

namespace {

std::string edge_desc(const CombMap& map, int edge_id) {
  const auto& e = map.edge(edge_id);
  if (e.kind == CombMap::Edge::Kind::Boundary) {
    int i = e.boundary_index;
    int j = i % map.spec().boundary_count() + 1;
    return "edge " + std::to_string(i) + "-" + std::to_string(j);
  }
  return "diagonal " + std::to_string(e.diag);
}

}  // namespace

// --- construction ------------------------------------------------------------

Angulation Angulation::initial(SurfaceSpec spec) {
  spec.check();
  const int n = spec.n, m = spec.m;
  Angulation ang(spec, CombMap(spec));

  auto add_split = [&](const std::string& label, long long x, long long y, int at_x_before,
                       int at_y_before) {
    int idx = static_cast<int>(ang.diags_.size());
    DrawnDiagonal d;
    d.label = label;
    d.cls = SplitArc{x, y};
    d.ends[0] = {false, Pole::R, x};
    d.ends[1] = {false, Pole::R, y};
    ang.diags_.push_back(d);
    EndSpec ea{VertexRef::at_boundary(static_cast<int>(project_lift(spec, x))), at_x_before,
               false, 0};
    EndSpec eb{VertexRef::at_boundary(static_cast<int>(project_lift(spec, y))), at_y_before,
               false, 0};
    ang.map_.add_diagonal(idx, ea, eb);
  };

  // Pole bundle hung at boundary vertex `v`: a tangent arc (attached, Right)
  // and the Left class drawn as a loop whose darts sandwich the tangent.
  auto add_bundle = [&](const std::string& tangent_label, const std::string& loop_label,
                        int v, Pole pole, int rot_before) {
    long long lift = v;
    int t_idx = static_cast<int>(ang.diags_.size());
    DrawnDiagonal t;
    t.label = tangent_label;
    t.cls = TangentArc{lift, pole, Side::Right};
    t.ends[0] = {false, Pole::R, lift};
    t.ends[1] = {true, pole, 0};
    ang.diags_.push_back(t);
    EndSpec t0{VertexRef::at_boundary(v), rot_before, false, 0};
    EndSpec t1{VertexRef::at_pole(pole), -1, false, 0};
    int te = ang.map_.add_diagonal(t_idx, t0, t1);
    int t_dart0 = ang.map_.edge(te).dart0;

    int l_idx = static_cast<int>(ang.diags_.size());
    DrawnDiagonal l;
    l.label = loop_label;
    l.cls = TangentArc{lift, pole, Side::Left};
    l.ends[0] = {false, Pole::R, lift};
    l.ends[1] = {false, Pole::R, lift};
    l.loop_rep = true;
    ang.diags_.push_back(l);
    EndSpec l0{VertexRef::at_boundary(v), t_dart0, false, 0};       // cw-before tangent
    EndSpec l1{VertexRef::at_boundary(v), t_dart0, true, 0};        // cw-after tangent
    ang.map_.add_diagonal(l_idx, l0, l1);
  };

  if (n >= 5) {
    int before = ang.map_.backward_dart(1);  // append interior darts before e(N,1)
    add_bundle(std::to_string(n), std::to_string(n + 1), 1, Pole::R, before);
    add_split(std::to_string(n - 1), 1, 1 + m, before, ang.map_.backward_dart(1 + m));
    for (int k = 1; k <= n - 4; ++k)
      add_split(std::to_string(k), 1, 1 + static_cast<long long>(k + 1) * m, before,
                ang.map_.backward_dart(1 + (k + 1) * m));
    add_bundle(std::to_string(n - 3), std::to_string(n - 2), 1, Pole::S, before);
  } else {
    int before1 = ang.map_.backward_dart(1);
    add_bundle("2", "3", 1, Pole::R, before1);
    add_split("1", 1, 1 + m, before1, ang.map_.backward_dart(1 + m));
    // the S arcs hang at the split's far end
    int split_dart_at_far = ang.map_.edge(ang.map_.diagonal_edge(ang.diag_index("1"))).dart1;
    add_bundle("4", "5", 1 + m, Pole::S, split_dart_at_far);
  }
  ang.map_.check_integrity();
  return ang;
}

int Angulation::diag_index(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(diags_.size()); ++i)
    if (diags_[i].label == label) return i;
  throw AngulationError("no diagonal labelled '" + label + "'");
}

std::vector<std::string> Angulation::labels() const {
  std::vector<std::string> out;
  for (const auto& d : diags_) out.push_back(d.label);
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

const DrawnDiagonal& Angulation::diagonal(const std::string& label) const {
  return diags_[diag_index(label)];
}
const MDiagonal& Angulation::arc_class(const std::string& label) const {
  return diags_[diag_index(label)].cls;
}

// --- faces / validation --------------------------------------------------------

std::vector<FaceView> Angulation::faces() const {
  std::vector<FaceView> out;
  for (const auto& f : map_.trace_faces()) {
    if (f.outer) continue;
    FaceView fv;
    fv.side_count = f.side_count;
    for (const auto& it : f.items) {
      if (it.kind == FaceItem::Kind::Diagonal)
        fv.sides.push_back(diags_[it.diag].label);
      else if (it.kind == FaceItem::Kind::BoundaryEdge)
        fv.sides.push_back(edge_desc(map_, it.edge));
      else
        fv.sides.push_back("pole-sides " + std::to_string(it.count));
    }
    out.push_back(std::move(fv));
  }
  return out;
}

AngReport Angulation::validate() const {
  AngReport rep;
  try {
    map_.check_integrity();
  } catch (const std::exception& e) {
    rep.issues.push_back(std::string("map: ") + e.what());
    rep.ok = false;
    return rep;
  }
  int expected = spec_.n + 1;
  if (diagonal_count() != expected)
    rep.issues.push_back("diagonal count " + std::to_string(diagonal_count()) + " != n+1 = " +
                         std::to_string(expected));
  int face_no = 0;
  for (const auto& f : map_.trace_faces()) {
    if (f.outer) continue;
    ++face_no;
    if (f.side_count != spec_.m + 2) {
      std::ostringstream os;
      os << "face " << face_no << " has " << f.side_count << " sides (expected "
         << spec_.m + 2 << "):";
      for (const auto& it : f.items) {
        if (it.kind == FaceItem::Kind::Diagonal)
          os << " " << diags_[it.diag].label;
        else if (it.kind == FaceItem::Kind::BoundaryEdge)
          os << " [" << edge_desc(map_, it.edge) << "]";
        else
          os << " <" << it.count << " pole sides>";
      }
      rep.issues.push_back(os.str());
    }
  }
  rep.ok = rep.issues.empty();
  return rep;
}

// --- colored quiver -------------------------------------------------------------

std::vector<int> Angulation::partners_of(int diag) const {
  // the "hung to the same disk" rule concerns the pair of classes with a
  // common base vertex and opposite tangency sides (the loop-around-tangent
  // configuration); fan members at a pole keep their arrows
  std::vector<int> out;
  if (const auto* me = std::get_if<BridgeArc>(&diags_[diag].cls)) {
    // a loop-based bridge around one pole together with an arc reaching that
    // pole forms the eye configuration; two links are a genuine face pair
    int my_phase = me->family == 0 ? me->rim : 0;
    for (int j = 0; j < static_cast<int>(diags_.size()); ++j) {
      if (j == diag) continue;
      if (const auto* o = std::get_if<BridgeArc>(&diags_[j].cls)) {
        int other_phase = o->family == 0 ? o->rim : 0;
        if (me->family != o->family && my_phase == 0 && other_phase == 0) out.push_back(j);
      }
    }
    return out;
  }
  const auto* t = std::get_if<TangentArc>(&diags_[diag].cls);
  if (!t) return out;
  for (int j = 0; j < static_cast<int>(diags_.size()); ++j) {
    if (j == diag) continue;
    const auto* o = std::get_if<TangentArc>(&diags_[j].cls);
    if (o && o->pole == t->pole && o->p == t->p && o->side != t->side &&
        (diags_[diag].loop_rep || diags_[j].loop_rep))
      out.push_back(j);
  }
  return out;
}

ColoredQuiver Angulation::colored_quiver() const {
  const int m = spec_.m;
  std::vector<std::string> verts;
  for (const auto& l : labels()) verts.push_back(l);
  ColoredQuiver q(m, verts);

  const int nd = diagonal_count();
  std::vector<std::vector<int>> partner(nd);
  for (int i = 0; i < nd; ++i) partner[i] = partners_of(i);

  // arrows (i,j) computed in the map with partners(i) u partners(j) forgotten.
  // With `sheet_filter`, witnesses whose shared corners sit on mismatched
  // winding sheets are wrap artifacts and are dropped (same-base same-side
  // sibling pairs; the map alone cannot see the wrap).
  auto arrows_between = [&](int i, int j, const CombMap& map, bool sheet_filter) {
    auto end_lift = [&](const FaceItem& it, bool arriving, bool* pole) {
      const auto& e = map.edge(it.edge);
      int dart = arriving ? map.dart(it.dart).twin : it.dart;
      const DiagEnd& d = diags_[it.diag].ends[dart == e.dart0 ? 0 : 1];
      *pole = d.at_pole;
      return d.lift;
    };
    std::vector<int> colors;
    for (const auto& f : map.trace_faces()) {
      if (f.outer) continue;
      const auto& items = f.items;
      const int sz = static_cast<int>(items.size());
      for (int p = 0; p < sz; ++p) {
        if (items[p].kind != FaceItem::Kind::Diagonal || items[p].diag != i) continue;
        for (int qpos = 0; qpos < sz; ++qpos) {
          if (items[qpos].kind != FaceItem::Kind::Diagonal || items[qpos].diag != j) continue;
          // walk clockwise from p to qpos; disqualify on other occurrences of i or j
          int color = 0;
          bool ok = true;
          bool pole_end = false;
          long long lift = end_lift(items[p], true, &pole_end);
          // a walk anchored on the boundary must stay sheet-coherent; pole
          // corners carry no sheet and exempt the whole walk
          const bool anchored = !pole_end;
          bool traceable = anchored;
          for (int s = (p + 1) % sz; s != qpos; s = (s + 1) % sz) {
            const auto& it = items[s];
            if (it.kind == FaceItem::Kind::Diagonal) {
              if (it.diag == i || it.diag == j) {
                ok = false;
                break;
              }
              color += 1;
              if (sheet_filter && !anchored) ok = false;  // the wrap hides behind the pole
              if (traceable) {
                bool pl_in = false, pl_out = false;
                long long in_lift = end_lift(it, false, &pl_in);
                long long out_lift = end_lift(it, true, &pl_out);
                if (pl_in || pl_out) {
                  if (sheet_filter) ok = false;
                  traceable = false;
                } else if (in_lift != lift) {
                  if (sheet_filter) ok = false;
                  traceable = false;
                } else {
                  lift = out_lift;
                }
              }
            } else if (it.kind == FaceItem::Kind::BoundaryEdge) {
              color += 1;
              if (traceable) lift += 1;
            } else {
              color += it.count;
              if (traceable && sheet_filter) ok = false;
              traceable = false;
            }
            if (!ok) break;
          }
          if (ok && sheet_filter && traceable) {
            bool pl = false;
            long long jl = end_lift(items[qpos], false, &pl);
            if (!pl && jl != lift) ok = false;
          }
          if (ok) colors.push_back(color);
        }
      }
    }
    return colors;
  };

  // same-base same-side siblings (windings apart) are resolved through the
  // twist-iterate form of the definition; the face rule cannot see which
  // witness crosses the wrap
  bool conjugate_link_present = false;
  for (const auto& d : diags_)
    if (const auto* br = std::get_if<BridgeArc>(&d.cls))
      if (br->family == 0 && br->rim % (m + 1) != 0) conjugate_link_present = true;

  auto siblings = [&](int i, int j) {
    const auto* ti = std::get_if<TangentArc>(&diags_[i].cls);
    const auto* tj = std::get_if<TangentArc>(&diags_[j].cls);
    // the clockwise walk meets the wrap of a Right-tangency pair head on when
    // a conjugate-tagged link rides along; otherwise the wrapped corner is
    // genuine
    return conjugate_link_present && ti && tj && ti->pole == tj->pole &&
           ti->side == tj->side && ti->p != tj->p && ti->side == Side::Right &&
           project_lift(spec_, ti->p) == project_lift(spec_, tj->p);
  };

  auto pair_phase = [&](int dg) {
    const auto* br = std::get_if<BridgeArc>(&diags_[dg].cls);
    return (br && br->family == 0) ? br->rim : 0;
  };
  for (int a = 0; a < nd; ++a)
    for (int b = 0; b < nd; ++b) {
      if (a == b) continue;
      // symmetry is an axiom: compute each unordered pair once, walking from
      // the less twisted member, and mirror the partner arrows
      int i = a, j = b;
      bool swapped = false;
      if (pair_phase(a) > pair_phase(b)) {
        i = b;
        j = a;
        swapped = true;
      }
      if ((swapped && a < b) || (!swapped && a > b)) continue;
      if (std::find(partner[i].begin(), partner[i].end(), j) != partner[i].end())
        continue;  // same pole: no arrows between the pair
      bool check_corner_sheets = siblings(i, j);
      std::vector<int> forget;
      for (int x : partner[i]) forget.push_back(x);
      for (int x : partner[j])
        if (std::find(forget.begin(), forget.end(), x) == forget.end()) forget.push_back(x);
      std::vector<int> colors;
      if (forget.empty()) {
        colors = arrows_between(i, j, map_, check_corner_sheets);
      } else {
        CombMap reduced = map_.without_diagonals(forget);
        colors = arrows_between(i, j, reduced, check_corner_sheets);
      }
      // collect, then cancel opposite contributions: a pair of diagonals
      // bounding two common corners yields mutually inverse families (the
      // two-triangle configuration for m=1), and valid tables are
      // monochromatic by the correspondence lemma
      std::map<int, int> counts;
      for (int c : colors) {
        // in a forgotten (merged-face) map distant pairs are not consecutive;
        // only walks of at most m sides witness an arrow
        if (c > m) {
          if (forget.empty())
            throw AngulationError("face walk produced color " + std::to_string(c) +
                                  " > m between " + diags_[i].label + " and " +
                                  diags_[j].label);
          continue;
        }
        counts[c] += 1;
      }
      int total = 0;
      for (const auto& [c, n] : counts) total += n;
      // a link's twist phase cycles the colors of its incident arrows (both
      // link tags draw identically; the loop-based family is pinned by which
      // pole carries its base)
      auto phase = [&](int dg) {
        const auto* br = std::get_if<BridgeArc>(&diags_[dg].cls);
        return (br && br->family == 0) ? br->rim : 0;
      };
      int shift = phase(j) - phase(i);
      for (const auto& [c, n] : counts) {
        int keep = n - (total - n);
        if (keep > 0) {
          int cc = ((c + shift) % (m + 1) + (m + 1)) % (m + 1);
          q.add_arrow(diags_[i].label, diags_[j].label, cc, keep);
          q.add_arrow(diags_[j].label, diags_[i].label, m - cc, keep);
        }
      }
    }
  return q;
}

PlainQuiver Angulation::plain_quiver() const {
  ColoredQuiver cq = colored_quiver();
  PlainQuiver out;
  out.vertices = cq.vertices();
  for (const auto& a : cq.arrows())
    if (a.color == spec_.m)
      for (int r = 0; r < a.mult; ++r) out.arrows.emplace_back(a.from, a.to);
  out.sort_arrows();
  return out;
}

// --- representative normalization ---------------------------------------------

void Angulation::swap_pair_reps(int t_idx, int l_idx) {
  // t currently attached to the pole, l currently drawn as a loop; afterwards
  // l is attached and t is the loop.
  DrawnDiagonal& t = diags_[t_idx];
  DrawnDiagonal& l = diags_[l_idx];
  const auto* tc = std::get_if<TangentArc>(&t.cls);
  const auto* lc = std::get_if<TangentArc>(&l.cls);
  if (!tc || !lc || t.loop_rep || !l.loop_rep)
    throw AngulationError("swap_pair_reps: not a tangent/loop pair");
  Pole pole = tc->pole;
  int v = static_cast<int>(project_lift(spec_, tc->p));

  int te = map_.diagonal_edge(t_idx);
  int le = map_.diagonal_edge(l_idx);
  // anchor: the dart cw-before the bundle at v (the loop darts sandwich t)
  int l_dart0 = map_.edge(le).dart0;
  const auto& rot = map_.rotation(VertexRef::at_boundary(v));
  int pos = -1;
  for (int i = 0; i < static_cast<int>(rot.size()); ++i)
    if (rot[i] == l_dart0) pos = i;
  if (pos <= 0) throw AngulationError("pair bundle missing anchor");
  int anchor = rot[pos - 1];

  map_.remove_diagonal_edge(te);
  map_.remove_diagonal_edge(le);

  // attached l: boundary end then pole end
  EndSpec a0{VertexRef::at_boundary(v), anchor, true, 0};
  EndSpec a1{VertexRef::at_pole(pole), -1, false, 0};
  int new_le = map_.add_diagonal(l_idx, a0, a1);
  int l_attached_dart = map_.edge(new_le).dart0;
  l.loop_rep = false;
  l.ends[0] = {false, Pole::R, lc->p};
  l.ends[1] = {true, pole, 0};

  EndSpec t0{VertexRef::at_boundary(v), l_attached_dart, false, 0};
  EndSpec t1{VertexRef::at_boundary(v), l_attached_dart, true, 0};
  map_.add_diagonal(t_idx, t0, t1);
  t.loop_rep = true;
  t.ends[0] = {false, Pole::R, tc->p};
  t.ends[1] = {false, Pole::R, tc->p};
}

void Angulation::redraw_as_loop(int loop_idx, int keep_idx) {
  // both pair members drawn attached; redraw `loop_idx` as the loop whose
  // darts sandwich the kept tangent at their common base vertex
  DrawnDiagonal& l = diags_[loop_idx];
  const auto* lc = std::get_if<TangentArc>(&l.cls);
  if (!lc || l.loop_rep) throw AngulationError("redraw_as_loop: not an attached tangent");
  int keep_eid = map_.diagonal_edge(keep_idx);
  int keep_dart_u = map_.edge(keep_eid).dart0;
  if (map_.dart(keep_dart_u).at.kind != VertexRef::Kind::Boundary)
    keep_dart_u = map_.edge(keep_eid).dart1;

  map_.remove_diagonal_edge(map_.diagonal_edge(loop_idx));
  EndSpec a{map_.dart(keep_dart_u).at, keep_dart_u, false, 0};
  EndSpec b{map_.dart(keep_dart_u).at, keep_dart_u, true, 0};
  map_.add_diagonal(loop_idx, a, b);
  l.loop_rep = true;
  l.ends[0] = {false, Pole::R, lc->p};
  l.ends[1] = {false, Pole::R, lc->p};
}

void Angulation::canonicalize_reps() {
  // canonical edge orientation: boundary ends before pole ends, smaller lifts
  // first; loops ordered by rotation position
  for (int i = 0; i < static_cast<int>(diags_.size()); ++i) {
    auto key = [&](const DiagEnd& e) {
      return e.at_pole ? std::make_pair(1LL, static_cast<long long>(e.pole))
                       : std::make_pair(0LL, e.lift);
    };
    bool swap = false;
    auto k0 = key(diags_[i].ends[0]), k1 = key(diags_[i].ends[1]);
    if (k1 < k0) {
      swap = true;
    } else if (k1 == k0 && !diags_[i].ends[0].at_pole) {
      int eid = map_.diagonal_edge(i);
      if (map_.position_in_rotation(map_.edge(eid).dart1) <
          map_.position_in_rotation(map_.edge(eid).dart0))
        swap = true;
    }
    if (swap) {
      map_.swap_edge_darts(map_.diagonal_edge(i));
      std::swap(diags_[i].ends[0], diags_[i].ends[1]);
    }
  }
  for (Pole pole : {Pole::R, Pole::S}) {
    std::vector<int> classes;
    int hung = 0;
    for (int i = 0; i < static_cast<int>(diags_.size()); ++i) {
      if (const auto* t = std::get_if<TangentArc>(&diags_[i].cls)) {
        if (t->pole == pole) {
          classes.push_back(i);
          ++hung;
        }
      } else if (std::holds_alternative<BridgeArc>(diags_[i].cls)) {
        ++hung;  // a bridge end blocks the loop representative
      }
    }
    if (classes.size() == 2 && hung == 2) {
      const auto& c0 = std::get<TangentArc>(diags_[classes[0]].cls);
      const auto& c1 = std::get<TangentArc>(diags_[classes[1]].cls);
      if (c0.p == c1.p && c0.side != c1.side) {
        int left = c0.side == Side::Left ? classes[0] : classes[1];
        int right = c0.side == Side::Left ? classes[1] : classes[0];
        if (diags_[left].loop_rep && !diags_[right].loop_rep) {
          // canonical already
        } else if (!diags_[left].loop_rep && diags_[right].loop_rep) {
          swap_pair_reps(left, right);
        } else if (!diags_[left].loop_rep && !diags_[right].loop_rep) {
          redraw_as_loop(left, right);
        } else {
          throw AngulationError("pole pair drawn as two loops");
        }
      }
    }
  }
}

Angulation Angulation::normalize_for_flip(const std::string& label) const {
  Angulation out = *this;
  out.canonicalize_reps();
  int idx = out.diag_index(label);
  if (const auto* t = std::get_if<TangentArc>(&out.diags_[idx].cls)) {
    if (!out.diags_[idx].loop_rep) {
      // find the partner at the same pole and vertex; if it is the loop,
      // exchange roles so the flip target is the loop
      for (int j = 0; j < static_cast<int>(out.diags_.size()); ++j) {
        if (j == idx) continue;
        const auto* o = std::get_if<TangentArc>(&out.diags_[j].cls);
        if (o && o->pole == t->pole && out.diags_[j].loop_rep && o->p == t->p &&
            o->side != t->side) {
          out.swap_pair_reps(idx, j);
          break;
        }
      }
    }
  }
  return out;
}

// --- the flip -------------------------------------------------------------------

namespace {

struct SlideResult {
  DiagEnd new_end;
  std::optional<Side> carried_side;
  std::optional<Pole> wrapped_pole;  // slid along a loop around this pole
  long long origin_lift = 0;         // boundary lift the slide departed from
  // insertion placement
  bool gap_slip = false;
  EndSpec ins;     // for non-gap slides
  Pole slip_pole = Pole::R;
  int slip_prev_anchor = -1;  // surviving neighbour dart at the pole (-1: single)
  int slip_gap_before = 0;
};

}  // namespace

MDiagonal Angulation::classify_new_arc(const CombMap& map, int edge_id, const DiagEnd ends[2],
                                       const std::optional<Side> carried_side[2],
                                       const long long origin_lifts[2],
                                       bool map_trivial) const {
  const int N = spec_.boundary_count();
  const int m = spec_.m;

  // region flood on faces, not crossing the new edge
  auto faces = map.trace_faces();
  int fa = -1, fb = -1;  // faces containing dart0 / dart1 traversals
  const auto& e = map.edge(edge_id);
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (const auto& it : faces[f].items) {
      if (it.edge != edge_id) continue;
      if (it.dart == e.dart0) fa = f;
      if (it.dart == e.dart1) fb = f;
    }
  if (fa < 0 || fb < 0) throw AngulationError("new edge not found in face trace");

  // adjacency through diagonals only; regions are cut by the new edge and the
  // outer boundary
  std::map<int, std::vector<int>> edge_faces;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (const auto& it : faces[f].items)
      if (it.kind == FaceItem::Kind::Diagonal && it.edge != edge_id)
        edge_faces[it.edge].push_back(f);
  auto flood = [&](int start) {
    std::set<int> comp;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      if (!comp.insert(f).second) continue;
      for (const auto& it : faces[f].items) {
        if (it.kind != FaceItem::Kind::Diagonal || it.edge == edge_id) continue;
        for (int g : edge_faces[it.edge])
          if (!comp.count(g)) stack.push_back(g);
      }
    }
    return comp;
  };
  auto region_info = [&](const std::set<int>& comp) {
    std::pair<std::set<int>, std::set<int>> out;  // poles (as ints), boundary edges
    for (int f : comp) {
      if (faces[f].outer) continue;
      for (const auto& it : faces[f].items) {
        if (it.kind == FaceItem::Kind::PoleSides) continue;
        if (it.kind == FaceItem::Kind::BoundaryEdge)
          out.second.insert(map.edge(it.edge).boundary_index);
        const auto& dd = map.dart(it.dart);
        if (dd.at.kind == VertexRef::Kind::PoleVertex)
          out.first.insert(static_cast<int>(dd.at.pole));
        const auto& tt = map.dart(dd.twin);
        if (tt.at.kind == VertexRef::Kind::PoleVertex)
          out.first.insert(static_cast<int>(tt.at.pole));
      }
    }
    return out;
  };

  const bool pole0 = ends[0].at_pole, pole1 = ends[1].at_pole;
  if (pole0 && pole1) {
    (void)carried_side;
    // Both rank-2 tube families appear here. An arc attached to both poles is
    // the linking family; an arc based twice at one pole encircles the other
    // (the tagged-arc analog) and is the second family, its rim telling which
    // pole carries the base. d and the link rim are anchored at the boundary
    // lift the creating slide departed from (see ledger).
    long long anchor = 0;
    if (ends[0].pole == Pole::R && origin_lifts[0] != 0)
      anchor = origin_lifts[0];
    else if (origin_lifts[1] != 0)
      anchor = origin_lifts[1];
    else
      anchor = origin_lifts[0];
    long long dm = (anchor - 1) % m;
    if (dm < 0) dm += m;
    int d = static_cast<int>(dm) + 1;
    const auto* old_bridge = std::get_if<BridgeArc>(&diags_[map.edge(edge_id).diag].cls);
    if (ends[0].pole != ends[1].pole) {
      if (old_bridge && old_bridge->family == 0) {
        // slip of a link: when the surgery leaves the map untouched the twist
        // phase carries the whole color cycle; when the pole sides moved, the
        // faces already carry it
        int rim = map_trivial ? (old_bridge->rim + 1) % (m + 1) : old_bridge->rim;
        return BridgeArc{0, 1, rim, old_bridge->d};
      }
      // fresh links carry the plain tag (phase 0)
      return BridgeArc{0, 1, old_bridge ? 1 : 0, d};
    }
    if (origin_lifts[0] == 0 && origin_lifts[1] == 0 && old_bridge)
      return BridgeArc{1, 1, ends[0].pole == Pole::S ? 0 : 1, old_bridge->d};
    return BridgeArc{1, 1, ends[0].pole == Pole::S ? 0 : 1, d};
  }
  if (pole0 || pole1) {
    int bi = pole0 ? 1 : 0;
    Pole pole = pole0 ? ends[0].pole : ends[1].pole;
    long long p = ends[bi].lift;
    Side side = carried_side[pole0 ? 0 : 1].value_or(Side::Left);
    return TangentArc{p, pole, side};
  }

  long long la = ends[0].lift, lb = ends[1].lift;
  int va = static_cast<int>(project_lift(spec_, la));
  int vb = static_cast<int>(project_lift(spec_, lb));

  if (va == vb) {
    // loop at a boundary vertex: inner region has no boundary edges
    auto compA = flood(fa), compB = flood(fb);
    auto [polesA, edgesA] = region_info(compA);
    auto [polesB, edgesB] = region_info(compB);
    const auto& inner_poles = edgesA.empty() ? polesA : polesB;
    if (inner_poles.size() == 2) return BoundaryArc{va, N};  // m=1 full loop
    if (inner_poles.size() != 1)
      throw AngulationError("contractible loop produced by flip");
    Pole pole = static_cast<Pole>(*inner_poles.begin());
    // side and sheet come from the enclosed tangency partner: the slides may
    // approach the base vertex around both flanks of the pole, leaving the
    // raw end lifts a wrap apart
    Side side = Side::Left;
    long long p = std::min(la, lb);
    const int self = map.edge(edge_id).diag;
    const auto& inner = edgesA.empty() ? compA : compB;
    for (int f : inner)
      for (const auto& it : faces[f].items)
        if (it.kind == FaceItem::Kind::Diagonal && it.diag >= 0 && it.diag != self &&
            it.diag < static_cast<int>(diags_.size()))
          if (const auto* t = std::get_if<TangentArc>(&diags_[it.diag].cls))
            if (t->pole == pole) {
              side = flip_side(t->side);
              if (project_lift(spec_, t->p) == va) p = t->p;
            }
    return TangentArc{p, pole, side};
  }

  auto compA = flood(fa);
  auto compB = compA.count(fb) ? std::set<int>{} : flood(fb);
  if (compB.empty()) throw AngulationError("boundary arc fails to separate");
  auto [polesA, edgesA] = region_info(compA);
  auto [polesB, edgesB] = region_info(compB);

  if (polesA.size() == 1 && polesB.size() == 1 && polesA != polesB) {
    // split; orient so the clockwise side from a contains R
    const auto& r_edges = (*polesA.begin() == static_cast<int>(Pole::R)) ? edgesA : edgesB;
    // the R side interval starts at the endpoint whose outgoing boundary edge
    // belongs to it
    long long X, other;
    if (r_edges.count(va)) {
      X = la;
      other = lb;
    } else if (r_edges.count(vb)) {
      X = lb;
      other = la;
    } else {
      throw AngulationError("split orientation: R side interval misses both endpoints");
    }
    int a = static_cast<int>(project_lift(spec_, X));
    int b = static_cast<int>(project_lift(spec_, other));
    long long Y = X + boundary_length(spec_, a, b);
    if ((other - Y) % N != 0)
      throw AngulationError("incoherent lifts on flipped split");
    return SplitArc{X, Y};
  }
  if (polesA.empty() || polesB.empty()) {
    // boundary path; the pocket is the pole-free side
    const auto& pocket = polesA.empty() ? edgesA : edgesB;
    int a, b;
    if (pocket.count(va)) {
      a = va;
      b = vb;
    } else if (pocket.count(vb)) {
      a = vb;
      b = va;
    } else {
      throw AngulationError("boundary arc: pocket interval misses both endpoints");
    }
    long long s = boundary_length(spec_, a, b);
    if (s == 0) s = N;
    return BoundaryArc{a, s};
  }
  throw AngulationError("flip produced an unrecognisable arc class");
}

Angulation Angulation::flipped_impl(const std::string& label, bool inverse) const {
  Angulation work = normalize_for_flip(label);
  const int idx = work.diag_index(label);
  CombMap& map = work.map_;
  const int eid = map.diagonal_edge(idx);
  const auto edge = map.edge(eid);

  auto faces = map.trace_faces();
  struct Traversal {
    int face = -1, pos = -1, dart = -1;
  };
  std::vector<Traversal> travs;
  for (int f = 0; f < static_cast<int>(faces.size()); ++f)
    for (int p = 0; p < static_cast<int>(faces[f].items.size()); ++p) {
      const auto& it = faces[f].items[p];
      if (it.kind == FaceItem::Kind::Diagonal && it.edge == eid)
        travs.push_back({f, p, it.dart});
    }
  if (travs.size() != 2) throw AngulationError("diagonal does not bound two face corners");

  auto end_index_for = [&](int dart) {
    // forward: the moving endpoint is at the traversal's target
    int at = inverse ? dart : map.dart(dart).twin;
    return at == edge.dart0 ? 0 : 1;
  };

  std::vector<SlideResult> slides(2);
  for (int k = 0; k < 2; ++k) {
    const auto& tv = travs[k];
    const auto& items = faces[tv.face].items;
    const int sz = static_cast<int>(items.size());
    const FaceItem& side_item =
        inverse ? items[(tv.pos - 1 + sz) % sz] : items[(tv.pos + 1) % sz];
    int end_idx = end_index_for(tv.dart);
    const DiagEnd moving = work.diags_[idx].ends[end_idx];
    SlideResult sr;
    sr.origin_lift = moving.at_pole ? 0 : moving.lift;

    if (side_item.kind == FaceItem::Kind::PoleSides) {
      if (!moving.at_pole)
        throw AngulationError("pole-side slip from a boundary endpoint");
      sr.gap_slip = true;
      sr.slip_pole = moving.pole;
      sr.new_end = moving;  // class-neutral Dehn slip
      // record the surviving neighbour and gap bookkeeping
      int pd = inverse ? tv.dart : map.dart(tv.dart).twin;
      const auto& rot = map.rotation(VertexRef::at_pole(moving.pole));
      int n = static_cast<int>(rot.size());
      int pos = -1;
      for (int i = 0; i < n; ++i)
        if (rot[i] == pd) pos = i;
      if (pos < 0) throw AngulationError("pole dart missing");
      const auto& gaps = map.pole_gaps(moving.pole);
      if (n == 1) {
        sr.slip_prev_anchor = -1;  // map-neutral rotation of the pole
      } else if (!inverse) {
        int prev = (pos - 1 + n) % n;
        sr.slip_prev_anchor = rot[prev];
        int g1 = gaps[prev];
        if (g1 <= 0) throw AngulationError("clockwise slip without pole sides");
        sr.slip_gap_before = g1 - 1;  // sides kept before the re-inserted dart
      } else {
        int nxt = (pos + 1) % n;
        int g1 = gaps[pos];
        if (g1 <= 0) throw AngulationError("counterclockwise slip without pole sides");
        sr.slip_prev_anchor = rot[nxt];
        sr.slip_gap_before = -(g1 - 1) - 1;  // marker: insert before anchor, keep g1-1 after
      }
      slides[k] = sr;
      continue;
    }

    // carrier dart at the shared vertex (forward) / at the far vertex (inverse)
    int carrier_dart = side_item.dart;
    int far_dart = inverse ? carrier_dart : map.dart(carrier_dart).twin;
    // shared-vertex dart of the carrier:
    int shared_dart = inverse ? map.dart(carrier_dart).twin : carrier_dart;
    const auto& far_ref = map.dart(far_dart).at;

    if (side_item.kind == FaceItem::Kind::BoundaryEdge) {
      if (moving.at_pole) throw AngulationError("boundary slide from a pole endpoint");
      int i = map.edge(side_item.edge).boundary_index;
      int shared_v = static_cast<int>(project_lift(spec_, moving.lift));
      long long delta = (shared_v == i) ? +1 : -1;
      sr.new_end = {false, Pole::R, moving.lift + delta};
      sr.ins = EndSpec{far_ref, far_dart, inverse, 0};
      slides[k] = sr;
      continue;
    }

    if (side_item.edge == eid) {
      // the walk bounced at a pole whose only attachment is the flipped arc
      // itself (disk poles, m = 1): the slip around the pole is trivial
      if (!moving.at_pole)
        throw AngulationError("flip walk bounced at a boundary endpoint");
      sr.gap_slip = true;
      sr.slip_pole = moving.pole;
      sr.new_end = moving;
      sr.slip_prev_anchor = -1;
      slides[k] = sr;
      continue;
    }

    // diagonal carrier
    const DrawnDiagonal& carrier = work.diags_[side_item.diag];
    const auto& ce = map.edge(side_item.edge);
    int shared_end = (shared_dart == ce.dart0) ? 0 : 1;
    int far_end = 1 - shared_end;
    const DiagEnd& c_near = carrier.ends[shared_end];
    const DiagEnd& c_far = carrier.ends[far_end];

    if (carrier.loop_rep) {
      // both carrier ends at the same vertex: the slide wraps its pole
      const auto* tc = std::get_if<TangentArc>(&carrier.cls);
      if (!tc) throw AngulationError("loop representative without tangent class");
      sr.wrapped_pole = tc->pole;
      sr.carried_side = tc->side;
    }
    if (c_far.at_pole) {
      sr.new_end = c_far;
      if (const auto* tc = std::get_if<TangentArc>(&carrier.cls)) sr.carried_side = tc->side;
      int gap_before = 0;
      if (!inverse) {
        // keep the predecessor's whole gap before the new dart
        const auto& rot = map.rotation(far_ref);
        int n = static_cast<int>(rot.size());
        int pos = -1;
        for (int i = 0; i < n; ++i)
          if (rot[i] == far_dart) pos = i;
        gap_before = map.pole_gaps(far_ref.pole)[(pos - 1 + n) % n];
      }
      sr.ins = EndSpec{far_ref, far_dart, inverse, gap_before};
    } else {
      if (moving.at_pole) {
        sr.new_end = c_far;
      } else {
        long long offset = moving.lift - (c_near.at_pole ? moving.lift : c_near.lift);
        sr.new_end = {false, Pole::R, c_far.lift + offset};
      }
      sr.ins = EndSpec{far_ref, far_dart, inverse, 0};
    }
    slides[k] = sr;
  }

  // surgery: remove alpha, insert the twisted arc
  auto map_snapshot = [&]() {
    // structural tokens: dart ids change across a remove/re-insert, the
    // (diagonal, end) identity does not
    auto token = [&](int dart_id) {
      const auto& dd = map.dart(dart_id);
      const auto& de = map.edge(dd.edge);
      if (de.kind == CombMap::Edge::Kind::Boundary) return de.boundary_index * 4;
      return de.diag * 4 + 2 + (dart_id == de.dart0 ? 0 : 1);
    };
    std::vector<std::vector<int>> snap;
    for (int v = 1; v <= spec_.boundary_count(); ++v) {
      std::vector<int> row;
      for (int dd : map.rotation(VertexRef::at_boundary(v))) row.push_back(token(dd));
      snap.push_back(row);
    }
    for (Pole p : {Pole::R, Pole::S}) {
      std::vector<int> row;
      for (int dd : map.rotation(VertexRef::at_pole(p))) row.push_back(token(dd));
      snap.push_back(row);
      snap.push_back(map.pole_gaps(p));
    }
    return snap;
  };
  auto before_snapshot = map_snapshot();
  map.remove_diagonal_edge(eid);

  DiagEnd new_ends[2];
  std::optional<Side> carried[2];
  EndSpec specs[2];
  for (int k = 0; k < 2; ++k) {
    new_ends[k] = slides[k].new_end;
    carried[k] = slides[k].carried_side;
    if (slides[k].gap_slip) {
      Pole p = slides[k].slip_pole;
      if (slides[k].slip_prev_anchor < 0) {
        specs[k] = EndSpec{VertexRef::at_pole(p), -1, false, spec_.pole_side_count()};
        // single-dart pole: reinsertion recreates the full gap
        if (!map.rotation(VertexRef::at_pole(p)).empty())
          specs[k] = EndSpec{VertexRef::at_pole(p), -1, false, 0};
      } else if (slides[k].slip_gap_before >= 0) {
        specs[k] = EndSpec{VertexRef::at_pole(p), slides[k].slip_prev_anchor, true,
                           slides[k].slip_gap_before};
      } else {
        int keep_after = -(slides[k].slip_gap_before + 1);
        // insert before the recorded successor, leaving keep_after+1 shifted
        const auto& rot = map.rotation(VertexRef::at_pole(p));
        int n = static_cast<int>(rot.size());
        int pos = -1;
        for (int i = 0; i < n; ++i)
          if (rot[i] == slides[k].slip_prev_anchor) pos = i;
        if (pos < 0) throw AngulationError("slip anchor vanished");
        int prev = (pos - 1 + n) % n;
        int merged = map.pole_gaps(p)[prev];
        specs[k] = EndSpec{VertexRef::at_pole(p), slides[k].slip_prev_anchor, false,
                           merged - keep_after};
      }
    } else {
      specs[k] = slides[k].ins;
    }
  }

  int new_eid = map.add_diagonal(idx, specs[0], specs[1]);
  map.check_integrity();

  long long origins[2] = {slides[0].origin_lift, slides[1].origin_lift};
  // note: dart ids survive a remove/re-insert of the same diagonal, so
  // rotation equality detects a genuinely untouched map
  bool map_trivial = map_snapshot() == before_snapshot;
  // wrapped-pole lift adjustment for tangent results
  MDiagonal cls = work.classify_new_arc(map, new_eid, new_ends, carried, origins, map_trivial);
  if (auto* t = std::get_if<TangentArc>(&cls)) {
    for (int k = 0; k < 2; ++k)
      if (slides[k].wrapped_pole && *slides[k].wrapped_pole != t->pole)
        t->p += inverse ? -spec_.boundary_count() : spec_.boundary_count();
  }
  cls = work.pin_winding_sheet(idx, cls);

  DrawnDiagonal& d = work.diags_[idx];
  d.cls = cls;
  d.ends[0] = new_ends[0];
  d.ends[1] = new_ends[1];
  d.loop_rep = !new_ends[0].at_pole && !new_ends[1].at_pole &&
               project_lift(spec_, new_ends[0].lift) == project_lift(spec_, new_ends[1].lift) &&
               std::holds_alternative<TangentArc>(cls);
  work.align_ends_with_class(idx);

  work.canonicalize_reps();
  return work;
}

// Endpoint journeys can lap the seam during a flip while the arc itself does
// not wrap, so the winding sheet of the new class is pinned as the unique
// deck translate compatible with the other n diagonals (slide lifts break
// ties).
MDiagonal Angulation::pin_winding_sheet(int idx, MDiagonal cls) const {
  const long long N = spec_.boundary_count();
  const bool is_split = std::holds_alternative<SplitArc>(cls);
  if (!is_split && !std::holds_alternative<TangentArc>(cls)) return cls;
  if (const auto* t = std::get_if<TangentArc>(&cls); t && diags_[idx].loop_rep) return cls;

  auto shifted = [&](long long k) {
    MDiagonal out = cls;
    if (auto* s = std::get_if<SplitArc>(&out)) {
      s->x += k * N;
      s->y += k * N;
    } else {
      std::get<TangentArc>(out).p += k * N;
    }
    return out;
  };
  long long best_k = 0;
  long long best_cost = -1;
  for (long long k : {0LL, -1LL, 1LL, -2LL, 2LL}) {
    MDiagonal cand = shifted(k);
    long long cost = 0;
    for (int j = 0; j < static_cast<int>(diags_.size()); ++j) {
      if (j == idx) continue;
      if (diags_[j].cls == cand) {
        cost += 1000;  // duplicate classes cannot share an angulation
        continue;
      }
      try {
        cost += crossing_number(spec_, cand, diags_[j].cls, 4);
      } catch (const UnsupportedRange&) {
        // unknown relation: neutral
      }
    }
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best_k = k;
    }
  }
  return shifted(best_k);
}

void Angulation::align_ends_with_class(int idx) {
  DrawnDiagonal& d = diags_[idx];
  auto set_boundary_end = [&](long long lift) {
    for (int e = 0; e < 2; ++e)
      if (!d.ends[e].at_pole && project_lift(spec_, d.ends[e].lift) == project_lift(spec_, lift))
        d.ends[e].lift = lift;
  };
  if (const auto* s = std::get_if<SplitArc>(&d.cls)) {
    for (int e = 0; e < 2; ++e) {
      if (d.ends[e].at_pole) continue;
      long long v = project_lift(spec_, d.ends[e].lift);
      d.ends[e].lift = (v == project_lift(spec_, s->x)) ? s->x : s->y;
    }
    // endpoints may share a vertex only for degenerate boundary sizes
    if (project_lift(spec_, s->x) == project_lift(spec_, s->y)) {
      d.ends[0].lift = s->x;
      d.ends[1].lift = s->y;
    }
  } else if (const auto* t = std::get_if<TangentArc>(&d.cls)) {
    set_boundary_end(t->p);
  } else if (const auto* b = std::get_if<BoundaryArc>(&d.cls)) {
    for (int e = 0; e < 2; ++e) {
      if (d.ends[e].at_pole) continue;
      long long v = project_lift(spec_, d.ends[e].lift);
      d.ends[e].lift = (v == b->a) ? b->a : b->a + b->s;
    }
    if (project_lift(spec_, static_cast<long long>(b->a)) ==
        project_lift(spec_, b->a + b->s)) {
      d.ends[0].lift = b->a;
      d.ends[1].lift = b->a + b->s;
    }
  }
}

MDiagonal Angulation::twist(const std::string& label) const {
  return flipped_impl(label, false).arc_class(label);
}

Angulation Angulation::flip(const std::string& label) const {
  return flipped_impl(label, false);
}
Angulation Angulation::flip_inverse(const std::string& label) const {
  return flipped_impl(label, true);
}

// --- serialization ---------------------------------------------------------------

namespace {

ordered_json end_to_json(const SurfaceSpec& spec, const DiagEnd& e) {
  ordered_json j;
  if (e.at_pole) {
    j["at"] = e.pole == Pole::R ? "R" : "S";
  } else {
    j["at"] = project_lift(spec, e.lift);
    long long w = (e.lift - project_lift(spec, e.lift)) / spec.boundary_count();
    if (w != 0) j["w"] = w;
  }
  return j;
}

DiagEnd end_from_json(const SurfaceSpec& spec, const json& j) {
  DiagEnd e;
  if (j.at("at").is_string()) {
    e.at_pole = true;
    e.pole = j.at("at").get<std::string>() == "R" ? Pole::R : Pole::S;
  } else {
    e.at_pole = false;
    e.lift = j.at("at").get<long long>() + j.value("w", 0LL) * spec.boundary_count();
  }
  return e;
}

}  // namespace

std::string Angulation::to_json(bool with_rotations) const {
  Angulation canon = *this;
  canon.canonicalize_reps();
  ordered_json j;
  j["spec"] = {{"n", spec_.n}, {"m", spec_.m}};
  ordered_json ds = ordered_json::array();
  for (const auto& label : canon.labels()) {
    const auto& d = canon.diags_[canon.diag_index(label)];
    ordered_json dj;
    dj["label"] = d.label;
    dj["arc"] = json::parse(angulation::to_json(spec_, d.cls));
    dj["ends"] = {end_to_json(spec_, d.ends[0]), end_to_json(spec_, d.ends[1])};
    if (d.loop_rep) dj["loop"] = true;
    ds.push_back(dj);
  }
  j["diagonals"] = ds;
  if (with_rotations) {
    ordered_json rot;
    ordered_json bnd = ordered_json::array();
    auto token = [&](int dart_id) {
      const auto& dd = canon.map_.dart(dart_id);
      const auto& e = canon.map_.edge(dd.edge);
      return canon.diags_[e.diag].label + (dart_id == e.dart0 ? ":0" : ":1");
    };
    for (int v = 1; v <= spec_.boundary_count(); ++v) {
      const auto& r = canon.map_.rotation(VertexRef::at_boundary(v));
      ordered_json row = ordered_json::array();
      for (int i = 1; i + 1 < static_cast<int>(r.size()); ++i) row.push_back(token(r[i]));
      bnd.push_back(row);
    }
    rot["boundary"] = bnd;
    for (Pole p : {Pole::R, Pole::S}) {
      ordered_json pj;
      ordered_json darts = ordered_json::array();
      for (int d : canon.map_.rotation(VertexRef::at_pole(p))) darts.push_back(token(d));
      pj["darts"] = darts;
      pj["gaps"] = canon.map_.pole_gaps(p);
      rot[p == Pole::R ? "R" : "S"] = pj;
    }
    j["rotations"] = rot;
  }
  return j.dump(2) + "\n";
}

std::string Angulation::canonical_form() const { return to_json(true); }

bool Angulation::equals(const Angulation& other) const {
  return canonical_form() == other.canonical_form();
}

Angulation Angulation::from_json(const std::string& text) {
  json j = json::parse(text);
  SurfaceSpec spec{j.at("spec").at("n").get<int>(), j.at("spec").at("m").get<int>()};
  spec.check();
  Angulation ang(spec, CombMap(spec));

  struct PendingEnd {
    VertexRef vertex;
    int dart_slot;  // 0 or 1
  };
  // create diagonal metadata first
  for (const auto& dj : j.at("diagonals")) {
    DrawnDiagonal d;
    d.label = dj.at("label").get<std::string>();
    d.cls = mdiagonal_from_json(spec, dj.at("arc").dump());
    d.ends[0] = end_from_json(spec, dj.at("ends").at(0));
    d.ends[1] = end_from_json(spec, dj.at("ends").at(1));
    d.loop_rep = dj.value("loop", false);
    ang.diags_.push_back(d);
  }

  auto vertex_of_end = [&](const DiagEnd& e) {
    if (e.at_pole) return VertexRef::at_pole(e.pole);
    return VertexRef::at_boundary(static_cast<int>(project_lift(spec, e.lift)));
  };

  if (j.contains("rotations")) {
    // place darts exactly as recorded
    std::map<std::pair<int, int>, int> dart_ids;  // (diag, slot) -> dart id
    // first create all edges with append-only EndSpecs, then reorder rotations
    for (int i = 0; i < static_cast<int>(ang.diags_.size()); ++i) {
      EndSpec a{vertex_of_end(ang.diags_[i].ends[0]), -1, false, 0};
      EndSpec b{vertex_of_end(ang.diags_[i].ends[1]), -1, false, 0};
      int eid = ang.map_.add_diagonal(i, a, b);
      dart_ids[{i, 0}] = ang.map_.edge(eid).dart0;
      dart_ids[{i, 1}] = ang.map_.edge(eid).dart1;
    }
    auto parse_token = [&](const std::string& tok) {
      auto pos = tok.rfind(':');
      if (pos == std::string::npos) throw AngulationError("bad rotation token " + tok);
      std::string label = tok.substr(0, pos);
      int slot = std::stoi(tok.substr(pos + 1));
      return dart_ids.at({ang.diag_index(label), slot});
    };
    const auto& rot = j.at("rotations");
    const auto& bnd = rot.at("boundary");
    for (int v = 1; v <= spec.boundary_count(); ++v) {
      auto& r = ang.map_.rotation(VertexRef::at_boundary(v));
      std::vector<int> nr;
      nr.push_back(ang.map_.forward_dart(v));
      for (const auto& tok : bnd.at(v - 1)) nr.push_back(parse_token(tok.get<std::string>()));
      nr.push_back(ang.map_.backward_dart(v));
      if (nr.size() != r.size()) throw AngulationError("rotation size mismatch at vertex");
      std::vector<int> sorted_a = nr, sorted_b = r;
      std::sort(sorted_a.begin(), sorted_a.end());
      std::sort(sorted_b.begin(), sorted_b.end());
      if (sorted_a != sorted_b) throw AngulationError("rotation content mismatch at vertex");
      r = nr;
    }
    for (Pole p : {Pole::R, Pole::S}) {
      const auto& pj = rot.at(p == Pole::R ? "R" : "S");
      auto& r = ang.map_.rotation(VertexRef::at_pole(p));
      std::vector<int> nr;
      for (const auto& tok : pj.at("darts")) nr.push_back(parse_token(tok.get<std::string>()));
      std::vector<int> sorted_a = nr, sorted_b = r;
      std::sort(sorted_a.begin(), sorted_a.end());
      std::sort(sorted_b.begin(), sorted_b.end());
      if (sorted_a != sorted_b) throw AngulationError("pole rotation content mismatch");
      r = nr;
      auto gaps = pj.at("gaps").get<std::vector<int>>();
      if (gaps.size() != r.size() && !(r.empty() && gaps.empty()))
        throw AngulationError("pole gap table size mismatch");
      ang.map_.pole_gaps(p) = gaps;
    }
    ang.map_.check_integrity();
  } else {
    ang.reconstruct_rotations();
  }
  auto rep = ang.validate();
  if (!rep.ok) {
    std::string msg = "angulation read failed validation:";
    for (const auto& s : rep.issues) msg += "\n  " + s;
    throw AngulationError(msg);
  }
  return ang;
}

// Canonical placement when rotations are absent: clockwise-depth sort at each
// boundary vertex, pole attachments by base vertex, corner weights solved from
// the face equations. Bounded-winding configurations only; validation rejects
// anything the heuristic cannot place.
void Angulation::reconstruct_rotations() {
  const int N = spec_.boundary_count();
  const int m = spec_.m;

  struct Entry {
    double key;
    int diag, slot;
  };
  std::vector<std::vector<Entry>> at_vertex(N + 1);
  std::vector<std::vector<std::pair<int, int>>> at_pole(2);  // (base vertex, diag)

  auto pole_depth = [&](int v, Pole p) {
    int anchor = p == Pole::R ? m : N - m + 1;
    int d = ((anchor - v) % N + N) % N;
    return d + 0.5;
  };

  for (int i = 0; i < static_cast<int>(diags_.size()); ++i) {
    const auto& d = diags_[i];
    if (const auto* s = std::get_if<SplitArc>(&d.cls)) {
      int a = static_cast<int>(project_lift(spec_, s->x));
      int b = static_cast<int>(project_lift(spec_, s->y));
      long long span = s->y - s->x;
      at_vertex[a].push_back({static_cast<double>(span), i, 0});
      at_vertex[b].push_back({static_cast<double>(N - span), i, 1});
      diags_[i].ends[0] = {false, Pole::R, s->x};
      diags_[i].ends[1] = {false, Pole::R, s->y};
    } else if (const auto* b = std::get_if<BoundaryArc>(&d.cls)) {
      int va = b->a;
      int vb = static_cast<int>(project_lift(spec_, b->a + b->s));
      at_vertex[va].push_back({static_cast<double>(b->s) - 0.1, i, 0});
      at_vertex[vb].push_back({static_cast<double>(N - b->s) + 0.1, i, 1});
      diags_[i].ends[0] = {false, Pole::R, static_cast<long long>(b->a)};
      diags_[i].ends[1] = {false, Pole::R, b->a + b->s};
    } else if (const auto* t = std::get_if<TangentArc>(&d.cls)) {
      int v = static_cast<int>(project_lift(spec_, t->p));
      double depth = pole_depth(v, t->pole);
      if (d.loop_rep) {
        at_vertex[v].push_back({depth - 0.01, i, 0});
        at_vertex[v].push_back({depth + 0.01, i, 1});
        diags_[i].ends[0] = {false, Pole::R, t->p};
        diags_[i].ends[1] = {false, Pole::R, t->p};
      } else {
        at_vertex[v].push_back({depth, i, 0});
        at_pole[static_cast<int>(t->pole)].push_back({v, i});
        diags_[i].ends[0] = {false, Pole::R, t->p};
        diags_[i].ends[1] = {true, t->pole, 0};
      }
    } else {
      const auto& br = std::get<BridgeArc>(d.cls);
      (void)br;
      at_pole[0].push_back({N + 1, i});
      at_pole[1].push_back({N + 1, i});
      diags_[i].ends[0] = {true, Pole::R, 0};
      diags_[i].ends[1] = {true, Pole::S, 0};
    }
  }

  // create edges (append order), then overwrite rotations
  std::map<std::pair<int, int>, int> dart_ids;
  for (int i = 0; i < static_cast<int>(diags_.size()); ++i) {
    auto vref = [&](const DiagEnd& e) {
      return e.at_pole ? VertexRef::at_pole(e.pole)
                       : VertexRef::at_boundary(static_cast<int>(project_lift(spec_, e.lift)));
    };
    EndSpec a{vref(diags_[i].ends[0]), -1, false, 0};
    EndSpec b{vref(diags_[i].ends[1]), -1, false, 0};
    int eid = map_.add_diagonal(i, a, b);
    dart_ids[{i, 0}] = map_.edge(eid).dart0;
    dart_ids[{i, 1}] = map_.edge(eid).dart1;
  }
  for (int v = 1; v <= N; ++v) {
    auto& entries = at_vertex[v];
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.key < b.key; });
    std::vector<int> nr{map_.forward_dart(v)};
    for (const auto& e : entries) nr.push_back(dart_ids.at({e.diag, e.slot}));
    nr.push_back(map_.backward_dart(v));
    map_.rotation(VertexRef::at_boundary(v)) = nr;
  }
  for (int p = 0; p < 2; ++p) {
    auto& entries = at_pole[p];
    std::stable_sort(entries.begin(), entries.end());
    std::vector<int> nr;
    for (const auto& [v, i] : entries) {
      int slot = diags_[i].ends[0].at_pole && diags_[i].ends[0].pole == static_cast<Pole>(p)
                     ? 0
                     : 1;
      nr.push_back(dart_ids.at({i, slot}));
    }
    map_.rotation(VertexRef::at_pole(static_cast<Pole>(p))) = nr;
    map_.pole_gaps(static_cast<Pole>(p)).assign(nr.size(), 0);
  }

  // solve corner weights from the face equations: walk faces with zero gaps,
  // assign each face's side deficit to its unique pole corner
  for (int p = 0; p < 2; ++p)
    if (map_.rotation(VertexRef::at_pole(static_cast<Pole>(p))).empty() &&
        spec_.pole_side_count() > 0)
      throw AngulationError("reconstruction: pole has no attached arc");

  auto faces = map_.trace_faces();
  struct Corner {
    int pole, index;
  };
  for (const auto& f : faces) {
    if (f.outer) continue;
    // recover this face's pole corners by rewalking its darts
    std::vector<Corner> corners;
    for (const auto& it : f.items) {
      if (it.kind == FaceItem::Kind::PoleSides) continue;
      int t = map_.dart(it.dart).twin;
      const auto& at = map_.dart(t).at;
      if (at.kind != VertexRef::Kind::PoleVertex) continue;
      const auto& rot = map_.rotation(at);
      int n = static_cast<int>(rot.size());
      int pos = -1;
      for (int i = 0; i < n; ++i)
        if (rot[i] == t) pos = i;
      corners.push_back({static_cast<int>(at.pole), (pos - 1 + n) % n});
    }
    int deficit = (spec_.m + 2) - f.side_count;
    if (deficit == 0) continue;
    if (deficit < 0 || corners.size() != 1)
      throw AngulationError(
          "reconstruction: rotations required for this configuration (ambiguous corners)");
    map_.pole_gaps(static_cast<Pole>(corners[0].pole))[corners[0].index] = deficit;
  }
  map_.check_integrity();
}

}  // namespace angulation
