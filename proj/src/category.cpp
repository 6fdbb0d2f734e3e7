#include "angulation/category.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace angulation {

using nlohmann::ordered_json;

int TranslationQuiverWindow::index_of(const ArCoord& c) const {
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (vertices[i].coord == c) return i;
  return -1;
}

std::vector<std::pair<int, int>> initial_orientation_arrows(const SurfaceSpec& spec) {
  const int n = spec.n;
  std::vector<std::pair<int, int>> arrows;
  if (n == 4) {
    for (int leaf : {2, 3, 4, 5}) arrows.emplace_back(leaf, 1);
    return arrows;
  }
  arrows.emplace_back(n, n - 1);
  arrows.emplace_back(n + 1, n - 1);
  arrows.emplace_back(n - 1, 1);
  for (int k = 1; k <= n - 5; ++k) arrows.emplace_back(k, k + 1);
  arrows.emplace_back(n - 4, n - 3);
  arrows.emplace_back(n - 4, n - 2);
  return arrows;
}

namespace {

MDiagonal tau_maybe_faulted(const SurfaceSpec& spec, const MDiagonal& arc, bool inverse,
                            const WindowOptions& opts) {
  MDiagonal out = inverse ? tau_inverse(spec, arc) : tau(spec, arc);
  if (opts.fault_no_side_flip && spec.m % 2 == 1) {
    if (auto* t = std::get_if<TangentArc>(&out))
      t->side = std::get<TangentArc>(arc).side;  // suppress the flip
  }
  return out;
}

MDiagonal window_arc(const SurfaceSpec& spec, int d, long long t, const MDiagonal& base,
                     const WindowOptions& opts) {
  MDiagonal arc = shift(spec, base, d - 1);
  for (long long i = 0; i < std::llabs(t); ++i)
    arc = tau_maybe_faulted(spec, arc, t < 0, opts);
  return arc;
}

void compute_arrows(const SurfaceSpec& spec, TranslationQuiverWindow& w) {
  const int nv = static_cast<int>(w.vertices.size());
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      if (i == j) continue;
      if (elementary_move_exists(spec, w.vertices[i].arc, w.vertices[j].arc))
        w.arrows.emplace_back(i, j);
    }
  std::sort(w.arrows.begin(), w.arrows.end());
}

}  // namespace

TranslationQuiverWindow transjective_window(const SurfaceSpec& spec, int d, long long t_min,
                                            long long t_max, WindowOptions opts) {
  spec.check();
  if (d < 1 || d > spec.m) throw SurfaceError("component index d out of range");
  if (t_min > t_max) throw SurfaceError("empty t range");
  TranslationQuiverWindow w;
  w.spec = spec;
  auto slice = initial_slice_arcs(spec);
  for (long long t = t_min; t <= t_max; ++t)
    for (const auto& [slot, base] : slice)
      w.vertices.push_back(
          {Transjective{d, t, slot}, window_arc(spec, d, t, base, opts)});
  compute_arrows(spec, w);
  w.tau.assign(w.vertices.size(), -1);
  for (int i = 0; i < static_cast<int>(w.vertices.size()); ++i) {
    auto c = std::get<Transjective>(w.vertices[i].coord);
    c.t -= 1;  // the AR translate points against the clockwise dragging
    w.tau[i] = w.index_of(c);
  }
  return w;
}

TranslationQuiverWindow tube_window(const SurfaceSpec& spec, TubeFamily family, int d,
                                    long long max_level) {
  spec.check();
  if (d < 1 || d > spec.m) throw SurfaceError("component index d out of range");
  if (max_level < 1) throw SurfaceError("max_level must be >= 1");
  TranslationQuiverWindow w;
  w.spec = spec;
  const int rank = family == TubeFamily::Big ? spec.n - 2 : 2;
  for (long long level = 1; level <= max_level; ++level)
    for (int rim = 0; rim < rank; ++rim) {
      ArCoord c;
      if (family == TubeFamily::Big)
        c = TubeBigCoord{d, rim, level};
      else
        c = TubeSmallCoord{family == TubeFamily::Small0 ? 0 : 1, d, rim, level};
      w.vertices.push_back({c, arc_of_coord(spec, c)});
    }
  compute_arrows(spec, w);
  w.tau.assign(w.vertices.size(), -1);
  for (int i = 0; i < static_cast<int>(w.vertices.size()); ++i) {
    if (const auto* tb = std::get_if<TubeBigCoord>(&w.vertices[i].coord)) {
      auto c = *tb;
      c.rim = (c.rim - 1 + rank) % rank;
      w.tau[i] = w.index_of(ArCoord{c});
    } else {
      auto c = std::get<TubeSmallCoord>(w.vertices[i].coord);
      c.rim ^= 1;
      w.tau[i] = w.index_of(ArCoord{c});
    }
  }
  return w;
}

std::vector<MeshRelation> mesh_relations(const TranslationQuiverWindow& w) {
  std::vector<MeshRelation> out;
  auto has_arrow = [&](int a, int b) {
    return std::binary_search(w.arrows.begin(), w.arrows.end(), std::make_pair(a, b));
  };
  for (int x = 0; x < static_cast<int>(w.vertices.size()); ++x) {
    int tx = w.tau[x];
    if (tx < 0) continue;
    MeshRelation rel;
    rel.target = x;
    bool complete = true;
    for (const auto& [y, to] : w.arrows) {
      if (to != x) continue;
      if (!has_arrow(tx, y)) {
        complete = false;
        break;
      }
      rel.terms.emplace_back(y, tx);
    }
    if (complete && !rel.terms.empty()) out.push_back(std::move(rel));
  }
  return out;
}

WindowReport is_stable_translation_quiver(const TranslationQuiverWindow& w) {
  WindowReport rep;
  auto has_arrow = [&](int a, int b) {
    return std::binary_search(w.arrows.begin(), w.arrows.end(), std::make_pair(a, b));
  };
  auto name = [&](int i) {
    std::ostringstream os;
    if (const auto* t = std::get_if<Transjective>(&w.vertices[i].coord))
      os << "(d=" << t->d << ",t=" << t->t << ",slot=" << t->slot << ")";
    else if (const auto* b = std::get_if<TubeBigCoord>(&w.vertices[i].coord))
      os << "(big,d=" << b->d << ",rim=" << b->rim << ",lv=" << b->level << ")";
    else {
      const auto& s = std::get<TubeSmallCoord>(w.vertices[i].coord);
      os << "(small" << s.family << ",d=" << s.d << ",rim=" << s.rim << ",lv=" << s.level
         << ")";
    }
    return os.str();
  };
  for (const auto& [y, x] : w.arrows) {
    int tx = w.tau[x];
    if (tx < 0) {
      rep.boundary_exemptions.push_back("tau undefined at window edge for arrow " + name(y) +
                                        " -> " + name(x));
      continue;
    }
    if (!has_arrow(tx, y))
      rep.issues.push_back("missing companion arrow " + name(tx) + " -> " + name(y) +
                           " for " + name(y) + " -> " + name(x));
  }
  // tau injectivity where defined
  std::map<int, int> seen;
  for (int i = 0; i < static_cast<int>(w.vertices.size()); ++i) {
    if (w.tau[i] < 0) continue;
    auto [it, fresh] = seen.emplace(w.tau[i], i);
    if (!fresh)
      rep.issues.push_back("tau not injective: " + name(i) + " and " + name(it->second) +
                           " share an image");
  }
  rep.ok = rep.issues.empty();
  return rep;
}

WindowReport ar_oracle_check(const SurfaceSpec& spec, int d, long long t_min, long long t_max,
                             WindowOptions opts) {
  WindowReport rep;
  TranslationQuiverWindow w = transjective_window(spec, d, t_min, t_max, opts);

  // knit ZQ of the fixed orientation, independently of any arc computation
  auto orientation = initial_orientation_arrows(spec);
  std::set<std::pair<std::pair<long long, int>, std::pair<long long, int>>> knit;
  for (long long t = t_min; t <= t_max; ++t)
    for (const auto& [i, j] : orientation) {
      knit.insert({{t, i}, {t, j}});
      if (t + 1 <= t_max) knit.insert({{t, j}, {t + 1, i}});
    }

  std::set<std::pair<std::pair<long long, int>, std::pair<long long, int>>> got;
  for (const auto& [a, b] : w.arrows) {
    auto ca = std::get<Transjective>(w.vertices[a].coord);
    auto cb = std::get<Transjective>(w.vertices[b].coord);
    got.insert({{ca.t, ca.slot}, {cb.t, cb.slot}});
  }

  for (const auto& a : knit)
    if (!got.count(a)) {
      std::ostringstream os;
      os << "knitting arrow (t=" << a.first.first << ",slot=" << a.first.second << ") -> (t="
         << a.second.first << ",slot=" << a.second.second
         << ") missing from the arc-generated window";
      rep.issues.push_back(os.str());
    }
  for (const auto& a : got)
    if (!knit.count(a)) {
      std::ostringstream os;
      os << "extra arc arrow (t=" << a.first.first << ",slot=" << a.first.second << ") -> (t="
         << a.second.first << ",slot=" << a.second.second << ") not produced by knitting";
      rep.issues.push_back(os.str());
    }

  // tau must match the knitting translation (t, i) -> (t-1, i)
  for (int i = 0; i < static_cast<int>(w.vertices.size()); ++i) {
    auto c = std::get<Transjective>(w.vertices[i].coord);
    if (c.t - 1 >= t_min) {
      if (w.tau[i] < 0) {
        rep.issues.push_back("window tau missing inside range");
        continue;
      }
      auto ct = std::get<Transjective>(w.vertices[w.tau[i]].coord);
      if (ct.t != c.t - 1 || ct.slot != c.slot)
        rep.issues.push_back("window tau disagrees with the knitting translation");
    }
  }

  // the label-preserving bijection must hold at the arc level as well:
  // the vertex at (d, t, slot) must carry exactly the arc of that coordinate
  for (const auto& v : w.vertices) {
    ArCoord expected = v.coord;
    ArCoord actual;
    try {
      actual = ar_coord(spec, v.arc);
    } catch (const SurfaceError& e) {
      rep.issues.push_back(std::string("window arc outside the component: ") + e.what());
      continue;
    }
    if (!(actual == expected)) {
      auto c = std::get<Transjective>(expected);
      std::ostringstream os;
      os << "arc at (d=" << c.d << ",t=" << c.t << ",slot=" << c.slot
         << ") does not realise its coordinate: " << describe(v.arc);
      rep.issues.push_back(os.str());
    }
  }
  rep.ok = rep.issues.empty();
  return rep;
}

bool is_rigid(const SurfaceSpec& spec, const ArCoord& coord) {
  if (std::holds_alternative<Transjective>(coord)) return true;
  if (const auto* b = std::get_if<TubeBigCoord>(&coord)) return b->level <= spec.n - 3;
  return std::get<TubeSmallCoord>(coord).level <= 1;
}

// --- output ---------------------------------------------------------------------

namespace {
std::string coord_label(const ArCoord& c) {
  std::ostringstream os;
  if (const auto* t = std::get_if<Transjective>(&c))
    os << "(" << t->d << "," << t->t << "," << t->slot << ")";
  else if (const auto* b = std::get_if<TubeBigCoord>(&c))
    os << "(big," << b->d << "," << b->rim << "," << b->level << ")";
  else {
    const auto& s = std::get<TubeSmallCoord>(c);
    os << "(small" << s.family << "," << s.d << "," << s.rim << "," << s.level << ")";
  }
  return os.str();
}

ordered_json coord_json(const ArCoord& c) {
  ordered_json j;
  if (const auto* t = std::get_if<Transjective>(&c))
    j = {{"kind", "transjective"}, {"d", t->d}, {"t", t->t}, {"slot", t->slot}};
  else if (const auto* b = std::get_if<TubeBigCoord>(&c))
    j = {{"kind", "tube_big"}, {"d", b->d}, {"rim", b->rim}, {"level", b->level}};
  else {
    const auto& s = std::get<TubeSmallCoord>(c);
    j = {{"kind", "tube_small"},
         {"family", s.family},
         {"d", s.d},
         {"rim", s.rim},
         {"level", s.level}};
  }
  return j;
}
}  // namespace

std::string TranslationQuiverWindow::to_dot() const {
  std::ostringstream os;
  os << "digraph translation_quiver {\n";
  for (const auto& v : vertices) os << "  \"" << coord_label(v.coord) << "\";\n";
  for (const auto& [a, b] : arrows)
    os << "  \"" << coord_label(vertices[a].coord) << "\" -> \""
       << coord_label(vertices[b].coord) << "\";\n";
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (tau[i] >= 0)
      os << "  \"" << coord_label(vertices[i].coord) << "\" -> \""
         << coord_label(vertices[tau[i]].coord) << "\" [style=dashed, constraint=false];\n";
  for (const auto& rel : mesh_relations(*this)) {
    os << "  // mesh at " << coord_label(vertices[rel.target].coord) << ":";
    for (const auto& [beta, talpha] : rel.terms)
      os << " (" << coord_label(vertices[beta].coord) << " via "
         << coord_label(vertices[talpha].coord) << ")";
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

std::string TranslationQuiverWindow::to_json() const {
  ordered_json j;
  j["spec"] = {{"n", spec.n}, {"m", spec.m}};
  ordered_json vs = ordered_json::array();
  for (const auto& v : vertices) {
    ordered_json vj = coord_json(v.coord);
    vj["arc"] = nlohmann::json::parse(angulation::to_json(spec, v.arc));
    vs.push_back(vj);
  }
  j["vertices"] = vs;
  ordered_json as = ordered_json::array();
  for (const auto& [a, b] : arrows) as.push_back({a, b});
  j["arrows"] = as;
  j["tau"] = tau;
  return j.dump(2) + "\n";
}

}  // namespace angulation
