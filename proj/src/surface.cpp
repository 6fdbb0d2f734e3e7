#include "angulation/surface.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace angulation {

using nlohmann::json;
using nlohmann::ordered_json;

void SurfaceSpec::check() const {
  if (n < 4) throw SurfaceError("n must be >= 4");
  if (m < 1) throw SurfaceError("m must be >= 1");
  if (boundary_count() < 2) throw SurfaceError("degenerate boundary");
}

int boundary_length(const SurfaceSpec& spec, int a, int b) {
  const int N = spec.boundary_count();
  if (a < 1 || a > N || b < 1 || b > N) throw SurfaceError("vertex out of range");
  int d = (b - a) % N;
  return d < 0 ? d + N : d;
}

long long project_lift(const SurfaceSpec& spec, long long lift) {
  const long long N = spec.boundary_count();
  long long r = (lift - 1) % N;
  if (r < 0) r += N;
  return r + 1;
}

static long long sheet_of(const SurfaceSpec& spec, long long lift) {
  const long long N = spec.boundary_count();
  long long q = lift - 1;
  return q >= 0 ? q / N : -((-q + N - 1) / N);
}

SplitFields split_fields(const SurfaceSpec& spec, const SplitArc& arc) {
  return {static_cast<int>(project_lift(spec, arc.x)),
          static_cast<int>(project_lift(spec, arc.y)), sheet_of(spec, arc.x)};
}

SplitArc split_from_fields(const SurfaceSpec& spec, int a, int b, long long w) {
  const long long N = spec.boundary_count();
  if (a == b) throw SurfaceError("split endpoints must differ");
  long long x = a + w * N;
  long long span = boundary_length(spec, a, b);
  return SplitArc{x, x + span};
}

bool is_admissible(const SurfaceSpec& spec, const MDiagonal& arc) {
  const long long N = spec.boundary_count();
  const int m = spec.m;
  if (const auto* s = std::get_if<SplitArc>(&arc)) {
    long long span = s->y - s->x;
    return span >= 1 && span <= N - 1 && span % m == 0;
  }
  if (const auto* b = std::get_if<BoundaryArc>(&arc)) {
    if (b->a < 1 || b->a > N || b->s < 1) return false;
    return (b->s - 1) % m == 0;
  }
  if (const auto* t = std::get_if<TangentArc>(&arc)) {
    (void)t;
    return true;
  }
  const auto& br = std::get<BridgeArc>(arc);
  int rim_bound = br.family == 0 ? m : 1;  // link rims carry the twist phase
  return br.level >= 1 && (br.family == 0 || br.family == 1) && br.rim >= 0 &&
         br.rim <= rim_bound && br.d >= 1 && br.d <= m;
}

MDiagonal tau(const SurfaceSpec& spec, const MDiagonal& arc) {
  const int m = spec.m;
  if (const auto* s = std::get_if<SplitArc>(&arc)) return SplitArc{s->x + m, s->y + m};
  if (const auto* b = std::get_if<BoundaryArc>(&arc)) {
    int a = static_cast<int>(project_lift(spec, b->a + m));
    return BoundaryArc{a, b->s};
  }
  if (const auto* t = std::get_if<TangentArc>(&arc)) {
    Side side = (m % 2 == 1) ? flip_side(t->side) : t->side;
    return TangentArc{t->p + m, t->pole, side};
  }
  auto br = std::get<BridgeArc>(arc);
  br.rim ^= 1;
  return br;
}

MDiagonal tau_inverse(const SurfaceSpec& spec, const MDiagonal& arc) {
  const int m = spec.m;
  if (const auto* s = std::get_if<SplitArc>(&arc)) return SplitArc{s->x - m, s->y - m};
  if (const auto* b = std::get_if<BoundaryArc>(&arc)) {
    int a = static_cast<int>(project_lift(spec, b->a - m));
    return BoundaryArc{a, b->s};
  }
  if (const auto* t = std::get_if<TangentArc>(&arc)) {
    Side side = (m % 2 == 1) ? flip_side(t->side) : t->side;
    return TangentArc{t->p - m, t->pole, side};
  }
  auto br = std::get<BridgeArc>(arc);
  br.rim ^= 1;
  return br;
}

static MDiagonal shift_once(const SurfaceSpec& spec, const MDiagonal& arc, int dir) {
  const int m = spec.m;
  if (const auto* s = std::get_if<SplitArc>(&arc)) return SplitArc{s->x + dir, s->y + dir};
  if (const auto* b = std::get_if<BoundaryArc>(&arc)) {
    int a = static_cast<int>(project_lift(spec, b->a + dir));
    return BoundaryArc{a, b->s};
  }
  if (const auto* t = std::get_if<TangentArc>(&arc)) {
    Side side = (m % 2 == 1) ? flip_side(t->side) : t->side;
    return TangentArc{t->p + dir, t->pole, side};
  }
  auto br = std::get<BridgeArc>(arc);
  int d0 = br.d - 1 + dir;
  int wraps = 0;
  while (d0 >= m) {
    d0 -= m;
    ++wraps;
  }
  while (d0 < 0) {
    d0 += m;
    ++wraps;
  }
  br.d = d0 + 1;
  if (wraps % 2 == 1) br.rim ^= 1;
  return br;
}

MDiagonal shift(const SurfaceSpec& spec, const MDiagonal& arc, int count) {
  MDiagonal cur = arc;
  int dir = count >= 0 ? 1 : -1;
  for (int i = 0; i < std::abs(count); ++i) cur = shift_once(spec, cur, dir);
  return cur;
}

bool elementary_move_exists(const SurfaceSpec& spec, const MDiagonal& from,
                            const MDiagonal& to) {
  const long long m = spec.m;
  const long long N = spec.boundary_count();

  if (const auto* a = std::get_if<SplitArc>(&from)) {
    if (const auto* b = std::get_if<SplitArc>(&to)) {
      if (a->x == b->x && b->y == a->y + m && b->y - b->x <= N - 1) return true;
      if (a->y == b->y && b->x == a->x + m && b->y - b->x >= 1) return true;
      return false;
    }
    if (const auto* t = std::get_if<TangentArc>(&to)) {
      if (t->pole == Pole::R) return a->y - a->x == m && t->p == a->y;
      return a->y - a->x == N - m && t->p == a->x;
    }
    return false;
  }
  if (const auto* t = std::get_if<TangentArc>(&from)) {
    if (const auto* b = std::get_if<SplitArc>(&to)) {
      if (t->pole == Pole::R) return b->x == t->p && b->y == t->p + m;
      return b->x == t->p + m && b->y == t->p + N;
    }
    return false;
  }
  if (const auto* a = std::get_if<BoundaryArc>(&from)) {
    const auto* b = std::get_if<BoundaryArc>(&to);
    if (!b) return false;
    if (a->a == b->a && b->s == a->s + m) return true;
    if (project_lift(spec, a->a + m) == b->a && b->s == a->s - m && b->s >= 1) return true;
    return false;
  }
  const auto& a = std::get<BridgeArc>(from);
  const auto* b = std::get_if<BridgeArc>(&to);
  if (!b) return false;
  if (a.family != b->family || a.d != b->d) return false;
  if (b->level == a.level + 1 && b->rim == a.rim) return true;
  if (b->level == a.level - 1 && b->level >= 1 && b->rim == (a.rim ^ 1)) return true;
  return false;
}

bool is_self_crossing(const SurfaceSpec& spec, const MDiagonal& arc) {
  if (const auto* b = std::get_if<BoundaryArc>(&arc))
    return b->s >= static_cast<long long>(spec.boundary_count()) + 1;
  if (const auto* br = std::get_if<BridgeArc>(&arc)) return br->level >= 2;
  return false;
}

// --- crossing numbers --------------------------------------------------------

namespace {

bool strict_interleave(long long x1, long long y1, long long x2, long long y2) {
  return (x1 < x2 && x2 < y1 && y1 < y2) || (x2 < x1 && x1 < y2 && y2 < y1);
}

// position of v strictly inside the clockwise open interval (a, a+s) on the
// boundary circle
bool strictly_in_pocket(const SurfaceSpec& spec, long long v, long long a, long long s) {
  const long long N = spec.boundary_count();
  long long d = (v - a) % N;
  if (d < 0) d += N;
  return d > 0 && d < s;
}

int cross_split_split(const SurfaceSpec& spec, const SplitArc& a, const SplitArc& b,
                      int bound) {
  const long long N = spec.boundary_count();
  if (std::llabs(b.x - a.x) > (static_cast<long long>(bound) + 2) * N)
    throw UnsupportedRange("crossing_number: winding out of supported range");
  int total = 0;
  for (long long k = -(bound + 2); k <= bound + 2; ++k)
    if (strict_interleave(a.x, a.y, b.x + k * N, b.y + k * N)) ++total;
  return total;
}

int cross_split_boundary(const SurfaceSpec& spec, const SplitArc& a, const BoundaryArc& b,
                         int bound) {
  if (b.s > spec.boundary_count())
    throw UnsupportedRange("crossing_number: wrapped boundary arc out of supported range");
  (void)bound;
  int total = 0;
  if (strictly_in_pocket(spec, project_lift(spec, a.x), b.a, b.s)) ++total;
  if (strictly_in_pocket(spec, project_lift(spec, a.y), b.a, b.s)) ++total;
  return total;
}

int cross_split_tangent(const SurfaceSpec& spec, const SplitArc& a, const TangentArc& t,
                        int bound) {
  const long long N = spec.boundary_count();
  if (std::llabs(t.p - a.x) > (static_cast<long long>(bound) + 2) * N)
    throw UnsupportedRange("crossing_number: winding out of supported range");
  // sheet-aware containment: the tangent must hang inside the arm structure
  // of its pole's side. The clockwise-side window [x, y] is anchored exactly;
  // the complementary window spans the seam and admits the one-deck shift.
  bool on_pole_side;
  if (t.pole == Pole::R)
    on_pole_side = a.x <= t.p && t.p <= a.y;
  else
    on_pole_side = (a.y <= t.p && t.p <= a.x + N) ||
                   (a.y <= t.p + N && t.p + N <= a.x + N);
  return on_pole_side ? 0 : 1;
}

int cross_boundary_boundary(const SurfaceSpec& spec, const BoundaryArc& a,
                            const BoundaryArc& b) {
  const long long N = spec.boundary_count();
  if (a.s > N || b.s > N)
    throw UnsupportedRange("crossing_number: wrapped boundary arc out of supported range");
  if (a.s == N) {  // full loop (m = 1): crosses anything whose pocket contains its vertex
    return strictly_in_pocket(spec, a.a, b.a, b.s) ? 1 : 0;
  }
  if (b.s == N) return strictly_in_pocket(spec, b.a, a.a, a.s) ? 1 : 0;
  long long a2 = a.a, b2 = a.a + a.s;
  // endpoints of b lifted near a's window
  int crossings = 0;
  for (long long k = -1; k <= 1; ++k) {
    long long x = b.a + k * N, y = b.a + k * N + b.s;
    if (strict_interleave(a2, b2, x, y)) ++crossings;
  }
  return crossings > 0 ? 1 : 0;
}

int cross_tangent_tangent(const SurfaceSpec& spec, const TangentArc& a,
                          const TangentArc& b) {
  if (a.pole != b.pole) return 0;
  long long pa = project_lift(spec, a.p), pb = project_lift(spec, b.p);
  if (pa == pb) {
    if (a.side != b.side)
      return a.p == b.p ? 0 : 1;  // the loop-replacement pair needs aligned windings
    if (a.p == b.p) return 0;     // identical class
    throw UnsupportedRange("crossing_number: tangent windings out of supported range");
  }
  return a.side == b.side ? 0 : 1;
}

int cross_tangent_boundary(const SurfaceSpec& spec, const TangentArc& t,
                           const BoundaryArc& b) {
  if (b.s > spec.boundary_count())
    throw UnsupportedRange("crossing_number: wrapped boundary arc out of supported range");
  return strictly_in_pocket(spec, project_lift(spec, t.p), b.a, b.s) ? 1 : 0;
}

}  // namespace

int crossing_number(const SurfaceSpec& spec, const MDiagonal& a, const MDiagonal& b,
                    int winding_bound) {
  if (a == b) return 0;
  if (const auto* sa = std::get_if<SplitArc>(&a)) {
    if (const auto* sb = std::get_if<SplitArc>(&b))
      return cross_split_split(spec, *sa, *sb, winding_bound);
    if (const auto* bb = std::get_if<BoundaryArc>(&b))
      return cross_split_boundary(spec, *sa, *bb, winding_bound);
    if (const auto* tb = std::get_if<TangentArc>(&b))
      return cross_split_tangent(spec, *sa, *tb, winding_bound);
    return 1;  // split vs bridge: a separating arc always meets a linking arc
  }
  if (const auto* ba = std::get_if<BoundaryArc>(&a)) {
    if (std::holds_alternative<SplitArc>(b) || std::holds_alternative<TangentArc>(b) ||
        std::holds_alternative<BoundaryArc>(b)) {
      if (const auto* bb = std::get_if<BoundaryArc>(&b))
        return cross_boundary_boundary(spec, *ba, *bb);
      return crossing_number(spec, b, a, winding_bound);
    }
    return 0;  // boundary arc vs bridge
  }
  if (const auto* ta = std::get_if<TangentArc>(&a)) {
    if (const auto* tb = std::get_if<TangentArc>(&b))
      return cross_tangent_tangent(spec, *ta, *tb);
    if (const auto* bb = std::get_if<BoundaryArc>(&b))
      return cross_tangent_boundary(spec, *ta, *bb);
    if (std::holds_alternative<SplitArc>(b)) return crossing_number(spec, b, a, winding_bound);
    return 0;  // tangent vs bridge
  }
  // a is a bridge
  if (const auto* brb = std::get_if<BridgeArc>(&b)) {
    const auto& bra = std::get<BridgeArc>(a);
    if (bra.level == 1 && brb->level == 1) {
      // within one rank-2 tube the two rim arcs are incompatible ("two arcs
      // linking R to S are not compatible"); across the two tubes the level-1
      // arcs form the eye configuration and coexist
      if (bra.family != brb->family) return 0;
      return 1;
    }
    throw UnsupportedRange("crossing_number: bridge levels out of supported range");
  }
  if (std::holds_alternative<SplitArc>(b)) return 1;
  return 0;  // bridge vs boundary or tangent
}

ComponentTag component_of(const SurfaceSpec& spec, const MDiagonal& arc) {
  const int m = spec.m;
  auto dmod = [&](long long lift) {
    long long r = (lift - 1) % m;
    if (r < 0) r += m;
    return static_cast<int>(r) + 1;
  };
  if (const auto* s = std::get_if<SplitArc>(&arc))
    return {ComponentTag::Kind::Transjective, dmod(s->x), 0};
  if (const auto* t = std::get_if<TangentArc>(&arc))
    return {ComponentTag::Kind::Transjective, dmod(t->p), 0};
  if (const auto* b = std::get_if<BoundaryArc>(&arc))
    return {ComponentTag::Kind::TubeBig, dmod(b->a - big_tube_base_vertex(spec) + 1), 0};
  const auto& br = std::get<BridgeArc>(arc);
  return {ComponentTag::Kind::TubeSmall, br.d, br.family};
}

int big_tube_base_vertex(const SurfaceSpec& spec) {
  // flip of the last type-1 arc of the initial angulation (see tests for the
  // geometric cross-check)
  return (spec.n - 4) * spec.m + 1;
}

// --- AR coordinates -----------------------------------------------------------

std::vector<std::pair<int, MDiagonal>> initial_slice_arcs(const SurfaceSpec& spec) {
  const int n = spec.n, m = spec.m;
  std::vector<std::pair<int, MDiagonal>> slots;
  if (n == 4) {
    slots.emplace_back(1, SplitArc{1, 1 + m});
    slots.emplace_back(2, TangentArc{1, Pole::R, Side::Right});
    slots.emplace_back(3, TangentArc{1, Pole::R, Side::Left});
    slots.emplace_back(4, TangentArc{1 - m, Pole::S, Side::Right});
    slots.emplace_back(5, TangentArc{1 - m, Pole::S, Side::Left});
    return slots;
  }
  slots.emplace_back(n - 1, SplitArc{1, 1 + m});
  for (int k = 1; k <= n - 4; ++k)
    slots.emplace_back(k, SplitArc{1, 1 + static_cast<long long>(k + 1) * m});
  slots.emplace_back(n, TangentArc{1, Pole::R, Side::Right});
  slots.emplace_back(n + 1, TangentArc{1, Pole::R, Side::Left});
  slots.emplace_back(n - 3, TangentArc{1, Pole::S, Side::Right});
  slots.emplace_back(n - 2, TangentArc{1, Pole::S, Side::Left});
  return slots;
}

MDiagonal arc_of_coord(const SurfaceSpec& spec, const ArCoord& coord) {
  if (const auto* tr = std::get_if<Transjective>(&coord)) {
    if (tr->d < 1 || tr->d > spec.m) throw SurfaceError("component index out of range");
    for (const auto& [slot, base] : initial_slice_arcs(spec)) {
      if (slot != tr->slot) continue;
      MDiagonal arc = shift(spec, base, tr->d - 1);
      for (long long i = 0; i < std::llabs(tr->t); ++i)
        arc = tr->t > 0 ? tau(spec, arc) : tau_inverse(spec, arc);
      return arc;
    }
    throw SurfaceError("no such slot");
  }
  if (const auto* tb = std::get_if<TubeBigCoord>(&coord)) {
    if (tb->d < 1 || tb->d > spec.m) throw SurfaceError("component index out of range");
    if (tb->level < 1) throw SurfaceError("tube level must be >= 1");
    long long a = big_tube_base_vertex(spec) + (tb->d - 1) +
                  static_cast<long long>(tb->rim) * spec.m;
    return BoundaryArc{static_cast<int>(project_lift(spec, a)), tb->level * spec.m + 1};
  }
  const auto& ts = std::get<TubeSmallCoord>(coord);
  if (ts.d < 1 || ts.d > spec.m) throw SurfaceError("component index out of range");
  if (ts.level < 1) throw SurfaceError("tube level must be >= 1");
  return BridgeArc{ts.family, ts.level, ts.rim & 1, ts.d};
}

ArCoord ar_coord(const SurfaceSpec& spec, const MDiagonal& arc) {
  const int m = spec.m;
  if (const auto* b = std::get_if<BoundaryArc>(&arc)) {
    if ((b->s - 1) % m != 0) throw SurfaceError("inadmissible boundary arc");
    long long level = (b->s - 1) / m;
    long long base = big_tube_base_vertex(spec);
    long long off = b->a - base;
    long long dm = off % m;
    if (dm < 0) dm += m;
    int d = static_cast<int>(dm) + 1;
    long long rim_num = off - dm;
    long long rim = (rim_num / m) % (spec.n - 2);
    if (rim < 0) rim += spec.n - 2;
    return TubeBigCoord{d, static_cast<int>(rim), level};
  }
  if (const auto* br = std::get_if<BridgeArc>(&arc))
    return TubeSmallCoord{br->family, br->d, br->rim, br->level};

  // transjective: match against the slot table
  ComponentTag tag = component_of(spec, arc);
  const int d = tag.d;
  for (const auto& [slot, base] : initial_slice_arcs(spec)) {
    MDiagonal anchor = shift(spec, base, d - 1);
    long long lift_anchor, lift_arc;
    if (const auto* s = std::get_if<SplitArc>(&anchor)) {
      const auto* sa = std::get_if<SplitArc>(&arc);
      if (!sa || sa->y - sa->x != s->y - s->x) continue;
      lift_anchor = s->x;
      lift_arc = sa->x;
    } else {
      const auto* ta = std::get_if<TangentArc>(&arc);
      const auto& tb = std::get<TangentArc>(anchor);
      if (!ta || ta->pole != tb.pole) continue;
      lift_anchor = tb.p;
      lift_arc = ta->p;
    }
    long long delta = lift_arc - lift_anchor;
    if (delta % m != 0) continue;
    long long t = delta / m;
    ArCoord cand = Transjective{d, t, slot};
    if (arc_of_coord(spec, cand) == arc) return cand;
  }
  throw SurfaceError("arc does not lie in a recognised component: " + describe(arc));
}

// --- serialization -------------------------------------------------------------

std::string to_json(const SurfaceSpec& spec, const MDiagonal& arc) {
  ordered_json j;
  if (const auto* s = std::get_if<SplitArc>(&arc)) {
    auto f = split_fields(spec, *s);
    j = {{"kind", "split"}, {"a", f.a}, {"b", f.b}, {"w", f.w}};
  } else if (const auto* b = std::get_if<BoundaryArc>(&arc)) {
    j = {{"kind", "boundary"}, {"a", b->a}, {"s", b->s}};
  } else if (const auto* t = std::get_if<TangentArc>(&arc)) {
    j = {{"kind", "tangent"},
         {"p", project_lift(spec, t->p)},
         {"pole", t->pole == Pole::R ? "R" : "S"},
         {"side", t->side == Side::Left ? "left" : "right"}};
    if (long long w = sheet_of(spec, t->p); w != 0) j["w"] = w;
  } else {
    const auto& br = std::get<BridgeArc>(arc);
    j = {{"kind", "bridge"},
         {"family", br.family},
         {"level", br.level},
         {"rim", br.rim},
         {"d", br.d}};
  }
  return j.dump();
}

MDiagonal mdiagonal_from_json(const SurfaceSpec& spec, const std::string& text) {
  json j = json::parse(text);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "split")
    return split_from_fields(spec, j.at("a").get<int>(), j.at("b").get<int>(),
                             j.value("w", 0LL));
  if (kind == "boundary") return BoundaryArc{j.at("a").get<int>(), j.at("s").get<long long>()};
  if (kind == "tangent") {
    long long p = j.at("p").get<long long>();
    long long w = j.value("w", 0LL);
    Pole pole = j.at("pole").get<std::string>() == "R" ? Pole::R : Pole::S;
    Side side = j.at("side").get<std::string>() == "left" ? Side::Left : Side::Right;
    return TangentArc{p + w * spec.boundary_count(), pole, side};
  }
  if (kind == "bridge")
    return BridgeArc{j.at("family").get<int>(), j.at("level").get<long long>(),
                     j.at("rim").get<int>(), j.at("d").get<int>()};
  throw SurfaceError("unknown m-diagonal kind: " + kind);
}

std::string describe(const MDiagonal& arc) {
  std::ostringstream os;
  if (const auto* s = std::get_if<SplitArc>(&arc))
    os << "split(" << s->x << "," << s->y << ")";
  else if (const auto* b = std::get_if<BoundaryArc>(&arc))
    os << "boundary(a=" << b->a << ",s=" << b->s << ")";
  else if (const auto* t = std::get_if<TangentArc>(&arc))
    os << "tangent(p=" << t->p << "," << pole_char(t->pole) << ","
       << (t->side == Side::Left ? "L" : "R") << ")";
  else {
    const auto& br = std::get<BridgeArc>(arc);
    os << "bridge(f=" << br.family << ",lv=" << br.level << ",rim=" << br.rim
       << ",d=" << br.d << ")";
  }
  return os.str();
}

}  // namespace angulation
