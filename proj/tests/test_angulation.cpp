#include "angulation/angulation.hpp"

#include <map>
#include <set>

#include "json.hpp"

#include "angulation/rng.hpp"
#include "doctest.h"

using namespace angulation;

namespace {

// the colored quiver of the worked n=7, m=2 example (14 arrows)
ColoredQuiver golden_7_2() {
  ColoredQuiver q(2, {"1", "2", "3", "4", "5", "6", "7", "8"});
  auto pair = [&](const std::string& a, const std::string& b, int c) {
    q.add_arrow(a, b, c, 1);
    q.add_arrow(b, a, 2 - c, 1);
  };
  pair("7", "6", 2);
  pair("8", "6", 2);
  pair("6", "1", 2);
  pair("1", "2", 2);
  pair("2", "3", 2);
  pair("3", "4", 2);
  pair("3", "5", 2);
  return q;
}

// the same quiver after mutation at 3, as printed
ColoredQuiver golden_7_2_mutated_at_3() {
  ColoredQuiver q(2, {"1", "2", "3", "4", "5", "6", "7", "8"});
  auto arrow = [&](const std::string& a, const std::string& b, int c) {
    q.add_arrow(a, b, c, 1);
  };
  arrow("7", "6", 2);
  arrow("6", "7", 0);
  arrow("8", "6", 2);
  arrow("6", "8", 0);
  arrow("6", "1", 2);
  arrow("1", "6", 0);
  arrow("1", "2", 2);
  arrow("2", "1", 0);
  arrow("2", "3", 0);
  arrow("3", "2", 2);
  arrow("3", "4", 1);
  arrow("4", "3", 1);
  arrow("3", "5", 1);
  arrow("5", "3", 1);
  arrow("2", "4", 2);
  arrow("4", "2", 0);
  arrow("2", "5", 2);
  arrow("5", "2", 0);
  return q;
}

// the triangulation of the m=1 worked example (twice punctured square),
// vertex 1 at the bottom, numbered clockwise
Angulation triangulation_m1() {
  const char* text = R"({
    "spec": {"n": 6, "m": 1},
    "diagonals": [
      {"label": "1", "arc": {"kind": "split", "a": 4, "b": 2, "w": 0},
       "ends": [{"at": 4, "w": 0}, {"at": 2, "w": 0}]},
      {"label": "2", "arc": {"kind": "split", "a": 1, "b": 2, "w": 0},
       "ends": [{"at": 1}, {"at": 2}]},
      {"label": "3", "arc": {"kind": "tangent", "p": 2, "pole": "R", "side": "right"},
       "ends": [{"at": 2}, {"at": "R"}]},
      {"label": "4", "arc": {"kind": "tangent", "p": 2, "pole": "R", "side": "left"},
       "ends": [{"at": 2}, {"at": 2}], "loop": true},
      {"label": "5", "arc": {"kind": "split", "a": 4, "b": 3, "w": 0},
       "ends": [{"at": 4, "w": 0}, {"at": 3}]},
      {"label": "6", "arc": {"kind": "tangent", "p": 4, "pole": "S", "side": "right"},
       "ends": [{"at": 4, "w": 0}, {"at": "S"}]},
      {"label": "7", "arc": {"kind": "tangent", "p": 4, "pole": "S", "side": "left"},
       "ends": [{"at": 4, "w": 0}, {"at": 4, "w": 0}], "loop": true}
    ],
    "rotations": {
      "boundary": [
        ["2:0"],
        ["1:1", "2:1", "4:0", "3:0", "4:1"],
        ["5:1"],
        ["1:0", "5:0", "7:0", "6:0", "7:1"]
      ],
      "R": {"darts": ["3:1"], "gaps": [0]},
      "S": {"darts": ["6:1"], "gaps": [0]}
    }
  })";
  return Angulation::from_json(text);
}

std::set<std::pair<std::string, std::string>> arrow_set(const PlainQuiver& q) {
  return {q.arrows.begin(), q.arrows.end()};
}

}  // namespace

TEST_CASE("empty map has one interior face counting the floating pole sides") {
  for (SurfaceSpec spec : {SurfaceSpec{7, 2}, SurfaceSpec{6, 1}, SurfaceSpec{4, 3}}) {
    CombMap map(spec);
    int interior = 0;
    for (const auto& f : map.trace_faces()) {
      if (f.outer) continue;
      ++interior;
      CHECK(f.side_count == spec.boundary_count() + 2 * spec.pole_side_count());
    }
    CHECK(interior == 1);
  }
}

TEST_CASE("initial angulation validates for small n, m") {
  for (int n = 4; n <= 8; ++n)
    for (int m = 1; m <= 3; ++m) {
      SurfaceSpec spec{n, m};
      Angulation a = Angulation::initial(spec);
      auto rep = a.validate();
      CAPTURE(n);
      CAPTURE(m);
      for (const auto& s : rep.issues) CAPTURE(s);
      CHECK(rep.ok);
      CHECK(a.diagonal_count() == n + 1);
      CHECK(a.faces().size() == static_cast<size_t>(n));
      for (const auto& f : a.faces()) CHECK(f.side_count == m + 2);
    }
}

TEST_CASE("initial quadrangulation of the decagon: seven quadrilaterals") {
  Angulation a = Angulation::initial({7, 2});
  auto fs = a.faces();
  CHECK(fs.size() == 7);
  for (const auto& f : fs) CHECK(f.side_count == 4);
}

TEST_CASE("golden: colored quiver of the initial (7,2) quadrangulation") {
  Angulation a = Angulation::initial({7, 2});
  ColoredQuiver q = a.colored_quiver();
  CHECK(q.validate().ok);
  CHECK(q.arrow_multiplicity_total() == 14);
  CHECK(q.equals(golden_7_2()));
}

TEST_CASE("golden: plain quiver of the initial (7,2) quadrangulation") {
  Angulation a = Angulation::initial({7, 2});
  PlainQuiver p = a.plain_quiver();
  std::set<std::pair<std::string, std::string>> expected{
      {"7", "6"}, {"8", "6"}, {"6", "1"}, {"1", "2"}, {"2", "3"}, {"3", "4"}, {"3", "5"}};
  CHECK(arrow_set(p) == expected);
}

TEST_CASE("golden: colored quiver of the initial (4,3) pentangulation is the star") {
  Angulation a = Angulation::initial({4, 3});
  ColoredQuiver q = a.colored_quiver();
  CHECK(q.validate().ok);
  for (const std::string j : {"2", "3", "4", "5"}) {
    CHECK(q.count("1", j, 0) == 1);
    CHECK(q.count(j, "1", 3) == 1);
  }
  CHECK(q.arrow_multiplicity_total() == 8);
}

TEST_CASE("golden: flip at 3 matches mutation at 3 for (7,2)") {
  Angulation a = Angulation::initial({7, 2});
  Angulation flipped = a.flip("3");
  auto rep = flipped.validate();
  for (const auto& s : rep.issues) CAPTURE(s);
  CHECK(rep.ok);

  // the flipped arc is the boundary arc from 7 spanning 3 edges
  CHECK(flipped.arc_class("3") == MDiagonal{BoundaryArc{7, 3}});

  ColoredQuiver geometric = flipped.colored_quiver();
  CHECK(geometric.equals(golden_7_2_mutated_at_3()));
  CHECK(geometric.equals(a.colored_quiver().mutate("3")));
}

TEST_CASE("twist is reported without mutating and flips invert") {
  Angulation a = Angulation::initial({7, 2});
  MDiagonal t = a.twist("3");
  CHECK(t == MDiagonal{BoundaryArc{7, 3}});

  for (const std::string label : {"1", "2", "3", "6", "7", "8", "4", "5"}) {
    Angulation f = a.flip(label);
    CHECK(f.validate().ok);
    Angulation back = f.flip_inverse(label);
    CHECK(back.equals(a));
  }
}

TEST_CASE("m+1 fold flip is the identity (small sizes, all labels)") {
  for (int n : {4, 5})
    for (int m : {1, 2}) {
      SurfaceSpec spec{n, m};
      Angulation a = Angulation::initial(spec);
      for (const auto& label : a.labels()) {
        Angulation cur = a;
        for (int i = 0; i <= m; ++i) {
          cur = cur.flip(label);
          auto rep = cur.validate();
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(label);
          CAPTURE(i);
          for (const auto& s : rep.issues) CAPTURE(s);
          REQUIRE(rep.ok);
        }
        CHECK(cur.equals(a));
      }
    }
}

TEST_CASE("m=1 classical case: flip at 2 equals FZ mutation at 2") {
  Angulation tri = triangulation_m1();
  REQUIRE(tri.validate().ok);

  PlainQuiver q = tri.plain_quiver();
  std::set<std::pair<std::string, std::string>> expected{
      {"2", "3"}, {"2", "4"}, {"1", "2"}, {"1", "5"}, {"5", "6"}, {"5", "7"}};
  CHECK(arrow_set(q) == expected);

  Angulation flipped = tri.flip("2");
  CHECK(flipped.validate().ok);
  PlainQuiver geometric = flipped.plain_quiver();
  PlainQuiver algebraic = fz_mutate(q, "2");
  CHECK(geometric == algebraic);

  std::set<std::pair<std::string, std::string>> printed{
      {"2", "1"}, {"3", "2"}, {"4", "2"}, {"1", "3"},
      {"1", "4"}, {"1", "5"}, {"5", "6"}, {"5", "7"}};
  CHECK(arrow_set(geometric) == printed);

  // colored route agrees as well
  CHECK(flipped.colored_quiver().equals(tri.colored_quiver().mutate("2")));
}

TEST_CASE("flip/mutation compatibility on seeded random sequences") {
  SplitMix64 rng(0xC0FFEE);
  for (int n = 4; n <= 6; ++n)
    for (int m = 1; m <= 2; ++m) {
      SurfaceSpec spec{n, m};
      Angulation base = Angulation::initial(spec);
      auto labels = base.labels();
      for (int trial = 0; trial < 12; ++trial) {
        Angulation ang = base;
        ColoredQuiver q = ang.colored_quiver();
        int len = rng.range(1, 8);
        for (int step = 0; step < len; ++step) {
          std::string at = labels[rng.below(labels.size())];
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(trial);
          CAPTURE(step);
          CAPTURE(at);
          ang = ang.flip(at);
          REQUIRE(ang.validate().ok);
          // admissibility residues hold in every reachable state
          for (const auto& l : ang.labels()) {
            const MDiagonal& arc = ang.arc_class(l);
            REQUIRE(is_admissible(spec, arc));
            if (const auto* sp = std::get_if<SplitArc>(&arc))
              REQUIRE((sp->y - sp->x) % spec.m == 0);
            if (const auto* bp = std::get_if<BoundaryArc>(&arc))
              REQUIRE((bp->s - 1) % spec.m == 0);
          }
          ColoredQuiver geometric = ang.colored_quiver();
          ColoredQuiver algebraic = q.mutate(at);
          REQUIRE(geometric.equals(algebraic));
          q = geometric;
        }
      }
    }
}

TEST_CASE("angulation json round trips") {
  Angulation a = Angulation::initial({7, 2});
  Angulation b = Angulation::from_json(a.to_json());
  CHECK(b.equals(a));

  Angulation f = a.flip("1");
  Angulation g = Angulation::from_json(f.to_json());
  CHECK(g.equals(f));

  // rotations omitted: canonical reconstruction
  Angulation c = Angulation::from_json(a.to_json(false));
  CHECK(c.validate().ok);
  CHECK(c.colored_quiver().equals(a.colored_quiver()));
}

TEST_CASE("colored quiver agrees with the twist-iterate form of the definition") {
  // q_ij^c = 1 iff the c-fold twist of i shares an oriented angle with j,
  // checked by actually twisting (flips are extraction-independent)
  for (SurfaceSpec spec : {SurfaceSpec{7, 2}, SurfaceSpec{4, 3}, SurfaceSpec{6, 1}}) {
    Angulation a = Angulation::initial(spec);
    ColoredQuiver q = a.colored_quiver();
    auto adjacent = [&](const Angulation& ang, const std::string& i, const std::string& j) {
      for (const auto& f : ang.faces()) {
        const auto& s = f.sides;
        for (size_t p = 0; p < s.size(); ++p)
          if (s[p] == i && s[(p + 1) % s.size()] == j) return true;
      }
      return false;
    };
    for (const auto& i : a.labels())
      for (const auto& j : a.labels()) {
        if (i == j) continue;
        // pole-hung classes follow the same-disk forgetting rule; the plain
        // adjacency oracle covers the remaining cells
        if (std::holds_alternative<TangentArc>(a.arc_class(i)) ||
            std::holds_alternative<TangentArc>(a.arc_class(j)))
          continue;
        Angulation twisted = a;
        for (int c = 0; c <= spec.m; ++c) {
          bool expect = q.count(i, j, c) > 0;
          CAPTURE(spec.n);
          CAPTURE(spec.m);
          CAPTURE(i);
          CAPTURE(j);
          CAPTURE(c);
          CHECK(adjacent(twisted, i, j) == expect);
          if (c < spec.m) twisted = twisted.flip(i);
        }
      }
  }
}

TEST_CASE("normalize_for_flip is idempotent") {
  Angulation a = Angulation::initial({7, 2});
  Angulation n1 = a.normalize_for_flip("8");
  Angulation n2 = n1.normalize_for_flip("8");
  CHECK(n1.canonical_form() == n2.canonical_form());
}

TEST_CASE("validate reports a merged face when a diagonal is removed") {
  // read the initial angulation, drop one diagonal, expect a count violation
  Angulation a = Angulation::initial({5, 2});
  auto text = a.to_json();
  auto j = nlohmann::json::parse(text);
  // remove diagonal "1" and its rotation tokens
  nlohmann::json nd = nlohmann::json::array();
  for (const auto& d : j["diagonals"])
    if (d["label"] != "1") nd.push_back(d);
  j["diagonals"] = nd;
  for (auto& row : j["rotations"]["boundary"]) {
    nlohmann::json nr = nlohmann::json::array();
    for (const auto& tok : row) {
      std::string t = tok.get<std::string>();
      if (t.rfind("1:", 0) != 0) nr.push_back(t);
    }
    row = nr;
  }
  CHECK_THROWS_AS(Angulation::from_json(j.dump()), AngulationError);
}
