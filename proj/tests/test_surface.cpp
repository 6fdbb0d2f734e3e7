#include "angulation/surface.hpp"

#include "doctest.h"

using namespace angulation;

TEST_CASE("boundary length on the decagon") {
  SurfaceSpec s{7, 2};
  CHECK(boundary_length(s, 1, 3) == 2);
  CHECK(boundary_length(s, 3, 3) == 0);
  CHECK(boundary_length(s, 3, 1) == 8);
  CHECK_THROWS_AS(boundary_length(s, 0, 3), SurfaceError);
}

TEST_CASE("tau moves endpoints m steps clockwise") {
  SurfaceSpec s{7, 2};
  MDiagonal t = TangentArc{1, Pole::R, Side::Left};
  MDiagonal t2 = tau(s, t);
  CHECK(t2 == MDiagonal{TangentArc{3, Pole::R, Side::Left}});  // m even: side fixed

  MDiagonal sp = SplitArc{1, 5};
  CHECK(tau(s, sp) == MDiagonal{SplitArc{3, 7}});
  auto f = split_fields(s, std::get<SplitArc>(tau(s, sp)));
  CHECK(f.a == 3);
  CHECK(f.b == 7);
  CHECK(f.w == 0);
  CHECK(tau_inverse(s, tau(s, sp)) == sp);
}

TEST_CASE("tau wraps the winding sheet across the seam") {
  SurfaceSpec s{7, 2};
  MDiagonal sp = SplitArc{9, 13};  // a=9, b=3, w=0
  auto f0 = split_fields(s, std::get<SplitArc>(sp));
  CHECK(f0.a == 9);
  CHECK(f0.b == 3);
  CHECK(f0.w == 0);
  auto f1 = split_fields(s, std::get<SplitArc>(tau(s, sp)));
  CHECK(f1.a == 1);
  CHECK(f1.b == 5);
  CHECK(f1.w == 1);
}

TEST_CASE("odd m flips the tangency side under shift and tau") {
  SurfaceSpec s{4, 3};
  MDiagonal t = TangentArc{1, Pole::R, Side::Left};
  CHECK(shift(s, t, 1) == MDiagonal{TangentArc{2, Pole::R, Side::Right}});
  CHECK(tau(s, t) == MDiagonal{TangentArc{4, Pole::R, Side::Right}});
}

TEST_CASE("tube periodicities") {
  SurfaceSpec s{7, 2};
  MDiagonal big = BoundaryArc{7, 3};  // base of the rank n-2 tube
  MDiagonal cur = big;
  for (int i = 0; i < 5; ++i) cur = tau(s, cur);
  CHECK(cur == big);  // order 5
  for (int i = 1; i < 5; ++i) {
    MDiagonal mid = big;
    for (int j = 0; j < i; ++j) mid = tau(s, mid);
    CHECK(mid != big);
  }

  MDiagonal bridge = BridgeArc{0, 1, 0, 1};
  CHECK(tau(s, tau(s, bridge)) == bridge);  // order 2
  CHECK(tau(s, bridge) != bridge);
}

TEST_CASE("m-fold shift equals tau on boundary-anchored arcs") {
  for (SurfaceSpec s : {SurfaceSpec{7, 2}, SurfaceSpec{4, 3}, SurfaceSpec{6, 1}}) {
    std::vector<MDiagonal> arcs{SplitArc{1, 1 + s.m}, BoundaryArc{2, s.m + 1}};
    for (const auto& [slot, base] : initial_slice_arcs(s)) arcs.push_back(base);
    for (const auto& a : arcs) CHECK(shift(s, a, s.m) == tau(s, a));
  }
}

TEST_CASE("tau and shift commute") {
  SurfaceSpec s{5, 3};
  std::vector<MDiagonal> arcs{SplitArc{1, 4}, TangentArc{2, Pole::S, Side::Left},
                              BoundaryArc{3, 4}, BridgeArc{1, 2, 0, 2}};
  for (const auto& a : arcs) CHECK(shift(s, tau(s, a), 1) == tau(s, shift(s, a, 1)));
}

TEST_CASE("component tags") {
  SurfaceSpec s{7, 2};
  for (const auto& [slot, arc] : initial_slice_arcs(s)) {
    auto tag = component_of(s, arc);
    CHECK(tag.kind == ComponentTag::Kind::Transjective);
    CHECK(tag.d == 1);
  }
  auto shifted = shift(s, initial_slice_arcs(s)[0].second, 1);
  CHECK(component_of(s, shifted).d == 2);

  CHECK(big_tube_base_vertex(s) == 7);
  auto tag = component_of(s, BoundaryArc{7, 3});
  CHECK(tag.kind == ComponentTag::Kind::TubeBig);
  CHECK(tag.d == 1);
}

TEST_CASE("elementary moves on the initial slice follow the fixed orientation") {
  SurfaceSpec s{7, 2};
  auto slice = initial_slice_arcs(s);
  auto arc_of = [&](int slot) {
    for (const auto& [sl, a] : slice)
      if (sl == slot) return a;
    throw SurfaceError("slot");
  };
  // printed orientation: 7->6, 8->6, 6->1, 1->2, 2->3, 3->4, 3->5
  CHECK(elementary_move_exists(s, arc_of(7), arc_of(6)));
  CHECK(elementary_move_exists(s, arc_of(8), arc_of(6)));
  CHECK(elementary_move_exists(s, arc_of(6), arc_of(1)));
  CHECK(elementary_move_exists(s, arc_of(1), arc_of(2)));
  CHECK(elementary_move_exists(s, arc_of(2), arc_of(3)));
  CHECK(elementary_move_exists(s, arc_of(3), arc_of(4)));
  CHECK(elementary_move_exists(s, arc_of(3), arc_of(5)));
  // none of the reverses, and nothing between fork tips
  CHECK_FALSE(elementary_move_exists(s, arc_of(3), arc_of(2)));
  CHECK_FALSE(elementary_move_exists(s, arc_of(6), arc_of(7)));
  CHECK_FALSE(elementary_move_exists(s, arc_of(4), arc_of(5)));
  CHECK_FALSE(elementary_move_exists(s, arc_of(2), arc_of(2)));
}

TEST_CASE("elementary move duality against the translation") {
  // E(a, b) <=> E(b, tau a), exhaustively over a window of transjective and
  // tube arcs
  for (SurfaceSpec s : {SurfaceSpec{7, 2}, SurfaceSpec{4, 3}, SurfaceSpec{6, 1}}) {
    std::vector<MDiagonal> arcs;
    for (const auto& [slot, base] : initial_slice_arcs(s)) {
      MDiagonal a = base;
      for (int t = -3; t <= 3; ++t) {
        MDiagonal cur = a;
        for (int i = 0; i < std::abs(t); ++i) cur = t > 0 ? tau(s, cur) : tau_inverse(s, cur);
        arcs.push_back(cur);
      }
    }
    for (int rim = 0; rim < s.n - 2; ++rim)
      for (long long lv = 1; lv <= 4; ++lv)
        arcs.push_back(arc_of_coord(s, TubeBigCoord{1, rim, lv}));
    for (int fam = 0; fam < 2; ++fam)
      for (int rim = 0; rim < 2; ++rim)
        for (long long lv = 1; lv <= 3; ++lv) arcs.push_back(BridgeArc{fam, lv, rim, 1});

    for (const auto& a : arcs)
      for (const auto& b : arcs)
        CHECK(elementary_move_exists(s, a, b) ==
              elementary_move_exists(s, b, tau(s, a)));
  }
}

TEST_CASE("self crossing boundaries") {
  SurfaceSpec s{7, 2};
  CHECK_FALSE(is_self_crossing(s, TangentArc{1, Pole::R, Side::Left}));
  CHECK_FALSE(is_self_crossing(s, SplitArc{1, 5}));
  CHECK(is_self_crossing(s, arc_of_coord(s, TubeBigCoord{1, 0, 5})));
  CHECK_FALSE(is_self_crossing(s, arc_of_coord(s, TubeBigCoord{1, 0, 4})));
  CHECK(is_self_crossing(s, BridgeArc{0, 2, 0, 1}));
  CHECK_FALSE(is_self_crossing(s, BridgeArc{0, 1, 0, 1}));

  SurfaceSpec m1{6, 1};  // the full boundary loop is still rigid for m=1
  CHECK_FALSE(is_self_crossing(m1, BoundaryArc{1, 4}));
  CHECK(is_self_crossing(m1, BoundaryArc{1, 5}));
}

TEST_CASE("crossing numbers: basic geometry") {
  SurfaceSpec s{7, 2};
  // all pairs of the initial angulation arcs are noncrossing
  auto slice = initial_slice_arcs(s);
  for (const auto& [s1, a] : slice)
    for (const auto& [s2, b] : slice) CHECK(crossing_number(s, a, b) == 0);

  // left/right pair at the same vertex
  CHECK(crossing_number(s, TangentArc{1, Pole::R, Side::Left},
                        TangentArc{1, Pole::R, Side::Right}) == 0);
  // the two arcs linking R to S (one tube, both rims) are incompatible
  CHECK(crossing_number(s, BridgeArc{0, 1, 0, 1}, BridgeArc{0, 1, 1, 1}) >= 1);
  CHECK(crossing_number(s, BridgeArc{1, 1, 0, 1}, BridgeArc{1, 1, 1, 1}) >= 1);
  // across the two rank-2 tubes the level-1 arcs form the eye and coexist
  CHECK(crossing_number(s, BridgeArc{0, 1, 0, 1}, BridgeArc{1, 1, 0, 1}) == 0);
  // interleaved caps cross once
  CHECK(crossing_number(s, SplitArc{1, 5}, SplitArc{3, 9}) == 1);
  CHECK(crossing_number(s, SplitArc{3, 9}, SplitArc{1, 5}) == 1);
  // the full-wrap translate of an arc nests alongside it (tau^{n-2} image)
  CHECK(crossing_number(s, SplitArc{1, 5}, SplitArc{11, 15}) == 0);
  // a wrapped interleaved pair still crosses
  CHECK(crossing_number(s, SplitArc{1, 5}, SplitArc{13, 17}) == 1);
  // crossing numbers are invariant under the translation
  for (int t = 0; t < 6; ++t) {
    MDiagonal a = SplitArc{1, 5}, b = SplitArc{3, 9};
    for (int i = 0; i < t; ++i) {
      a = tau(s, a);
      b = tau(s, b);
    }
    CHECK(crossing_number(s, a, b) == 1);
  }
  // symmetric by construction
  CHECK(crossing_number(s, SplitArc{1, 5}, BoundaryArc{2, 3}) ==
        crossing_number(s, BoundaryArc{2, 3}, SplitArc{1, 5}));
  CHECK_THROWS_AS(crossing_number(s, SplitArc{1, 5}, SplitArc{1 + 80, 5 + 80}),
                  UnsupportedRange);
}

TEST_CASE("ar coordinates round trip") {
  for (SurfaceSpec s : {SurfaceSpec{7, 2}, SurfaceSpec{4, 3}, SurfaceSpec{6, 1}}) {
    for (const auto& [slot, base] : initial_slice_arcs(s))
      for (int d = 1; d <= s.m; ++d)
        for (long long t = -2; t <= 2; ++t) {
          ArCoord c = Transjective{d, t, slot};
          MDiagonal arc = arc_of_coord(s, c);
          CHECK(ar_coord(s, arc) == c);
        }
    for (int d = 1; d <= s.m; ++d)
      for (int rim = 0; rim < s.n - 2; ++rim) {
        ArCoord c = TubeBigCoord{d, rim, 2};
        CHECK(ar_coord(s, arc_of_coord(s, c)) == c);
      }
  }
}

TEST_CASE("mdiagonal json round trip") {
  SurfaceSpec s{7, 2};
  std::vector<MDiagonal> arcs{SplitArc{1, 5},  SplitArc{11, 15},
                              BoundaryArc{2, 3}, TangentArc{1, Pole::R, Side::Left},
                              TangentArc{14, Pole::S, Side::Right},
                              BridgeArc{1, 3, 1, 2}};
  for (const auto& a : arcs) {
    auto text = to_json(s, a);
    CHECK(mdiagonal_from_json(s, text) == a);
  }
  CHECK(to_json(s, TangentArc{1, Pole::R, Side::Left}) ==
        R"({"kind":"tangent","p":1,"pole":"R","side":"left"})");
  CHECK(to_json(s, SplitArc{1, 5}) == R"({"kind":"split","a":1,"b":5,"w":0})");
  CHECK(to_json(s, BoundaryArc{2, 3}) == R"({"kind":"boundary","a":2,"s":3})");
}
