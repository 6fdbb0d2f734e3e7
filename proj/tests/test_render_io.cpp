#include <set>

#include "angulation/render.hpp"
#include "doctest.h"

using namespace angulation;

namespace {
int count_occurrences(const std::string& hay, const std::string& needle) {
  int count = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++count;
  return count;
}
}  // namespace

TEST_CASE("svg render is deterministic and structurally faithful") {
  Angulation a = Angulation::initial({7, 2});
  std::string svg1 = render_angulation_svg(a);
  std::string svg2 = render_angulation_svg(a);
  CHECK(svg1 == svg2);
  CHECK(count_occurrences(svg1, "class=\"diagonal\"") == 8);
  CHECK(count_occurrences(svg1, "class=\"boundary\"") == 10);
  CHECK(count_occurrences(svg1, "class=\"pole-side\"") == 2);
  CHECK(svg1.find("<svg") != std::string::npos);
}

TEST_CASE("flip changes exactly one diagonal path") {
  Angulation a = Angulation::initial({7, 2});
  Angulation f = a.flip("3");
  std::string s1 = render_angulation_svg(a);
  std::string s2 = render_angulation_svg(f);
  auto paths = [](const std::string& svg) {
    std::map<std::string, std::string> by_id;
    size_t pos = 0;
    while ((pos = svg.find("id=\"arc-", pos)) != std::string::npos) {
      size_t id_end = svg.find('"', pos + 4 + 5);
      std::string id = svg.substr(pos + 4, id_end - pos - 4);
      size_t line_end = svg.find('\n', pos);
      size_t line_start = svg.rfind('\n', pos);
      by_id[id] = svg.substr(line_start + 1, line_end - line_start);
      pos = id_end;
    }
    return by_id;
  };
  auto p1 = paths(s1), p2 = paths(s2);
  REQUIRE(p1.size() == 8);
  REQUIRE(p2.size() == 8);
  int diff = 0;
  for (const auto& [id, body] : p1)
    if (p2.at(id) != body) ++diff;
  CHECK(diff == 1);
}

TEST_CASE("dot outputs are deterministic with expected edge counts") {
  Angulation a = Angulation::initial({7, 2});
  ColoredQuiver q = a.colored_quiver();
  std::string dot = render_quiver_dot(q);
  CHECK(dot == render_quiver_dot(q));
  CHECK(count_occurrences(dot, " -> ") == 14);
  CHECK(count_occurrences(dot, "label=\"(") == 14);

  auto w = transjective_window({7, 2}, 1, 0, 1);
  std::string wd = render_window_dot(w);
  CHECK(wd == render_window_dot(w));
  CHECK(count_occurrences(wd, "\"(1,") == static_cast<int>(
      w.vertices.size() + w.arrows.size() * 2 +
      [&] {
        int t = 0;
        for (int x : w.tau)
          if (x >= 0) t += 2;
        return t;
      }()));
}

TEST_CASE("arrowless quiver renders nodes only") {
  ColoredQuiver q(2, {"a", "b"});
  std::string dot = render_quiver_dot(q);
  CHECK(count_occurrences(dot, " -> ") == 0);
  CHECK(count_occurrences(dot, "\"a\"") == 1);
}
