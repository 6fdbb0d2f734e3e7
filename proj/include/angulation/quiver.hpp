#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace angulation {

struct QuiverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string from, to;
  int color = 0;
  std::string condition;  // "loop" | "monochromaticity" | "symmetry"
};

struct QuiverReport {
  bool ok = true;
  std::vector<Violation> violations;
};

struct ColoredArrow {
  std::string from, to;
  int color = 0;
  int mult = 1;
};

// Plain directed multigraph, used for the Gabriel subquiver and the classical
// quiver of an angulation.
struct PlainQuiver {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> arrows;  // with multiplicity

  void sort_arrows();
  bool operator==(const PlainQuiver&) const = default;
  std::string to_json() const;
};

// Variant switch for the closed mutation formula. `Corrected` assigns the
// i=k / j=k cases so that arrows into k gain +1 and arrows out of k lose 1,
// agreeing with the 3-step procedure; `AsPrinted` keeps the swapped cases for
// diagnostic comparison.
enum class FormulaVariant { Corrected, AsPrinted };

class ColoredQuiver {
 public:
  ColoredQuiver() = default;
  ColoredQuiver(int m, std::vector<std::string> vertices);

  int m() const { return m_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  bool has_vertex(const std::string& v) const { return index_.count(v) > 0; }

  int count(const std::string& from, const std::string& to, int color) const;
  void set_count(const std::string& from, const std::string& to, int color, int mult);
  void add_arrow(const std::string& from, const std::string& to, int color, int mult = 1);

  // Sorted by (from index, to index, color); zero-mult entries dropped.
  std::vector<ColoredArrow> arrows() const;
  int arrow_multiplicity_total() const;

  QuiverReport validate() const;

  // Buan-Thomas mutation at k, as the 3-step procedure.
  ColoredQuiver mutate(const std::string& k) const;
  // The closed formula (color indices mod m+1).
  ColoredQuiver mutate_formula(const std::string& k,
                               FormulaVariant variant = FormulaVariant::Corrected) const;

  PlainQuiver gabriel_subquiver() const;  // color-0 arrows only

  std::string canonical_form() const;  // deterministic byte representation
  bool equals(const ColoredQuiver& other) const;

  std::string to_json() const;
  static ColoredQuiver from_json(const std::string& text);
  std::string to_dot() const;

 private:
  int vertex_index(const std::string& v) const;

  int m_ = 1;
  std::vector<std::string> vertices_;
  std::map<std::string, int> index_;
  // (from,to) -> color -> positive count
  std::map<std::pair<int, int>, std::map<int, int>> table_;
};

// Fomin-Zelevinsky style mutation of a plain quiver (2-acyclic multigraph):
// reverse arrows at k, add composites through k, cancel 2-cycles. Used as the
// classical m=1 oracle.
PlainQuiver fz_mutate(const PlainQuiver& q, const std::string& k);

}  // namespace angulation
