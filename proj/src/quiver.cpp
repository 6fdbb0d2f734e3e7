#include "angulation/quiver.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace angulation {

using nlohmann::json;
using nlohmann::ordered_json;

void PlainQuiver::sort_arrows() { std::sort(arrows.begin(), arrows.end()); }

std::string PlainQuiver::to_json() const {
  ordered_json j;
  j["vertices"] = vertices;
  ordered_json arr = ordered_json::array();
  for (const auto& [f, t] : arrows) arr.push_back({{"from", f}, {"to", t}});
  j["arrows"] = arr;
  return j.dump(2) + "\n";
}

ColoredQuiver::ColoredQuiver(int m, std::vector<std::string> vertices)
    : m_(m), vertices_(std::move(vertices)) {
  if (m_ < 1) throw QuiverError("color bound m must be positive");
  for (int i = 0; i < static_cast<int>(vertices_.size()); ++i) {
    if (!index_.emplace(vertices_[i], i).second)
      throw QuiverError("duplicate vertex label: " + vertices_[i]);
  }
}

int ColoredQuiver::vertex_index(const std::string& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw QuiverError("no such vertex: " + v);
  return it->second;
}

int ColoredQuiver::count(const std::string& from, const std::string& to, int color) const {
  auto it = table_.find({vertex_index(from), vertex_index(to)});
  if (it == table_.end()) return 0;
  auto jt = it->second.find(color);
  return jt == it->second.end() ? 0 : jt->second;
}

void ColoredQuiver::set_count(const std::string& from, const std::string& to, int color,
                              int mult) {
  if (color < 0 || color > m_) throw QuiverError("color out of range");
  auto key = std::make_pair(vertex_index(from), vertex_index(to));
  if (mult == 0) {
    auto it = table_.find(key);
    if (it != table_.end()) {
      it->second.erase(color);
      if (it->second.empty()) table_.erase(it);
    }
    return;
  }
  table_[key][color] = mult;
}

void ColoredQuiver::add_arrow(const std::string& from, const std::string& to, int color,
                              int mult) {
  set_count(from, to, color, count(from, to, color) + mult);
}

std::vector<ColoredArrow> ColoredQuiver::arrows() const {
  std::vector<ColoredArrow> out;
  for (const auto& [key, colors] : table_)
    for (const auto& [c, n] : colors)
      if (n > 0) out.push_back({vertices_[key.first], vertices_[key.second], c, n});
  return out;
}

int ColoredQuiver::arrow_multiplicity_total() const {
  int total = 0;
  for (const auto& [key, colors] : table_)
    for (const auto& [c, n] : colors) {
      (void)c;
      total += n;
    }
  return total;
}

QuiverReport ColoredQuiver::validate() const {
  QuiverReport rep;
  const int nv = static_cast<int>(vertices_.size());
  for (const auto& [key, colors] : table_) {
    int positive = 0;
    for (const auto& [c, n] : colors) {
      if (n < 0) {
        rep.violations.push_back(
            {vertices_[key.first], vertices_[key.second], c, "negative multiplicity"});
      }
      if (n > 0) ++positive;
      if (n > 0 && key.first == key.second)
        rep.violations.push_back({vertices_[key.first], vertices_[key.second], c, "loop"});
    }
    if (positive > 1) {
      for (const auto& [c, n] : colors)
        if (n > 0)
          rep.violations.push_back(
              {vertices_[key.first], vertices_[key.second], c, "monochromaticity"});
    }
  }
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      for (int c = 0; c <= m_; ++c) {
        int fwd = count(vertices_[i], vertices_[j], c);
        int bwd = count(vertices_[j], vertices_[i], m_ - c);
        if (fwd != bwd)
          rep.violations.push_back({vertices_[j], vertices_[i], m_ - c, "symmetry"});
      }
  rep.ok = rep.violations.empty();
  return rep;
}

namespace {
int wrap_color(int c, int modulus) {
  int r = c % modulus;
  return r < 0 ? r + modulus : r;
}
}  // namespace

ColoredQuiver ColoredQuiver::mutate(const std::string& k) const {
  const int ik = vertex_index(k);
  const int nv = static_cast<int>(vertices_.size());
  const int mod = m_ + 1;
  ColoredQuiver out(m_, vertices_);

  // raw copy of counts
  auto q = [&](int i, int j, int c) -> int {
    auto it = table_.find({i, j});
    if (it == table_.end()) return 0;
    auto jt = it->second.find(wrap_color(c, mod));
    return jt == it->second.end() ? 0 : jt->second;
  };

  // step 1: composites through k on pairs not involving k. Arrows drawn by the
  // rule come in two families per ordered pair (i,j): through paths i->k->j
  // and as reverses of paths j->k->i. When both fire they are formal inverses
  // of each other and erase pairwise before anything else; the remainder then
  // cancels against the existing arrows to restore monochromaticity.
  std::vector<std::vector<std::map<int, int>>> work(nv, std::vector<std::map<int, int>>(nv));
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      for (int c = 0; c <= m_; ++c)
        if (int n = q(i, j, c); n > 0) work[i][j][c] += n;

  for (int i = 0; i < nv; ++i) {
    if (i == ik) continue;
    for (int j = 0; j < nv; ++j) {
      if (j == ik || j == i) continue;
      std::map<int, int> fwd, rev;  // additions to (i,j) from the two families
      for (int c = 0; c <= m_; ++c) {
        if (int paths = q(i, ik, c) * q(ik, j, 0); paths > 0) fwd[c] += paths;
        // path j ->(c) k ->(0) i also draws i ->(m-c) j
        if (int paths = q(j, ik, c) * q(ik, i, 0); paths > 0) rev[m_ - c] += paths;
      }
      int fwd_total = 0, rev_total = 0;
      for (auto& [c, n] : fwd) fwd_total += n;
      for (auto& [c, n] : rev) rev_total += n;
      int mutual = std::min(fwd_total, rev_total);
      // remove `mutual` arrows from each family, largest colors first (the
      // families are monochromatic for valid inputs, so the order is moot)
      for (auto* fam : {&fwd, &rev}) {
        int to_drop = mutual;
        for (auto it = fam->begin(); it != fam->end() && to_drop > 0;) {
          int take = std::min(it->second, to_drop);
          it->second -= take;
          to_drop -= take;
          it = it->second == 0 ? fam->erase(it) : std::next(it);
        }
      }
      for (const auto& [c, n] : fwd) work[i][j][c] += n;
      for (const auto& [c, n] : rev) work[i][j][c] += n;
    }
  }

  // step 2: restore monochromaticity by mutual cancellation per ordered pair
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      if (i == j || i == ik || j == ik) continue;
      auto& cell = work[i][j];
      int total = 0;
      for (auto& [c, n] : cell) total += n;
      std::map<int, int> repaired;
      for (auto& [c, n] : cell) {
        int keep = n - (total - n);
        if (keep > 0) repaired[c] = keep;
      }
      cell = std::move(repaired);
    }

  // step 3: cycle colors on arrows at k
  for (int i = 0; i < nv; ++i) {
    if (i == ik) continue;
    std::map<int, int> into, outof;
    for (int c = 0; c <= m_; ++c) {
      if (int n = q(i, ik, c); n > 0) into[wrap_color(c + 1, mod)] += n;
      if (int n = q(ik, i, c); n > 0) outof[wrap_color(c - 1, mod)] += n;
    }
    work[i][ik] = std::move(into);
    work[ik][i] = std::move(outof);
  }

  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      for (const auto& [c, n] : work[i][j])
        if (n > 0) out.set_count(vertices_[i], vertices_[j], c, n);
  return out;
}

ColoredQuiver ColoredQuiver::mutate_formula(const std::string& k, FormulaVariant variant) const {
  const int ik = vertex_index(k);
  const int nv = static_cast<int>(vertices_.size());
  const int mod = m_ + 1;
  ColoredQuiver out(m_, vertices_);

  auto q = [&](int i, int j, int c) -> int {
    auto it = table_.find({i, j});
    if (it == table_.end()) return 0;
    auto jt = it->second.find(wrap_color(c, mod));
    return jt == it->second.end() ? 0 : jt->second;
  };

  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j) {
      if (i == j) continue;
      for (int c = 0; c <= m_; ++c) {
        int value = 0;
        if (j == ik) {
          value = (variant == FormulaVariant::Corrected) ? q(i, j, c - 1) : q(i, j, c + 1);
        } else if (i == ik) {
          value = (variant == FormulaVariant::Corrected) ? q(i, j, c + 1) : q(i, j, c - 1);
        } else {
          int others = 0;
          for (int t = 0; t <= m_; ++t)
            if (t != c) others += q(i, j, t);
          value = q(i, j, c) - others + (q(i, ik, c) - q(i, ik, c - 1)) * q(ik, j, 0) +
                  q(i, ik, m_) * (q(ik, j, c) - q(ik, j, c + 1));
          value = std::max(0, value);
        }
        if (value > 0) out.set_count(vertices_[i], vertices_[j], c, value);
      }
    }
  return out;
}

PlainQuiver ColoredQuiver::gabriel_subquiver() const {
  PlainQuiver g;
  g.vertices = vertices_;
  for (const auto& a : arrows())
    if (a.color == 0)
      for (int r = 0; r < a.mult; ++r) g.arrows.emplace_back(a.from, a.to);
  g.sort_arrows();
  return g;
}

std::string ColoredQuiver::canonical_form() const {
  ordered_json j;
  j["m"] = m_;
  j["vertices"] = vertices_;
  ordered_json arr = ordered_json::array();
  for (const auto& a : arrows())
    arr.push_back({{"from", a.from}, {"to", a.to}, {"color", a.color}, {"mult", a.mult}});
  j["arrows"] = arr;
  return j.dump(2) + "\n";
}

bool ColoredQuiver::equals(const ColoredQuiver& other) const {
  if (m_ != other.m_) return false;
  auto va = vertices_, vb = other.vertices_;
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  if (va != vb) return false;
  // label-keyed table comparison (order-free)
  auto collect = [](const ColoredQuiver& q) {
    std::map<std::tuple<std::string, std::string, int>, int> t;
    for (const auto& a : q.arrows()) t[{a.from, a.to, a.color}] = a.mult;
    return t;
  };
  return collect(*this) == collect(other);
}

std::string ColoredQuiver::to_json() const { return canonical_form(); }

ColoredQuiver ColoredQuiver::from_json(const std::string& text) {
  json j = json::parse(text);
  ColoredQuiver q(j.at("m").get<int>(), j.at("vertices").get<std::vector<std::string>>());
  for (const auto& a : j.at("arrows")) {
    int mult = a.contains("mult") ? a.at("mult").get<int>() : 1;
    q.add_arrow(a.at("from").get<std::string>(), a.at("to").get<std::string>(),
                a.at("color").get<int>(), mult);
  }
  return q;
}

std::string ColoredQuiver::to_dot() const {
  std::ostringstream os;
  os << "digraph colored_quiver {\n";
  for (const auto& v : vertices_) os << "  \"" << v << "\";\n";
  for (const auto& a : arrows())
    for (int r = 0; r < a.mult; ++r)
      os << "  \"" << a.from << "\" -> \"" << a.to << "\" [label=\"(" << a.color << ")\"];\n";
  os << "}\n";
  return os.str();
}

PlainQuiver fz_mutate(const PlainQuiver& q, const std::string& k) {
  std::map<std::pair<std::string, std::string>, int> b;
  for (const auto& [f, t] : q.arrows) b[{f, t}] += 1;

  std::map<std::pair<std::string, std::string>, int> nb;
  // composites i -> k -> j
  for (const auto& [ik, n1] : b) {
    if (ik.second != k) continue;
    for (const auto& [kj, n2] : b) {
      if (kj.first != k) continue;
      if (ik.first == kj.second) continue;
      nb[{ik.first, kj.second}] += n1 * n2;
    }
  }
  // reverse arrows at k, keep the rest
  for (const auto& [a, n] : b) {
    if (a.first == k || a.second == k)
      nb[{a.second, a.first}] += n;
    else
      nb[{a.first, a.second}] += n;
  }
  // cancel 2-cycles
  PlainQuiver out;
  out.vertices = q.vertices;
  for (const auto& [a, n] : nb) {
    auto rev = nb.find({a.second, a.first});
    int cancel = rev == nb.end() ? 0 : rev->second;
    int keep = n - cancel;
    for (int r = 0; r < keep; ++r) out.arrows.emplace_back(a.first, a.second);
  }
  out.sort_arrows();
  return out;
}

}  // namespace angulation
