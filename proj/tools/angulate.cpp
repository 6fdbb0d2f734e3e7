// Command-line front end: build angulations, flip, extract quivers, mutate,
// machine-check flip/mutation compatibility, generate AR windows, render.
//
// exit 0: success / property holds
// exit 1: property violation (counterexample dumped)
// exit 2: usage or format error
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "angulation/angulation.hpp"
#include "angulation/category.hpp"
#include "angulation/render.hpp"
#include "angulation/rng.hpp"

using namespace angulation;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path)
    spit(*out_path, text);
  else
    std::cout << text;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int check_sequence(const SurfaceSpec& spec, const std::vector<std::string>& seq,
                   const std::string& dump_prefix) {
  Angulation ang = Angulation::initial(spec);
  ColoredQuiver q = ang.colored_quiver();
  int step = 0;
  for (const auto& at : seq) {
    Angulation next = ang.flip(at);
    auto rep = next.validate();
    ColoredQuiver geometric = next.colored_quiver();
    ColoredQuiver algebraic = q.mutate(at);
    if (!rep.ok || !geometric.equals(algebraic)) {
      std::cerr << "compatibility violated at step " << step << " (flip at " << at << ")\n";
      for (const auto& s : rep.issues) std::cerr << "  " << s << "\n";
      spit(dump_prefix + "-before.json", ang.to_json());
      spit(dump_prefix + "-after.json", next.to_json());
      spit(dump_prefix + "-geometric.json", geometric.to_json());
      spit(dump_prefix + "-mutated.json", algebraic.to_json());
      std::cerr << "counterexample dumped to " << dump_prefix << "-*.json\n";
      return 1;
    }
    ang = next;
    q = geometric;
    ++step;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(m+2)-angulations of a polygon with two inner polygons, colored quivers, "
               "flips and mutations"};
  app.require_subcommand(1);

  // --- init -----------------------------------------------------------------
  auto* init = app.add_subcommand("init", "write the initial (m+2)-angulation");
  int n = 7, m = 2;
  std::optional<std::string> out_path;
  init->add_option("--n", n, "number of quiver vertices minus one")->required();
  init->add_option("--m", m, "color bound")->required();
  init->add_option("-o,--out", out_path, "output file (stdout if omitted)");

  // --- flip -----------------------------------------------------------------
  auto* flip = app.add_subcommand("flip", "flip an angulation at a labelled diagonal");
  std::string flip_at, flip_in;
  bool flip_inverse = false;
  std::optional<std::string> flip_out;
  flip->add_option("--at", flip_at, "diagonal label")->required();
  flip->add_flag("--inverse", flip_inverse, "counterclockwise flip");
  flip->add_option("input", flip_in, "angulation json")->required();
  flip->add_option("-o,--out", flip_out, "output file");

  // --- quiver -----------------------------------------------------------------
  auto* quiver = app.add_subcommand("quiver", "extract the quiver of an angulation");
  std::string quiver_in;
  bool quiver_colored = false, quiver_dot = false, quiver_json = false;
  std::optional<std::string> quiver_out;
  quiver->add_option("input", quiver_in, "angulation json")->required();
  quiver->add_flag("--colored", quiver_colored, "colored quiver (default: plain)");
  quiver->add_flag("--dot", quiver_dot, "DOT output");
  quiver->add_flag("--json", quiver_json, "JSON output (default)");
  quiver->add_option("-o,--out", quiver_out, "output file");

  // --- mutate -----------------------------------------------------------------
  auto* mutate = app.add_subcommand("mutate", "mutate a colored quiver at a vertex");
  std::string mutate_at, mutate_in;
  bool use_formula = false, use_procedure = false;
  std::optional<std::string> mutate_out;
  mutate->add_option("--at", mutate_at, "vertex label")->required();
  mutate->add_option("input", mutate_in, "colored quiver json")->required();
  mutate->add_flag("--formula", use_formula, "closed formula only");
  mutate->add_flag("--procedure", use_procedure, "3-step procedure only");
  mutate->add_option("-o,--out", mutate_out, "output file");

  // --- check-compat -------------------------------------------------------------
  auto* compat = app.add_subcommand(
      "check-compat", "verify flip/mutation compatibility on flip sequences");
  int cn = 7, cm = 2, fuzz_count = 0, max_len = 15;
  std::uint64_t seed = 1;
  std::string seq_csv;
  std::string dump_prefix = "compat-failure";
  compat->add_option("--n", cn)->required();
  compat->add_option("--m", cm)->required();
  compat->add_option("--seq", seq_csv, "comma separated labels");
  compat->add_option("--fuzz", fuzz_count, "number of random sequences");
  compat->add_option("--max-len", max_len, "maximum sequence length");
  compat->add_option("--seed", seed, "rng seed");
  compat->add_option("--dump-prefix", dump_prefix, "failure artifact prefix");

  // --- ar ------------------------------------------------------------------------
  auto* ar = app.add_subcommand("ar", "transjective window of the translation quiver");
  int ar_n = 7, ar_m = 2, ar_d = 1;
  std::string ar_range = "0..3";
  bool ar_oracle = false, ar_dot = false;
  std::optional<std::string> ar_out;
  ar->add_option("--n", ar_n)->required();
  ar->add_option("--m", ar_m)->required();
  ar->add_option("--d", ar_d)->required();
  ar->add_option("--t", ar_range, "t range A..B");
  ar->add_flag("--oracle", ar_oracle, "run the knitting oracle check");
  ar->add_flag("--dot", ar_dot, "DOT output (default json)");
  ar->add_option("-o,--out", ar_out, "output file");

  // --- tube -----------------------------------------------------------------------
  auto* tube = app.add_subcommand("tube", "tube window of the translation quiver");
  int tube_n = 7, tube_m = 2, tube_levels = 4, tube_d = 1;
  std::string tube_family = "big";
  bool tube_dot = false;
  std::optional<std::string> tube_out;
  tube->add_option("--n", tube_n)->required();
  tube->add_option("--m", tube_m)->required();
  tube->add_option("--d", tube_d, "shift component");
  tube->add_option("--family", tube_family, "big | small0 | small1");
  tube->add_option("--levels", tube_levels, "levels to generate");
  tube->add_flag("--dot", tube_dot, "DOT output (default json)");
  tube->add_option("-o,--out", tube_out, "output file");

  // --- render -----------------------------------------------------------------------
  auto* render = app.add_subcommand("render", "deterministic SVG of an angulation");
  std::string render_in, render_out;
  render->add_option("input", render_in, "angulation json")->required();
  render->add_option("-o,--out", render_out, "output svg")->required();

  // --- validate ----------------------------------------------------------------------
  auto* validate = app.add_subcommand("validate", "validate an angulation file");
  std::string validate_in;
  validate->add_option("input", validate_in, "angulation json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (init->parsed()) {
      Angulation a = Angulation::initial({n, m});
      emit(out_path, a.to_json());
      return 0;
    }
    if (flip->parsed()) {
      Angulation a = Angulation::from_json(slurp(flip_in));
      Angulation b = flip_inverse ? a.flip_inverse(flip_at) : a.flip(flip_at);
      emit(flip_out, b.to_json());
      return 0;
    }
    if (quiver->parsed()) {
      Angulation a = Angulation::from_json(slurp(quiver_in));
      if (quiver_colored) {
        ColoredQuiver q = a.colored_quiver();
        emit(quiver_out, quiver_dot ? q.to_dot() : q.to_json());
      } else {
        PlainQuiver p = a.plain_quiver();
        if (quiver_dot) {
          std::ostringstream os;
          os << "digraph quiver {\n";
          for (const auto& v : p.vertices) os << "  \"" << v << "\";\n";
          for (const auto& [f, t] : p.arrows) os << "  \"" << f << "\" -> \"" << t << "\";\n";
          os << "}\n";
          emit(quiver_out, os.str());
        } else {
          emit(quiver_out, p.to_json());
        }
      }
      return 0;
    }
    if (mutate->parsed()) {
      ColoredQuiver q = ColoredQuiver::from_json(slurp(mutate_in));
      auto rep = q.validate();
      if (!rep.ok) {
        std::cerr << "input quiver is not a valid colored quiver:\n";
        for (const auto& v : rep.violations)
          std::cerr << "  (" << v.from << " -> " << v.to << ", color " << v.color << "): "
                    << v.condition << "\n";
        return 2;
      }
      if (!q.has_vertex(mutate_at)) {
        std::cerr << "no such vertex: " << mutate_at << "\n";
        return 2;
      }
      if (use_formula && !use_procedure) {
        emit(mutate_out, q.mutate_formula(mutate_at).to_json());
      } else if (use_procedure && !use_formula) {
        emit(mutate_out, q.mutate(mutate_at).to_json());
      } else {
        ColoredQuiver a = q.mutate(mutate_at);
        ColoredQuiver b = q.mutate_formula(mutate_at);
        if (!a.equals(b)) {
          std::cerr << "procedure and formula disagree at vertex " << mutate_at << "\n";
          std::cerr << "procedure:\n" << a.to_json() << "formula:\n" << b.to_json();
          return 1;
        }
        emit(mutate_out, a.to_json());
      }
      return 0;
    }
    if (compat->parsed()) {
      SurfaceSpec spec{cn, cm};
      spec.check();
      if (!seq_csv.empty()) {
        return check_sequence(spec, split_list(seq_csv), dump_prefix);
      }
      if (fuzz_count <= 0) {
        std::cerr << "check-compat needs --seq or --fuzz\n";
        return 2;
      }
      Angulation base = Angulation::initial(spec);
      auto labels = base.labels();
      SplitMix64 rng(seed);
      for (int case_no = 0; case_no < fuzz_count; ++case_no) {
        int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
        std::vector<std::string> seq;
        for (int i = 0; i < len; ++i) seq.push_back(labels[rng.below(labels.size())]);
        std::string prefix = dump_prefix + "-case" + std::to_string(case_no);
        if (int rc = check_sequence(spec, seq, prefix); rc != 0) {
          std::cerr << "failing case " << case_no << " (seed " << seed << "): ";
          for (const auto& s : seq) std::cerr << s << " ";
          std::cerr << "\n";
          return rc;
        }
      }
      std::cout << "check-compat: " << fuzz_count << " sequences ok (n=" << cn
                << ", m=" << cm << ", seed=" << seed << ")\n";
      return 0;
    }
    if (ar->parsed()) {
      auto dots = ar_range.find("..");
      if (dots == std::string::npos) {
        std::cerr << "--t expects A..B\n";
        return 2;
      }
      long long t0 = std::stoll(ar_range.substr(0, dots));
      long long t1 = std::stoll(ar_range.substr(dots + 2));
      SurfaceSpec spec{ar_n, ar_m};
      if (ar_oracle) {
        auto rep = ar_oracle_check(spec, ar_d, t0, t1);
        if (!rep.ok) {
          for (const auto& s : rep.issues) std::cerr << s << "\n";
          return 1;
        }
        std::cout << "ar-oracle: ok\n";
        return 0;
      }
      auto w = transjective_window(spec, ar_d, t0, t1);
      emit(ar_out, ar_dot ? w.to_dot() : w.to_json());
      return 0;
    }
    if (tube->parsed()) {
      SurfaceSpec spec{tube_n, tube_m};
      TubeFamily fam;
      if (tube_family == "big")
        fam = TubeFamily::Big;
      else if (tube_family == "small0")
        fam = TubeFamily::Small0;
      else if (tube_family == "small1")
        fam = TubeFamily::Small1;
      else {
        std::cerr << "--family must be big|small0|small1\n";
        return 2;
      }
      auto w = tube_window(spec, fam, tube_d, tube_levels);
      emit(tube_out, tube_dot ? w.to_dot() : w.to_json());
      return 0;
    }
    if (render->parsed()) {
      Angulation a = Angulation::from_json(slurp(render_in));
      spit(render_out, render_angulation_svg(a));
      return 0;
    }
    if (validate->parsed()) {
      Angulation a = Angulation::from_json(slurp(validate_in));
      auto rep = a.validate();
      if (!rep.ok) {
        for (const auto& s : rep.issues) std::cerr << s << "\n";
        return 1;
      }
      std::cout << "ok\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
