#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "angulation/angulation.hpp"
#include "angulation/category.hpp"
#include "angulation/render.hpp"
#include "angulation/rng.hpp"

namespace py = pybind11;
using namespace angulation;

namespace {

SurfaceSpec make_spec(int n, int m) {
  SurfaceSpec s{n, m};
  s.check();
  return s;
}

TubeFamily family_from_string(const std::string& name) {
  if (name == "big") return TubeFamily::Big;
  if (name == "small0") return TubeFamily::Small0;
  if (name == "small1") return TubeFamily::Small1;
  throw std::invalid_argument("family must be big|small0|small1");
}

}  // namespace

PYBIND11_MODULE(_angulation, mod) {
  mod.doc() = "(m+2)-angulations of a polygon with two inner polygons, colored quivers, "
              "flips, mutations and translation-quiver windows";

  py::register_exception<QuiverError>(mod, "QuiverError");
  py::register_exception<SurfaceError>(mod, "SurfaceError");
  py::register_exception<AngulationError>(mod, "AngulationError");

  py::enum_<FormulaVariant>(mod, "FormulaVariant")
      .value("Corrected", FormulaVariant::Corrected)
      .value("AsPrinted", FormulaVariant::AsPrinted);

  py::class_<PlainQuiver>(mod, "PlainQuiver")
      .def_readonly("vertices", &PlainQuiver::vertices)
      .def_readonly("arrows", &PlainQuiver::arrows)
      .def("to_json", &PlainQuiver::to_json)
      .def("__eq__", [](const PlainQuiver& a, const PlainQuiver& b) { return a == b; });

  py::class_<ColoredQuiver>(mod, "ColoredQuiver")
      .def(py::init<int, std::vector<std::string>>(), py::arg("m"), py::arg("vertices"))
      .def_static("from_json", &ColoredQuiver::from_json)
      .def_property_readonly("m", &ColoredQuiver::m)
      .def_property_readonly("vertices", &ColoredQuiver::vertices)
      .def("count", &ColoredQuiver::count)
      .def("add_arrow", &ColoredQuiver::add_arrow, py::arg("from_"), py::arg("to"),
           py::arg("color"), py::arg("mult") = 1)
      .def("validate",
           [](const ColoredQuiver& q) {
             auto rep = q.validate();
             std::vector<std::string> issues;
             for (const auto& v : rep.violations)
               issues.push_back(v.condition + " at (" + v.from + "," + v.to + "," +
                                std::to_string(v.color) + ")");
             return py::make_tuple(rep.ok, issues);
           })
      .def("mutate", &ColoredQuiver::mutate)
      .def("mutate_formula", &ColoredQuiver::mutate_formula, py::arg("k"),
           py::arg("variant") = FormulaVariant::Corrected)
      .def("gabriel_subquiver", &ColoredQuiver::gabriel_subquiver)
      .def("canonical_form", &ColoredQuiver::canonical_form)
      .def("equals", &ColoredQuiver::equals)
      .def("to_json", &ColoredQuiver::to_json)
      .def("to_dot", &ColoredQuiver::to_dot);

  py::class_<Angulation>(mod, "Angulation")
      .def_static(
          "initial", [](int n, int m) { return Angulation::initial(make_spec(n, m)); },
          py::arg("n"), py::arg("m"))
      .def_static("from_json", &Angulation::from_json)
      .def_property_readonly("n", [](const Angulation& a) { return a.spec().n; })
      .def_property_readonly("m", [](const Angulation& a) { return a.spec().m; })
      .def("labels", &Angulation::labels)
      .def("diagonal_count", &Angulation::diagonal_count)
      .def("validate",
           [](const Angulation& a) {
             auto rep = a.validate();
             return py::make_tuple(rep.ok, rep.issues);
           })
      .def("faces",
           [](const Angulation& a) {
             std::vector<py::tuple> out;
             for (const auto& f : a.faces()) out.push_back(py::make_tuple(f.side_count, f.sides));
             return out;
           })
      .def("arc", [](const Angulation& a,
                     const std::string& label) { return to_json(a.spec(), a.arc_class(label)); })
      .def("twist",
           [](const Angulation& a, const std::string& label) {
             return to_json(a.spec(), a.twist(label));
           })
      .def("flip", &Angulation::flip)
      .def("flip_inverse", &Angulation::flip_inverse)
      .def("plain_quiver", &Angulation::plain_quiver)
      .def("colored_quiver", &Angulation::colored_quiver)
      .def("to_json", &Angulation::to_json, py::arg("with_rotations") = true)
      .def("canonical_form", &Angulation::canonical_form)
      .def("equals", &Angulation::equals)
      .def("render_svg",
           [](const Angulation& a) { return render_angulation_svg(a); });

  py::class_<TranslationQuiverWindow>(mod, "TranslationQuiverWindow")
      .def_property_readonly("arrows",
                             [](const TranslationQuiverWindow& w) { return w.arrows; })
      .def_property_readonly("tau", [](const TranslationQuiverWindow& w) { return w.tau; })
      .def("size",
           [](const TranslationQuiverWindow& w) { return w.vertices.size(); })
      .def("to_dot", &TranslationQuiverWindow::to_dot)
      .def("to_json", &TranslationQuiverWindow::to_json);

  mod.def(
      "transjective_window",
      [](int n, int m, int d, long long t_min, long long t_max) {
        return transjective_window(make_spec(n, m), d, t_min, t_max);
      },
      py::arg("n"), py::arg("m"), py::arg("d"), py::arg("t_min"), py::arg("t_max"));
  mod.def(
      "tube_window",
      [](int n, int m, const std::string& family, int d, long long levels) {
        return tube_window(make_spec(n, m), family_from_string(family), d, levels);
      },
      py::arg("n"), py::arg("m"), py::arg("family"), py::arg("d"), py::arg("levels"));
  mod.def(
      "is_stable_translation_quiver",
      [](const TranslationQuiverWindow& w) {
        auto rep = is_stable_translation_quiver(w);
        return py::make_tuple(rep.ok, rep.issues, rep.boundary_exemptions);
      });
  mod.def(
      "ar_oracle_check",
      [](int n, int m, int d, long long t_min, long long t_max) {
        auto rep = ar_oracle_check(make_spec(n, m), d, t_min, t_max);
        return py::make_tuple(rep.ok, rep.issues);
      },
      py::arg("n"), py::arg("m"), py::arg("d"), py::arg("t_min"), py::arg("t_max"));

  mod.def(
      "check_compat",
      [](int n, int m, int count, int max_len, std::uint64_t seed) {
        SurfaceSpec spec = make_spec(n, m);
        Angulation base = Angulation::initial(spec);
        auto labels = base.labels();
        SplitMix64 rng(seed);
        for (int case_no = 0; case_no < count; ++case_no) {
          Angulation ang = base;
          ColoredQuiver q = ang.colored_quiver();
          int len = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len)));
          for (int i = 0; i < len; ++i) {
            std::string at = labels[rng.below(labels.size())];
            ang = ang.flip(at);
            ColoredQuiver geometric = ang.colored_quiver();
            if (!ang.validate().ok || !geometric.equals(q.mutate(at))) return false;
            q = geometric;
          }
        }
        return true;
      },
      py::arg("n"), py::arg("m"), py::arg("count") = 50, py::arg("max_len") = 10,
      py::arg("seed") = 1);
}
