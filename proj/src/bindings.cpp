#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pcdeg/cli.hpp"

namespace py = pybind11;
using namespace pcdeg;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case nlohmann::json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return std::move(out);
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return std::move(out);
    }
    default: return py::none();
  }
}

nlohmann::json py_to_json(const py::handle& obj) {
  if (obj.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
  if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
  if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
  if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
  if (py::isinstance<py::dict>(obj)) {
    nlohmann::json out = nlohmann::json::object();
    for (auto item : obj.cast<py::dict>())
      out[item.first.cast<std::string>()] = py_to_json(item.second);
    return out;
  }
  if (py::isinstance<py::sequence>(obj)) {
    nlohmann::json out = nlohmann::json::array();
    for (auto item : obj.cast<py::sequence>()) out.push_back(py_to_json(item));
    return out;
  }
  throw py::type_error("value has no JSON counterpart");
}

struct PyTable {
  TablePtr ptr;
};

SearchParams make_params(const std::optional<std::vector<Int>>& moduli,
                         const std::optional<Int>& box, int jobs) {
  SearchParams p;
  p.moduli = moduli;
  p.box = box;
  p.jobs = jobs;
  return p;
}

WitnessMatrix witness_arg(const py::handle& obj) {
  if (py::isinstance<WitnessMatrix>(obj)) return obj.cast<WitnessMatrix>();
  return witness_from_json(py_to_json(obj));
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "degree maps between torsion-free highly connected Poincare complexes";

  py::register_exception<UndecidedError>(m, "Undecided");

  py::class_<PyTable>(m, "GroupTable")
      .def_property_readonly("n", [](const PyTable& t) { return t.ptr->n; })
      .def("to_json", [](const PyTable& t) { return json_to_py(table_to_json(*t.ptr)); })
      .def("required_moduli",
           [](const PyTable& t) {
             Moduli mo = required_moduli(*t.ptr);
             return py::make_tuple(mo.a, mo.c, mo.d);
           })
      .def("__eq__",
           [](const PyTable& a, const PyTable& b) { return *a.ptr == *b.ptr; })
      .def("__repr__", [](const PyTable& t) {
        return "GroupTable(n=" + std::to_string(t.ptr->n) + ")";
      });

  py::class_<ComplexSpec>(m, "Complex")
      .def_property_readonly("n", [](const ComplexSpec& x) { return x.table->n; })
      .def_property_readonly("rank", [](const ComplexSpec& x) { return x.rank; })
      .def_property_readonly("table",
                             [](const ComplexSpec& x) { return PyTable{x.table}; })
      .def("to_json", [](const ComplexSpec& x) { return json_to_py(complex_to_json(x)); })
      .def("__eq__", [](const ComplexSpec& a, const ComplexSpec& b) { return a == b; })
      .def("__repr__", [](const ComplexSpec& x) {
        return "Complex(" + complex_to_json(x).dump() + ")";
      });

  py::class_<WitnessMatrix>(m, "Witness")
      .def_property_readonly("k", [](const WitnessMatrix& w) { return w.k; })
      .def_property_readonly("m", [](const WitnessMatrix& w) { return w.m; })
      .def("to_json", [](const WitnessMatrix& w) { return json_to_py(witness_to_json(w)); })
      .def("__eq__",
           [](const WitnessMatrix& a, const WitnessMatrix& b) { return a == b; })
      .def("__repr__", [](const WitnessMatrix& w) {
        return "Witness(" + witness_to_json(w).dump() + ")";
      });

  m.def(
      "builtin_table", [](int n) { return PyTable{builtin_table_ptr(n)}; },
      py::arg("n"));

  m.def(
      "load_table",
      [](const py::handle& doc) {
        return PyTable{std::make_shared<const GroupTable>(load_table(py_to_json(doc)))};
      },
      py::arg("doc"), "build a table from a JSON-shaped dict");

  m.def(
      "table_to_json", [](const PyTable& t) { return json_to_py(table_to_json(*t.ptr)); },
      py::arg("table"));

  m.def(
      "product_sum",
      [](const PyTable& t, int rank) { return product_sum(t.ptr, rank); },
      py::arg("table"), py::arg("rank"));

  m.def("z_complex", &z_complex, py::arg("rank"));

  m.def("connected_sum", &homotopy_connected_sum, py::arg("x"), py::arg("y"));

  m.def(
      "complex_from_json",
      [](const py::handle& doc, const std::optional<PyTable>& table) {
        nlohmann::json j = py_to_json(doc);
        TablePtr t = table ? table->ptr : nullptr;
        if (!t) {
          auto it = j.find("n");
          if (it == j.end() || !it->is_number_integer())
            throw std::invalid_argument("complex document needs an integer n");
          t = builtin_table_ptr(it->get<int>());
        }
        return complex_from_json(j, t);
      },
      py::arg("doc"), py::arg("table") = std::nullopt);

  m.def(
      "complex_to_json", [](const ComplexSpec& x) { return json_to_py(complex_to_json(x)); },
      py::arg("x"));

  m.def(
      "enumerate_complexes",
      [](const PyTable& t, int rank) { return enumerate_complexes(t.ptr, rank); },
      py::arg("table"), py::arg("rank"));

  m.def(
      "check_degree",
      [](const ComplexSpec& x, const ComplexSpec& y, Int d,
         const std::optional<std::vector<Int>>& moduli, const std::optional<Int>& box) {
        Verdict v = check_degree(x, y, d, make_params(moduli, box, 1));
        return json_to_py(verdict_to_json(v));
      },
      py::arg("x"), py::arg("y"), py::arg("d"), py::kw_only(),
      py::arg("moduli") = std::nullopt, py::arg("box") = std::nullopt,
      "decide degree d; returns the verdict as a dict");

  m.def(
      "degree_set",
      [](const ComplexSpec& x, const ComplexSpec& y, Int range,
         const std::optional<std::vector<Int>>& moduli, const std::optional<Int>& box,
         int jobs) {
        DegreeReport r = degree_set(x, y, range, make_params(moduli, box, jobs));
        if (r.exact) r.progressions = infer_progressions(r);
        return json_to_py(report_to_json(r));
      },
      py::arg("x"), py::arg("y"), py::arg("range"), py::kw_only(),
      py::arg("moduli") = std::nullopt, py::arg("box") = std::nullopt,
      py::arg("jobs") = 1, "sweep |d| <= range; returns the report as a dict");

  m.def(
      "is_equivalent",
      [](const ComplexSpec& x, const ComplexSpec& y) {
        auto [eq, w] = is_equivalent(x, y);
        return py::make_tuple(eq, w ? py::cast(*w) : py::none());
      },
      py::arg("x"), py::arg("y"),
      "returns (bool, degree +-1 witness or None); raises Undecided");

  m.def(
      "classify",
      [](const PyTable& t, int rank, int jobs) {
        Classification cls = classify(t.ptr, rank, make_params(std::nullopt, std::nullopt, jobs));
        return json_to_py(classification_to_json(cls, t.ptr));
      },
      py::arg("table"), py::arg("rank"), py::kw_only(), py::arg("jobs") = 1);

  m.def(
      "verify_witness",
      [](const ComplexSpec& x, const ComplexSpec& y, Int d, const py::handle& witness) {
        ConstraintSystem sys(x, y, d);
        return verify_witness(sys, witness_arg(witness));
      },
      py::arg("x"), py::arg("y"), py::arg("d"), py::arg("witness"),
      "check the four equation blocks exactly");

  m.def(
      "compose_witness",
      [](const py::handle& p, const py::handle& q) {
        return compose_witness(witness_arg(p), witness_arg(q));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "det_star",
      [](const py::handle& w) {
        std::ostringstream s;
        s << det_star(witness_arg(w));
        return py::module_::import("builtins").attr("int")(s.str());
      },
      py::arg("witness"), "determinant of the full block matrix, as a Python int");
}
