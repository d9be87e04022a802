#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loopwhile/complexity.hpp"
#include "loopwhile/encoding.hpp"
#include "loopwhile/parser.hpp"
#include "loopwhile/semantics.hpp"
#include "loopwhile/transforms.hpp"
#include "loopwhile/universal.hpp"

namespace py = pybind11;

namespace {

// GMP naturals cross the boundary as Python ints, via decimal strings.
py::int_ to_py(const lw::Nat& n) {
  PyObject* obj = PyLong_FromString(n.get_str().c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

lw::Nat to_nat(const py::int_& v) {
  std::string text = py::str(v).cast<std::string>();
  if (!text.empty() && text[0] == '-')
    throw py::value_error("expected a natural number, got " + text);
  return lw::Nat(text, 10);
}

std::vector<lw::Nat> to_nats(const std::vector<py::int_>& vs) {
  std::vector<lw::Nat> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(to_nat(v));
  return out;
}

std::optional<lw::Nat> fuel_of(const py::object& fuel) {
  if (fuel.is_none()) return std::nullopt;
  return to_nat(fuel.cast<py::int_>());
}

py::dict state_dict(const lw::State& s) {
  py::dict d;
  for (const auto& [var, val] : s.bindings()) d[to_py(var)] = to_py(val);
  return d;
}

}  // namespace

PYBIND11_MODULE(_loopwhile, m) {
  m.doc() = "FOR/WHILE toy-language toolchain";

  py::register_exception<lw::SyntaxError>(m, "SyntaxError");

  py::class_<lw::Program>(m, "Program")
      .def("__eq__", [](const lw::Program& a, const lw::Program& b) { return a == b; })
      .def("__ne__", [](const lw::Program& a, const lw::Program& b) { return a != b; })
      .def("__str__", [](const lw::Program& p) { return lw::pretty(p); })
      .def("__repr__",
           [](const lw::Program& p) { return "<Program " + lw::pretty_stmt_head(p) + ">"; });

  m.def("parse", [](const std::string& text) { return lw::parse(text); });
  m.def("pretty", [](const lw::Program& p) { return lw::pretty(p); });

  m.def("is_kernel", &lw::is_kernel);
  m.def("is_for", &lw::is_for);
  m.def("max_var", [](const lw::Program& p) { return to_py(lw::max_var(p)); });
  m.def("count_while", [](const lw::Program& p) { return to_py(lw::count_while(p)); });
  m.def("count_loop", [](const lw::Program& p) { return to_py(lw::count_loop(p)); });
  m.def("nesting_depth", [](const lw::Program& p) { return to_py(lw::nesting_depth(p)); });

  m.def(
      "run",
      [](const lw::Program& p, const std::vector<py::int_>& inputs, const py::object& fuel,
         bool allow_unbounded) {
        lw::Outcome o = lw::run(p, to_nats(inputs), fuel_of(fuel), allow_unbounded);
        py::dict d;
        d["halted"] = o.halted;
        d["steps"] = to_py(o.steps);
        d["state"] = state_dict(o.state);
        return d;
      },
      py::arg("program"), py::arg("inputs") = std::vector<py::int_>{},
      py::arg("fuel") = py::none(), py::arg("allow_unbounded") = false);
  m.def(
      "eval_fn",
      [](const lw::Program& p, const std::vector<py::int_>& inputs,
         const py::object& fuel) -> py::object {
        auto r = lw::eval_fn(p, to_nats(inputs), fuel_of(fuel));
        if (!r) return py::none();
        return to_py(*r);
      },
      py::arg("program"), py::arg("inputs") = std::vector<py::int_>{},
      py::arg("fuel") = py::none());
  m.def(
      "steps",
      [](const lw::Program& p, const std::vector<py::int_>& inputs,
         const py::object& fuel) -> py::object {
        auto r = lw::steps(p, to_nats(inputs), fuel_of(fuel));
        if (!r) return py::none();
        return to_py(*r);
      },
      py::arg("program"), py::arg("inputs") = std::vector<py::int_>{},
      py::arg("fuel") = py::none());

  m.def("desugar", &lw::desugar);
  m.def("for_to_while", &lw::for_to_while);
  m.def("normalize_single_while", &lw::normalize_single_while);

  m.def("pair", [](const py::int_& a, const py::int_& b) {
    return to_py(lw::pair(to_nat(a), to_nat(b)));
  });
  m.def("unpair", [](const py::int_& n) {
    auto [a, b] = lw::unpair(to_nat(n));
    return py::make_tuple(to_py(a), to_py(b));
  });
  m.def("encode", [](const lw::Program& p) { return to_py(lw::encode(p)); });
  m.def("decode", [](const py::int_& n) { return lw::decode(to_nat(n)); });

  m.def("build_universal", &lw::build_universal, py::return_value_policy::reference);
  m.def("build_diagonal", &lw::build_diagonal, py::return_value_policy::reference);
  m.def("specialize", [](const py::int_& e, const py::int_& v) {
    return to_py(lw::specialize(to_nat(e), to_nat(v)));
  });

  m.def("compile_rec", [](const std::string& schema) {
    return lw::compile_recursive(lw::parse_schema(schema));
  });
}
