// Python bindings for the main operations. Elements and sets are passed as
// the C++ objects; text forms round-trip through str() and parse_*.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tfg/acceptance.hpp"
#include "tfg/canon.hpp"
#include "tfg/errors.hpp"
#include "tfg/lef.hpp"
#include "tfg/sampling.hpp"

namespace py = pybind11;
using namespace tfg;

namespace {

PointRep base(SystemRef const& s, std::string const& which) {
  if (which == "primary") return s->base_point(Anchor::primary);
  if (which == "alternate") return s->base_point(Anchor::alternate);
  throw PreconditionError("point must be 'primary' or 'alternate'");
}

}  // namespace

PYBIND11_MODULE(pytfg, m) {
  m.doc() = "Topological full groups of Cantor minimal systems";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<VerificationError>(m, "VerificationError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<System, std::shared_ptr<System>>(m, "System")
      .def_property_readonly("name", &System::name)
      .def_property_readonly("is_odometer",
                             [](System const& s) { return s.kind() == SystemKind::odometer; })
      .def("config", [](System const& s) { return emit_system_config(s.config()); })
      .def("language", [](System const& s, std::int64_t n) { return language(s, n); });

  m.def("builtin_system", [](std::string const& name) {
    return std::const_pointer_cast<System>(builtin_system(name));
  });
  m.def("define_system", [](std::string const& config_text) {
    return std::const_pointer_cast<System>(make_system(parse_system_config(config_text)));
  });

  py::class_<ClopenSet>(m, "ClopenSet")
      .def("__str__", &ClopenSet::to_string)
      .def("__repr__", [](ClopenSet const& a) { return "ClopenSet('" + a.to_string() + "')"; })
      .def("__eq__", [](ClopenSet const& a, ClopenSet const& b) { return equals(a, b); })
      .def("__or__", &unite)
      .def("__and__", &intersect)
      .def("__sub__", &difference)
      .def("__invert__", &complement)
      .def("translate", &translate)
      .def("is_empty", &ClopenSet::is_empty)
      .def("issubset", [](ClopenSet const& a, ClopenSet const& b) { return subset(a, b); });

  m.def("parse_clopen", [](std::shared_ptr<System> const& s, std::string const& text) {
    return parse_clopen(s, text);
  });

  py::class_<GroupElement>(m, "Element")
      .def("__str__", &GroupElement::to_string)
      .def("__eq__", [](GroupElement const& a, GroupElement const& b) { return equals(a, b); })
      .def("__mul__", &compose)
      .def("inverse", &invert)
      .def("__pow__", &power)
      .def("support", &support)
      .def("bound", &cocycle_bound)
      .def("hash", &element_hash)
      .def("order", [](GroupElement const& s, std::int64_t bound) -> std::optional<std::int64_t> {
        return order(s, bound).order;
      }, py::arg("bound") = 64);

  m.def("parse_element", [](std::shared_ptr<System> const& s, std::string const& text) {
    return parse_element(text, s);
  });
  m.def("identity", [](std::shared_ptr<System> const& s) { return identity(s); });
  m.def("t_power", [](std::shared_ptr<System> const& s, Power n) { return t_power(s, n); });
  m.def("induced", &induced);
  m.def("three_cycle", [](std::shared_ptr<System> const& s) { return three_cycle(s); });
  m.def("random_element", [](std::shared_ptr<System> const& s, std::uint64_t seed) {
    Rng rng(seed);
    return random_element(s, rng);
  });

  py::class_<Factorization>(m, "Factorization")
      .def_readonly("level", &Factorization::level)
      .def_readonly("n0", &Factorization::n0)
      .def_readonly("p", &Factorization::p_element)
      .def_readonly("r", &Factorization::r_element)
      .def_property_readonly("perms", [](Factorization const& f) { return f.p.perms; })
      .def_property_readonly("up", [](Factorization const& f) { return f.r.up; })
      .def_property_readonly("down", [](Factorization const& f) { return f.r.down; })
      .def("report", &Factorization::report);

  m.def("factorize", [](GroupElement const& q, std::optional<std::int64_t> level) {
    auto const& seq = anchored_sequence(q.system()->base_point(Anchor::primary));
    return level ? factorize(q, seq, *level) : factorize(q, seq);
  }, py::arg("q"), py::arg("level") = py::none());
  m.def("index", [](GroupElement const& q) { return index(q); });
  m.def("in_stabilizer", [](GroupElement const& q, std::string const& which) {
    return in_stabilizer(q, base(q.system(), which));
  }, py::arg("q"), py::arg("point") = "primary");
  m.def("kernel_decompose", [](GroupElement const& q) {
    auto s = q.system();
    auto d = kernel_decompose(q, base(s, "primary"), base(s, "alternate"));
    return py::make_tuple(d.p1, d.p2, d.log);
  });
  m.def("separation_witness", [](ClopenSet const& o, std::string const& which) {
    auto w = separation_witness(o, base(o.system(), which));
    return py::make_tuple(w.g, w.s, w.t);
  }, py::arg("o"), py::arg("point") = "primary");

  m.def("lef_witness", [](std::vector<GroupElement> const& f) {
    auto w = lef_map(f);
    auto r = verify_lef(w);
    return py::make_tuple(w.to_text(), r.pass);
  });
  m.def("verify_witness", [](std::string const& text, std::vector<GroupElement> const& known) {
    return verify_lef(parse_witness(text, known)).pass;
  });
  m.def("odometer_structure", [](std::int64_t n, std::uint64_t seed) {
    auto r = odometer_structure(builtin_system("odometer2"), n, seed);
    return py::make_tuple(r.all(), r.text());
  }, py::arg("n"), py::arg("seed") = 1);

  m.def("run_criterion", [](int id, std::uint64_t seed) {
    auto r = run_criterion(id, seed);
    return py::make_tuple(r.pass, r.line());
  }, py::arg("id"), py::arg("seed") = 1);
}
