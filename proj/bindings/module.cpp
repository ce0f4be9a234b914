// Python bindings for the main operations. Structured results cross the
// boundary as JSON strings; the package wrapper decodes them.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tameblocks/atlas.hpp"
#include "tameblocks/classifier.hpp"
#include "tameblocks/error.hpp"
#include "tameblocks/modrep2.hpp"
#include "tameblocks/twolocal.hpp"

namespace py = pybind11;
using namespace tameblocks;

namespace {

struct PyGroup {
  std::shared_ptr<permgrp::PermGroup> g;

  uint64_t order() const { return g->order(); }
  uint32_t degree() const { return g->degree(); }
  std::string name() const { return g->name(); }
  std::vector<std::vector<uint32_t>> generators() const {
    std::vector<std::vector<uint32_t>> out;
    for (auto& p : g->generators()) out.push_back(p.images());
    return out;
  }
  std::string to_json() const { return g->canonical_json(); }
  std::string fingerprint_json() const {
    return permgrp::fingerprint(*g).to_json().dump();
  }
  uint64_t class_count() const { return g->conjugacy_classes(1'000'000).size(); }
};

PyGroup build_group(const std::string& recipe, uint64_t seed) {
  auto built = atlas::build(recipe, seed);
  return PyGroup{std::make_shared<permgrp::PermGroup>(std::move(built.group))};
}

PyGroup group_from_json(const std::string& text) {
  return PyGroup{std::make_shared<permgrp::PermGroup>(
      permgrp::PermGroup::from_json(nlohmann::json::parse(text)))};
}

PyGroup group_from_generators(const std::vector<std::vector<uint32_t>>& gens, uint64_t seed) {
  std::vector<perm::Perm> ps;
  for (auto& v : gens) ps.emplace_back(v);
  return PyGroup{std::make_shared<permgrp::PermGroup>(std::move(ps), seed)};
}

PyGroup py_sylow2(const PyGroup& g, uint64_t seed) {
  auto P = permgrp::sylow2(*g.g, seed);
  return PyGroup{std::make_shared<permgrp::PermGroup>(std::move(P.group))};
}

std::string py_inspect(const PyGroup& g, uint64_t seed) {
  auto P = permgrp::sylow2(*g.g, seed);
  auto fr = twolocal::semidihedral_frame(P.group);
  return twolocal::two_local_fragment(*g.g, fr).dump();
}

std::string py_classify(const PyGroup& g, uint64_t seed) {
  return classifier::classify(*g.g, seed).to_json().dump();
}

std::string py_paper_suite(const std::string& tier, uint64_t seed) {
  auto t = tier == "extended" ? classifier::Tier::Extended : classifier::Tier::Core;
  auto ledger = classifier::paper_suite(t, seed);
  bool ok = true;
  for (auto& e : ledger) ok = ok && e.pass;
  nlohmann::json j;
  j["tier"] = tier;
  j["entries"] = classifier::ledger_to_json(ledger);
  j["status"] = ok ? "pass" : "fail";
  return j.dump();
}

std::string py_module_lab(const PyGroup& g, const PyGroup& h, const std::string& op,
                          uint64_t seed) {
  return classifier::module_lab(*g.g, *h.g, op, seed).dump();
}

std::vector<std::vector<int64_t>> py_cartan(uint32_t n, const std::string& side) {
  auto s = side == "su" ? blockinv::CartanSide::SU : blockinv::CartanSide::SL;
  check(side == "su" || side == "sl", ErrorKind::InvalidInput, "side must be sl or su");
  auto c = blockinv::cartan_bar(n, s);
  return {{c.at(0, 0), c.at(0, 1)}, {c.at(1, 0), c.at(1, 1)}};
}

std::string py_distinguish(uint32_t n) { return blockinv::distinguish(n).to_json().dump(); }

std::string py_canonical_rep(const std::string& tag, uint32_t n) {
  for (auto t : {atlas::ClassTag::BB, atlas::ClassTag::BA1, atlas::ClassTag::BA2,
                 atlas::ClassTag::AB, atlas::ClassTag::AA1, atlas::ClassTag::AA2}) {
    if (tag == atlas::to_string(t)) return atlas::canonical_rep(t, n).format();
  }
  fail(ErrorKind::InvalidInput, "unknown class tag " + tag);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "principal 2-blocks with semidihedral Sylow 2-subgroups: construction, "
            "verification and classification";

  py::register_exception<Error>(m, "TameblocksError");

  py::class_<PyGroup>(m, "Group")
      .def_property_readonly("order", &PyGroup::order)
      .def_property_readonly("degree", &PyGroup::degree)
      .def_property_readonly("name", &PyGroup::name)
      .def_property_readonly("generators", &PyGroup::generators)
      .def("to_json", &PyGroup::to_json)
      .def("fingerprint_json", &PyGroup::fingerprint_json)
      .def("class_count", &PyGroup::class_count)
      .def_static("from_json", &group_from_json, py::arg("text"))
      .def_static("from_generators", &group_from_generators, py::arg("generators"),
                  py::arg("seed") = 1);

  m.def("build", &build_group, py::arg("recipe"), py::arg("seed") = 1);
  m.def("sylow2", &py_sylow2, py::arg("group"), py::arg("seed") = 1);
  m.def("inspect_json", &py_inspect, py::arg("group"), py::arg("seed") = 1);
  m.def("classify_json", &py_classify, py::arg("group"), py::arg("seed") = 1);
  m.def("paper_suite_json", &py_paper_suite, py::arg("tier") = "core", py::arg("seed") = 20260809);
  m.def("module_lab_json", &py_module_lab, py::arg("group"), py::arg("subgroup"), py::arg("op"),
        py::arg("seed") = 1);
  m.def("canonical_rep", &py_canonical_rep, py::arg("class_tag"), py::arg("n"));

  m.def("two_part", &blockinv::two_part, py::arg("m"));
  m.def("olsson_ell", &blockinv::olsson_ell, py::arg("pattern"));
  m.def("cartan_bar", &py_cartan, py::arg("n"), py::arg("side"));
  m.def("distinguish_json", &py_distinguish, py::arg("n"));
}
