#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conglab/congruence.hpp"
#include "conglab/curves.hpp"
#include "conglab/families.hpp"
#include "conglab/moduli.hpp"
#include "conglab/verifykit.hpp"

namespace py = pybind11;
using namespace conglab;

namespace {

// rationals cross the boundary as "p/q" strings to stay exact
Rat R(const std::string& s) { return parse_rat(s); }

WeierstrassCurve curve_arg(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return curve_from_json(obj.cast<std::string>());
  auto seq = obj.cast<std::vector<std::string>>();
  if (seq.size() == 2)
    return WeierstrassCurve::short_form(R(seq[0]), R(seq[1]));
  if (seq.size() == 5)
    return WeierstrassCurve(R(seq[0]), R(seq[1]), R(seq[2]), R(seq[3]), R(seq[4]));
  throw std::invalid_argument("curve needs 2 or 5 rational strings");
}

py::dict verdict_dict(const CongruenceVerdict& v) {
  py::dict d;
  switch (v.status) {
    case CongruenceVerdict::Status::Congruent: d["congruent"] = true; break;
    case CongruenceVerdict::Status::NotCongruent: d["congruent"] = false; break;
    case CongruenceVerdict::Status::Inconclusive: d["congruent"] = py::none(); break;
  }
  if (v.witness) {
    py::dict w;
    w["alpha"] = rat_str(v.witness->alpha);
    w["beta"] = rat_str(v.witness->beta);
    if (v.witness->gamma) w["gamma"] = rat_str(*v.witness->gamma);
    if (v.witness->delta) w["delta"] = rat_str(*v.witness->delta);
    d["witness"] = w;
  }
  if (v.obstruction) d["obstruction"] = *v.obstruction;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact N-congruence tests and the z^2 = F_r(u,v) moduli surfaces";

  py::register_exception<Unsupported>(m, "UnsupportedError");
  py::register_exception<ChainPole>(m, "ChainPoleError");
  py::register_exception<NotASquare>(m, "NotASquareError");
  py::register_exception<DegenerateJ>(m, "DegenerateJError");
  py::register_exception<BadParameter>(m, "BadParameterError");

  m.def("invariants", [](const py::object& curve) {
    auto v = invariants(curve_arg(curve));
    py::dict d;
    d["c4"] = rat_str(v.c4);
    d["c6"] = rat_str(v.c6);
    d["disc"] = rat_str(v.disc);
    d["j"] = rat_str(v.j);
    return d;
  });

  m.def("quadratic_twist", [](const py::object& curve, const std::string& d) {
    auto e = quadratic_twist(curve_arg(curve), R(d));
    return std::vector<std::string>{rat_str(e.a1), rat_str(e.a2), rat_str(e.a3),
                                    rat_str(e.a4), rat_str(e.a6)};
  });

  m.def("ap", [](const py::object& curve, long p) {
    return trace_of_frobenius(curve_arg(curve), p);
  });

  m.def("is_square", [](const std::string& x) -> py::object {
    auto r = is_square(R(x));
    if (!r) return py::none();
    return py::str(rat_str(*r));
  });

  m.def("test_congruence",
        [](const py::object& a, const py::object& b, int n, int r) {
          auto ea = curve_arg(a), eb = curve_arg(b);
          CongruenceVerdict v = n == 2    ? test_2_1(ea, eb)
                                : n == 3  ? (r % 3 == 1 ? test_3_1(ea, eb)
                                                        : test_3_2(ea, eb))
                                : n == 4  ? test_4_r(ea, eb, r % 4)
                                : n == 12 ? test_12_r(ea, eb, r)
                                          : throw std::invalid_argument("bad N");
          return verdict_dict(v);
        },
        py::arg("curve_a"), py::arg("curve_b"), py::arg("n") = 12, py::arg("r") = 1);

  m.def("ap_scan", [](const py::object& a, const py::object& b, int n, long bound) {
    auto rep = ap_scan(curve_arg(a), curve_arg(b), n, bound);
    py::dict d;
    d["pass"] = rep.pass;
    d["primes_checked"] = rep.primes_checked;
    if (!rep.pass) d["first_failure"] = rep.first_failure;
    return d;
  });

  m.def("non_isogeny_witness",
        [](const py::object& a, const py::object& b, long bound) -> py::object {
          auto w = non_isogeny_witness(curve_arg(a), curve_arg(b), bound);
          if (!w) return py::none();
          return py::int_(*w);
        },
        py::arg("curve_a"), py::arg("curve_b"), py::arg("bound") = 100);

  m.def("surface_value", [](int r, const std::string& u, const std::string& v) {
    return rat_str(surface_value(r, R(u), R(v)));
  });

  m.def("on_surface", [](int r, const std::string& u, const std::string& v,
                         const std::string& z) {
    return on_surface(r, R(u), R(v), R(z));
  });

  m.def("jpair", [](int r, const std::string& u, const std::string& v,
                    const std::string& z) {
    auto jp = jpair(r, R(u), R(v), R(z));
    return std::pair{rat_str(jp.j1), rat_str(jp.j2)};
  });

  m.def("hecke_membership", [](int r, const std::string& u, const std::string& v) {
    return hecke_membership(r, R(u), R(v));
  });

  m.def("search",
        [](int r, long height, int workers) {
          SearchOptions opt;
          opt.workers = workers;
          py::list out;
          for (const auto& h : search(r, height, opt))
            out.append(search_hit_jsonl(r, h));
          return out;
        },
        py::arg("r"), py::arg("height"), py::arg("workers") = 1);

  m.def("family_pair", [](const std::string& name, const std::string& t) {
    auto [a, b] = name == "intro1211" ? intro_pair() : family_pair(name, R(t));
    auto tolist = [](const WeierstrassCurve& e) {
      return std::vector<std::string>{rat_str(e.a1), rat_str(e.a2), rat_str(e.a3),
                                      rat_str(e.a4), rat_str(e.a6)};
    };
    return std::pair{tolist(a), tolist(b)};
  });

  m.def("resolve_twist", [](const std::string& j, const std::string& jp, int n, int r) {
    auto [a, b] = resolve_twist(R(j), R(jp), n, r);
    auto tolist = [](const WeierstrassCurve& e) {
      return std::vector<std::string>{rat_str(e.a1), rat_str(e.a2), rat_str(e.a3),
                                      rat_str(e.a4), rat_str(e.a6)};
    };
    return std::pair{tolist(a), tolist(b)};
  });

  m.def("verify_klein", &verify_klein_relation);
  m.def("verify_jmap", &verify_jmap_compatibility);
  m.def("verify_surfaces", [] { return verify_surface_relations().ok; });
  m.def("verify_biinvariance", [](int n, int r) {
    auto rep = verify_biinvariance(n, r);
    py::dict d;
    d["ok"] = rep.ok;
    d["group_size"] = rep.group_size;
    if (!rep.ok) d["first_failure"] = rep.first_failure;
    return d;
  });
  m.def("verify_square_class", [](int r, int trials, uint64_t seed) {
    auto rep = verify_square_class_claims(r, trials, seed);
    py::dict d;
    d["ok"] = rep.ok;
    d["trials"] = rep.trials;
    d["failures"] = rep.failures;
    return d;
  }, py::arg("r"), py::arg("trials") = 50, py::arg("seed") = 12);

  m.attr("__version__") = "0.1.0";
}
