#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lpds/discharge.hpp"
#include "lpds/error.hpp"
#include "lpds/lemmas.hpp"
#include "lpds/pattern.hpp"
#include "lpds/render.hpp"
#include "lpds/search.hpp"
#include "lpds/verify.hpp"

namespace py = pybind11;
using namespace lpds;

namespace {

using Pair = std::pair<std::int64_t, std::int64_t>;

Point point(const Pair& p) { return {p.first, p.second}; }
Pair pair(const Point& p) { return {p.x, p.y}; }

py::object fraction(const Rational& q) {
  static const py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.numerator(), q.denominator());
}

LatticeBasis basis(const Pair& u, const Pair& v) { return {point(u), point(v)}; }

py::tuple basis_tuple(const LatticeBasis& b) { return py::make_tuple(pair(b.u), pair(b.v)); }

std::vector<Point> points(const std::vector<Pair>& v) {
  std::vector<Point> out;
  for (const auto& p : v) out.push_back(point(p));
  return out;
}

std::vector<Pair> pairs(const std::vector<Point>& v) {
  std::vector<Pair> out;
  for (const auto& p : v) out.push_back(pair(p));
  return out;
}

py::object source(const PatternOrWindow& s) {
  if (const auto* p = std::get_if<PeriodicPattern>(&s)) return py::cast(*p);
  return py::cast(std::get<FiniteWindow>(s));
}

py::list certificates(const std::vector<ViolationCertificate>& cs) {
  py::list out;
  for (const auto& c : cs) {
    py::dict d;
    d["kind"] = to_string(c.kind);
    d["witnesses"] = pairs(c.witnesses);
    d["detail"] = c.detail;
    out.append(d);
  }
  return out;
}

py::dict verdict(const LemmaVerdict& v) {
  py::dict d;
  d["target"] = to_string(v.target);
  d["outcome"] = to_string(v.outcome);
  d["holds"] = v.holds();
  d["configs"] = v.configs_examined;
  d["elapsed_ms"] = v.elapsed_ms;
  d["detail"] = v.detail;
  d["witness"] = v.witness ? py::cast(*v.witness) : py::none();
  return d;
}

CheckOptions options(std::uint64_t budget, int workers) {
  CheckOptions o;
  o.node_budget = budget;
  o.workers = workers;
  return o;
}

}  // namespace

PYBIND11_MODULE(_lpds, m) {
  m.doc() = "Locating paired-dominating sets in the king grid";
  py::register_exception<Error>(m, "LpdsError", PyExc_ValueError);

  py::class_<PeriodicPattern>(m, "Pattern")
      .def(py::init([](const Pair& u, const Pair& v, const std::vector<Pair>& base) {
             return PeriodicPattern(basis(u, v), points(base));
           }),
           py::arg("u"), py::arg("v"), py::arg("base"))
      .def_static("parse", &parse_pattern, py::arg("text"))
      .def_property_readonly("basis", [](const PeriodicPattern& p) { return basis_tuple(p.basis()); })
      .def_property_readonly("base", [](const PeriodicPattern& p) { return pairs(p.base()); })
      .def("__len__", &PeriodicPattern::size)
      .def("__contains__", [](const PeriodicPattern& p, const Pair& q) { return p.contains(point(q)); })
      .def("__eq__", [](const PeriodicPattern& a, const PeriodicPattern& b) { return a == b; })
      .def("__str__", [](const PeriodicPattern& p) { return serialize(p); })
      .def("__repr__", [](const PeriodicPattern& p) { return "<Pattern " + std::to_string(p.size()) + "/" +
                                                             std::to_string(p.cell_count()) + ">"; });

  py::class_<FiniteWindow>(m, "Window")
      .def_static("parse", &parse_window, py::arg("text"))
      .def_property_readonly("bounds", [](const FiniteWindow& w) {
        return py::make_tuple(w.x0(), w.x1(), w.y0(), w.y1());
      })
      .def("__contains__", [](const FiniteWindow& w, const Pair& q) { return w.contains(point(q)); })
      .def("__eq__", [](const FiniteWindow& a, const FiniteWindow& b) { return a == b; })
      .def("__str__", [](const FiniteWindow& w) { return serialize(w); });

  m.def("parse", [](const std::string& text) { return source(parse(text)); }, py::arg("text"));

  m.def(
      "catalog",
      [](const std::string& name, const std::optional<std::string>& x, const std::optional<std::string>& window) {
        CatalogName n;
        if (name == "L1") n = CatalogName::L1;
        else if (name == "L2") n = CatalogName::L2;
        else if (name == "LX") n = CatalogName::LX;
        else throw Error("unknown catalog pattern: " + name);
        std::optional<XDescriptor> xd;
        if (x) xd = parse_x(*x);
        std::optional<WindowBounds> b;
        if (window) b = parse_bounds(*window);
        return source(catalog(n, xd, b));
      },
      py::arg("name"), py::arg("x") = py::none(), py::arg("window") = py::none());

  m.def("density", [](const PeriodicPattern& p) { return fraction(density(p)); }, py::arg("pattern"));
  m.def(
      "window_density",
      [](const PeriodicPattern& p, std::int64_t k, const Pair& center) {
        return fraction(window_density(p, point(center), k));
      },
      py::arg("pattern"), py::arg("k"), py::arg("center") = Pair{0, 0});
  m.def("canonicalize", [](const PeriodicPattern& p) { return canonicalize(p); }, py::arg("pattern"));

  m.def(
      "verify",
      [](const PeriodicPattern& p, bool allow_lift) {
        const VerificationReport r = verify_lpds(p, {.allow_lift = allow_lift});
        py::dict d;
        d["valid"] = r.valid();
        d["dominating"] = r.dominating;
        d["locating"] = r.locating;
        d["paired"] = r.paired;
        d["density"] = fraction(r.density);
        d["lifted_basis"] = r.lifted_basis ? py::object(basis_tuple(*r.lifted_basis)) : py::none();
        d["violations"] = certificates(r.violations);
        if (r.classification) {
          d["d_s1"] = fraction(r.classification->d_s1());
          d["d_s2"] = fraction(r.classification->d_s2());
          d["t3_not_interval"] = r.classification->count_t3_not_interval();
        }
        py::list matching;
        if (r.matching) {
          const auto& base = r.matching->pattern().base();
          for (std::size_t i = 0; i < base.size(); ++i)
            if (i < r.matching->partners()[i].residue)
              matching.append(py::make_tuple(pair(base[i]), pair(r.matching->partner_point(i))));
        }
        d["matching"] = matching;
        return d;
      },
      py::arg("pattern"), py::arg("allow_lift") = true);

  m.def(
      "verify_window",
      [](const FiniteWindow& w) {
        const WindowReport r = verify_window(w);
        py::dict d;
        d["dominating"] = r.dominating;
        d["locating"] = r.locating;
        d["paired"] = r.pairing == PairingStatus::paired;
        d["interior_cells"] = r.interior_cells;
        d["violations"] = certificates(r.violations);
        return d;
      },
      py::arg("window"));

  m.def(
      "discharge",
      [](const PeriodicPattern& p, int theorem) {
        const VerificationReport r = verify_lpds(p);
        if (!r.valid()) throw Error("discharge needs a verified LPDS");
        py::dict d;
        if (theorem == 1) {
          const auto t = charge_thm1(*r.classification);
          d["ok"] = t.ok();
          d["average"] = fraction(t.ch0.average());
          d["min"] = fraction(t.ch1.min());
          d["findings"] = t.findings;
        } else if (theorem == 2) {
          const auto t = charge_thm2(*r.classification);
          d["ok"] = t.ok();
          d["average"] = fraction(t.ch2.average());
          d["min"] = fraction(t.ch5.min());
          d["findings"] = t.findings;
        } else {
          throw Error("theorem must be 1 or 2");
        }
        return d;
      },
      py::arg("pattern"), py::arg("theorem"));

  m.def(
      "search",
      [](const std::string& lattice, std::optional<int> max_k, std::optional<std::uint64_t> budget, int workers,
         bool symmetry) {
        SearchConfig c;
        c.basis = parse_basis(lattice);
        c.max_cardinality = max_k;
        c.node_budget = budget;
        c.workers = workers;
        c.symmetry_reduction = symmetry;
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = minimum_lpds(c);
        }
        py::dict d;
        d["status"] = to_string(r.status);
        d["min_cardinality"] = r.min_cardinality ? py::cast(*r.min_cardinality) : py::none();
        d["min_density"] = r.min_density ? fraction(*r.min_density) : py::none();
        d["optima"] = r.optima;
        d["nodes"] = r.nodes;
        d["reason"] = r.reason;
        return d;
      },
      py::arg("lattice"), py::arg("max_k") = py::none(), py::arg("budget") = py::none(), py::arg("workers") = 1,
      py::arg("symmetry") = true);

  m.def(
      "check_lemma1",
      [](int part, std::uint64_t budget, int workers) {
        if (part < 1 || part > 3) throw Error("part must be 1, 2 or 3");
        py::gil_scoped_release release;
        const LemmaVerdict v = check_lemma1(part, options(budget, workers));
        py::gil_scoped_acquire acquire;
        return verdict(v);
      },
      py::arg("part"), py::arg("budget") = CheckOptions{}.node_budget, py::arg("workers") = 1);
  m.def("check_r_claims", [] {
    py::list out;
    for (const auto& v : check_r_claims()) out.append(verdict(v));
    return out;
  });
  m.def(
      "adjacent_sum",
      [](std::uint64_t budget, int workers) {
        py::gil_scoped_release release;
        const LemmaVerdict v = check_adjacent_sum(options(budget, workers));
        py::gil_scoped_acquire acquire;
        return verdict(v);
      },
      py::arg("budget") = CheckOptions{}.node_budget, py::arg("workers") = 1);
  m.def(
      "check_all",
      [](std::uint64_t budget, int workers) {
        std::vector<LemmaVerdict> vs;
        {
          py::gil_scoped_release release;
          vs = check_all(options(budget, workers));
        }
        py::list out;
        for (const auto& v : vs) out.append(verdict(v));
        return out;
      },
      py::arg("budget") = CheckOptions{}.node_budget, py::arg("workers") = 1);

  m.def(
      "render_ascii",
      [](const py::object& s, const std::string& window) {
        const WindowBounds b = parse_bounds(window);
        if (py::isinstance<PeriodicPattern>(s)) return render_ascii(s.cast<PeriodicPattern>(), b);
        return render_ascii(s.cast<FiniteWindow>(), b);
      },
      py::arg("source"), py::arg("window"));
}
