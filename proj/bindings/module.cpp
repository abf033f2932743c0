#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umahler/minf.hpp"

namespace py = pybind11;
using namespace umahler;

namespace {

py::object int_to_py(const Int& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

QuadSurd as_surd(const py::object& obj) {
    if (py::isinstance<QuadSurd>(obj)) return obj.cast<QuadSurd>();
    if (py::isinstance<py::int_>(obj)) return QuadSurd(Int(py::str(obj).cast<std::string>()));
    if (py::isinstance<py::str>(obj)) return parse_surd(obj.cast<std::string>());
    throw py::type_error("expected a Surd, int or string");
}

py::tuple poly_tuple(const QuadPoly& f) {
    return py::make_tuple(int_to_py(f.a2), int_to_py(f.a1), int_to_py(f.a0));
}

py::dict witness_dict(const MembershipWitness& w, const OrderedBSet& bset) {
    py::dict d;
    d["s"] = int_to_py(w.s);
    d["zeta"] = py::make_tuple(w.zeta_order, to_string(w.zeta));
    py::list factors;
    for (size_t i = 0; i < w.exps.size(); ++i) {
        if (w.exps[i] == 0) continue;
        py::dict f;
        f["base"] = to_string(bset.entries[i].value);
        f["exp"] = int_to_py(w.exps[i]);
        factors.append(f);
    }
    d["factors"] = factors;
    return d;
}

py::dict result_dict(const MinfResult& res, const std::string& input, int digits) {
    py::dict d;
    d["input"] = input;
    d["exact"] = res.value.str();
    d["decimal"] = res.value.decimal(digits);
    d["value"] = py::cast(res.value.value);
    d["j_index"] = res.j_index ? py::object(py::int_(*res.j_index)) : py::none();
    d["bset_size"] =
        res.bset ? py::object(py::int_(res.bset->entries.size())) : py::none();
    if (res.b_j) {
        py::dict bj;
        bj["value"] = py::cast(res.b_j->value);
        bj["minpoly"] = poly_tuple(res.b_j->minpoly);
        bj["mbar"] = res.b_j->mbar.measure.str();
        d["b_j"] = bj;
    } else {
        d["b_j"] = py::none();
    }
    d["witness"] = (res.witness && res.bset) ? py::object(witness_dict(*res.witness, *res.bset))
                                             : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact ultrametric Mahler measures of rational and quadratic numbers";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);

    py::class_<QuadSurd>(m, "Surd")
        .def(py::init([](const py::object& o) { return as_surd(o); }))
        .def("__str__", [](const QuadSurd& x) { return to_string(x); })
        .def("__repr__", [](const QuadSurd& x) { return "Surd('" + to_string(x) + "')"; })
        .def("__add__", [](const QuadSurd& x, const py::object& y) { return x + as_surd(y); })
        .def("__radd__", [](const QuadSurd& x, const py::object& y) { return as_surd(y) + x; })
        .def("__sub__", [](const QuadSurd& x, const py::object& y) { return x - as_surd(y); })
        .def("__rsub__", [](const QuadSurd& x, const py::object& y) { return as_surd(y) - x; })
        .def("__mul__", [](const QuadSurd& x, const py::object& y) { return x * as_surd(y); })
        .def("__rmul__", [](const QuadSurd& x, const py::object& y) { return as_surd(y) * x; })
        .def("__truediv__", [](const QuadSurd& x, const py::object& y) { return x / as_surd(y); })
        .def("__rtruediv__", [](const QuadSurd& x, const py::object& y) { return as_surd(y) / x; })
        .def("__neg__", [](const QuadSurd& x) { return -x; })
        .def("__eq__", [](const QuadSurd& x, const py::object& y) {
            try {
                return x == as_surd(y);
            } catch (const std::exception&) {
                return false;
            }
        })
        .def("__hash__", [](const QuadSurd& x) { return py::hash(py::str(to_string(x))); })
        .def("__pow__", [](const QuadSurd& x, long e) { return x.pow(Int(e)); })
        .def("conjugate", &QuadSurd::conjugate)
        .def("inverse", &QuadSurd::inverse)
        .def_property_readonly("is_rational", &QuadSurd::is_rational)
        .def_property_readonly("degree", &QuadSurd::degree)
        .def_property_readonly("field_k", [](const QuadSurd& x) { return int_to_py(x.field_k()); })
        .def("minpoly", [](const QuadSurd& x) { return poly_tuple(minimal_polynomial(x)); })
        .def("decimal", [](const QuadSurd& x, int digits) { return decimal_expand(x, digits); },
             py::arg("digits") = 27)
        .def("sign", [](const QuadSurd& x) { return sign_of(x); });

    m.def(
        "mahler", [](const py::object& x) { return mahler_surd(as_surd(x)).value; },
        "Mahler measure of a nonzero rational or quadratic number", py::arg("x"));

    m.def(
        "mbar",
        [](const py::object& x) {
            MBarResult r = mbar(as_surd(x));
            py::dict d;
            d["measure"] = py::cast(r.measure.value);
            d["zeta"] = py::make_tuple(r.zeta_order, to_string(r.zeta));
            d["reduced"] = py::cast(r.reduced);
            return d;
        },
        "modified Mahler measure with its root-of-unity witness", py::arg("x"));

    m.def(
        "weil_height",
        [](const py::object& x) {
            HeightValue h = weil_height(as_surd(x));
            return py::make_tuple(h.measure.value, h.degree);
        },
        "Weil height as (measure, degree) with H = measure^(1/degree)", py::arg("x"));

    m.def(
        "minf",
        [](const py::object& x, long guard, int digits) {
            QuadSurd alpha = as_surd(x);
            MinfOptions opt;
            opt.enumeration.guard = guard;
            return result_dict(minf(alpha, opt), to_string(alpha), digits);
        },
        "ultrametric Mahler measure via the ordered B-set scan", py::arg("x"),
        py::arg("guard") = 10000, py::arg("digits") = 27);

    m.def(
        "minf_rational",
        [](const py::object& x, bool with_witness, int digits) {
            QuadSurd v = as_surd(x);
            if (!v.is_rational()) throw domain_error("minf_rational expects a rational");
            return result_dict(minf_rational(v.as_rational(), with_witness),
                               rat_to_string(v.as_rational()), digits);
        },
        "largest-prime fast path for rational inputs", py::arg("x"),
        py::arg("with_witness") = false, py::arg("digits") = 27);

    m.def(
        "bset",
        [](const py::object& x, long guard) {
            EnumOptions opt;
            opt.guard = guard;
            OrderedBSet bset = build_ordered_bset(as_surd(x), opt);
            py::list out;
            for (const BSetEntry& e : bset.entries) {
                py::dict d;
                d["value"] = py::cast(e.value);
                d["minpoly"] = poly_tuple(e.minpoly);
                d["mbar"] = py::cast(e.mbar.measure.value);
                d["degree"] = e.degree;
                out.append(d);
            }
            return out;
        },
        "ordered B-set entries (nondecreasing modified Mahler measure)", py::arg("x"),
        py::arg("guard") = 10000);

    m.def(
        "b2list",
        [](long A, long B, long C, long k, int digits) {
            return b2list_compat(A, B, C, k, digits);
        },
        "text block of the quadratic enumeration, one line per kept (a, b, c)", py::arg("A"),
        py::arg("B"), py::arg("C"), py::arg("k"), py::arg("digits") = 27);

    m.def(
        "fundamental_unit", [](long k) { return fundamental_unit(Int(k)); },
        "fundamental unit > 1 of the ring of integers of Q(sqrt(k)), k > 0 squarefree",
        py::arg("k"));

    m.def(
        "relations",
        [](const py::list& gens_in) {
            std::vector<QuadSurd> gens;
            for (const auto& g : gens_in) gens.push_back(as_surd(py::reinterpret_borrow<py::object>(g)));
            RelationLattice rl = relation_lattice(gens);
            py::list rows;
            for (const IntVec& row : rl.basis) {
                py::list r;
                for (const Int& v : row) r.append(int_to_py(v));
                rows.append(r);
            }
            return rows;
        },
        "HNF basis of the multiplicative relation lattice mod torsion", py::arg("generators"));

    m.attr("__version__") = "0.1.0";
}
