#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iet/error.hpp"
#include "iet/induction.hpp"
#include "iet/json_io.hpp"
#include "iet/oracle.hpp"
#include "iet/saf.hpp"

namespace py = pybind11;
using namespace iet;

namespace {

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_python(const py::object& o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

// Python-side handle; pybind11 holders cannot point to const.
struct ContextHandle {
    ContextPtr ptr;
};

std::vector<std::string> coord_strings(const Scalar& s) {
    std::vector<std::string> out;
    for (const auto& c : s.coords()) out.push_back(to_string(c));
    return out;
}

Scalar scalar_from(const ContextPtr& ctx, const py::object& value) {
    if (py::isinstance<Scalar>(value)) return embed(value.cast<Scalar>(), ctx);
    if (py::isinstance<py::str>(value)) {
        auto s = context_express(ctx, parse_quadratic(value.cast<std::string>()));
        if (!s) throw Error(ErrorCode::NotRepresentable, "value is not in the span of the context");
        return *s;
    }
    if (py::isinstance<py::int_>(value)) return Scalar::from_rational(ctx, Rational(value.cast<long>()));
    std::vector<Rational> coords;
    for (const auto& c : value.cast<std::vector<std::string>>()) coords.push_back(parse_rational(c));
    return Scalar(ctx, std::move(coords));
}

std::vector<Scalar> scalars_from(const ContextPtr& ctx, const py::list& values) {
    std::vector<Scalar> out;
    for (const auto& v : values) out.push_back(scalar_from(ctx, py::reinterpret_borrow<py::object>(v)));
    return out;
}

Permutation perm_from_one_based(const std::vector<std::size_t>& perm) {
    Permutation out;
    for (std::size_t p : perm) {
        if (p < 1) throw Error(ErrorCode::InvalidPermutation, "perm is 1-based");
        out.push_back(p - 1);
    }
    return out;
}

std::vector<std::size_t> perm_to_one_based(const Permutation& perm) {
    std::vector<std::size_t> out;
    for (std::size_t p : perm) out.push_back(p + 1);
    return out;
}

}  // namespace

PYBIND11_MODULE(_ietsaf, m) {
    m.doc() = "Exact interval exchange transformations, SAF invariant and G_1 membership";

    py::register_exception<Error>(m, "IetError", PyExc_RuntimeError);

    py::class_<ContextHandle>(m, "Context")
        .def_static("rational", [] { return ContextHandle{BasisContext::rational()}; })
        .def_static("quadratic", [](long d) { return ContextHandle{BasisContext::quadratic(d)}; }, py::arg("d"))
        .def_static("from_json", [](const py::object& o) { return ContextHandle{context_from_json(from_python(o))}; })
        .def_property_readonly("names", [](const ContextHandle& c) { return c.ptr->names(); })
        .def("to_json", [](const ContextHandle& c) { return to_python(context_to_json(*c.ptr)); })
        .def("express",
             [](const ContextHandle& c, const std::string& expr) {
                 return context_express(c.ptr, parse_quadratic(expr));
             })
        .def("adjoin",
             [](const ContextHandle& c, const std::string& expr) {
                 Adjoined a = context_adjoin(c.ptr, parse_quadratic(expr));
                 return py::make_tuple(ContextHandle{a.context}, a.value);
             })
        .def("__eq__", [](const ContextHandle& a, const ContextHandle& b) { return same_context(a.ptr, b.ptr); })
        .def("__len__", [](const ContextHandle& c) { return c.ptr->size(); });

    py::class_<Scalar>(m, "Scalar")
        .def(py::init([](const ContextHandle& ctx, const py::object& value) { return scalar_from(ctx.ptr, value); }),
             py::arg("context"), py::arg("value"))
        .def_property_readonly("coords", &coord_strings)
        .def_property_readonly("context", [](const Scalar& s) { return ContextHandle{s.context()}; })
        .def("sign", [](const Scalar& s) { return static_cast<int>(scalar_sign(s)); })
        .def("__float__", &approximate)
        .def("__add__", [](const Scalar& a, const Scalar& b) { return a + b; })
        .def("__sub__", [](const Scalar& a, const Scalar& b) { return a - b; })
        .def("__neg__", [](const Scalar& a) { return -a; })
        .def("scale", [](const Scalar& a, const std::string& q) { return a * parse_rational(q); })
        .def("__eq__", [](const Scalar& a, const Scalar& b) { return a == b; })
        .def("__str__", &format_scalar)
        .def("__repr__", [](const Scalar& s) { return "Scalar(" + format_scalar(s) + ")"; });

    py::class_<Iet>(m, "Iet")
        .def(py::init([](const ContextHandle& c, const py::list& lengths, const std::vector<std::size_t>& perm,
                         const py::object& left) {
                 const ContextPtr& ctx = c.ptr;
                 Scalar l = left.is_none() ? Scalar::zero(ctx) : scalar_from(ctx, left);
                 return Iet::make(ctx, l, scalars_from(ctx, lengths), perm_from_one_based(perm));
             }),
             py::arg("context"), py::arg("lengths"), py::arg("perm"), py::arg("left") = py::none(),
             "Build an IET; perm is 1-based and says where each source interval lands.")
        .def_static("rotation",
                    [](const ContextHandle& c, const py::object& alpha, const py::object& length) {
                        const ContextPtr& ctx = c.ptr;
                        Scalar len = length.is_none() ? Scalar::from_rational(ctx, 1) : scalar_from(ctx, length);
                        return Iet::rotation(ctx, Scalar::zero(ctx), len, scalar_from(ctx, alpha));
                    },
                    py::arg("context"), py::arg("alpha"), py::arg("length") = py::none())
        .def_static("from_json", [](const std::string& text) { return parse_iet_document(text); })
        .def("to_json", &serialize_iet)
        .def_property_readonly("context", [](const Iet& f) { return ContextHandle{f.context()}; })
        .def_property_readonly("left", &Iet::left)
        .def_property_readonly("length", &Iet::length)
        .def_property_readonly("lengths", &Iet::lengths)
        .def_property_readonly("gammas", &Iet::gammas)
        .def_property_readonly("perm", [](const Iet& f) { return perm_to_one_based(f.perm()); })
        .def_property_readonly("interval_count", &Iet::interval_count)
        .def("__call__", &Iet::apply)
        .def("__eq__", [](const Iet& a, const Iet& b) { return a == b; })
        .def("__matmul__", [](const Iet& f, const Iet& g) { return compose(f, g); });

    py::class_<WedgeElement>(m, "WedgeElement")
        .def_property_readonly("entries",
                               [](const WedgeElement& w) {
                                   py::list out;
                                   for (const auto& e : w.nonzero_entries())
                                       out.append(py::make_tuple(e.i + 1, e.j + 1, to_string(e.value)));
                                   return out;
                               })
        .def("is_zero", &WedgeElement::is_zero)
        .def("to_json", [](const WedgeElement& w) { return to_python(wedge_to_json(w)); })
        .def("__add__", [](const WedgeElement& a, const WedgeElement& b) { return a + b; })
        .def("__neg__", [](const WedgeElement& a) { return -a; })
        .def("__eq__", [](const WedgeElement& a, const WedgeElement& b) { return a == b; });

    m.def("compose", &compose, "f o g, g applied first");
    m.def("inverse", [](const Iet& f) { return inverse(f); });
    m.def("conjugate_affine", &conjugate_affine, py::arg("f"), py::arg("left"), py::arg("length"));
    m.def("order", [](const Iet& f, std::uint64_t cap) { return order(f, cap); }, py::arg("f"),
          py::arg("cap") = 1000000);
    m.def("rank", &rank_of_iet);
    m.def("wedge", &wedge);
    m.def("saf", &saf);
    m.def("saf_3iet_closed_form", &saf_3iet_closed_form, py::arg("lambda1"), py::arg("lambda3"),
          py::arg("x_length"));
    m.def("in_K_of", [](const WedgeElement& w, const Scalar& s) { return in_K_of(w, s); });
    m.def("member_gper", &member_Gper);
    m.def("member_g1",
          [](const Iet& f, bool factor) { return to_python(report_to_json(member_G1(f, factor))); },
          py::arg("f"), py::arg("factor") = false);
    m.def("factor", [](const Iet& f) {
        Factorization fac = factor_through_rotation(f);
        return py::make_tuple(fac.g, fac.h1, fac.h2);
    });
    m.def("rotation_with_saf", [](const Iet& f, const WedgeElement& target) {
        return rotation_with_saf(f.context(), f.left(), f.length(), target);
    });
    m.def(
        "induce",
        [](const Iet& f, const std::string& left, const std::string& right, std::uint64_t cap) {
            InductionResult r = induce(f, parse_quadratic(left), parse_quadratic(right), cap);
            py::dict out = to_python(induction_to_json(r));
            out["map"] = r.induced;
            return out;
        },
        py::arg("f"), py::arg("left"), py::arg("right"), py::arg("cap") = kDefaultInduceCap);
    m.def(
        "keane_check", [](const Iet& f, std::uint64_t depth) { return to_python(keane_to_json(keane_check(f, depth))); },
        py::arg("f"), py::arg("depth") = kDefaultKeaneDepth);
    m.def(
        "find_g1_inducing_subinterval",
        [](const Iet& f, std::uint64_t cap) -> py::object {
            auto y = find_G1_inducing_subinterval(f, cap);
            if (!y) return py::none();
            return py::make_tuple(y->left, y->right, y->induction.induced);
        },
        py::arg("f"), py::arg("cap") = kDefaultInduceCap);
    m.def("to_cells", [](const Iet& f, std::size_t q) { return oracle::to_cells(f, q).map; });
    m.def("set_precision_cap", &set_default_precision_cap);
}
