#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdgl/bounds.hpp"
#include "fdgl/classify.hpp"
#include "fdgl/errors.hpp"
#include "fdgl/fdg.hpp"
#include "fdgl/numtheory.hpp"
#include "fdgl/prng.hpp"

namespace py = pybind11;
using namespace fdgl;

namespace {

py::object fraction(const Rational& r) {
    auto Fraction = py::module_::import("fractions").attr("Fraction");
    auto Int = py::module_::import("builtins").attr("int");
    return Fraction(Int(numerator(r).str()), Int(denominator(r).str()));
}

py::tuple interval(const RationalInterval& I) { return py::make_tuple(fraction(I.lo), fraction(I.hi)); }

py::dict cycles_dict(const CycleStructure& c) {
    py::dict d;
    for (auto& [len, n] : c.counts) d[py::int_(len)] = n;
    return d;
}

py::dict eval_dict(const std::string& text) {
    auto spec = parse_spec(text);
    auto f = evaluate(spec);
    py::dict d;
    d["spec"] = spec.str();
    d["order"] = f.size();
    d["bijective"] = f.bijective();
    if (f.bijective()) {
        auto c = f.cycles();
        d["cycles"] = cycles_dict(c);
        d["Lambda"] = c.Lambda();
        d["lambda"] = fraction(c.lambda());
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "lambda values of finite dynamical groups";

    static py::exception<CapacityError> capacity(m, "CapacityError");
    static py::exception<NotPeriodicError> not_periodic(m, "NotPeriodicError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CapacityError& e) {
            py::set_error(capacity, e.what());
        } catch (const NotPeriodicError& e) {
            py::set_error(not_periodic, e.what());
        }
    });

    m.def("factor", [](u64 n) {
        std::vector<std::pair<u64, unsigned>> out;
        for (auto& pp : factor(n)) out.push_back({pp.prime, pp.exponent});
        return out;
    });
    m.def("euler_phi", &euler_phi);
    m.def("primitive_roots", &primitive_roots, py::arg("p"), py::arg("m") = 1);

    m.def("poly_is_irreducible", [](const std::string& P, u64 p) { return is_irreducible(parse_poly(P, p)); });
    m.def("poly_is_primitive", [](const std::string& P, u64 p) { return is_primitive(parse_poly(P, p)); });
    m.def("poly_order", [](const std::string& P, u64 p) { return poly_order(parse_poly(P, p)); });
    m.def("first_primitive", [](u64 p, unsigned d) -> std::optional<std::string> {
        auto P = first_primitive(p, d);
        if (!P) return std::nullopt;
        return P->str();
    });

    m.def("evaluate", &eval_dict, py::arg("spec"), "cycle summary of an FDG spec");
    m.def("lambda_group", [](const std::string& G) { return fraction(lambda_group(parse_group(G))); });
    m.def("lambda_aff_group", [](const std::string& G, bool transversal) {
        return fraction(lambda_aff_group(parse_group(G), transversal));
    }, py::arg("group"), py::arg("transversal") = false);
    m.def("l_group", [](const std::string& G) { return fraction(l_group(parse_group(G))); });

    m.def("classify_json", [](const std::string& rho) { return to_json(classify_rho(parse_rho(rho))); });
    m.def("expand", [](const std::string& rho, u64 max_order) {
        std::vector<std::string> out;
        for (auto& d : classify_rho(parse_rho(rho)).descriptors)
            for (auto& s : expand(d, max_order)) out.push_back(s.str());
        return out;
    });

    m.def("rho0", [] { return interval(rho0()); });
    m.def("rho1", [] { return interval(rho1()); });
    m.def("certified_decimal", [](py::object lo, py::object hi, unsigned k) {
        auto conv = [](py::object x) { return parse_rational(py::str(x)); };
        return certified_decimal(RationalInterval(conv(lo), conv(hi)), k);
    });

    m.def("lcg_stream", [](u64 mod, u64 a, u64 c, u64 seed, u64 count) { return stream(lcg(mod, a, c, seed), count); });
    m.def("lcg_certify", [](u64 mod, u64 a, u64 c) { return certify_full_period(lcg(mod, a, c, 0)); });
    m.def("vec_stream", [](u64 p, const std::string& P, const std::vector<u64>& seed, u64 count) {
        return stream(vecgen(p, parse_poly(P, p), seed), count);
    });
    m.def("measured_period_lcg", [](u64 mod, u64 a, u64 c, u64 seed, u64 cap) {
        return measured_period(lcg(mod, a, c, seed), cap);
    });
    m.def("measured_period_vec", [](u64 p, const std::string& P, const std::vector<u64>& seed, u64 cap) {
        return measured_period(vecgen(p, parse_poly(P, p), seed), cap);
    });
}
