#include "groupoidrep/bisections.hpp"
#include "groupoidrep/cli.hpp"
#include "groupoidrep/convolution.hpp"
#include "groupoidrep/io.hpp"
#include "groupoidrep/morita.hpp"
#include "groupoidrep/peter_weyl.hpp"
#include "groupoidrep/rep_ring.hpp"
#include "groupoidrep/representation.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace groupoidrep;

namespace {

Groupoid groupoid_from_text(const std::string& text) { return groupoid_from_json(parse_document(text)).groupoid; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite groupoids, their unitary representations and the convolution category.";

    py::register_exception<StructuralError>(m, "StructuralError");
    py::register_exception<ValidationError>(m, "ValidationError");
    py::register_exception<PreconditionError>(m, "PreconditionError");
    py::register_exception<NumericalError>(m, "NumericalError");
    py::register_exception<InputError>(m, "InputError");

    py::class_<Report>(m, "Report")
        .def_readonly("ok", &Report::ok)
        .def_readonly("what", &Report::what)
        .def_readonly("witness", &Report::witness)
        .def_readonly("residual", &Report::residual)
        .def("__bool__", [](const Report& r) { return r.ok; })
        .def("__repr__", [](const Report& r) { return "Report(ok=" + std::string(r.ok ? "True" : "False") + ")"; });

    py::class_<FiniteGroup>(m, "FiniteGroup")
        .def_static("from_table", &FiniteGroup::from_table, py::arg("table"), py::arg("name") = "")
        .def_readonly("order", &FiniteGroup::order)
        .def_readonly("identity", &FiniteGroup::identity)
        .def_readonly("inv", &FiniteGroup::inv)
        .def_readonly("name", &FiniteGroup::name)
        .def("__call__", &FiniteGroup::operator());
    m.def("cyclic_group", &cyclic_group);
    m.def("symmetric_group", &symmetric_group);
    m.def("dihedral_group", &dihedral_group);
    m.def("quaternion_group", &quaternion_group);
    m.def("direct_product", &direct_product);
    m.def("validate_group", &validate_group);
    m.def("find_isomorphism", &find_isomorphism);

    py::class_<Groupoid>(m, "Groupoid")
        .def(py::init<int, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>(),
             py::arg("objects"), py::arg("src"), py::arg("tgt"), py::arg("comp"), py::arg("inv"), py::arg("unit"))
        .def_static("from_json", &groupoid_from_text, py::arg("text"))
        .def("to_json", [](const Groupoid& g) { return to_json(g).dump(); })
        .def_property_readonly("num_objects", &Groupoid::num_objects)
        .def_property_readonly("num_arrows", &Groupoid::num_arrows)
        .def("src", &Groupoid::src)
        .def("tgt", &Groupoid::tgt)
        .def("inv", &Groupoid::inv)
        .def("unit", &Groupoid::unit)
        .def("comp", [](const Groupoid& g, int a, int b) -> std::optional<int> {
            int c = g.comp(a, b);
            if (c == kUndefined) return std::nullopt;
            return c;
        })
        .def("hom", &Groupoid::hom, py::arg("n"), py::arg("m"));
    m.def("make_pair", &make_pair);
    m.def("make_action", &make_action, py::arg("group"), py::arg("points"), py::arg("act"));
    m.def("group_as_groupoid", &group_as_groupoid);
    m.def("make_gauge", &make_gauge, py::arg("points"), py::arg("group"), py::arg("act"));
    m.def("trivial_bundle_action", &trivial_bundle_action);
    m.def("make_bundle_of_groups", &make_bundle_of_groups);
    m.def("validate_groupoid", &validate_groupoid);
    m.def("orbits", &orbits);
    m.def("isotropy_as_group", &isotropy_as_group);
    m.def("orbit_relation", &orbit_relation);

    py::class_<HaarSystem>(m, "HaarSystem")
        .def(py::init<std::vector<double>>(), py::arg("weights"))
        .def_readwrite("weights", &HaarSystem::weights);
    m.def("counting_haar", &counting_haar);
    m.def("source_haar", &source_haar);
    m.def("validate_haar", &validate_haar, py::arg("groupoid"), py::arg("haar"), py::arg("tol") = kHaarTol);
    m.def("is_orbit_constant", &is_orbit_constant, py::arg("groupoid"), py::arg("haar"), py::arg("tol") = kHaarTol);

    py::class_<HilbertField>(m, "HilbertField")
        .def(py::init([](std::vector<int> dims) { return HilbertField{std::move(dims)}; }))
        .def_readonly("dims", &HilbertField::dims)
        .def_readonly("conjugate", &HilbertField::conjugate);

    py::class_<Representation>(m, "Representation")
        .def(py::init([](std::vector<int> dims, std::vector<Matrix> mats, bool unitary) {
                 return Representation{HilbertField{std::move(dims)}, std::move(mats), unitary};
             }),
             py::arg("dims"), py::arg("mats"), py::arg("unitary") = false)
        .def_property_readonly("dims", [](const Representation& r) { return r.field.dims; })
        .def_readonly("mats", &Representation::mats)
        .def_readonly("unitary", &Representation::unitary)
        .def("__call__", &Representation::operator());
    m.def("validate_rep", &validate_rep, py::arg("groupoid"), py::arg("rep"), py::arg("tol") = kRepTol);
    m.def("trivial_rep", &trivial_rep);
    m.def("left_regular", &left_regular);
    m.def("right_regular", &right_regular);
    m.def("conjugation_rep", &conjugation_rep);
    m.def("dsum_rep", &dsum_rep);
    m.def("tensor_rep", &tensor_rep);
    m.def("conj_rep", &conj_rep);
    m.def("unitarize", [](const Groupoid& g, const HaarSystem& w, const Representation& r) { return unitarize(g, w, r).rep; });
    m.def("decompose",
          [](const Groupoid& g, const Representation& r, std::uint64_t seed) {
              std::vector<Representation> out;
              for (auto& s : decompose(g, r, seed)) out.push_back(std::move(s.rep));
              return out;
          },
          py::arg("groupoid"), py::arg("rep"), py::arg("seed") = 0);
    m.def("is_M_irreducible", &is_M_irreducible);
    m.def("intertwiner_dim", [](const Groupoid& g, const Representation& a, const Representation& b) {
        return static_cast<int>(intertwiner_basis(g, a, b).size());
    });

    py::class_<PWMember>(m, "PWMember")
        .def_readonly("rep", &PWMember::rep)
        .def_readonly("orbit", &PWMember::orbit)
        .def_readonly("base", &PWMember::base)
        .def_readonly("character", &PWMember::character);
    py::class_<PWSet>(m, "PWSet")
        .def_readonly("members", &PWSet::members)
        .def("complete", &PWSet::complete);
    m.def("group_irreps", &group_irreps, py::arg("group"), py::arg("seed") = 0);
    m.def("compute_pw_set", &compute_pw_set, py::arg("groupoid"), py::arg("haar"), py::arg("seed") = 0);
    m.def("pw_orthogonality",
          [](const PWSet& pw, const Groupoid& g, const HaarSystem& w) { return pw_orthogonality(pw, g, w).ok; });
    m.def("pw_completeness",
          [](const PWSet& pw, const Groupoid& g, const HaarSystem& w) { return pw_completeness(pw, g, w).ok; });
    m.def("pw_isomorphism", [](const PWSet& pw, const Groupoid& g, const HaarSystem& w) {
        PsiReport r = pw_isomorphism(pw, g, w);
        return py::dict(py::arg("ok") = r.ok, py::arg("bijective") = r.bijective,
                        py::arg("equivariance_residual") = r.equivariance_residual);
    });

    py::class_<ConvElement>(m, "ConvElement")
        .def(py::init([](std::vector<cplx> v) { return ConvElement{std::move(v)}; }))
        .def_readonly("values", &ConvElement::values);
    m.def("delta", &delta);
    m.def("zero_element", &zero_element);
    m.def("convolve", &convolve);
    m.def("involution", &involution);
    m.def("max_abs_diff", &max_abs_diff);
    py::class_<RoundTripReport>(m, "RoundTripReport")
        .def_readonly("ok", &RoundTripReport::ok)
        .def_readonly("what", &RoundTripReport::what)
        .def_readonly("extract_residual", &RoundTripReport::extract_residual)
        .def_readonly("integrate_residual", &RoundTripReport::integrate_residual)
        .def_readonly("homomorphism_residual", &RoundTripReport::homomorphism_residual)
        .def_readonly("star_residual", &RoundTripReport::star_residual)
        .def_readonly("orbit_constant", &RoundTripReport::orbit_constant);
    m.def("bijection_roundtrip", &bijection_roundtrip, py::arg("groupoid"), py::arg("haar"), py::arg("rep"),
          py::arg("tol") = 1e-10);

    py::class_<Bibundle>(m, "Bibundle").def_readonly("size", &Bibundle::size);
    py::class_<PrincipalBundle>(m, "PrincipalBundle")
        .def_readonly("gauge", &PrincipalBundle::gauge)
        .def_readonly("group", &PrincipalBundle::group)
        .def_readonly("bibundle", &PrincipalBundle::bibundle);
    m.def("principal_bundle", &principal_bundle);
    m.def("induce_rep", &induce_rep);
    m.def("is_morita", [](const Groupoid& g, const Groupoid& h, const Bibundle& b) {
        return validate_bibundle(g, h, b).morita;
    });

    py::class_<Bisection>(m, "Bisection").def_readonly("sigma", &Bisection::sigma);
    py::class_<BisectionGroup>(m, "BisectionGroup")
        .def_readonly("elements", &BisectionGroup::elements)
        .def_readonly("group", &BisectionGroup::group)
        .def_readonly("axioms", &BisectionGroup::axioms);
    m.def("enumerate_bisections", &enumerate_bisections, py::arg("groupoid"), py::arg("cutoff") = kBisectionCutoff);
    m.def("is_bisectional", [](const Groupoid& g) { return is_bisectional(g).bisectional; });
    m.def("bisection_roundtrip", [](const Groupoid& g, const BisectionGroup& bis, const Representation& r) {
        BisectionRoundTrip rt = bisection_roundtrip(g, bis, r);
        return py::dict(py::arg("ok") = rt.ok, py::arg("rep_residual") = rt.rep_residual,
                        py::arg("action_residual") = rt.action_residual);
    });

    py::class_<RepRing>(m, "RepRing")
        .def(py::init<Groupoid, HaarSystem, std::uint64_t>(), py::arg("groupoid"), py::arg("haar"), py::arg("seed") = 0)
        .def_property_readonly("rank", &RepRing::rank)
        .def("labels", &RepRing::labels)
        .def("basis", &RepRing::basis)
        .def("zero", [](const RepRing& r) { return r.zero().coeffs; })
        .def("one", [](const RepRing& r) { return r.one().coeffs; })
        .def("classify", [](const RepRing& r, const Representation& rho) { return r.classify(rho).coeffs; })
        .def("add", [](const RepRing& r, std::vector<long long> a, std::vector<long long> b) {
            return r.add({std::move(a)}, {std::move(b)}).coeffs;
        })
        .def("multiply", [](const RepRing& r, std::vector<long long> a, std::vector<long long> b) {
            return r.multiply({std::move(a)}, {std::move(b)}).coeffs;
        })
        .def("realize", [](const RepRing& r, std::vector<long long> a) { return r.realize({std::move(a)}); })
        .def("restriction_map", &RepRing::restriction_map);

    m.def("commands", &commands);
    m.def("_run", [](std::string command, std::string input, std::uint64_t seed, double tol, std::string rep,
                     std::string rep2, std::string bibundle) {
        RunConfig c;
        c.command = std::move(command);
        c.input = std::move(input);
        c.seed = seed;
        c.tol = tol;
        c.rep = std::move(rep);
        c.rep2 = std::move(rep2);
        c.bibundle = std::move(bibundle);
        RunResult r = run(c);
        return py::make_tuple(r.status, r.report.dump());
    });
}
