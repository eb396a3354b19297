#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli_app.hpp"
#include "spinstat/spinstat.hpp"

namespace py = pybind11;
using namespace spinstat;

namespace {

py::object fraction(const Rational& r) {
    return py::module_::import("fractions").attr("Fraction")(r.num(), r.den());
}

// Exact values become fractions.Fraction; inexact ones stay floats.
py::object prob(const Probability& p) { return p.exact ? fraction(*p.exact) : py::float_(p.value); }

Rational rational_arg(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rational(h.cast<std::int64_t>());
    if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
    if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator"))
        return Rational(h.attr("numerator").cast<std::int64_t>(), h.attr("denominator").cast<std::int64_t>());
    throw Error(ErrorCode::InvalidArgument, "expected an int, a Fraction or a string like '1/3'");
}

HalfInt half_arg(const py::handle& h) {
    const Rational r = rational_arg(h);
    if (r.den() != 1 && r.den() != 2) throw Error(ErrorCode::InvalidArgument, "expected an integer or half-integer");
    return HalfInt::from_twice(static_cast<int>(r.num() * (2 / r.den())));
}

Angle angle_arg(const py::handle& h) {
    if (py::isinstance<py::str>(h)) return Angle::parse(h.cast<std::string>());
    if (py::isinstance<py::float_>(h)) return Angle::radians(h.cast<double>());
    return Angle::pi_times(rational_arg(h));  // ints and Fractions are multiples of pi
}

py::dict bell_dict(const BellEvaluation& e) {
    py::dict d;
    py::list gaps;
    for (const auto& g : e.gaps) gaps.append(g.to_string());
    d["gaps"] = gaps;
    d["rate"] = e.mode == BellMode::Half ? "half" : "full";
    d["lhs"] = prob(e.lhs);
    d["rhs"] = prob(e.rhs);
    d["margin"] = prob(e.margin);
    d["violated"] = e.violated;
    return d;
}

py::dict classification_dict(const StatisticsClass& c) {
    py::dict d;
    d["statistics"] = statistics_name(c.tag);
    d["vanishing"] = c.vanishing;
    py::list t;
    for (const auto& [pair, sign] : c.transpositions)
        t.append(py::make_tuple(pair.first, pair.second, sign ? py::object(py::int_(*sign)) : py::object(py::none())));
    d["transpositions"] = t;
    return d;
}

std::vector<SingleParticleState> orbitals_for(const std::vector<Ket>& spinors) {
    std::vector<SingleParticleState> out;
    for (std::size_t i = 0; i < spinors.size(); ++i) out.push_back({"q" + std::to_string(i), spinors[i]});
    return out;
}

py::list cg_rows(const CgTable& t) {
    py::list rows;
    for (const auto& row : t.rows) {
        py::dict r;
        r["s"] = fraction(row.s.to_rational());
        r["m"] = fraction(row.m.to_rational());
        py::dict terms;
        for (const auto& [label, value] : row.expansion.amplitudes())
            terms[py::make_tuple(fraction(t.basis1.m_of(label[0]).to_rational()),
                                 fraction(t.basis2.m_of(label[1]).to_rational()))] = value.exact().to_string();
        r["terms"] = terms;
        rows.append(r);
    }
    return rows;
}

Hypothesis hypothesis_arg(const std::string& s) { return parse_hypothesis(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact spin-correlation and permutation-statistics kernels";

    // args = (code, message) so callers can branch on the machine-readable code.
    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result([&] { return py::exception<Error>(m, "SpinstatError", PyExc_ValueError); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object args = py::make_tuple(std::string(e.code_name()), std::string(e.what()));
            PyErr_SetObject(error_type.get_stored().ptr(), args.ptr());
        }
    });

    py::class_<Ket>(m, "Ket")
        .def_property_readonly("dims", &Ket::dims)
        .def_property_readonly("mode", [](const Ket& k) { return std::string(mode_name(k.mode())); })
        .def_property_readonly("is_zero", &Ket::is_zero)
        .def("amplitudes",
             [](const Ket& k) {
                 py::dict d;
                 for (const auto& [label, value] : k.amplitudes()) {
                     py::tuple key = py::cast(label);
                     if (value.is_exact())
                         d[key] = value.exact().to_string();
                     else
                         d[key] = value.to_complex();
                 }
                 return d;
             },
             "Label tuple -> exact amplitude string (exact kets) or complex (float kets).")
        .def("norm_squared", [](const Ket& k) -> py::object {
            if (auto n = k.norm_squared_exact()) return fraction(*n);
            return py::float_(k.norm_squared());
        })
        .def("to_float", &Ket::to_float)
        .def("__eq__", [](const Ket& a, const Ket& b) { return a == b; })
        .def("__str__", &Ket::to_string)
        .def("__repr__", [](const Ket& k) { return "Ket(" + k.to_string() + ")"; });

    m.def("make_state", [](const std::string& name) { return make_state(NamedState::parse(name)); }, py::arg("name"));
    m.def(
        "ket",
        [](std::vector<int> dims, const std::map<std::vector<int>, std::string>& amplitudes) {
            KetBuilder b(dims, Mode::Exact);
            for (const auto& [label, text] : amplitudes) b.add(label, Scalar(ExactScalar::parse(text)));
            return b.build();
        },
        py::arg("dims"), py::arg("amplitudes"), "Exact ket from {label tuple: amplitude string}.");
    m.def("spinor", [](const std::string& up, const std::string& down) {
        return Ket({2}, Mode::Exact, {{{0}, Scalar(ExactScalar::parse(up))}, {{1}, Scalar(ExactScalar::parse(down))}});
    });

    m.def(
        "is_rotationally_invariant",
        [](const Ket& k, const py::object& c, int grid) {
            InvarianceResult r = is_rotationally_invariant(k, rational_arg(c), grid);
            py::dict d;
            d["invariant"] = r.invariant;
            d["max_deviation"] = r.max_deviation;
            d["exact"] = r.exact;
            d["worst_angle"] = r.worst_angle ? py::object(py::str(r.worst_angle->to_string())) : py::object(py::none());
            return d;
        },
        py::arg("ket"), py::arg("c") = "1/2", py::arg("grid") = 360);
    m.def(
        "is_isc",
        [](const Ket& k, const py::object& c, int grid) {
            IscResult r = is_isc(k, rational_arg(c), grid);
            py::dict d;
            d["isc"] = r.isc;
            d["rotationally_invariant"] = r.rotationally_invariant;
            d["max_violation"] = r.max_violation;
            d["witness"] = r.witness ? py::object(py::str(r.witness->to_string())) : py::object(py::none());
            return d;
        },
        py::arg("ket"), py::arg("c") = "1/2", py::arg("grid") = 360);

    m.def(
        "joint_distribution",
        [](const Ket& k, const std::vector<py::object>& angles, const py::object& c) {
            MeasurementConfig cfg;
            for (const auto& a : angles) cfg.angles.push_back(angle_arg(a));
            cfg.c = rational_arg(c);
            py::dict d;
            const ProbabilityTable table = joint_distribution(k, cfg);
            for (const auto& e : table.entries()) d[py::str(e.event)] = prob(e.p);
            return d;
        },
        py::arg("ket"), py::arg("angles"), py::arg("c") = "1/2");
    m.def(
        "bell_inequality",
        [](const py::object& a, const py::object& b, const py::object& c, const std::string& rate) {
            return bell_dict(bell_inequality(angle_arg(a), angle_arg(b), angle_arg(c),
                                             rate == "full" ? BellMode::Full : BellMode::Half));
        },
        py::arg("theta_ij"), py::arg("theta_jk"), py::arg("theta_ki"), py::arg("rate") = "half");
    m.def(
        "bell_grid_search",
        [](int divisions, const std::string& rate) {
            BellSearch s = bell_grid_search(divisions, rate == "full" ? BellMode::Full : BellMode::Half);
            py::dict d;
            d["directions_checked"] = s.directions_checked;
            py::list v;
            for (const auto& e : s.violations) v.append(bell_dict(e));
            d["violations"] = v;
            d["strongest"] = s.strongest ? py::object(bell_dict(*s.strongest)) : py::object(py::none());
            return d;
        },
        py::arg("divisions") = 24, py::arg("rate") = "half");
    m.def(
        "wigner_argument",
        [](const py::object& a, const py::object& b, const py::object& c, const std::string& variant) {
            WignerResult r = wigner_argument(angle_arg(a), angle_arg(b), angle_arg(c),
                                             variant == "singlet_inclusive" ? WignerVariant::SingletInclusive
                                                                            : WignerVariant::SameState);
            py::dict d;
            d["subset"] = r.subset;
            d["superset"] = r.superset;
            d["subset_probability"] = prob(r.subset_probability);
            d["superset_probability"] = prob(r.superset_probability);
            d["inclusion_verified"] = r.inclusion_verified;
            d["consistent"] = r.consistent;
            return d;
        },
        py::arg("theta_i"), py::arg("theta_j"), py::arg("theta_k"), py::arg("variant") = "same_state");

    m.def("antisymmetrize", &antisymmetrize, py::arg("states"));
    m.def("symmetrize", &symmetrize, py::arg("states"));
    m.def("classify_ket", [](const Ket& k) { return classification_dict(classify_ket(k)); }, py::arg("ket"));
    m.def(
        "classify_expansion",
        [](const std::string& kind, const std::vector<Ket>& spinors) {
            auto states = orbitals_for(spinors);
            if (kind == "fermi_dirac") return classification_dict(classify_statistics(PermutationExpansion::fermi_dirac(states)));
            if (kind == "bose_einstein")
                return classification_dict(classify_statistics(PermutationExpansion::bose_einstein(states)));
            if (kind == "mixed") return classification_dict(classify_statistics(PermutationExpansion::mixed(states)));
            throw Error(ErrorCode::UnknownTag, "kind must be fermi_dirac, bose_einstein or mixed");
        },
        py::arg("kind"), py::arg("spinors"), "Each spinor sits in its own orbital.");
    m.def(
        "invariance_signature",
        [](const Ket& k) {
            py::dict d;
            for (const auto& [p, s] : invariance_signature(k))
                d[py::str(p.to_string())] = s ? py::object(py::int_(*s)) : py::object(py::none());
            return d;
        },
        py::arg("ket"));

    m.def("cg_table", [](const py::object& j1, const py::object& j2) { return cg_rows(cg_decompose(half_arg(j1), half_arg(j2))); },
          py::arg("j1"), py::arg("j2"));
    m.def("photon_table", [] { return cg_rows(rescaled_ladder_table(ConstituentBasis::photon())); });
    m.def(
        "verify_rescaled_algebra",
        [](int n, const py::object& j) {
            RescaledAlgebraCheck r = verify_rescaled_algebra(n, half_arg(j));
            py::dict d;
            d["max_residual"] = r.max_residual;
            d["residual_exactly_zero"] = r.residual_exactly_zero;
            d["ladder_identity"] = r.ladder_identity;
            d["ladder_factor"] = fraction(r.ladder_factor);
            return d;
        },
        py::arg("n"), py::arg("j"));

    auto distribution = [](const std::vector<py::object>& probs) {
        std::vector<Rational> p;
        for (const auto& x : probs) p.push_back(rational_arg(x));
        const HalfInt j = HalfInt::from_twice(static_cast<int>(p.size()) - 1);
        return SpinDistribution(j, std::move(p));
    };
    m.def(
        "conditional_given_total",
        [distribution](const std::vector<py::object>& prior, const py::object& total,
                       const std::optional<std::vector<py::object>>& prior2) {
            const SpinDistribution d1 = distribution(prior);
            const SpinDistribution d2 = prior2 ? distribution(*prior2) : d1;
            py::dict d;
            const ConditionalTable table = conditional_given_total(d1, d2, half_arg(total));
            for (const auto& c : table.cells)
                d[py::make_tuple(fraction(c.m1.to_rational()), fraction(c.m2.to_rational()))] = fraction(c.p);
            return d;
        },
        py::arg("prior"), py::arg("total") = 0, py::arg("prior2") = py::none());
    m.def(
        "compare_with_cg",
        [distribution](const std::vector<py::object>& prior, const py::object& total) {
            CgComparison c = compare_with_cg(distribution(prior), half_arg(total));
            py::dict d;
            d["block"] = fraction(c.block.to_rational());
            d["max_deviation"] = fraction(c.max_deviation);
            return d;
        },
        py::arg("prior"), py::arg("total") = 0);

    m.def(
        "simulate_beam",
        [](std::uint64_t atoms, const std::string& hypothesis, std::uint64_t seed, unsigned threads) {
            BeamResult r;
            {
                py::gil_scoped_release release;
                r = simulate_beam({atoms, hypothesis_arg(hypothesis), seed, threads});
            }
            py::dict d;
            d["counts"] = r.counts;
            d["proportions"] = r.proportions;
            d["seed"] = r.seed;
            return d;
        },
        py::arg("atoms"), py::arg("hypothesis") = "binomial", py::arg("seed") = 0, py::arg("threads") = 0);
    m.def(
        "chi_square",
        [](std::array<std::uint64_t, 3> counts, const std::string& null_hypothesis) {
            BeamResult r;
            r.counts = counts;
            r.atoms = counts[0] + counts[1] + counts[2];
            ChiSquareResult x = chi_square_discriminate(r, hypothesis_arg(null_hypothesis));
            py::dict d;
            d["statistic"] = x.statistic;
            d["degrees_of_freedom"] = x.degrees_of_freedom;
            d["critical_value"] = x.critical_value;
            d["reject"] = x.reject;
            return d;
        },
        py::arg("counts"), py::arg("null") = "uniform");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int rc = cli::run(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end in-process; returns (exit code, stdout, stderr).");

    m.attr("SCHEMA_VERSION") = cli::kSchemaVersion;
}
