#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "svw/entanglement.hpp"
#include "svw/oracle.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

py::object to_python_int(const svw::BigInt& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

py::object to_fraction(const svw::Rational& q) {
    return py::module_::import("fractions")
        .attr("Fraction")(to_python_int(boost::multiprecision::numerator(q)),
                          to_python_int(boost::multiprecision::denominator(q)));
}

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
    const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(v.size())};
    const std::vector<py::ssize_t> strides{static_cast<py::ssize_t>(sizeof(T))};
    return py::array_t<T>(shape, strides, v.data());
}

py::object optional_float(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact entanglement dynamics of the equivalent-neighbor XY spin model";

    py::register_exception<svw::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<svw::IntegrityError>(m, "IntegrityError", PyExc_ArithmeticError);
    py::register_exception<svw::ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<svw::NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<svw::ModelSpec>(m, "ModelSpec")
        .def(py::init<int, int, double>(), "n_total"_a, "m_excited"_a, "coupling"_a = 1.0)
        .def_property_readonly("n_total", &svw::ModelSpec::n_total)
        .def_property_readonly("m_excited", &svw::ModelSpec::m_excited)
        .def_property_readonly("coupling", &svw::ModelSpec::coupling)
        .def_property_readonly("m_prime", &svw::ModelSpec::m_prime)
        .def("__repr__", [](const svw::ModelSpec& s) {
            return "ModelSpec(n_total=" + std::to_string(s.n_total()) +
                   ", m_excited=" + std::to_string(s.m_excited()) + ")";
        });

    m.def("binomial", [](int x, int y) { return to_python_int(svw::binomial(x, y)); }, "x"_a, "y"_a);
    m.def("b_coefficient",
          [](const svw::ModelSpec& s, int row, int col) { return to_fraction(svw::b_coefficient(s, row, col)); },
          "spec"_a, "m"_a, "n"_a);
    m.def("b_table", [](const svw::ModelSpec& s) {
        const auto t = svw::b_table(s);
        py::list rows;
        for (int i = 0; i < t.size(); ++i) {
            py::list row;
            for (int j = 0; j < t.size(); ++j) {
                row.append(to_fraction(t.exact(i, j)));
            }
            rows.append(row);
        }
        return rows;
    });
    m.def("phase_spectrum", [](const svw::ModelSpec& s) { return svw::phase_spectrum(s).phases; });
    m.def("amplitudes_at",
          [](const svw::ModelSpec& s, double tau) {
              return to_array(svw::amplitudes_at(s, svw::b_table(s), tau).amplitudes);
          },
          "spec"_a, "tau"_a);
    m.def("schmidt_spectrum",
          [](const svw::ModelSpec& s, double tau) {
              return to_array(svw::schmidt_spectrum(svw::amplitudes_at(s, svw::b_table(s), tau)).probabilities);
          },
          "spec"_a, "tau"_a);
    m.def("entropy", [](const std::vector<double>& p) { return svw::entropy(p); }, "probabilities"_a);
    m.def(
        "entropy_series",
        [](const svw::ModelSpec& s, const std::vector<double>& taus) {
            const auto series = svw::entropy_series(s, taus);
            const auto width = static_cast<py::ssize_t>(s.m_prime() + 1);
            py::array_t<double> probs({static_cast<py::ssize_t>(series.size()), width});
            py::array_t<double> entropies(static_cast<py::ssize_t>(series.size()));
            auto p = probs.mutable_unchecked<2>();
            auto e = entropies.mutable_unchecked<1>();
            for (std::size_t i = 0; i < series.size(); ++i) {
                for (py::ssize_t k = 0; k < width; ++k) {
                    p(static_cast<py::ssize_t>(i), k) = series[i].spectrum.probabilities[k];
                }
                e(static_cast<py::ssize_t>(i)) = series[i].entropy;
            }
            return py::make_tuple(probs, entropies);
        },
        "spec"_a, "taus"_a, "Returns (probabilities[len(taus), M'+1], entropies[len(taus)]).");
    m.def("entropy_rate_m1", &svw::entropy_rate_m1, "spec"_a, "tau"_a);
    m.def("reaches_full_ebit", &svw::reaches_full_ebit, "n_total"_a);
    m.def("max_entropy_at_t2", [](const svw::ModelSpec& s) {
        const auto r = svw::max_entropy_at_t2(s);
        return py::make_tuple(r.value, r.degenerate);
    });
    m.def("critical_times_m1", [](const svw::ModelSpec& s) {
        const auto t = svw::critical_times_m1(s);
        return py::dict("t_prime"_a = optional_float(t.t_prime), "t_double_prime"_a = t.t_double_prime,
                        "e_at_t_prime"_a = optional_float(t.e_at_t_prime),
                        "e_at_t_double_prime"_a = t.e_at_t_double_prime);
    });
    m.def(
        "maximize_entropy",
        [](const svw::ModelSpec& s, int grid_points, double tol) {
            const auto r = svw::maximize_entropy(s, grid_points, tol);
            return py::make_tuple(r.tau, r.entropy);
        },
        "spec"_a, "grid_points"_a = 2048, "tau_tolerance"_a = 1e-10);
    m.def(
        "magic_number_scan",
        [](int n_max, int n_min) {
            py::list out;
            for (const auto& r : svw::magic_number_scan(n_max, n_min)) {
                out.append(py::dict("N"_a = r.n_total, "tau_prime"_a = optional_float(r.tau_prime),
                                    "tau_double_prime"_a = r.tau_double_prime, "max_entropy"_a = r.max_entropy,
                                    "argmax_tau"_a = r.argmax_tau,
                                    "cross_check_deviation"_a = r.cross_check_deviation()));
            }
            return out;
        },
        "n_max"_a, "n_min"_a = 2);

    auto oracle = m.def_submodule("oracle", "Exact-diagonalization reference");
    oracle.def(
        "reduced_density_spectrum",
        [](int n, int excited, double tau) {
            const auto h = svw::oracle::build_sector_hamiltonian(n, excited);
            const auto state = svw::oracle::propagate(h, svw::oracle::excited_block_state(h.basis), tau);
            return to_array(svw::oracle::reduced_density(state, excited).eigenvalues);
        },
        "n_total"_a, "m_excited"_a, "tau"_a);
    oracle.def("verify_closed_form", [](const svw::ModelSpec& s, const std::vector<double>& taus) {
        const auto r = svw::oracle::verify_closed_form(s, taus);
        return py::dict("samples"_a = r.samples, "max_spectrum_deviation"_a = r.max_spectrum_deviation,
                        "max_entropy_deviation"_a = r.max_entropy_deviation, "passed"_a = r.passed());
    });
    oracle.def("full_space_crosscheck",
               py::overload_cast<int, int, double>(&svw::oracle::full_space_crosscheck), "n_total"_a,
               "m_excited"_a, "tau"_a);
}
