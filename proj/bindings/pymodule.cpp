#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kuboando/specfmt.hpp"
#include "kuboando/verify.hpp"

namespace py = pybind11;
using namespace kuboando;

namespace {

Connection conn(const std::string& spec, int nodes) {
    if (nodes < 8) throw DomainError("nodes must be >= 8");
    return parse_connection_spec(spec, QuadSpec{nodes});
}

Eigen::MatrixXd to_real(const PsdMatrix& a) { return a.matrix().real_entries(1e-8); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "operator connections on positive semidefinite matrices";
    py::register_exception<Error>(m, "KuboAndoError");

    m.def(
        "evaluate",
        [](const std::string& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, int nodes) {
            return to_real(conn(spec, nodes).evaluate(PsdMatrix(a), PsdMatrix(b)));
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("nodes") = 200,
        "Evaluate the connection given by a spec string on two real PSD matrices.");

    m.def(
        "norm", [](const std::string& spec, int nodes) { return connection_norm(conn(spec, nodes)).value; },
        py::arg("spec"), py::arg("nodes") = 200, "Connection norm, the operator norm of I sigma I.");

    m.def(
        "is_mean", [](const std::string& spec, int nodes) { return is_mean(conn(spec, nodes)); },
        py::arg("spec"), py::arg("nodes") = 200);

    m.def(
        "function_value",
        [](const std::string& spec, double x, int nodes) { return representing_function(conn(spec, nodes))(x); },
        py::arg("spec"), py::arg("x"), py::arg("nodes") = 200,
        "Value of the representing function at x >= 0.");

    m.def(
        "convert",
        [](const std::string& spec, const std::string& target, int nodes) {
            const Connection s = conn(spec, nodes);
            if (target == "function") return print_function_spec(representing_function(s));
            if (target == "measure") return print_measure_spec(representing_measure(s));
            throw DomainError("convert target must be 'function' or 'measure'");
        },
        py::arg("spec"), py::arg("target"), py::arg("nodes") = 200,
        "Spec text of the representing function or measure.");

    m.def(
        "induced_scalar",
        [](const std::string& spec, double x, double y, int nodes) {
            return induced_scalar(conn(spec, nodes), x, y);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("nodes") = 200,
        "The scalar connection x sigma y induced on nonnegative reals.");

    m.def("catalog", [] {
        return std::vector<std::string>{"mean arithmetic", "mean geometric", "mean harmonic",
                                        "mean logarithmic", "parallel"};
    });

    m.def(
        "verify",
        [](std::uint64_t seed, int trials, int dim_lo, int dim_hi) {
            TrialConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.dim_lo = dim_lo;
            cfg.dim_hi = dim_hi;
            py::list out;
            for (const VerifyReport& r : run_all(cfg)) {
                py::dict d;
                d["property"] = r.property;
                d["anchor"] = r.anchor;
                d["trials"] = r.trials;
                d["worst_residual"] = r.worst_residual;
                d["pass"] = r.pass;
                d["witness"] = r.witness;
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("seed") = TrialConfig{}.seed, py::arg("trials") = 50, py::arg("dim_lo") = 1,
        py::arg("dim_hi") = 4, "Run the property-check suite; returns one dict per check.");
}
