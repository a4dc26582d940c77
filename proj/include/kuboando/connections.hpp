#pragma once

#include <string>
#include <variant>
#include <vector>

#include "kuboando/matcore.hpp"
#include "kuboando/measures.hpp"
#include "kuboando/monotone.hpp"

namespace kuboando {

enum class ClosedForm { arithmetic, geometric, harmonic, logarithmic, parallel_sum };

std::string closed_form_name(ClosedForm kind);

// Parallel sum A : B. Computed as A (A+B)^+ B (symmetrized), which equals the
// decreasing limit of (A+eI) : (B+eI); exact on singular inputs, where the
// kernel of A+B is the common kernel of A and B.
PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b);

// Harmonic mean A ! B = 2 (A:B).
PsdMatrix harmonic(const PsdMatrix& a, const PsdMatrix& b);

// A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} for invertible A; for singular A the
// decreasing-regularization ladder, which throws ConvergenceFailure when the
// rungs do not settle (e.g. doubly singular geometric-type inputs).
PsdMatrix eval_primal(const OMFunction& f, const PsdMatrix& a, const PsdMatrix& b);

// Integral route: mu({0}) A + mu({inf}) B + int (1+l)/(2l) * (lA ! B) dmu(l),
// with the integrand extended continuously to the endpoints (value A at 0 and
// B at inf).
PsdMatrix eval_integral(const RepMeasure& mu, const PsdMatrix& a, const PsdMatrix& b);

// A connection described as a nonnegative combination of evaluation routes:
// closed forms, representing functions, and representing measures. The empty
// combination is the zero connection.
class Connection {
  public:
    struct Term {
        double weight;
        std::variant<ClosedForm, OMFunction, RepMeasure> route;
    };

    static Connection zero();
    static Connection closed(ClosedForm kind);
    static Connection from_function(OMFunction f, std::string label = "function");
    static Connection from_measure(RepMeasure mu, std::string label = "measure");

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    const std::string& label() const { return label_; }
    Connection with_label(std::string label) const;

    PsdMatrix evaluate(const PsdMatrix& a, const PsdMatrix& b) const;

  private:
    Connection() = default;
    std::vector<Term> terms_;
    std::string label_ = "zero";

    friend Connection conn_add(const Connection& s, const Connection& t);
    friend Connection conn_scale(double k, const Connection& s);
};

Connection conn_add(const Connection& s, const Connection& t);
Connection conn_scale(double k, const Connection& s);

struct ConnectionNorm {
    double value;              // operator norm of the witness
    Eigen::MatrixXcd witness;  // the connection applied to the 2x2 identity pair
};

// |sigma| = |I sigma I|; dimension independent, computed at dim 2.
ConnectionNorm connection_norm(const Connection& s);

// Means are exactly the norm-1 connections.
bool is_mean(const Connection& s);

// sigma / |sigma|; throws ZeroConnection when the norm is below 1e-14.
Connection normalize(const Connection& s);

// The scalar function f with f(x) I = I sigma (xI). Closed forms map to their
// catalog functions; measure routes to the measure-backed function.
OMFunction representing_function(const Connection& s);

// Scalar reduction of the integral route: f(x) = mu({0}) + mu({inf}) x +
// int (1+l)x/(x+l) dmu(l).
OMFunction function_from_measure(const RepMeasure& mu);

// The measure realizing sigma through the integral route. Closed forms and
// measure routes have catalog answers; function routes are matched
// structurally (affine, moebius, power in {0, 1/2, 1}, log_mean, sums) and
// anything else throws UnsupportedInversion.
RepMeasure representing_measure(const Connection& s);

// (xI) sigma (yI) = (x ~sigma y) I, evaluated at dim 2; NonScalarResult if the
// output is not a scalar multiple of I within 1e-10 relative.
double induced_scalar(const Connection& s, double x, double y);

} // namespace kuboando
