#include "kuboando/connections.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <utility>

namespace kuboando {

namespace {

// Core of the primal route; requires invertible a (inv_psd throws otherwise).
// Both congruences are PSD in exact arithmetic; their rounding scales with the
// operand norms, not the result, so they go through psd_project.
PsdMatrix primal_core(const OMFunction& f, const PsdMatrix& a, const PsdMatrix& b) {
    const PsdMatrix s = sqrt_psd(a);
    const PsdMatrix si = inv_psd(s);
    const double si2 = si.operator_norm() * si.operator_norm();
    const PsdMatrix m = psd_project(congruence(si.matrix(), b.matrix()),
                                    1.0 + si2 * b.operator_norm());
    const HermitianMatrix fm = apply_spectral(m, [&f](double x) { return f(x); });
    return psd_project(congruence(s.matrix(), fm),
                       1.0 + a.operator_norm() * operator_norm(fm));
}

// Decreasing-regularization ladder for singular arguments. The acceptance
// threshold carries slope headroom: a convergent route moves by up to
// ~2*f(1) per unit of shift (crossed-kernel pairs reach that bound), so the
// bare step budget 1e-6*s would reject convergent cases.
template <class F>
PsdMatrix ladder_limit(const F& eval_at, const PsdMatrix& a, const PsdMatrix& b, double fnorm) {
    const double s = std::max({a.operator_norm(), b.operator_norm(), 1.0});
    const double accept = 1e-6 * s * (1.0 + 2.0 * std::max(1.0, fnorm));
    const double eps1 = 1e-4 * s, eps2 = 1e-6 * s, eps3 = 1e-8 * s;
    const PsdMatrix x1 = eval_at(psd_shift(a, eps1), psd_shift(b, eps1));
    const PsdMatrix x2 = eval_at(psd_shift(a, eps2), psd_shift(b, eps2));
    const PsdMatrix x3 = eval_at(psd_shift(a, eps3), psd_shift(b, eps3));
    const double step23 = operator_norm(herm_sub(x2.matrix(), x3.matrix()));
    if (step23 < accept) return x3;
    const double step12 = operator_norm(herm_sub(x1.matrix(), x2.matrix()));
    std::ostringstream os;
    os << "regularization ladder did not settle: steps " << step12 << ", " << step23
       << " against tolerance " << accept;
    throw ConvergenceFailure(os.str());
}

// symmetric=true permits evaluating through the swapped pair when only b is
// invertible; valid only for functions fixed by the transpose f(x) -> x f(1/x)
// (geometric, logarithmic).
PsdMatrix primal_route(const OMFunction& f, const PsdMatrix& a, const PsdMatrix& b,
                       bool symmetric) {
    if (a.invertible()) return primal_core(f, a, b);
    if (symmetric && b.invertible()) return primal_core(f, b, a);
    return ladder_limit(
        [&f](const PsdMatrix& aa, const PsdMatrix& bb) { return primal_core(f, aa, bb); }, a, b,
        f.norm());
}

PsdMatrix eval_term(const Connection::Term& t, const PsdMatrix& a, const PsdMatrix& b) {
    if (const ClosedForm* cf = std::get_if<ClosedForm>(&t.route)) {
        switch (*cf) {
        case ClosedForm::arithmetic:
            return psd_scale(0.5, psd_add(a, b));
        case ClosedForm::parallel_sum:
            return parallel_sum(a, b);
        case ClosedForm::harmonic:
            return harmonic(a, b);
        case ClosedForm::geometric:
            return primal_route(OMFunction::power(0.5), a, b, true);
        case ClosedForm::logarithmic:
            return primal_route(OMFunction::log_mean(), a, b, true);
        }
    }
    if (const OMFunction* f = std::get_if<OMFunction>(&t.route))
        return primal_route(*f, a, b, false);
    return eval_integral(std::get<RepMeasure>(t.route), a, b);
}

OMFunction closed_function(ClosedForm kind) {
    switch (kind) {
    case ClosedForm::arithmetic:
        return OMFunction::affine(0.5, 0.5);
    case ClosedForm::geometric:
        return OMFunction::power(0.5);
    case ClosedForm::harmonic:
        return OMFunction::moebius(1.0);
    case ClosedForm::logarithmic:
        return OMFunction::log_mean();
    case ClosedForm::parallel_sum:
        return omf_scale(0.5, OMFunction::moebius(1.0));
    }
    throw DomainError("unknown closed form");
}

RepMeasure closed_measure(ClosedForm kind) {
    switch (kind) {
    case ClosedForm::arithmetic:
        return measure_add(RepMeasure::at_zero(0.5), RepMeasure::at_inf(0.5));
    case ClosedForm::geometric:
        return RepMeasure::with_density(geometric_density(1.0), QuadSpec{});
    case ClosedForm::harmonic:
        return RepMeasure::dirac(1.0, 1.0);
    case ClosedForm::logarithmic:
        return RepMeasure::with_density(logmean_density(1.0), QuadSpec{});
    case ClosedForm::parallel_sum:
        return RepMeasure::dirac(1.0, 0.5);
    }
    throw DomainError("unknown closed form");
}

RepMeasure measure_of_function(const OMFunction& f) {
    const OMFunction::Node& n = f.node();
    switch (n.kind) {
    case OMFunction::Kind::affine:
        return measure_add(RepMeasure::at_zero(n.a), RepMeasure::at_inf(n.b));
    case OMFunction::Kind::power: {
        if (n.alpha == 0.0) return RepMeasure::at_zero(1.0);
        if (n.alpha == 1.0) return RepMeasure::at_inf(1.0);
        if (n.alpha == 0.5) return RepMeasure::with_density(geometric_density(1.0), QuadSpec{});
        std::ostringstream os;
        os << "no representing-measure inversion for power " << n.alpha
           << "; structural matches cover affine, moebius, log_mean, power in {0, 1/2, 1}, "
              "measure-backed functions, and sums of those";
        throw UnsupportedInversion(os.str());
    }
    case OMFunction::Kind::log_mean:
        return RepMeasure::with_density(logmean_density(1.0), QuadSpec{});
    case OMFunction::Kind::moebius:
        return RepMeasure::dirac(n.lambda, 1.0);
    case OMFunction::Kind::measure:
        return n.mu;
    case OMFunction::Kind::sum: {
        RepMeasure acc = RepMeasure::zero();
        for (const auto& [w, part] : n.terms)
            acc = measure_add(acc, measure_scale(w, measure_of_function(part)));
        return acc;
    }
    }
    throw DomainError("unknown function node");
}

std::string format_scalar(double k) {
    std::ostringstream os;
    os << std::setprecision(12) << k;
    return os.str();
}

} // namespace

std::string closed_form_name(ClosedForm kind) {
    switch (kind) {
    case ClosedForm::arithmetic:
        return "arithmetic";
    case ClosedForm::geometric:
        return "geometric";
    case ClosedForm::harmonic:
        return "harmonic";
    case ClosedForm::logarithmic:
        return "logarithmic";
    case ClosedForm::parallel_sum:
        return "parallel";
    }
    return "";
}

PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("parallel_sum: dimensions differ");
    const PsdMatrix s = psd_add(a, b);
    const Spectral& sp = s.matrix().spectral();
    const double cut = effective_tol(tol::inv_rel, s.operator_norm());
    const Eigen::VectorXd inv =
        sp.values.unaryExpr([cut](double x) { return x > cut ? 1.0 / x : 0.0; });
    const Eigen::MatrixXcd pinv = sp.vectors * inv.asDiagonal() * sp.vectors.adjoint();
    const Eigen::MatrixXcd m = a.entries() * pinv * b.entries();
    // PSD in exact arithmetic, but eigenvalues of A+B just above the
    // pseudo-inverse cut amplify rounding into symmetric debris
    const HermitianMatrix raw(Eigen::MatrixXcd(0.5 * (m + m.adjoint().eval())));
    return psd_project(raw, 1.0 + a.operator_norm() + b.operator_norm());
}

PsdMatrix harmonic(const PsdMatrix& a, const PsdMatrix& b) {
    return psd_scale(2.0, parallel_sum(a, b));
}

PsdMatrix eval_primal(const OMFunction& f, const PsdMatrix& a, const PsdMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("eval_primal: dimensions differ");
    return primal_route(f, a, b, false);
}

PsdMatrix eval_integral(const RepMeasure& mu, const PsdMatrix& a, const PsdMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("eval_integral: dimensions differ");
    const Eigen::Index n = a.dim();
    MeasureIntegrand<Eigen::MatrixXcd> g{
        [&a, &b](double lam) {
            const PsdMatrix p = parallel_sum(psd_scale(lam, a), b);
            return Eigen::MatrixXcd(((1.0 + lam) / lam) * p.entries());
        },
        a.entries(), b.entries()};
    Eigen::MatrixXcd acc = integrate<Eigen::MatrixXcd>(mu, g, Eigen::MatrixXcd::Zero(n, n));
    return PsdMatrix(std::move(acc));
}

Connection Connection::zero() { return Connection(); }

Connection Connection::closed(ClosedForm kind) {
    Connection c;
    c.terms_.push_back(Term{1.0, kind});
    c.label_ = kind == ClosedForm::parallel_sum ? "parallel" : "mean " + closed_form_name(kind);
    return c;
}

Connection Connection::from_function(OMFunction f, std::string label) {
    Connection c;
    c.terms_.push_back(Term{1.0, std::move(f)});
    c.label_ = std::move(label);
    return c;
}

Connection Connection::from_measure(RepMeasure mu, std::string label) {
    Connection c;
    c.terms_.push_back(Term{1.0, std::move(mu)});
    c.label_ = std::move(label);
    return c;
}

Connection Connection::with_label(std::string label) const {
    Connection c = *this;
    c.label_ = std::move(label);
    return c;
}

PsdMatrix Connection::evaluate(const PsdMatrix& a, const PsdMatrix& b) const {
    if (a.dim() != b.dim()) throw DimensionMismatch("connection evaluation: dimensions differ");
    if (terms_.empty()) return PsdMatrix::zero(a.dim());
    // positive homogeneity forces s(0,0) = 0 for every connection; short-circuit
    // so the regularized routes do not report their ladder floor instead
    if (a.operator_norm() == 0.0 && b.operator_norm() == 0.0) return PsdMatrix::zero(a.dim());
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(a.dim(), a.dim());
    for (const Term& t : terms_) acc += t.weight * eval_term(t, a, b).entries();
    return PsdMatrix(std::move(acc));
}

Connection conn_add(const Connection& s, const Connection& t) {
    if (s.is_zero()) return t;
    if (t.is_zero()) return s;
    Connection out;
    out.terms_ = s.terms_;
    out.terms_.insert(out.terms_.end(), t.terms_.begin(), t.terms_.end());
    out.label_ = "sum " + s.label_ + " + " + t.label_;
    return out;
}

Connection conn_scale(double k, const Connection& s) {
    if (k < 0) throw NegativeScalar("conn_scale: negative scalar");
    if (k == 0.0 || s.is_zero()) return Connection::zero();
    Connection out = s;
    for (Connection::Term& t : out.terms_) t.weight *= k;
    out.label_ = "scale " + format_scalar(k) + " " + s.label_;
    return out;
}

ConnectionNorm connection_norm(const Connection& s) {
    const PsdMatrix id = PsdMatrix::identity(2);
    const PsdMatrix x = s.evaluate(id, id);
    return ConnectionNorm{x.operator_norm(), x.entries()};
}

bool is_mean(const Connection& s) { return std::abs(connection_norm(s).value - 1.0) <= 1e-9; }

Connection normalize(const Connection& s) {
    const double nrm = connection_norm(s).value;
    if (nrm < 1e-14) throw ZeroConnection("normalize: connection norm below 1e-14");
    return conn_scale(1.0 / nrm, s);
}

OMFunction representing_function(const Connection& s) {
    bool have = false;
    OMFunction acc = OMFunction::affine(0.0, 0.0);
    for (const Connection::Term& t : s.terms()) {
        OMFunction part = std::visit(
            [](const auto& route) -> OMFunction {
                using R = std::decay_t<decltype(route)>;
                if constexpr (std::is_same_v<R, ClosedForm>) return closed_function(route);
                else if constexpr (std::is_same_v<R, OMFunction>) return route;
                else return OMFunction::from_measure(route);
            },
            t.route);
        if (t.weight != 1.0) part = omf_scale(t.weight, part);
        acc = have ? omf_add(acc, part) : part;
        have = true;
    }
    return acc;
}

OMFunction function_from_measure(const RepMeasure& mu) { return OMFunction::from_measure(mu); }

RepMeasure representing_measure(const Connection& s) {
    RepMeasure acc = RepMeasure::zero();
    for (const Connection::Term& t : s.terms()) {
        RepMeasure part = std::visit(
            [](const auto& route) -> RepMeasure {
                using R = std::decay_t<decltype(route)>;
                if constexpr (std::is_same_v<R, ClosedForm>) return closed_measure(route);
                else if constexpr (std::is_same_v<R, OMFunction>)
                    return measure_of_function(route);
                else return route;
            },
            t.route);
        if (t.weight != 1.0) part = measure_scale(t.weight, part);
        acc = measure_add(acc, part);
    }
    return acc;
}

double induced_scalar(const Connection& s, double x, double y) {
    if (x < 0 || y < 0) throw NegativeScalar("induced_scalar: needs x, y >= 0");
    const PsdMatrix a = psd_scale(x, PsdMatrix::identity(2));
    const PsdMatrix b = psd_scale(y, PsdMatrix::identity(2));
    const PsdMatrix out = s.evaluate(a, b);
    const Eigen::MatrixXcd& m = out.entries();
    const double c = 0.5 * m.trace().real();
    const HermitianMatrix dev(
        Eigen::MatrixXcd(m - c * Eigen::MatrixXcd::Identity(m.rows(), m.cols())));
    if (operator_norm(dev) > 1e-10 * (1.0 + out.operator_norm())) {
        std::ostringstream os;
        os << "induced scalar: output deviates from a scalar multiple of I by "
           << operator_norm(dev);
        throw NonScalarResult(os.str());
    }
    return c;
}

} // namespace kuboando
