#include "kuboando/monotone.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

namespace kuboando {

double moebius_kernel(double x, double lambda) {
    if (lambda <= 1.0) return (1.0 + lambda) * x / (lambda + x);
    const double r = 1.0 / lambda;
    return (r + 1.0) * x / (1.0 + r * x);
}

OMFunction OMFunction::affine(double a, double b) {
    if (a < 0 || b < 0) throw NegativeScalar("affine function needs a, b >= 0");
    Node n;
    n.kind = Kind::affine;
    n.a = a;
    n.b = b;
    return OMFunction(std::make_shared<const Node>(std::move(n)));
}

OMFunction OMFunction::power(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("power function needs alpha in [0, 1]");
    Node n;
    n.kind = Kind::power;
    n.alpha = alpha;
    return OMFunction(std::make_shared<const Node>(std::move(n)));
}

OMFunction OMFunction::log_mean() {
    Node n;
    n.kind = Kind::log_mean;
    return OMFunction(std::make_shared<const Node>(std::move(n)));
}

OMFunction OMFunction::moebius(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("moebius function needs lambda in (0, inf)");
    Node n;
    n.kind = Kind::moebius;
    n.lambda = lambda;
    return OMFunction(std::make_shared<const Node>(std::move(n)));
}

OMFunction OMFunction::from_measure(RepMeasure mu) {
    Node n;
    n.kind = Kind::measure;
    n.mu = std::move(mu);
    return OMFunction(std::make_shared<const Node>(std::move(n)));
}

double OMFunction::operator()(double x) const {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("function evaluation needs finite x >= 0");
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::affine:
        return n.a + n.b * x;
    case Kind::power:
        return std::pow(x, n.alpha);
    case Kind::log_mean: {
        if (x == 0.0) return 0.0;
        const double w = x - 1.0;
        if (w == 0.0) return 1.0;
        return w / std::log1p(w);
    }
    case Kind::moebius:
        return moebius_kernel(x, n.lambda);
    case Kind::measure: {
        MeasureIntegrand<double> g{[x](double lam) { return moebius_kernel(x, lam); }, 1.0, x};
        return integrate_scalar(n.mu, g);
    }
    case Kind::sum: {
        double acc = 0.0;
        for (const auto& [w, f] : n.terms) acc += w * f(x);
        return acc;
    }
    }
    return 0.0; // unreachable
}

OMFunction omf_add(const OMFunction& f, const OMFunction& g) {
    OMFunction::Node n;
    n.kind = OMFunction::Kind::sum;
    auto append = [&n](const OMFunction& h, double w) {
        const auto& hn = h.node();
        if (hn.kind == OMFunction::Kind::sum) {
            for (const auto& [iw, part] : hn.terms) n.terms.emplace_back(w * iw, part);
        } else {
            n.terms.emplace_back(w, h);
        }
    };
    append(f, 1.0);
    append(g, 1.0);
    return OMFunction(std::make_shared<const OMFunction::Node>(std::move(n)));
}

OMFunction omf_scale(double k, const OMFunction& f) {
    if (k < 0) throw NegativeScalar("omf_scale: negative scalar");
    if (k == 0.0) return OMFunction::affine(0.0, 0.0);
    const auto& fn = f.node();
    if (fn.kind == OMFunction::Kind::affine) return OMFunction::affine(k * fn.a, k * fn.b);
    OMFunction::Node n;
    n.kind = OMFunction::Kind::sum;
    if (fn.kind == OMFunction::Kind::sum) {
        for (const auto& [w, part] : fn.terms) n.terms.emplace_back(k * w, part);
    } else {
        n.terms.emplace_back(k, f);
    }
    return OMFunction(std::make_shared<const OMFunction::Node>(std::move(n)));
}

std::vector<double> default_grid() {
    std::vector<double> g;
    g.reserve(104);
    for (int i = 0; i <= 100; ++i) g.push_back(i / 10.0);
    g.push_back(20.0);
    g.push_back(50.0);
    g.push_back(100.0);
    return g;
}

bool omf_leq(const OMFunction& f, const OMFunction& g, const std::vector<double>& grid,
             double tol) {
    if (grid.empty()) throw DegenerateGrid("omf_leq: empty grid");
    for (double x : grid) {
        const double fx = f(x);
        const double gx = g(x);
        const double slack = tol * std::max({1.0, std::abs(fx), std::abs(gx)});
        if (fx > gx + slack) return false;
    }
    return true;
}

std::vector<double> loewner_default_points() {
    return {0.1, 0.3, 0.7, 1.0, 1.5, 2.5, 4.0, 6.5, 10.0};
}

LoewnerVerdict loewner_check(const std::function<double(double)>& f,
                             const std::vector<double>& points) {
    const std::size_t n = points.size();
    if (n < 2) throw DegenerateGrid("loewner_check: need at least two points");
    for (double x : points)
        if (!(x > 0.0) || !std::isfinite(x))
            throw DegenerateGrid("loewner_check: points must be finite and > 0");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(points[i] - points[j]) <
                1e-12 * std::max({points[i], points[j], 1.0}))
                throw DegenerateGrid("loewner_check: points must be distinct");

    std::vector<double> fx(n);
    for (std::size_t i = 0; i < n; ++i) fx[i] = f(points[i]);

    Eigen::MatrixXd L(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 1e-6 * points[i];
        L(i, i) = (f(points[i] + h) - f(points[i] - h)) / (2.0 * h);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = (fx[i] - fx[j]) / (points[i] - points[j]);
            L(i, j) = d;
            L(j, i) = d;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    LoewnerVerdict v;
    v.min_loewner_eigenvalue = lo;
    v.is_monotone_candidate = lo >= -1e-8 * std::max(1.0, hi);
    v.points = points;
    return v;
}

LoewnerVerdict loewner_check(const OMFunction& f, const std::vector<double>& points) {
    return loewner_check([&f](double x) { return f(x); }, points);
}

} // namespace kuboando
