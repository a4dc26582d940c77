#include "kuboando/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kuboando {

namespace {
constexpr double mass_tol = 1e-12;
} // namespace

RepMeasure RepMeasure::at_zero(double mass) {
    if (mass < 0) throw NegativeScalar("measure: negative atom mass");
    RepMeasure m;
    m.atom_zero_ = mass;
    m.prune();
    return m;
}

RepMeasure RepMeasure::at_inf(double mass) {
    if (mass < 0) throw NegativeScalar("measure: negative atom mass");
    RepMeasure m;
    m.atom_inf_ = mass;
    m.prune();
    return m;
}

RepMeasure RepMeasure::dirac(double location, double mass) {
    if (mass < 0) throw NegativeScalar("measure: negative atom mass");
    if (!(location > 0.0) || !std::isfinite(location))
        throw DomainError("measure: interior atom location must be in (0, inf)");
    RepMeasure m;
    m.insert_atom(location, mass);
    m.prune();
    return m;
}

RepMeasure RepMeasure::with_density(DensityComponent d, QuadSpec q) {
    if (d.scale < 0) throw NegativeScalar("measure: negative density scale");
    if (q.nodes < 8) throw DomainError("measure: quadrature node count must be >= 8");
    RepMeasure m;
    m.quad_ = q;
    m.density_.push_back(std::move(d));
    m.prune();
    return m;
}

RepMeasure RepMeasure::with_quad(QuadSpec q) const {
    if (q.nodes < 8) throw DomainError("measure: quadrature node count must be >= 8");
    RepMeasure m = *this;
    m.quad_ = q;
    return m;
}

bool RepMeasure::has_atoms() const {
    if (atom_zero_ > 0.0 || atom_inf_ > 0.0) return true;
    return std::any_of(atoms_.begin(), atoms_.end(),
                       [](const MeasureAtom& a) { return a.mass > 0.0; });
}

double RepMeasure::rho_log(double v) const {
    double r = 0.0;
    for (const DensityComponent& d : density_) r += d.scale * d.rho_log(v);
    return r;
}

void RepMeasure::insert_atom(double location, double mass) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), location,
                               [](const MeasureAtom& a, double loc) { return a.location < loc; });
    if (it != atoms_.end() && it->location == location)
        it->mass += mass;
    else
        atoms_.insert(it, MeasureAtom{location, mass});
}

void RepMeasure::prune() {
    std::erase_if(atoms_, [](const MeasureAtom& a) { return a.mass == 0.0; });
    std::erase_if(density_, [](const DensityComponent& d) { return d.scale == 0.0; });
}

RepMeasure measure_add(const RepMeasure& a, const RepMeasure& b) {
    RepMeasure out = a;
    out.atom_zero_ += b.atom_zero_;
    out.atom_inf_ += b.atom_inf_;
    for (const MeasureAtom& at : b.atoms_) out.insert_atom(at.location, at.mass);
    for (const DensityComponent& d : b.density_) {
        auto it = std::find_if(out.density_.begin(), out.density_.end(),
                               [&](const DensityComponent& e) { return e.name == d.name; });
        if (it != out.density_.end() && it->name != "custom")
            it->scale += d.scale;
        else
            out.density_.push_back(d);
    }
    out.quad_.nodes = std::max(a.quad_.nodes, b.quad_.nodes);
    out.prune();
    return out;
}

RepMeasure measure_scale(double k, const RepMeasure& a) {
    if (k < 0) throw NegativeScalar("measure_scale: negative scalar");
    RepMeasure out = a;
    out.atom_zero_ *= k;
    out.atom_inf_ *= k;
    for (MeasureAtom& at : out.atoms_) at.mass *= k;
    for (DensityComponent& d : out.density_) d.scale *= k;
    out.prune();
    return out;
}

double total_mass(const RepMeasure& mu) {
    MeasureIntegrand<double> one{[](double) { return 1.0; }, 1.0, 1.0};
    const double m = integrate<double>(mu, one, 0.0);
    if (!std::isfinite(m)) {
        std::ostringstream os;
        os << "total_mass: quadrature diverged (value " << m << ")";
        throw NonFiniteIntegral(os.str());
    }
    return m;
}

bool measure_leq(const RepMeasure& mu, const RepMeasure& nu) {
    if (mu.has_density() && !nu.has_density() && nu.has_atoms())
        throw IncomparableRepresentation(
            "measure_leq: left side has density mass where the right side has atoms");
    if (nu.has_density() && !mu.has_density() && mu.has_atoms())
        throw IncomparableRepresentation(
            "measure_leq: right side has density mass where the left side has atoms");

    if (nu.atom_zero() - mu.atom_zero() < -mass_tol) return false;
    if (nu.atom_inf() - mu.atom_inf() < -mass_tol) return false;

    auto mass_at = [](const RepMeasure& m, double loc) {
        for (const MeasureAtom& a : m.interior_atoms())
            if (a.location == loc) return a.mass;
        return 0.0;
    };
    for (const MeasureAtom& a : mu.interior_atoms())
        if (mass_at(nu, a.location) - a.mass < -mass_tol) return false;

    if (mu.has_density() || nu.has_density()) {
        const int n = std::max(mu.quad().nodes, nu.quad().nodes);
        for (const HalfLineNode& node : halfline_log_nodes(n))
            if (nu.rho_log(node.v) - mu.rho_log(node.v) < -mass_tol) return false;
    }
    return true;
}

DensityComponent geometric_density(double scale) {
    return DensityComponent{"geometric", scale, [](double v) {
                                const double c = std::cosh(0.5 * v);
                                return std::isfinite(c) ? 1.0 / (2.0 * M_PI * c) : 0.0;
                            }};
}

DensityComponent logmean_density(double scale) {
    return DensityComponent{"logmean-numeric", scale,
                            [](double v) { return 1.0 / (v * v + M_PI * M_PI); }};
}

DensityComponent density_by_name(const std::string& name, double scale) {
    if (name == "geometric") return geometric_density(scale);
    if (name == "logmean-numeric") return logmean_density(scale);
    throw ParseError("unknown density name: " + name);
}

DensityComponent density_from_lambda(std::string name, std::function<double(double)> d_lambda,
                                     double scale) {
    return DensityComponent{std::move(name), scale,
                            [d = std::move(d_lambda)](double v) {
                                const double lam = std::exp(v);
                                if (lam <= 0.0 || !std::isfinite(lam)) return 0.0;
                                const double val = d(lam) * lam;
                                return std::isfinite(val) ? val : 0.0;
                            }};
}

double integrate_scalar(const RepMeasure& mu, const MeasureIntegrand<double>& g) {
    return integrate<double>(mu, g, 0.0);
}

} // namespace kuboando
