#ifndef KUBOANDO_MEASURES_HPP
#define KUBOANDO_MEASURES_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kuboando/errors.hpp"
#include "kuboando/quadrature.hpp"

namespace kuboando {

/// One interior atom of a measure on (0, inf).
struct MeasureAtom {
    double location;  // in (0, inf)
    double mass;      // >= 0
};

/// Absolutely continuous component, stored as a density with respect to
/// dv in the log variable v = log(lambda): mu(d lambda) = rho(log lambda)
/// d log(lambda). The log carrier keeps heavy-tailed catalog densities
/// (the logarithmic-mean kernel) representable where lambda itself
/// overflows a double.
struct DensityComponent {
    std::string name;                        // catalog id or custom label
    double scale = 1.0;                      // >= 0
    std::function<double(double)> rho_log;   // density in v, evaluated before scaling
};

/// Finite Borel measure on [0, inf]: atoms at 0 and inf, finitely many
/// interior atoms, plus optional density components.
class RepMeasure {
  public:
    RepMeasure() = default;

    static RepMeasure zero() { return RepMeasure(); }
    static RepMeasure at_zero(double mass);
    static RepMeasure at_inf(double mass);
    static RepMeasure dirac(double location, double mass = 1.0);
    static RepMeasure with_density(DensityComponent d, QuadSpec q = {});

    double atom_zero() const { return atom_zero_; }
    double atom_inf() const { return atom_inf_; }
    const std::vector<MeasureAtom>& interior_atoms() const { return atoms_; }
    const std::vector<DensityComponent>& density() const { return density_; }
    const QuadSpec& quad() const { return quad_; }

    RepMeasure with_quad(QuadSpec q) const;

    bool has_density() const { return !density_.empty(); }
    bool has_atoms() const;
    bool is_zero() const { return !has_density() && !has_atoms(); }

    /// Summed density value at v = log(lambda).
    double rho_log(double v) const;

    friend RepMeasure measure_add(const RepMeasure& a, const RepMeasure& b);
    friend RepMeasure measure_scale(double k, const RepMeasure& a);

  private:
    double atom_zero_ = 0.0;
    double atom_inf_ = 0.0;
    std::vector<MeasureAtom> atoms_;  // strictly increasing locations
    std::vector<DensityComponent> density_;
    QuadSpec quad_;

    void insert_atom(double location, double mass);
    void prune();
};

/// Integrand on [0, inf] with declared endpoint values. eval is called
/// only with lambda in [e^-350, e^350]; beyond that range the declared
/// endpoint limits stand in (the substitution error for integrands with
/// finite limits is below any tolerance in play).
template <class T>
struct MeasureIntegrand {
    std::function<T(double lambda)> eval;
    std::optional<T> at_zero;
    std::optional<T> at_inf;
};

RepMeasure measure_add(const RepMeasure& a, const RepMeasure& b);
RepMeasure measure_scale(double k, const RepMeasure& a);

double total_mass(const RepMeasure& mu);

/// Pointwise order on measures. Throws IncomparableRepresentation when
/// exactly one side carries density mass while the other carries atoms.
bool measure_leq(const RepMeasure& mu, const RepMeasure& nu);

// -- catalog densities -----------------------------------------------------

/// Representing density of the geometric mean, 1/(pi sqrt(lambda) (1+lambda));
/// in the log variable: 1/(2 pi cosh(v/2)).
DensityComponent geometric_density(double scale = 1.0);

/// Representing density of the logarithmic mean,
/// 1/(lambda ((log lambda)^2 + pi^2)); in the log variable the Cauchy
/// kernel 1/(v^2 + pi^2).
DensityComponent logmean_density(double scale = 1.0);

/// Catalog lookup by name {"geometric", "logmean-numeric"}; throws ParseError
/// on unknown names.
DensityComponent density_by_name(const std::string& name, double scale = 1.0);

/// Wrap a density given in the natural variable, d(lambda) d lambda.
/// Contributions where lambda is not representable are dropped.
DensityComponent density_from_lambda(std::string name,
                                     std::function<double(double)> d_lambda,
                                     double scale = 1.0);

// -- integration -----------------------------------------------------------

template <class T>
T integrate(const RepMeasure& mu, const MeasureIntegrand<T>& g, T zero) {
    const bool need_zero = mu.atom_zero() > 0.0 || mu.has_density();
    const bool need_inf = mu.atom_inf() > 0.0 || mu.has_density();
    if (need_zero && !g.at_zero)
        throw MissingEndpointValue("integrate: integrand lacks a declared value at 0");
    if (need_inf && !g.at_inf)
        throw MissingEndpointValue("integrate: integrand lacks a declared value at inf");

    T acc = zero;
    if (mu.atom_zero() > 0.0) acc = acc + mu.atom_zero() * (*g.at_zero);
    if (mu.atom_inf() > 0.0) acc = acc + mu.atom_inf() * (*g.at_inf);
    for (const MeasureAtom& a : mu.interior_atoms())
        if (a.mass > 0.0) acc = acc + a.mass * g.eval(a.location);

    if (mu.has_density()) {
        const auto& nodes = halfline_log_nodes(mu.quad().nodes);
        T quad = zero;
        for (const HalfLineNode& n : nodes) {
            const double w = n.weight * mu.rho_log(n.v);
            if (w == 0.0) continue;
            if (n.v < -integrand_log_cutoff)
                quad = quad + w * (*g.at_zero);
            else if (n.v > integrand_log_cutoff)
                quad = quad + w * (*g.at_inf);
            else
                quad = quad + w * g.eval(std::exp(n.v));
        }
        acc = acc + quad;
    }
    return acc;
}

double integrate_scalar(const RepMeasure& mu, const MeasureIntegrand<double>& g);

} // namespace kuboando

#endif
