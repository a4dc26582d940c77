#include <cmath>

#include "doctest.h"
#include "kuboando/measures.hpp"

using namespace kuboando;

namespace {

// scalar integral of the connection kernel (1+lambda)x/(lambda+x) with its
// continuous endpoint values 1 and x
double kernel_integral(const RepMeasure& mu, double x) {
    MeasureIntegrand<double> g;
    g.eval = [x](double lam) { return (1.0 + lam) * x / (lam + x); };
    g.at_zero = 1.0;
    g.at_inf = x;
    return integrate<double>(mu, g, 0.0);
}

} // namespace

TEST_CASE("factories validate their arguments") {
    CHECK_THROWS_AS(RepMeasure::at_zero(-1.0), NegativeScalar);
    CHECK_THROWS_AS(RepMeasure::dirac(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(RepMeasure::dirac(-2.0, 1.0), DomainError);
    CHECK_THROWS_AS(RepMeasure::dirac(2.0, -1.0), NegativeScalar);
    CHECK_THROWS_AS(RepMeasure::with_density(geometric_density(-1.0)), NegativeScalar);
    CHECK_THROWS_AS(RepMeasure::with_density(geometric_density(), QuadSpec{4}), DomainError);
    CHECK(RepMeasure::zero().is_zero());
}

TEST_CASE("atoms merge by location and zero mass is pruned") {
    const RepMeasure a = measure_add(RepMeasure::dirac(2.0, 0.25), RepMeasure::dirac(2.0, 0.5));
    REQUIRE(a.interior_atoms().size() == 1);
    CHECK(a.interior_atoms()[0].mass == 0.75);
    const RepMeasure b = measure_add(RepMeasure::dirac(1.0, 0.5), RepMeasure::dirac(3.0, 0.0));
    CHECK(b.interior_atoms().size() == 1);
    const RepMeasure c = measure_scale(0.0, a);
    CHECK(c.is_zero());
    CHECK_THROWS_AS(measure_scale(-1.0, a), NegativeScalar);
}

TEST_CASE("total mass of atomic measures is the mass sum") {
    const RepMeasure mu = measure_add(measure_add(RepMeasure::at_zero(0.5), RepMeasure::at_inf(0.25)),
                                      RepMeasure::dirac(3.0, 0.125));
    CHECK(total_mass(mu) == doctest::Approx(0.875).epsilon(1e-15));
    CHECK(total_mass(RepMeasure::zero()) == 0.0);
}

TEST_CASE("catalog densities have unit mass") {
    CHECK(total_mass(RepMeasure::with_density(geometric_density())) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_mass(RepMeasure::with_density(logmean_density())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling the rule leaves catalog masses unchanged at 1e-8") {
    const double g200 = total_mass(RepMeasure::with_density(geometric_density(), QuadSpec{200}));
    const double g400 = total_mass(RepMeasure::with_density(geometric_density(), QuadSpec{400}));
    CHECK(std::abs(g400 - g200) < 1e-8);
    const double l200 = total_mass(RepMeasure::with_density(logmean_density(), QuadSpec{200}));
    const double l400 = total_mass(RepMeasure::with_density(logmean_density(), QuadSpec{400}));
    CHECK(std::abs(l400 - l200) < 1e-8);
}

TEST_CASE("kernel integral against the geometric density is the square root") {
    const RepMeasure mu = RepMeasure::with_density(geometric_density());
    CHECK(kernel_integral(mu, 4.0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(kernel_integral(mu, 9.0) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(kernel_integral(mu, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel integral against the logarithmic density is the log mean") {
    const RepMeasure mu = RepMeasure::with_density(logmean_density());
    // (x-1)/log x at x=4: 3/log 4
    CHECK(kernel_integral(mu, 4.0) == doctest::Approx(3.0 / std::log(4.0)).epsilon(1e-9));
    CHECK(kernel_integral(mu, 0.25) == doctest::Approx(0.75 / std::log(4.0)).epsilon(1e-9));
}

TEST_CASE("point masses evaluate the integrand exactly") {
    const RepMeasure mu = RepMeasure::dirac(3.0, 1.0);
    MeasureIntegrand<double> g;
    g.eval = [](double lam) { return lam * lam; };
    const double v = integrate<double>(mu, g, 0.0);
    CHECK(v == 9.0);
    // endpoint masses require declared endpoint values
    MeasureIntegrand<double> h;
    h.eval = [](double lam) { return lam; };
    CHECK_THROWS_AS(integrate<double>(RepMeasure::at_zero(1.0), h, 0.0), MissingEndpointValue);
    CHECK_THROWS_AS(integrate<double>(RepMeasure::with_density(geometric_density()), h, 0.0),
                    MissingEndpointValue);
}

TEST_CASE("measure order compares atoms pointwise") {
    const RepMeasure half = RepMeasure::dirac(1.0, 0.5);
    const RepMeasure full = RepMeasure::dirac(1.0, 1.0);
    CHECK(measure_leq(half, full));
    CHECK_FALSE(measure_leq(full, half));
    // the remark pair: dirac(1) against atoms at the endpoints
    const RepMeasure ends = measure_add(RepMeasure::at_zero(0.5), RepMeasure::at_inf(0.5));
    CHECK_FALSE(measure_leq(full, ends));
    CHECK_FALSE(measure_leq(ends, full));
}

TEST_CASE("measure order compares densities pointwise") {
    const RepMeasure one = RepMeasure::with_density(geometric_density(1.0));
    const RepMeasure two = RepMeasure::with_density(geometric_density(2.0));
    CHECK(measure_leq(one, two));
    CHECK_FALSE(measure_leq(two, one));
    // atoms against a pure density have no pointwise comparison
    CHECK_THROWS_AS(measure_leq(RepMeasure::dirac(1.0, 0.1), one), IncomparableRepresentation);
}

TEST_CASE("density catalog lookup") {
    CHECK(density_by_name("geometric").name == "geometric");
    CHECK(density_by_name("logmean-numeric").name == "logmean-numeric");
    CHECK_THROWS_AS(density_by_name("cauchy"), ParseError);
}

TEST_CASE("densities defined in lambda agree with their log form") {
    // geometric density in the natural variable: 1/(pi sqrt(l) (1+l))
    const DensityComponent direct = density_from_lambda(
        "custom", [](double l) { return 1.0 / (std::acos(-1.0) * std::sqrt(l) * (1.0 + l)); });
    const RepMeasure a = RepMeasure::with_density(direct);
    const RepMeasure b = RepMeasure::with_density(geometric_density());
    CHECK(total_mass(a) == doctest::Approx(total_mass(b)).epsilon(1e-10));
    CHECK(kernel_integral(a, 4.0) == doctest::Approx(kernel_integral(b, 4.0)).epsilon(1e-10));
}

TEST_CASE("scaling acts on every component") {
    const RepMeasure mu = measure_add(RepMeasure::dirac(2.0, 1.0),
                                      RepMeasure::with_density(geometric_density()));
    const RepMeasure half = measure_scale(0.5, mu);
    CHECK(total_mass(half) == doctest::Approx(0.5 * total_mass(mu)).epsilon(1e-12));
    CHECK(half.interior_atoms()[0].mass == 0.5);
    CHECK(half.rho_log(0.0) == doctest::Approx(0.5 * mu.rho_log(0.0)).epsilon(1e-15));
}
