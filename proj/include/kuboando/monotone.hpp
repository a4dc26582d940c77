#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "kuboando/errors.hpp"
#include "kuboando/measures.hpp"

namespace kuboando {

// Scalar functions on [0, inf) closed under nonnegative combinations.  The
// interesting members are operator monotone; the class only tracks structure,
// monotonicity is something you check (loewner_check), not something the type
// guarantees.
class OMFunction {
  public:
    enum class Kind { affine, power, log_mean, moebius, measure, sum };

    struct Node {
        Kind kind;
        double a = 0.0, b = 0.0; // affine: a + b*x
        double alpha = 0.0;      // power: x^alpha
        double lambda = 0.0;     // moebius: (1+lambda)x/(lambda+x)
        RepMeasure mu;           // measure-backed
        std::vector<std::pair<double, OMFunction>> terms; // weighted sum
    };

    static OMFunction affine(double a, double b);
    static OMFunction power(double alpha);
    static OMFunction log_mean();
    static OMFunction moebius(double lambda);
    static OMFunction from_measure(RepMeasure mu);

    double operator()(double x) const;
    // Value at the common fixed point x = 1; for a function arising from a
    // connection this equals the connection norm.
    double norm() const { return (*this)(1.0); }

    const Node& node() const { return *node_; }

  private:
    explicit OMFunction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;

    friend OMFunction omf_add(const OMFunction& f, const OMFunction& g);
    friend OMFunction omf_scale(double k, const OMFunction& f);
};

OMFunction omf_add(const OMFunction& f, const OMFunction& g);
OMFunction omf_scale(double k, const OMFunction& f);

// 0, 0.1, ..., 10 plus 20, 50, 100.
std::vector<double> default_grid();

// Pointwise f <= g on the grid, with slack tol * max(1, |f|, |g|) per point.
bool omf_leq(const OMFunction& f, const OMFunction& g,
             const std::vector<double>& grid = default_grid(), double tol = 1e-12);

struct LoewnerVerdict {
    bool is_monotone_candidate;
    double min_loewner_eigenvalue;
    std::vector<double> points;
};

std::vector<double> loewner_default_points();

// Positive semidefiniteness of the divided-difference (Loewner) matrix on the
// given points, a necessary condition for operator monotonicity.  Points must
// be distinct and strictly positive; diagonal entries use a central-difference
// derivative.
LoewnerVerdict loewner_check(const std::function<double(double)>& f,
                             const std::vector<double>& points = loewner_default_points());
LoewnerVerdict loewner_check(const OMFunction& f,
                             const std::vector<double>& points = loewner_default_points());

// Kernel of the integral representation: (1+lambda)x/(lambda+x) for
// lambda in (0, inf), organised so the value at x = 1 is exactly 1.
double moebius_kernel(double x, double lambda);

} // namespace kuboando
