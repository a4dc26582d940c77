#ifndef KUBOANDO_QUADRATURE_HPP
#define KUBOANDO_QUADRATURE_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace kuboando {

/// Deterministic fixed-node rule for integrals over (0, inf). Node layout:
/// Gauss-Legendre points t_i on (0,1) composed with the fixed map
/// v = pi * tan(pi*(t - 1/2)), lambda = e^v, which compactifies the
/// half-line through its log variable.
struct QuadSpec {
    int nodes = 200;  // >= 8
};

/// Gauss-Legendre nodes and weights on (0,1), computed by Golub-Welsch.
/// Cached per n; thread-safe.
const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre_01(int n);

struct HalfLineNode {
    double v;       // log(lambda)
    double weight;  // GL weight times the jacobian dv/dt = pi^2 * sec^2(pi*(t-1/2))
};

/// Quadrature nodes for integrals  int rho(v) g(e^v) dv  over v in R.
/// Cached per n; thread-safe.
const std::vector<HalfLineNode>& halfline_log_nodes(int n);

/// Integrands are evaluated at lambda = e^v only for |v| <= this bound;
/// outside it their declared endpoint limits are used instead.
inline constexpr double integrand_log_cutoff = 350.0;

} // namespace kuboando

#endif
