#include "kuboando/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "kuboando/errors.hpp"

namespace kuboando {

namespace {

std::pair<Eigen::VectorXd, Eigen::VectorXd> compute_gauss_legendre_01(int n) {
    // Golub-Welsch: eigenvalues of the Jacobi matrix for Legendre
    // polynomials are the nodes on (-1,1); weights come from the first
    // components of the eigenvectors.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jac(k, k - 1) = b;
        jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    Eigen::VectorXd x = es.eigenvalues();
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) {
        const double q0 = es.eigenvectors()(0, i);
        w(i) = 2.0 * q0 * q0;
    }
    // map (-1,1) -> (0,1)
    Eigen::VectorXd t = 0.5 * (x.array() + 1.0);
    Eigen::VectorXd wt = 0.5 * w;
    return {t, wt};
}

template <class K, class V>
const V& cached(std::map<K, std::unique_ptr<V>>& cache, std::mutex& m, const K& key,
                V (*make)(K)) {
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<V>(make(key))).first;
    return *it->second;
}

std::vector<HalfLineNode> compute_halfline(int n) {
    const auto& [t, wt] = gauss_legendre_01(n);
    std::vector<HalfLineNode> nodes(static_cast<size_t>(n));
    const double pi = M_PI;
    for (int i = 0; i < n; ++i) {
        const double u = pi * (t(i) - 0.5);
        const double tanu = std::tan(u);
        const double v = pi * tanu;
        const double jac = pi * pi * (1.0 + tanu * tanu);
        nodes[static_cast<size_t>(i)] = {v, wt(i) * jac};
    }
    return nodes;
}

} // namespace

const std::pair<Eigen::VectorXd, Eigen::VectorXd>& gauss_legendre_01(int n) {
    if (n < 1) throw DomainError("gauss_legendre_01: need at least one node");
    static std::map<int, std::unique_ptr<std::pair<Eigen::VectorXd, Eigen::VectorXd>>> cache;
    static std::mutex m;
    return cached(cache, m, n, +[](int k) { return compute_gauss_legendre_01(k); });
}

const std::vector<HalfLineNode>& halfline_log_nodes(int n) {
    if (n < 8) throw DomainError("quadrature: node count must be >= 8");
    static std::map<int, std::unique_ptr<std::vector<HalfLineNode>>> cache;
    static std::mutex m;
    return cached(cache, m, n, +[](int k) { return compute_halfline(k); });
}

} // namespace kuboando
