#include "kuboando/matcore.hpp"

#include <cmath>
#include <sstream>

namespace kuboando {

namespace {

Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& m) {
    return 0.5 * (m + m.adjoint());
}

} // namespace

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries)
    : cache_(std::make_shared<CacheSlot>()) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw NonHermitianInput("matrix must be square and nonempty");
    const double scale = entries.cwiseAbs().maxCoeff();
    const double asym = (entries - entries.adjoint().eval()).cwiseAbs().maxCoeff();
    if (asym > effective_tol(tol::sym_rel, scale)) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |H - H*| = " << asym;
        throw NonHermitianInput(os.str());
    }
    entries_ = symmetrized(entries);
}

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXd& real_entries)
    : HermitianMatrix(Eigen::MatrixXcd(real_entries.cast<std::complex<double>>())) {}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
    return HermitianMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(n, n)));
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
    return HermitianMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(n, n)));
}

HermitianMatrix HermitianMatrix::diagonal(const Eigen::VectorXd& d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.size(), d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) m(i, i) = d(i);
    return HermitianMatrix(std::move(m));
}

const Spectral& HermitianMatrix::spectral() const {
    std::call_once(cache_->flag, [this] {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_);
        if (es.info() != Eigen::Success)
            throw Error("eigendecomposition failed to converge");
        cache_->value = Spectral{es.eigenvalues(), es.eigenvectors()};
    });
    return *cache_->value;
}

double HermitianMatrix::operator_norm() const {
    const Spectral& s = spectral();
    if (s.values.size() == 0) return 0.0;
    return s.values.cwiseAbs().maxCoeff();
}

double HermitianMatrix::min_eigenvalue() const {
    return spectral().values(0);
}

double HermitianMatrix::max_imag() const {
    return entries_.imag().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd HermitianMatrix::real_entries(double rel_tol) const {
    const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
    if (max_imag() > rel_tol * scale) {
        std::ostringstream os;
        os << "matrix has non-negligible imaginary part: " << max_imag();
        throw DomainError(os.str());
    }
    return entries_.real();
}

PsdMatrix::PsdMatrix(HermitianMatrix h) : h_(std::move(h)) {
    const double lo = h_.min_eigenvalue();
    if (lo < -effective_tol(tol::psd_rel, h_.operator_norm())) {
        std::ostringstream os;
        os << "matrix is not positive semidefinite: min eigenvalue = " << lo;
        throw NotPsd(os.str());
    }
}

PsdMatrix::PsdMatrix(const Eigen::MatrixXd& real_entries)
    : PsdMatrix(HermitianMatrix(real_entries)) {}

PsdMatrix::PsdMatrix(Eigen::MatrixXcd entries)
    : PsdMatrix(HermitianMatrix(std::move(entries))) {}

PsdMatrix PsdMatrix::identity(Eigen::Index n) { return PsdMatrix(HermitianMatrix::identity(n)); }
PsdMatrix PsdMatrix::zero(Eigen::Index n) { return PsdMatrix(HermitianMatrix::zero(n)); }
PsdMatrix PsdMatrix::diagonal(const Eigen::VectorXd& d) {
    return PsdMatrix(HermitianMatrix::diagonal(d));
}

Eigen::VectorXd PsdMatrix::clamped_eigenvalues() const {
    return h_.spectral().values.cwiseMax(0.0);
}

bool PsdMatrix::invertible(double rel_tol) const {
    const double nrm = h_.operator_norm();
    if (nrm == 0.0) return false;
    return h_.min_eigenvalue() > rel_tol * nrm;
}

const Spectral& spectral_decompose(const HermitianMatrix& h) { return h.spectral(); }

HermitianMatrix apply_spectral(const PsdMatrix& a, const std::function<double(double)>& g) {
    const Spectral& s = a.matrix().spectral();
    Eigen::VectorXd lam = a.clamped_eigenvalues();
    Eigen::VectorXd glam(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double v = g(lam(i));
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "scalar function undefined at eigenvalue " << lam(i);
            throw DomainError(os.str());
        }
        glam(i) = v;
    }
    Eigen::MatrixXcd m = s.vectors * glam.asDiagonal() * s.vectors.adjoint();
    return HermitianMatrix(Eigen::MatrixXcd(0.5 * (m + m.adjoint().eval())));
}

bool is_psd(const HermitianMatrix& h, double tol) {
    return h.min_eigenvalue() >= -tol * std::max(1.0, h.operator_norm());
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("loewner_leq: dimensions differ");
    return is_psd(herm_sub(b, a), tol);
}

double operator_norm(const HermitianMatrix& h) { return h.operator_norm(); }

PsdMatrix inv_psd(const PsdMatrix& a) {
    const double nrm = a.operator_norm();
    if (nrm == 0.0 || a.matrix().min_eigenvalue() <= tol::inv_rel * nrm)
        throw SingularMatrix("inv_psd: matrix is numerically singular");
    return PsdMatrix(apply_spectral(a, [](double x) { return 1.0 / x; }));
}

PsdMatrix sqrt_psd(const PsdMatrix& a) {
    return PsdMatrix(apply_spectral(a, [](double x) { return std::sqrt(x); }));
}

PsdMatrix psd_project(const HermitianMatrix& h, double operand_scale) {
    const double guard = effective_tol(1e-8, operand_scale);
    const double lo = h.min_eigenvalue();
    if (lo < -guard) {
        std::ostringstream os;
        os << "psd_project: min eigenvalue " << lo << " is negative beyond the rounding budget "
           << guard;
        throw NotPsd(os.str());
    }
    const Spectral& sp = h.spectral();
    const Eigen::VectorXd clamped = sp.values.cwiseMax(0.0);
    return PsdMatrix(Eigen::MatrixXcd(sp.vectors * clamped.asDiagonal() * sp.vectors.adjoint()));
}

HermitianMatrix herm_add(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("herm_add: dimensions differ");
    return HermitianMatrix(Eigen::MatrixXcd(a.entries() + b.entries()));
}

HermitianMatrix herm_sub(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("herm_sub: dimensions differ");
    return HermitianMatrix(Eigen::MatrixXcd(a.entries() - b.entries()));
}

HermitianMatrix herm_scale(double k, const HermitianMatrix& a) {
    return HermitianMatrix(Eigen::MatrixXcd(k * a.entries()));
}

HermitianMatrix congruence(const HermitianMatrix& c, const HermitianMatrix& x) {
    if (c.dim() != x.dim()) throw DimensionMismatch("congruence: dimensions differ");
    Eigen::MatrixXcd m = c.entries() * x.entries() * c.entries();
    return HermitianMatrix(Eigen::MatrixXcd(0.5 * (m + m.adjoint().eval())));
}

PsdMatrix psd_add(const PsdMatrix& a, const PsdMatrix& b) {
    return PsdMatrix(herm_add(a.matrix(), b.matrix()));
}

PsdMatrix psd_scale(double k, const PsdMatrix& a) {
    if (k < 0) throw NegativeScalar("psd_scale: negative scalar");
    return PsdMatrix(herm_scale(k, a.matrix()));
}

PsdMatrix psd_shift(const PsdMatrix& a, double eps) {
    Eigen::MatrixXcd m = a.entries();
    m += eps * Eigen::MatrixXcd::Identity(a.dim(), a.dim());
    return PsdMatrix(std::move(m));
}

} // namespace kuboando
