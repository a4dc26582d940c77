#ifndef KUBOANDO_MATCORE_HPP
#define KUBOANDO_MATCORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "kuboando/errors.hpp"

namespace kuboando {

// Relative tolerances shared across the matrix layer. Comparisons are
// relative to the operator norm with an absolute floor for near-zero
// matrices.
namespace tol {
inline constexpr double sym_rel = 1e-12;     // Hermitian symmetry check
inline constexpr double psd_rel = 1e-10;     // PSD eigenvalue floor
inline constexpr double inv_rel = 1e-12;     // invertibility threshold
inline constexpr double abs_floor = 1e-12;   // floor for near-zero matrices; sized
                                             // for rounding in dim<=64 triple products
}

inline double effective_tol(double rel, double scale) {
    double t = rel * scale;
    return t > tol::abs_floor ? t : tol::abs_floor;
}

struct Spectral {
    Eigen::VectorXd values;    // ascending
    Eigen::MatrixXcd vectors;  // unitary, columns are eigenvectors
};

/// Finite Hermitian matrix with a lazily computed, immutable spectral
/// decomposition. Values are immutable after construction; copies share
/// the cache. Safe for concurrent reads.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(Eigen::MatrixXcd entries);
    explicit HermitianMatrix(const Eigen::MatrixXd& real_entries);

    static HermitianMatrix identity(Eigen::Index n);
    static HermitianMatrix zero(Eigen::Index n);
    static HermitianMatrix diagonal(const Eigen::VectorXd& d);

    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    const Spectral& spectral() const;
    double operator_norm() const;
    double min_eigenvalue() const;
    double max_imag() const;

    /// Real part of the entries; throws DomainError if the imaginary part
    /// exceeds rel_tol * max(1, operator norm).
    Eigen::MatrixXd real_entries(double rel_tol = 1e-10) const;

  private:
    struct CacheSlot {
        std::once_flag flag;
        std::optional<Spectral> value;
    };

    Eigen::MatrixXcd entries_;
    std::shared_ptr<CacheSlot> cache_;
};

/// Positive semidefinite matrix. Eigenvalues in [-tol_psd, 0) are read as 0.
class PsdMatrix {
  public:
    explicit PsdMatrix(HermitianMatrix h);
    explicit PsdMatrix(const Eigen::MatrixXd& real_entries);
    explicit PsdMatrix(Eigen::MatrixXcd entries);

    static PsdMatrix identity(Eigen::Index n);
    static PsdMatrix zero(Eigen::Index n);
    static PsdMatrix diagonal(const Eigen::VectorXd& d);

    Eigen::Index dim() const { return h_.dim(); }
    const HermitianMatrix& matrix() const { return h_; }
    const Eigen::MatrixXcd& entries() const { return h_.entries(); }

    Eigen::VectorXd clamped_eigenvalues() const;
    double operator_norm() const { return h_.operator_norm(); }
    bool invertible(double rel_tol = tol::inv_rel) const;

  private:
    HermitianMatrix h_;
};

// -- operations ------------------------------------------------------------

const Spectral& spectral_decompose(const HermitianMatrix& h);

HermitianMatrix apply_spectral(const PsdMatrix& a, const std::function<double(double)>& g);

bool is_psd(const HermitianMatrix& h, double tol);
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

double operator_norm(const HermitianMatrix& h);

PsdMatrix inv_psd(const PsdMatrix& a);
PsdMatrix sqrt_psd(const PsdMatrix& a);

/// Projection onto the PSD cone for a matrix that is PSD in exact arithmetic
/// but may carry rounding debris from products whose operands are much larger
/// than the result. Validates against a budget scaled by the operand sizes
/// (throws NotPsd beyond it), then clamps residual negative eigenvalues to 0.
PsdMatrix psd_project(const HermitianMatrix& h, double operand_scale);

// Hermitian-closed arithmetic helpers.
HermitianMatrix herm_add(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix herm_sub(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix herm_scale(double k, const HermitianMatrix& a);
/// C * X * C with the result re-symmetrized against roundoff.
HermitianMatrix congruence(const HermitianMatrix& c, const HermitianMatrix& x);

PsdMatrix psd_add(const PsdMatrix& a, const PsdMatrix& b);
PsdMatrix psd_scale(double k, const PsdMatrix& a);
/// A + eps*I.
PsdMatrix psd_shift(const PsdMatrix& a, double eps);

} // namespace kuboando

#endif
