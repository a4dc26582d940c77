#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "kuboando/connections.hpp"

namespace kuboando {

struct TrialConfig {
    int dim_lo = 1;
    int dim_hi = 6;
    int trials = 200;
    std::uint64_t seed = 20260214;
    std::map<std::string, double> tol; // named overrides for the check tolerances

    double tol_or(const std::string& name, double fallback) const;
    void validate() const;
};

/// Outcome of one property check. worst_residual is the largest scaled
/// violation (or deviation) seen across all trials; witness holds the
/// serialized inputs of the first failing trial and is empty on pass.
struct VerifyReport {
    std::string property;
    std::string anchor; // the statement under test, in plain notation
    int trials = 0;
    double worst_residual = 0.0;
    bool pass = false;
    std::string witness;
};

/// Deterministic Gaussian/uniform source. Draws are derived from the raw
/// mt19937_64 stream with a fixed Box-Muller transform so that reports are
/// byte-identical across standard libraries.
class TrialRng {
  public:
    explicit TrialRng(std::uint64_t seed) : gen_(seed) {}
    double uniform();                // [0, 1)
    double normal();                 // standard normal
    int uniform_int(int lo, int hi); // inclusive range

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

PsdMatrix random_psd(TrialRng& rng, int dim);
PsdMatrix random_invertible_psd(TrialRng& rng, int dim);
PsdMatrix random_singular_psd(TrialRng& rng, int dim); // rank-deficient for dim >= 2
PsdMatrix random_projection(TrialRng& rng, int dim);   // orthogonal projection, rank in [1, dim-1] for dim >= 2

/// The checks run against any binary operation on PSD matrices, so that
/// deliberately broken fixtures exercise the harness alongside connections.
using BinaryOp = std::function<HermitianMatrix(const PsdMatrix&, const PsdMatrix&)>;

BinaryOp connection_op(const Connection& s);

/// (A, B) -> (AB + BA)/2: not monotone, used to prove the harness can fail.
BinaryOp broken_symmetrized_product();

/// Whether trial generation may feed the operation pairs that are singular on
/// both sides; spectral-calculus routes need one invertible argument.
enum class DrawPolicy { any, keep_second_invertible };

VerifyReport check_monotonicity(const BinaryOp& op, const std::string& name, DrawPolicy policy,
                                const TrialConfig& cfg);
VerifyReport check_transformer(const BinaryOp& op, const std::string& name, DrawPolicy policy,
                               const TrialConfig& cfg);
VerifyReport check_continuity_from_above(const BinaryOp& op, const std::string& name, DrawPolicy policy,
                                         const TrialConfig& cfg);
VerifyReport check_norm_axioms(const TrialConfig& cfg);
VerifyReport check_isometry(const TrialConfig& cfg);
VerifyReport check_mean_tfae(const Connection& s, const std::string& name, const TrialConfig& cfg);
VerifyReport check_convergence_equivalence(const std::vector<Connection>& seq, const Connection& limit,
                                           const std::string& name, const TrialConfig& cfg);
VerifyReport check_mean_limit(const TrialConfig& cfg);

/// The full default suite: the three axioms for each catalog connection, the
/// harness-soundness fixture, and the structural checks.
std::vector<VerifyReport> run_all(const TrialConfig& cfg);

std::string render_text(const std::vector<VerifyReport>& reports);
std::string render_csv(const std::vector<VerifyReport>& reports);

} // namespace kuboando
