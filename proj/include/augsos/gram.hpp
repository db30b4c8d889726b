#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "augsos/certificate.hpp"
#include "augsos/exact_linalg.hpp"
#include "augsos/group.hpp"
#include "augsos/ring.hpp"

namespace augsos {

/// Ordered, distinct, normalized group elements b_1..b_N.
struct SupportBasis {
  std::vector<Word> elements;
  std::size_t size() const { return elements.size(); }
};

/// The cells (i, j) with b_i^-1 b_j = g, and the required sum target(g).
struct GramConstraint {
  Word g;
  Rational value;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
};

/// f = b^* P b with P symmetric PSD. The constraints partition all N^2 cells.
struct GramProblem {
  GroupPtr group;
  SupportBasis basis;
  RingElement target;
  std::vector<GramConstraint> constraints;
  /// Some target(g) != 0 has no cell at all: no P can work.
  bool uncovered = false;
  /// Basis is a whole finite group, so the problem is invariant under
  /// left translation and the class-mean Gram matrix decides it exactly.
  bool translation_invariant = false;
};

struct LambdaGrid {
  int min_exponent = -20;  // doubling starts at 2^min_exponent
  int max_exponent = 20;
  int bisection_steps = 40;
};

struct SolverConfig {
  double tol = 1e-10;
  std::int64_t max_iter = 100'000;
  std::optional<int> radius;  // default: ceil(max word length / 2), whole group when finite
  LambdaGrid lambda_grid;
  std::uint64_t seed = 0;
  mpz_class denominator_bound{1'000'000'000};
  std::size_t basis_guard = 2000;
};

/// BFS ball covering supp(target). Finite models use the whole group unless
/// a radius is given. Throws BasisTooLarge past `guard` elements.
SupportBasis support_basis(const RingElement& target, std::optional<int> radius, std::size_t guard = 2000);

GramProblem make_gram_problem(const RingElement& target, SupportBasis basis);

struct NumericSolution {
  bool feasible = false;
  std::size_t n = 0;
  std::vector<double> p;  // row-major n x n
  std::int64_t iterations = 0;
  double affine_residual = 0;
  double min_eigenvalue = 0;
};

/// Dykstra alternating projections between the affine constraint set and the
/// PSD cone, started from 0.
NumericSolution solve_psd(const GramProblem& problem, const SolverConfig& config = {});

/// Continued-fraction rounding followed by the exact per-class projection, so
/// b^* P b = target holds exactly. Translation-invariant problems are also
/// averaged over the group, which lands on the class-mean matrix.
QMatrix rationalize(const std::vector<double>& p, const GramProblem& problem, const mpz_class& denominator_bound);

/// The exact class-mean matrix P_ij = target(g) / |C_g|.
QMatrix class_mean_gram(const GramProblem& problem);

/// Exact LDL^T check. A NotPSD result carries x with x^T P x < 0.
LdlResult psd_check_exact(const QMatrix& p);

/// Weighted rows sum_j v_k[j] b_j from an exact PSD P. Throws NotPsd.
SosCertificate extract_sos(const QMatrix& p, const SupportBasis& basis, const RingElement& target);

/// One attempt at an exact certificate for `target`; nullopt if the numeric
/// stage or the exact PSD check fails.
std::optional<SosCertificate> certify_sos(const RingElement& target, const SolverConfig& config = {});

struct LambdaResult {
  Rational lambda;
  SosCertificate certificate;
};

/// Smallest lambda on the doubling-then-bisection grid such that
/// target + lambda u gets an exact certificate. Throws SearchFailed.
LambdaResult order_unit_lambda_search(const RingElement& target, const RingElement& u,
                                      const SolverConfig& config = {});

/// Largest lambda found by bisection with Delta^2 - lambda Delta certified.
/// The certificate's target is Delta^2 - lambda Delta itself.
LambdaResult spectral_gap_search(const GroupPtr& group, const SolverConfig& config = {});

/// Base certifier for theorem_main_certificate: order unit Delta.
ElementCertifier gram_base_certifier(const SolverConfig& config = {});

// Finite models: regular representation rho(f)_{x,y} = f(x y^-1).

QMatrix regular_representation(const RingElement& f);

enum class Positivity { Psd, NotPsd };

/// Exact PSD test of rho(f). Throws UnsupportedModel for non-finite groups.
Positivity finite_positivity_oracle(const RingElement& f);

/// rho(u) positive definite on the complement of the constants.
bool finite_order_unit_oracle(const RingElement& u);

/// Eigenvalues of rho(f) in double precision, ascending (f hermitian).
std::vector<double> regular_spectrum(const RingElement& f);

/// Smallest eigenvalue of rho(Delta) above `zero_tol`.
double laplacian_eigen_gap(const GroupPtr& group, double zero_tol = 1e-9);

}  // namespace augsos
