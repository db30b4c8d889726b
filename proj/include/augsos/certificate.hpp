#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "augsos/family.hpp"
#include "augsos/group.hpp"
#include "augsos/ring.hpp"

namespace augsos {

/// Claim: target + lambda * order_unit = sum_i weights[i] a_i^* a_i + sum_j obligations[j]
/// where each a_i is a 1 x k row and each obligation is a hermitian k x k
/// matrix asserted, but not shown here, to be a sum of hermitian squares.
struct SosCertificate {
  SosCertificate(GroupPtr g, std::size_t size)
      : group(g), k(size), target(g, size, size) {}

  GroupPtr group;
  std::size_t k;
  RingMatrix target;
  Rational lambda = 0;
  std::optional<RingMatrix> order_unit;
  std::vector<Rational> weights;
  std::vector<RingMatrix> summands;
  std::vector<RingMatrix> obligations;

  void add_summand(const Rational& weight, RingMatrix row) {
    weights.push_back(weight);
    summands.push_back(std::move(row));
  }
};

enum class Verdict { Verified, Conditional, Falsified };

const char* verdict_name(Verdict v) noexcept;

struct VerifyResult {
  Verdict verdict;
  std::optional<RingMatrix> residual;  // claimed LHS minus the squares
  std::string reason;
};

/// Exact check of the certificate identity. Throws Error(MalformedCertificate)
/// for negative weights or lambda and Error(ShapeMismatch) for bad shapes.
VerifyResult verify(const SosCertificate& cert);

/// Replaces each weight p/q by p*q unweighted copies of a/q. Throws
/// InvalidArgument if that would exceed `max_copies` summands.
SosCertificate expand_weights(const SosCertificate& cert, std::size_t max_copies = 100000);

using ElementCertifier = std::function<SosCertificate(const RingElement&)>;
using MatrixCertifier = std::function<SosCertificate(const RingMatrix&)>;

/// Certificate for E_{s,t}(+-g) + box_{s,t}: the single row (+-g^-1 alpha_s^*, alpha_t).
SosCertificate lemma21_certificate(const GroupPtr& group, const GeneratorTuple& s, const GeneratorTuple& t,
                                   const Word& g, Sign sign);

struct OffDiagTerm {
  std::size_t row;
  std::size_t col;
  GeneratorTuple s;
  GeneratorTuple t;
  Word g;
  Sign sign;
  Rational lambda;
};

/// Strictly upper entries written as positive combinations of
/// +-alpha_s g alpha_t (the lower entries follow by hermitian symmetry).
struct OffDiagDecomposition {
  std::vector<OffDiagTerm> terms;

  /// Sum of lambda * E_{s,t}(+-g) placed at (row, col) in a k x k matrix.
  RingMatrix recompose(const GroupPtr& group, std::size_t k) const;
};

/// Decomposes the off-diagonal part of hermitian M with entries in I^{2n}.
/// Each entry is peeled directly by n right and n left generator
/// decompositions; if that gets stuck and a witness is given, a depth-2n
/// idempotence decomposition is used instead. Throws NotInPower otherwise.
OffDiagDecomposition offdiag_decompose(const RingMatrix& m, int n,
                                       const FiniteAbelianizationWitness* witness = nullptr);

/// M + lambda diag_k(box(n)) as a sum of squares. Diagonal entries go to
/// `diagonal_certifier`, which must return certificates with order unit box(n).
SosCertificate diag_order_unit_certificate(const RingMatrix& m, int n, const ElementCertifier& diagonal_certifier,
                                           const FiniteAbelianizationWitness* witness = nullptr);

/// M + lambda I over the group ring, built term by term from (1 +- g)^*(1 +- g).
SosCertificate identity_order_unit_certificate(const RingMatrix& m);

/// eta + lambda box(n) as a sum of squares, through the chain
/// eta = D((xi + xi^*)/2) and diag(box(n-1)) being an order unit of matrices.
/// `base` certifies v + lambda Delta for hermitian v in I[G].
SosCertificate theorem_main_certificate(const RingElement& eta, int n, const FiniteAbelianizationWitness& w,
                                        const ElementCertifier& base);

/// eta + lambda Delta via a group-ring D-preimage and the identity matrix as
/// an order unit of |S| x |S| matrices.
SosCertificate delta_order_unit_certificate(const RingElement& eta, const FiniteAbelianizationWitness& w,
                                            const MatrixCertifier& matrix_identity_certifier =
                                                identity_order_unit_certificate);

/// Base certifier from delta_order_unit_certificate.
ElementCertifier remark_base_certifier(const FiniteAbelianizationWitness& w);

/// Base certifier that proves nothing: it records v + r Delta as an obligation.
ElementCertifier obligation_base_certifier(const Rational& r);

/// Pushes a k x k certificate through D: rows a -> a d, obligations O -> d^* O d.
SosCertificate compose_with_codifferential(const SosCertificate& matrix_cert);

/// Places a 1 x 1 certificate at diagonal slot `slot` of a k x k one.
SosCertificate embed_scalar_certificate(const SosCertificate& scalar_cert, std::size_t k, std::size_t slot);

}  // namespace augsos
