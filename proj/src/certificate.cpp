#include "augsos/certificate.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "augsos/augmentation.hpp"
#include "augsos/error.hpp"

namespace augsos {

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Verified: return "VERIFIED";
    case Verdict::Conditional: return "CONDITIONAL";
    case Verdict::Falsified: return "FALSIFIED";
  }
  return "UNKNOWN";
}

namespace {

void require_square(const RingMatrix& m, std::size_t k, const char* what) {
  if (m.rows() != k || m.cols() != k) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + " must be " + std::to_string(k) + "x" + std::to_string(k));
  }
}

RingMatrix row_with(const GroupPtr& group, std::size_t k, std::initializer_list<std::pair<std::size_t, RingElement>> entries) {
  RingMatrix row(group, 1, k);
  for (const auto& [slot, x] : entries) row(0, slot) += x;
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// Verification

VerifyResult verify(const SosCertificate& cert) {
  const std::size_t k = cert.k;
  require_square(cert.target, k, "target");
  require_same_group(cert.group, cert.target.group());
  if (cert.weights.size() != cert.summands.size()) {
    throw Error(ErrorCode::MalformedCertificate, "weights and summands differ in count");
  }
  if (cert.lambda < 0) throw Error(ErrorCode::MalformedCertificate, "lambda is negative");
  for (const auto& w : cert.weights) {
    if (w < 0) throw Error(ErrorCode::MalformedCertificate, "negative weight");
  }
  for (const auto& a : cert.summands) {
    if (a.rows() != 1 || a.cols() != k) throw Error(ErrorCode::ShapeMismatch, "summand rows must be 1x" + std::to_string(k));
  }
  for (const auto& o : cert.obligations) {
    require_square(o, k, "obligation");
    if (!o.is_hermitian()) return {Verdict::Falsified, std::nullopt, "obligation is not hermitian"};
  }
  if (cert.order_unit) require_square(*cert.order_unit, k, "order unit");
  if (!cert.order_unit && cert.lambda != 0) {
    return {Verdict::Falsified, std::nullopt, "nonzero lambda without an order unit"};
  }

  RingMatrix residual = cert.target;
  if (cert.order_unit && cert.lambda != 0) residual += cert.lambda * *cert.order_unit;
  for (std::size_t i = 0; i < cert.summands.size(); ++i) {
    if (cert.weights[i] == 0) continue;
    const RingMatrix& a = cert.summands[i];
    residual -= cert.weights[i] * (a.star() * a);
  }
  for (const auto& o : cert.obligations) residual -= o;

  if (!residual.is_zero()) return {Verdict::Falsified, residual, "identity does not hold"};
  if (!cert.obligations.empty()) {
    return {Verdict::Conditional, residual,
            std::to_string(cert.obligations.size()) + " unproven obligation(s)"};
  }
  return {Verdict::Verified, residual, ""};
}

SosCertificate expand_weights(const SosCertificate& cert, std::size_t max_copies) {
  SosCertificate out = cert;
  out.weights.clear();
  out.summands.clear();
  std::size_t total = 0;
  for (std::size_t i = 0; i < cert.summands.size(); ++i) {
    const Rational& w = cert.weights[i];
    if (w == 0) continue;
    // w a^* a = sum over p*q copies of (a/q)^*(a/q)
    const mpz_class copies = w.get_num() * w.get_den();
    if (!copies.fits_ulong_p() || total + copies.get_ui() > max_copies) {
      throw Error(ErrorCode::InvalidArgument, "weight expansion exceeds the copy limit");
    }
    const RingMatrix scaled = Rational(1, w.get_den()) * cert.summands[i];
    for (unsigned long c = 0; c < copies.get_ui(); ++c) out.add_summand(1, scaled);
    total += copies.get_ui();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Single-row blocks: E + box_st = a^* a for one row a

SosCertificate lemma21_certificate(const GroupPtr& group, const GeneratorTuple& s, const GeneratorTuple& t,
                                   const Word& g, Sign sign) {
  SosCertificate cert(group, 2);
  cert.target = E_matrix(group, s, t, g, sign) + box_st(group, s, t);
  const RingElement as = tuple_product(group, s);
  const RingElement at = tuple_product(group, t);
  const RingElement ginv = RingElement::monomial(group, group->invert(g), static_cast<int>(sign));
  cert.add_summand(1, row_with(group, 2, {{0, ginv * as.star()}, {1, at}}));
  return cert;
}

RingMatrix OffDiagDecomposition::recompose(const GroupPtr& group, std::size_t k) const {
  RingMatrix out(group, k, k);
  for (const auto& term : terms) {
    const RingMatrix e = E_matrix(group, term.s, term.t, term.g, term.sign);
    out(term.row, term.col) += term.lambda * e(0, 1);
    out(term.col, term.row) += term.lambda * e(1, 0);
  }
  return out;
}

namespace {

using TermKey = std::tuple<GeneratorTuple, GeneratorTuple, Word>;
using TermMap = std::map<TermKey, Rational>;

// For free models the inverse letters are folded onto basis letters so the
// decomposition is unique: (1 - s^-1) a = -(1 - s) s^-1 a.
GeneratorDecomposition peel(const RingElement& x, Side side) {
  GeneratorDecomposition dec = generator_decompose(x, side);
  const Group& grp = *x.group();
  if (grp.kind() != GroupKind::Free) return dec;
  const Letter rank = grp.alphabet().size() / 2;
  for (Letter l = rank; l < grp.alphabet().size(); ++l) {
    RingElement c = std::move(dec.coefficients[l]);
    dec.coefficients[l] = RingElement(x.group());
    if (c.is_zero()) continue;
    const Word lw{l};
    dec.coefficients[grp.alphabet().inverse(l)] -= side == Side::Right ? c.left_translate(lw) : c.right_translate(lw);
  }
  return dec;
}

// x = sum_s alpha_s r_s via n right peels, each coefficient required in I.
std::optional<std::vector<std::pair<GeneratorTuple, RingElement>>> peel_left_factors(const RingElement& x, int n) {
  std::vector<std::pair<GeneratorTuple, RingElement>> cur{{GeneratorTuple{}, x}};
  for (int step = 0; step < n; ++step) {
    std::vector<std::pair<GeneratorTuple, RingElement>> next;
    for (const auto& [s, r] : cur) {
      if (!augmentation_check(r)) return std::nullopt;
      const GeneratorDecomposition dec = peel(r, Side::Right);
      for (Letter l = 0; l < static_cast<Letter>(dec.coefficients.size()); ++l) {
        if (dec.coefficients[l].is_zero()) continue;
        GeneratorTuple u = s;
        u.push_back(l);
        next.emplace_back(std::move(u), dec.coefficients[l]);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// x = sum_t beta_t alpha_t via n left peels.
std::optional<std::vector<std::pair<GeneratorTuple, RingElement>>> peel_right_factors(const RingElement& x, int n) {
  std::vector<std::pair<GeneratorTuple, RingElement>> cur{{GeneratorTuple{}, x}};
  for (int step = 0; step < n; ++step) {
    std::vector<std::pair<GeneratorTuple, RingElement>> next;
    for (const auto& [t, q] : cur) {
      if (!augmentation_check(q)) return std::nullopt;
      const GeneratorDecomposition dec = peel(q, Side::Left);
      for (Letter l = 0; l < static_cast<Letter>(dec.coefficients.size()); ++l) {
        if (dec.coefficients[l].is_zero()) continue;
        GeneratorTuple u{l};
        u.insert(u.end(), t.begin(), t.end());
        next.emplace_back(std::move(u), dec.coefficients[l]);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

void add_middle(TermMap& out, const GeneratorTuple& s, const GeneratorTuple& t, const RingElement& middle,
                const Rational& scale) {
  for (const auto& [g, c] : middle.terms()) {
    auto& slot = out[TermKey{s, t, g}];
    slot += scale * c;
  }
}

std::optional<TermMap> peel_entry(const RingElement& x, int n) {
  const auto left = peel_left_factors(x, n);
  if (!left) return std::nullopt;
  TermMap out;
  for (const auto& [s, r] : *left) {
    const auto right = peel_right_factors(r, n);
    if (!right) return std::nullopt;
    for (const auto& [t, beta] : *right) add_middle(out, s, t, beta, 1);
  }
  return out;
}

// Same through lambda f_1 ... f_{2n}: every partial coefficient times the
// next factor stays in I, so the peels never get stuck.
TermMap peel_product_expression(const ProductExpression& expr, int n) {
  const GroupPtr& group = expr.group;
  TermMap out;
  for (const auto& term : expr.terms) {
    std::vector<std::pair<GeneratorTuple, RingElement>> heads{{GeneratorTuple{}, RingElement::one(group)}};
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<GeneratorTuple, RingElement>> next;
      for (const auto& [s, a] : heads) {
        const GeneratorDecomposition dec = generator_decompose(a * term.factors[i], Side::Right);
        for (Letter l = 0; l < static_cast<Letter>(dec.coefficients.size()); ++l) {
          if (dec.coefficients[l].is_zero()) continue;
          GeneratorTuple u = s;
          u.push_back(l);
          next.emplace_back(std::move(u), dec.coefficients[l]);
        }
      }
      heads = std::move(next);
    }
    std::vector<std::pair<GeneratorTuple, RingElement>> tails{{GeneratorTuple{}, RingElement::one(group)}};
    for (int i = 2 * n - 1; i >= n; --i) {
      std::vector<std::pair<GeneratorTuple, RingElement>> next;
      for (const auto& [t, b] : tails) {
        const GeneratorDecomposition dec = generator_decompose(term.factors[i] * b, Side::Left);
        for (Letter l = 0; l < static_cast<Letter>(dec.coefficients.size()); ++l) {
          if (dec.coefficients[l].is_zero()) continue;
          GeneratorTuple u{l};
          u.insert(u.end(), t.begin(), t.end());
          next.emplace_back(std::move(u), dec.coefficients[l]);
        }
      }
      tails = std::move(next);
    }
    for (const auto& [s, a] : heads) {
      for (const auto& [t, b] : tails) add_middle(out, s, t, a * b, term.lambda);
    }
  }
  return out;
}

}  // namespace

OffDiagDecomposition offdiag_decompose(const RingMatrix& m, int n, const FiniteAbelianizationWitness* witness) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "offdiag_decompose needs n >= 1");
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "offdiag_decompose expects a square matrix");
  if (!m.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "offdiag_decompose expects a hermitian matrix");
  const GroupPtr& group = m.group();
  const std::size_t k = m.rows();
  OffDiagDecomposition out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const RingElement& x = m(i, j);
      if (x.is_zero()) continue;
      std::optional<TermMap> terms = peel_entry(x, n);
      if (!terms) {
        if (!witness) {
          throw Error(ErrorCode::NotInPower, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") has no direct I^" + std::to_string(2 * n) +
                                                 " decomposition and no witness was given");
        }
        if (!augmentation_check(x)) {
          throw Error(ErrorCode::NotInPower, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") is not in the augmentation ideal");
        }
        terms = peel_product_expression(idempotence_decompose(x, *witness, 2 * n), n);
      }
      // TermMap iterates in lexicographic (s, t, g) order.
      for (const auto& [key, c] : *terms) {
        if (c == 0) continue;
        const auto& [s, t, g] = key;
        out.terms.push_back(OffDiagTerm{i, j, s, t, g, c > 0 ? Sign::Plus : Sign::Minus, abs(c)});
      }
    }
  }
  RingMatrix expected = m;
  for (std::size_t i = 0; i < k; ++i) expected(i, i) = RingElement(group);
  if (out.recompose(group, k) != expected) {
    throw Error(ErrorCode::Internal, "off-diagonal decomposition does not recompose");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal order units

SosCertificate embed_scalar_certificate(const SosCertificate& scalar_cert, std::size_t k, std::size_t slot) {
  if (scalar_cert.k != 1) throw Error(ErrorCode::ShapeMismatch, "expected a 1x1 certificate");
  const GroupPtr& group = scalar_cert.group;
  SosCertificate out(group, k);
  out.target(slot, slot) = scalar_cert.target(0, 0);
  out.lambda = scalar_cert.lambda;
  if (scalar_cert.order_unit) {
    RingMatrix u(group, k, k);
    u(slot, slot) = (*scalar_cert.order_unit)(0, 0);
    out.order_unit = std::move(u);
  }
  for (std::size_t i = 0; i < scalar_cert.summands.size(); ++i) {
    out.add_summand(scalar_cert.weights[i], row_with(group, k, {{slot, scalar_cert.summands[i](0, 0)}}));
  }
  for (const auto& o : scalar_cert.obligations) {
    RingMatrix big(group, k, k);
    big(slot, slot) = o(0, 0);
    out.obligations.push_back(std::move(big));
  }
  return out;
}

SosCertificate diag_order_unit_certificate(const RingMatrix& m, int n, const ElementCertifier& diagonal_certifier,
                                           const FiniteAbelianizationWitness* witness) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "expected a square matrix");
  if (!m.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "expected a hermitian matrix");
  const GroupPtr& group = m.group();
  const std::size_t k = m.rows();
  const RingElement u = box(group, n);
  const auto tuples = all_tuples(*group, static_cast<std::size_t>(n));

  SosCertificate cert(group, k);
  cert.target = m;
  cert.order_unit = RingMatrix::diag(u, k);

  // Off-diagonal part: each lambda E_{s,t}(+-g) + lambda box_{s,t} is one square.
  std::map<std::pair<std::size_t, GeneratorTuple>, Rational> leftover;
  const OffDiagDecomposition off = offdiag_decompose(m, n, witness);
  for (const auto& term : off.terms) {
    const RingElement as = tuple_product(group, term.s);
    const RingElement at = tuple_product(group, term.t);
    const RingElement ginv = RingElement::monomial(group, group->invert(term.g), static_cast<int>(term.sign));
    cert.add_summand(term.lambda, row_with(group, k, {{term.row, ginv * as.star()}, {term.col, at}}));
    // alpha_s alpha_s^* = alpha_{s'}^* alpha_{s'} for the adjoint tuple s'.
    leftover[{term.row, adjoint_tuple(*group, term.s)}] += term.lambda;
    leftover[{term.col, term.t}] += term.lambda;
  }
  Rational off_lambda = 0;
  for (const auto& [key, c] : leftover) off_lambda = std::max(off_lambda, c);

  // Diagonal entries.
  std::vector<Rational> diag_lambda(k, 0);
  std::vector<std::optional<SosCertificate>> diag_certs(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (m(i, i).is_zero()) continue;
    SosCertificate c(group, 1);
    try {
      c = diagonal_certifier(m(i, i));
    } catch (const Error& e) {
      throw Error(ErrorCode::DiagonalUncertified,
                  "diagonal entry " + std::to_string(i) + " could not be certified: " + e.what());
    }
    if (c.k != 1 || c.target(0, 0) != m(i, i) || (c.lambda != 0 && (!c.order_unit || (*c.order_unit)(0, 0) != u))) {
      throw Error(ErrorCode::DiagonalUncertified,
                  "certifier returned a certificate for a different claim at diagonal entry " + std::to_string(i));
    }
    diag_lambda[i] = c.lambda;
    diag_certs[i] = std::move(c);
  }
  const Rational diag_max = k ? *std::max_element(diag_lambda.begin(), diag_lambda.end()) : Rational(0);

  for (std::size_t i = 0; i < k; ++i) {
    if (diag_certs[i]) {
      SosCertificate embedded = embed_scalar_certificate(*diag_certs[i], k, i);
      for (std::size_t j = 0; j < embedded.summands.size(); ++j) {
        cert.add_summand(embedded.weights[j], std::move(embedded.summands[j]));
      }
      for (auto& o : embedded.obligations) cert.obligations.push_back(std::move(o));
    }
    // Pad slot i up to (off_lambda + diag_max) box(n) = sum_tuples alpha^* alpha.
    for (const auto& tau : tuples) {
      const auto it = leftover.find({i, tau});
      const Rational used = it == leftover.end() ? Rational(0) : it->second;
      const Rational pad = (off_lambda - used) + (diag_max - diag_lambda[i]);
      if (pad > 0) cert.add_summand(pad, row_with(group, k, {{i, tuple_product(group, tau)}}));
    }
  }
  cert.lambda = off_lambda + diag_max;
  return cert;
}

SosCertificate identity_order_unit_certificate(const RingMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::ShapeMismatch, "expected a square matrix");
  if (!m.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "expected a hermitian matrix");
  const GroupPtr& group = m.group();
  const Group& grp = *group;
  const std::size_t k = m.rows();
  SosCertificate cert(group, k);
  cert.target = m;
  cert.order_unit = RingMatrix::identity(group, k);
  const RingElement one = RingElement::one(group);

  std::vector<Rational> need(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& [g, c] : m(i, i).terms()) {
      if (g.empty()) continue;
      const Word ginv = grp.invert(g);
      const Rational mag = abs(c);
      const RingElement sg = RingElement::monomial(group, g, c > 0 ? 1 : -1);
      if (ginv == g) {
        // c g + |c| = |c|/2 (1 + sg)^*(1 + sg)
        cert.add_summand(mag / 2, row_with(group, k, {{i, one + sg}}));
        need[i] += mag;
      } else if (ShortLex{}(g, ginv)) {
        // c (g + g^-1) + 2|c| = |c| (1 + sg)^*(1 + sg)
        cert.add_summand(mag, row_with(group, k, {{i, one + sg}}));
        need[i] += 2 * mag;
      }
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      for (const auto& [g, c] : m(i, j).terms()) {
        // c g at (i, j): row (1 at i, sign(c) g at j), weight |c|
        const RingElement sg = RingElement::monomial(group, g, c > 0 ? 1 : -1);
        cert.add_summand(abs(c), row_with(group, k, {{i, one}, {j, sg}}));
        need[i] += abs(c);
        need[j] += abs(c);
      }
    }
  }
  Rational lambda = 0;
  std::vector<Rational> rest(k);
  for (std::size_t i = 0; i < k; ++i) {
    rest[i] = m(i, i).coefficient(Word{}) - need[i];
    lambda = std::max(lambda, Rational(-rest[i]));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const Rational w = rest[i] + lambda;
    if (w > 0) cert.add_summand(w, row_with(group, k, {{i, one}}));
  }
  cert.lambda = lambda;
  return cert;
}

// ---------------------------------------------------------------------------
// D-composition and the inductive chain

SosCertificate compose_with_codifferential(const SosCertificate& matrix_cert) {
  const GroupPtr& group = matrix_cert.group;
  const RingMatrix d = codifferential(group);
  if (matrix_cert.k != d.rows()) throw Error(ErrorCode::ShapeMismatch, "certificate size differs from |S|");
  SosCertificate out(group, 1);
  out.target = RingMatrix::scalar(apply_D(matrix_cert.target));
  out.lambda = matrix_cert.lambda;
  if (matrix_cert.order_unit) out.order_unit = RingMatrix::scalar(apply_D(*matrix_cert.order_unit));
  for (std::size_t i = 0; i < matrix_cert.summands.size(); ++i) {
    RingMatrix row = matrix_cert.summands[i] * d;
    if (row.is_zero()) continue;
    out.add_summand(matrix_cert.weights[i], std::move(row));
  }
  for (const auto& o : matrix_cert.obligations) out.obligations.push_back(d.star() * o * d);
  return out;
}

namespace {

void require_hermitian_ideal(const RingElement& eta) {
  if (!eta.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "target must be hermitian");
  if (!augmentation_check(eta)) throw Error(ErrorCode::NotInAugmentationIdeal, "target has nonzero augmentation");
}

// eta = -c u with c >= 0: the certificate is lambda = c and no squares.
std::optional<SosCertificate> negative_multiple(const RingElement& eta, const RingElement& u) {
  if (u.is_zero()) return std::nullopt;
  const auto& [g0, u0] = *u.terms().begin();
  const Rational c = -eta.coefficient(g0) / u0;
  if (c < 0 || eta + c * u != RingElement(eta.group())) return std::nullopt;
  SosCertificate cert(eta.group(), 1);
  cert.target = RingMatrix::scalar(eta);
  cert.lambda = c;
  cert.order_unit = RingMatrix::scalar(u);
  return cert;
}

}  // namespace

SosCertificate theorem_main_certificate(const RingElement& eta, int n, const FiniteAbelianizationWitness& w,
                                        const ElementCertifier& base) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "theorem_main_certificate needs n >= 1");
  require_hermitian_ideal(eta);
  const GroupPtr& group = eta.group();
  const RingElement u = box(group, n);
  if (auto trivial = negative_multiple(eta, u)) return *trivial;
  if (n == 1) return base(eta);

  const RingMatrix xi = hermitian_part(d_preimage(eta, w));
  if (apply_D(xi) != eta) throw Error(ErrorCode::Internal, "hermitian D-preimage does not map back to the target");
  const SosCertificate matrix_cert = diag_order_unit_certificate(
      xi, n - 1, [&](const RingElement& v) { return theorem_main_certificate(v, n - 1, w, base); }, &w);
  return compose_with_codifferential(matrix_cert);
}

SosCertificate delta_order_unit_certificate(const RingElement& eta, const FiniteAbelianizationWitness& w,
                                            const MatrixCertifier& matrix_identity_certifier) {
  require_hermitian_ideal(eta);
  const GroupPtr& group = eta.group();
  if (auto trivial = negative_multiple(eta, laplacian(group))) return *trivial;
  const RingMatrix xi = hermitian_part(d_preimage_group_ring(eta, w));
  if (apply_D(xi) != eta) throw Error(ErrorCode::Internal, "hermitian D-preimage does not map back to the target");
  return compose_with_codifferential(matrix_identity_certifier(xi));
}

ElementCertifier remark_base_certifier(const FiniteAbelianizationWitness& w) {
  return [w](const RingElement& v) { return delta_order_unit_certificate(v, w); };
}

ElementCertifier obligation_base_certifier(const Rational& r) {
  return [r](const RingElement& v) {
    const GroupPtr& group = v.group();
    const RingElement delta = laplacian(group);
    SosCertificate cert(group, 1);
    cert.target = RingMatrix::scalar(v);
    cert.lambda = r;
    cert.order_unit = RingMatrix::scalar(delta);
    cert.obligations.push_back(RingMatrix::scalar(v + r * delta));
    return cert;
  };
}

}  // namespace augsos
