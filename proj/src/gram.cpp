#include "augsos/gram.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "augsos/error.hpp"
#include "augsos/family.hpp"

namespace augsos {

namespace {

std::size_t max_word_length(const RingElement& x) {
  std::size_t len = 0;
  for (const auto& [g, c] : x.terms()) len = std::max(len, g.size());
  return len;
}

// Support of both elements with unit coefficients, used only to size a basis.
RingElement support_cover(const RingElement& a, const RingElement& b) {
  RingElement out(a.group());
  for (const auto& [g, c] : a.terms()) out.accumulate(g, 1);
  for (const auto& [g, c] : b.terms()) {
    if (out.coefficient(g) == 0) out.accumulate(g, 1);
  }
  return out;
}

void project_affine(Eigen::MatrixXd& x, const GramProblem& problem, const std::vector<double>& values) {
  for (std::size_t c = 0; c < problem.constraints.size(); ++c) {
    const auto& cells = problem.constraints[c].cells;
    double sum = 0;
    for (const auto& [i, j] : cells) sum += x(i, j);
    const double shift = (values[c] - sum) / static_cast<double>(cells.size());
    for (const auto& [i, j] : cells) x(i, j) += shift;
  }
}

double affine_residual(const Eigen::MatrixXd& x, const GramProblem& problem, const std::vector<double>& values) {
  double worst = 0;
  for (std::size_t c = 0; c < problem.constraints.size(); ++c) {
    double sum = 0;
    for (const auto& [i, j] : problem.constraints[c].cells) sum += x(i, j);
    worst = std::max(worst, std::abs(sum - values[c]));
  }
  return worst;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& y, double* min_eig) {
  const Eigen::MatrixXd sym = 0.5 * (y + y.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (min_eig) *min_eig = eig.eigenvalues().size() ? eig.eigenvalues()(0) : 0.0;
  const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
}

// Targets in the augmentation ideal force P 1 = 0: every feasible Gram
// matrix sits on the boundary of the cone, where alternating projections crawl
// and rounding a singular P rarely stays PSD. FaceSolver works in the
// coordinates c_k = b_k - b_0 instead. There P = M P' M^T has 1 in its kernel
// by construction, the feasible P' usually has interior, and the exact
// least-norm correction of a rounded P' restores the constraints. Everything
// here depends only on the basis, so one instance serves a whole lambda search.
class FaceSolver {
 public:
  static constexpr std::size_t kMaxConstraints = 600;

  static std::unique_ptr<FaceSolver> build(const GramProblem& problem) {
    const std::size_t n = problem.basis.size();
    const std::size_t m = problem.constraints.size();
    if (n < 2 || m > kMaxConstraints) return nullptr;
    auto r = std::unique_ptr<FaceSolver>(new FaceSolver);
    const std::size_t d = r->d_ = n - 1;
    r->k_.assign(m, std::vector<long>(d * d, 0));
    for (std::size_t c = 0; c < m; ++c) {
      auto& k = r->k_[c];
      for (const auto& [i, j] : problem.constraints[c].cells) {
        // M has row 0 = -1 and row i = e_{i-1}.
        if (i && j) {
          k[(i - 1) * d + (j - 1)] += 1;
        } else if (!i && j) {
          for (std::size_t a = 0; a < d; ++a) k[a * d + (j - 1)] -= 1;
        } else if (i && !j) {
          for (std::size_t b = 0; b < d; ++b) k[(i - 1) * d + b] -= 1;
        } else {
          for (auto& v : k) v += 1;
        }
      }
    }
    r->a_.resize(m, d * d);
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t e = 0; e < d * d; ++e) r->a_(c, e) = static_cast<double>(r->k_[c][e]);
    }

    // Gauss-Jordan on [G | I] with G_gh = <K_g, K_h>; keep the row operations.
    std::vector<std::vector<Rational>> g(m, std::vector<Rational>(2 * m));
    Eigen::MatrixXd gd(m, m);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = x; y < m; ++y) {
        long dot = 0;
        for (std::size_t e = 0; e < d * d; ++e) dot += r->k_[x][e] * r->k_[y][e];
        g[x][y] = dot;
        g[y][x] = dot;
        gd(x, y) = gd(y, x) = static_cast<double>(dot);
      }
      g[x][m + x] = 1;
    }
    r->g_pinv_ = gd.completeOrthogonalDecomposition().pseudoInverse();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < m; ++col) {
      std::size_t piv = row;
      while (piv < m && g[piv][col] == 0) ++piv;
      if (piv == m) continue;
      std::swap(g[piv], g[row]);
      const Rational inv = 1 / g[row][col];
      for (auto& v : g[row]) v *= inv;
      for (std::size_t o = 0; o < m; ++o) {
        if (o == row || g[o][col] == 0) continue;
        const Rational f = g[o][col];
        for (std::size_t e = col; e < 2 * m; ++e) g[o][e] -= f * g[row][e];
      }
      r->pivots_.push_back(col);
      ++row;
    }
    r->ops_.resize(m);
    for (std::size_t x = 0; x < m; ++x) r->ops_[x].assign(g[x].begin() + m, g[x].end());
    return r;
  }

  /// Dykstra between {P' : <K_g, P'> = f_g} and the PSD cone. Returns P'.
  std::optional<Eigen::MatrixXd> solve(const GramProblem& problem, const SolverConfig& config) const {
    const std::size_t d = d_, m = k_.size();
    Eigen::VectorXd f(m);
    for (std::size_t c = 0; c < m; ++c) f(c) = problem.constraints[c].value.get_d();
    auto residual = [&](const Eigen::MatrixXd& x) {
      return Eigen::VectorXd(f - a_ * Eigen::Map<const Eigen::VectorXd>(x.data(), d * d)).eval();
    };
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(d, d);
    double checkpoint = std::numeric_limits<double>::infinity();
    for (std::int64_t it = 1; it <= config.max_iter; ++it) {
      const Eigen::VectorXd step = a_.transpose() * (g_pinv_ * residual(x));
      Eigen::MatrixXd y = x + Eigen::Map<const Eigen::MatrixXd>(step.data(), d, d);
      const Eigen::MatrixXd z = y + q;
      x = project_psd(z, nullptr);
      q = z - x;
      const double res = residual(x).cwiseAbs().maxCoeff();
      if (res <= config.tol) return x;
      if (it % 2000 == 0) {
        if (res > 0.999 * checkpoint) break;
        checkpoint = res;
      }
    }
    return std::nullopt;
  }

  /// Exact full-size P = M P' M^T meeting every constraint, from a numeric P'.
  std::optional<QMatrix> round(const Eigen::MatrixXd& x, const GramProblem& problem,
                               const mpz_class& denominator_bound) const {
    const std::size_t d = d_, n = d + 1, m = k_.size();
    std::vector<Rational> q(d * d);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        q[a * d + b] = approximate(0.5 * (x(a, b) + x(b, a)), denominator_bound);
        q[b * d + a] = q[a * d + b];
      }
    }
    std::vector<Rational> residual(m);
    for (std::size_t c = 0; c < m; ++c) {
      Rational sum = 0;
      for (std::size_t e = 0; e < d * d; ++e) {
        if (k_[c][e]) sum += k_[c][e] * q[e];
      }
      residual[c] = problem.constraints[c].value - sum;
    }
    // y = E r on the pivot rows; the remaining rows must vanish.
    std::vector<Rational> y(m);
    for (std::size_t row = 0; row < m; ++row) {
      Rational v = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (ops_[row][c] != 0 && residual[c] != 0) v += ops_[row][c] * residual[c];
      }
      if (row < pivots_.size()) {
        y[pivots_[row]] = v;
      } else if (v != 0) {
        return std::nullopt;
      }
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (y[c] == 0) continue;
      for (std::size_t e = 0; e < d * d; ++e) {
        if (k_[c][e]) q[e] += y[c] * k_[c][e];
      }
    }
    QMatrix out(n, n);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const Rational& v = q[a * d + b];
        out(a + 1, b + 1) = v;
        out(0, b + 1) -= v;
        out(a + 1, 0) -= v;
        out(0, 0) += v;
      }
    }
    return out;
  }

 private:
  FaceSolver() = default;
  std::size_t d_ = 0;
  std::vector<std::vector<long>> k_;        // constraint matrices in P' coordinates
  Eigen::MatrixXd a_;                       // the same, one row per constraint
  Eigen::MatrixXd g_pinv_;
  std::vector<std::size_t> pivots_;         // pivot column of each reduced row
  std::vector<std::vector<Rational>> ops_;  // row operations that reduced G
};

// Certifies targets over one fixed basis, reusing the face solver.
class BasisCertifier {
 public:
  BasisCertifier(SupportBasis basis, const SolverConfig& config) : basis_(std::move(basis)), config_(config) {}

  std::optional<SosCertificate> certify(const RingElement& target) {
    const GramProblem problem = make_gram_problem(target, basis_);
    if (problem.uncovered) return std::nullopt;
    std::optional<QMatrix> p;
    if (problem.translation_invariant) {
      p = class_mean_gram(problem);
    } else {
      if (target.augmentation() == 0 && !face_built_) {
        face_ = FaceSolver::build(problem);
        face_built_ = true;
      }
      // Coarse bounds first: a Gram matrix pinned to the boundary (a single
      // square, say) survives only if rounding recovers its exact entries.
      std::vector<mpz_class> bounds;
      for (mpz_class b = 100; b < config_.denominator_bound; b *= 100) bounds.push_back(b);
      bounds.push_back(config_.denominator_bound);
      auto first_psd = [&](auto&& round) -> std::optional<QMatrix> {
        for (const auto& b : bounds) {
          std::optional<QMatrix> candidate = round(b);
          if (candidate && psd_check_exact(*candidate).psd) return candidate;
        }
        return std::nullopt;
      };
      if (target.augmentation() == 0 && face_) {
        const auto x = face_->solve(problem, config_);
        if (!x) return std::nullopt;
        p = first_psd([&](const mpz_class& b) { return face_->round(*x, problem, b); });
      } else {
        const NumericSolution sol = solve_psd(problem, config_);
        if (!sol.feasible) return std::nullopt;
        p = first_psd([&](const mpz_class& b) { return std::optional<QMatrix>(rationalize(sol.p, problem, b)); });
      }
      if (!p) return std::nullopt;
    }
    if (!psd_check_exact(*p).psd) return std::nullopt;
    SosCertificate cert = extract_sos(*p, problem.basis, target);
    if (verify(cert).verdict != Verdict::Verified) {
      throw Error(ErrorCode::Internal, "extracted Gram certificate does not verify");
    }
    return cert;
  }

 private:
  SupportBasis basis_;
  SolverConfig config_;
  std::unique_ptr<FaceSolver> face_;
  bool face_built_ = false;
};

void require_finite(const Group& g, const char* what) {
  if (g.kind() != GroupKind::Finite) throw Error(ErrorCode::UnsupportedModel, std::string(what) + " needs a finite model");
}

}  // namespace

SupportBasis support_basis(const RingElement& target, std::optional<int> radius, std::size_t guard) {
  const Group& group = *target.group();
  SupportBasis out;
  if (!radius && group.kind() == GroupKind::Finite) {
    if (group.order() > guard) {
      throw Error(ErrorCode::BasisTooLarge, "group order exceeds the basis guard of " + std::to_string(guard));
    }
    out.elements = group.element_words();
    return out;
  }
  const int r = radius ? *radius : static_cast<int>((max_word_length(target) + 1) / 2);
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  out.elements = group.ball(r, guard);
  return out;
}

GramProblem make_gram_problem(const RingElement& target, SupportBasis basis) {
  if (!target.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "Gram target must be hermitian");
  const GroupPtr& group = target.group();
  GramProblem problem{group, std::move(basis), target, {}, false, false};
  const auto& b = problem.basis.elements;
  const std::size_t n = b.size();
  std::vector<Word> inverses;
  inverses.reserve(n);
  for (const auto& w : b) inverses.push_back(group->invert(w));

  std::map<Word, std::size_t, ShortLex> index;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Word g = group->multiply(inverses[i], b[j]);
      auto [it, fresh] = index.emplace(g, problem.constraints.size());
      if (fresh) problem.constraints.push_back(GramConstraint{std::move(g), target.coefficient(it->first), {}});
      problem.constraints[it->second].cells.emplace_back(i, j);
    }
  }
  for (const auto& [g, c] : target.terms()) {
    if (!index.count(g)) problem.uncovered = true;
  }
  problem.translation_invariant = group->kind() == GroupKind::Finite && n == group->order();
  return problem;
}

NumericSolution solve_psd(const GramProblem& problem, const SolverConfig& config) {
  if (!(config.tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  const std::size_t n = problem.basis.size();
  NumericSolution out;
  out.n = n;
  if (problem.uncovered) return out;

  std::vector<double> values;
  values.reserve(problem.constraints.size());
  for (const auto& c : problem.constraints) values.push_back(c.value.get_d());

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  double checkpoint = std::numeric_limits<double>::infinity();
  for (std::int64_t it = 1; it <= config.max_iter; ++it) {
    // The affine set needs no Dykstra correction; only the cone does.
    Eigen::MatrixXd y = x;
    project_affine(y, problem, values);
    const Eigen::MatrixXd z = y + q;
    double min_eig = 0;
    x = project_psd(z, &min_eig);
    q = z - x;

    const double res = affine_residual(x, problem, values);
    out.iterations = it;
    out.affine_residual = res;
    if (res <= config.tol) {
      out.feasible = true;
      break;
    }
    if (it % 2000 == 0) {
      if (res > 0.999 * checkpoint) break;  // stagnated: the sets are (numerically) disjoint
      checkpoint = res;
    }
  }
  out.p.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.p[i * n + j] = x(i, j);
  }
  if (n) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (x + x.transpose()), Eigen::EigenvaluesOnly);
    out.min_eigenvalue = eig.eigenvalues()(0);
    if (out.min_eigenvalue < -config.tol) out.feasible = false;
  }
  return out;
}

QMatrix class_mean_gram(const GramProblem& problem) {
  const std::size_t n = problem.basis.size();
  QMatrix p(n, n);
  for (const auto& c : problem.constraints) {
    const Rational v = c.value / Rational(static_cast<long>(c.cells.size()));
    for (const auto& [i, j] : c.cells) p(i, j) = v;
  }
  return p;
}

QMatrix rationalize(const std::vector<double>& p, const GramProblem& problem, const mpz_class& denominator_bound) {
  const std::size_t n = problem.basis.size();
  if (p.size() != n * n) throw Error(ErrorCode::ShapeMismatch, "numeric Gram matrix has the wrong size");
  // Averaging over left translations keeps PSD-ness and lands on the class means.
  if (problem.translation_invariant) return class_mean_gram(problem);
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      out(i, j) = approximate(0.5 * (p[i * n + j] + p[j * n + i]), denominator_bound);
      out(j, i) = out(i, j);
    }
  }
  // Classes of g and g^-1 are transposes of each other, so symmetry survives.
  for (const auto& c : problem.constraints) {
    Rational sum = 0;
    for (const auto& [i, j] : c.cells) sum += out(i, j);
    if (sum == c.value) continue;
    const Rational shift = (c.value - sum) / Rational(static_cast<long>(c.cells.size()));
    for (const auto& [i, j] : c.cells) out(i, j) += shift;
  }
  return out;
}

LdlResult psd_check_exact(const QMatrix& p) { return ldl_pivoted(p); }

SosCertificate extract_sos(const QMatrix& p, const SupportBasis& basis, const RingElement& target) {
  if (p.rows() != basis.size() || p.cols() != basis.size()) {
    throw Error(ErrorCode::ShapeMismatch, "Gram matrix size differs from the basis");
  }
  const LdlResult ldl = ldl_pivoted(p);
  if (!ldl.psd) throw Error(ErrorCode::NotPsd, "Gram matrix is not positive semidefinite");
  const GroupPtr& group = target.group();
  SosCertificate cert(group, 1);
  cert.target = RingMatrix::scalar(target);
  for (std::size_t k = 0; k < ldl.pivots.size(); ++k) {
    RingElement a(group);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (ldl.columns[k][j] != 0) a.accumulate(basis.elements[j], ldl.columns[k][j]);
    }
    if (!a.is_zero()) cert.add_summand(ldl.pivots[k], RingMatrix::scalar(a));
  }
  return cert;
}

std::optional<SosCertificate> certify_sos(const RingElement& target, const SolverConfig& config) {
  return BasisCertifier(support_basis(target, config.radius, config.basis_guard), config).certify(target);
}

LambdaResult order_unit_lambda_search(const RingElement& target, const RingElement& u, const SolverConfig& config) {
  require_same_group(target.group(), u.group());
  if (!target.is_hermitian() || !u.is_hermitian()) {
    throw Error(ErrorCode::InvalidArgument, "target and order unit must be hermitian");
  }
  BasisCertifier certifier(support_basis(support_cover(target, u), config.radius, config.basis_guard), config);
  auto attempt = [&](const Rational& lambda) -> std::optional<LambdaResult> {
    auto cert = certifier.certify(target + lambda * u);
    if (!cert) return std::nullopt;
    cert->target = RingMatrix::scalar(target);
    cert->lambda = lambda;
    cert->order_unit = RingMatrix::scalar(u);
    return LambdaResult{lambda, std::move(*cert)};
  };

  if (auto hit = attempt(0)) return std::move(*hit);
  const LambdaGrid& grid = config.lambda_grid;
  Rational lo = 0;
  std::optional<LambdaResult> best;
  for (int e = grid.min_exponent; e <= grid.max_exponent && !best; ++e) {
    Rational lambda = 1;
    if (e >= 0) lambda <<= e; else lambda >>= -e;
    best = attempt(lambda);
    if (!best) lo = lambda;
  }
  if (!best) throw Error(ErrorCode::SearchFailed, "no certificate on the lambda grid (this is not a disproof)");
  for (int step = 0; step < grid.bisection_steps; ++step) {
    const Rational mid = (lo + best->lambda) / 2;
    if (auto hit = attempt(mid)) best = std::move(hit); else lo = mid;
  }
  return std::move(*best);
}

LambdaResult spectral_gap_search(const GroupPtr& group, const SolverConfig& config) {
  const RingElement delta = laplacian(group);
  const RingElement delta2 = delta * delta;
  BasisCertifier certifier(support_basis(support_cover(delta2, delta), config.radius, config.basis_guard), config);
  auto attempt = [&](const Rational& lambda) -> std::optional<LambdaResult> {
    auto cert = certifier.certify(delta2 - lambda * delta);
    if (!cert) return std::nullopt;
    return LambdaResult{lambda, std::move(*cert)};
  };

  // Delta^2 = Delta^* Delta needs no search.
  SosCertificate zero(group, 1);
  zero.target = RingMatrix::scalar(delta2);
  zero.add_summand(1, RingMatrix::scalar(delta));
  LambdaResult best{0, std::move(zero)};

  const LambdaGrid& grid = config.lambda_grid;
  std::optional<Rational> hi;
  for (int e = grid.min_exponent; e <= grid.max_exponent; ++e) {
    Rational lambda = 1;
    if (e >= 0) lambda <<= e; else lambda >>= -e;
    if (auto hit = attempt(lambda)) {
      best = std::move(*hit);
    } else {
      hi = lambda;
      break;
    }
  }
  if (!hi) return best;
  for (int step = 0; step < grid.bisection_steps; ++step) {
    const Rational mid = (best.lambda + *hi) / 2;
    if (auto hit = attempt(mid)) best = std::move(*hit); else hi = mid;
  }
  return best;
}

ElementCertifier gram_base_certifier(const SolverConfig& config) {
  return [config](const RingElement& v) {
    return order_unit_lambda_search(v, laplacian(v.group()), config).certificate;
  };
}

QMatrix regular_representation(const RingElement& f) {
  const Group& group = *f.group();
  require_finite(group, "the regular representation");
  const std::size_t n = group.order();
  const auto& table = group.table();
  QMatrix rho(n, n);
  for (const auto& [g, c] : f.terms()) {
    const std::size_t gi = group.element_index(g);
    for (std::size_t y = 0; y < n; ++y) rho(table[gi][y], y) += c;
  }
  return rho;
}

Positivity finite_positivity_oracle(const RingElement& f) {
  require_finite(*f.group(), "finite_positivity_oracle");
  if (!f.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "positivity oracle needs a hermitian element");
  return ldl_pivoted(regular_representation(f)).psd ? Positivity::Psd : Positivity::NotPsd;
}

bool finite_order_unit_oracle(const RingElement& u) {
  const Group& group = *u.group();
  require_finite(group, "finite_order_unit_oracle");
  if (!u.is_hermitian()) throw Error(ErrorCode::InvalidArgument, "order-unit oracle needs a hermitian element");
  if (u.augmentation() != 0) throw Error(ErrorCode::NotInAugmentationIdeal, "order-unit oracle needs u in I[G]");
  const QMatrix rho = regular_representation(u);
  const std::size_t n = group.order();
  const std::size_t e = group.identity_index();
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != e) rest.push_back(i);
  }
  // Q^T rho Q with columns e_g - e_identity.
  QMatrix m(rest.size(), rest.size());
  for (std::size_t a = 0; a < rest.size(); ++a) {
    for (std::size_t b = 0; b < rest.size(); ++b) {
      m(a, b) = rho(rest[a], rest[b]) - rho(rest[a], e) - rho(e, rest[b]) + rho(e, e);
    }
  }
  if (rest.empty()) return true;
  return is_positive_definite(m);
}

std::vector<double> regular_spectrum(const RingElement& f) {
  const QMatrix rho = regular_representation(f);
  const std::size_t n = rho.rows();
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rho(i, j).get_d();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  return out;
}

double laplacian_eigen_gap(const GroupPtr& group, double zero_tol) {
  for (double mu : regular_spectrum(laplacian(group))) {
    if (mu > zero_tol) return mu;
  }
  return 0;
}

}  // namespace augsos
