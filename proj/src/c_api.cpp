#include "augsos/augsos.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "augsos/augmentation.hpp"
#include "augsos/certificate.hpp"
#include "augsos/error.hpp"
#include "augsos/family.hpp"
#include "augsos/gram.hpp"
#include "augsos/json_io.hpp"

using namespace augsos;
namespace fs = std::filesystem;

struct augsos_context {
  augsos_options options;
  Loader loader;
};

struct augsos_group {
  GroupPtr group;
};

struct augsos_element {
  RingElement value;
};

struct augsos_certificate {
  SosCertificate value;
};

namespace {

thread_local std::string last_error;

augsos_status status_of(ErrorCode code) { return static_cast<augsos_status>(static_cast<int>(code) + 2); }

augsos_status fail(augsos_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
augsos_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), std::string(error_code_name(e.code())) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(AUGSOS_E_PARSE, std::string("Parse: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(AUGSOS_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AUGSOS_E_INTERNAL, std::string("Internal: ") + e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const Json& j) { *out = dup_string(dump_json(j)); }

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

LoadOptions load_options(const augsos_options& o, bool strict = true) {
  LoadOptions lo;
  lo.limits.rewrite_budget = o.budget;
  lo.limits.order_cutoff = o.order_cutoff;
  lo.seed = o.seed;
  lo.strict_witness = strict;
  return lo;
}

SolverConfig solver_config(const augsos_options& o) {
  SolverConfig c;
  c.tol = o.tol;
  c.max_iter = o.max_iter;
  if (o.radius >= 0) c.radius = o.radius;
  c.seed = o.seed;
  c.denominator_bound = mpz_class(static_cast<unsigned long>(o.denominator_bound));
  return c;
}

const FiniteAbelianizationWitness& witness_of(const Group& g) {
  if (!g.witness()) throw Error(ErrorCode::WitnessRequired, "the group has no finite-abelianization witness");
  return *g.witness();
}

template <class T, class... Args>
augsos_status emit(T** out, Args&&... args) {
  *out = new T{std::forward<Args>(args)...};
  return AUGSOS_OK;
}

GroupPtr fallback_of(const augsos_group* g) { return g ? g->group : nullptr; }

}  // namespace

extern "C" {

void augsos_options_init(augsos_options* options) {
  if (!options) return;
  const GroupLimits limits;
  const SolverConfig config;
  options->seed = 0;
  options->budget = limits.rewrite_budget;
  options->order_cutoff = limits.order_cutoff;
  options->radius = -1;
  options->tol = config.tol;
  options->max_iter = config.max_iter;
  options->denominator_bound = config.denominator_bound.get_ui();
}

const char* augsos_version(void) { return "0.1.0"; }

const char* augsos_status_name(augsos_status status) {
  if (status == AUGSOS_OK) return "OK";
  if (status == AUGSOS_NEGATIVE) return "NEGATIVE";
  if (status >= AUGSOS_E_INVALID_ARGUMENT && status <= AUGSOS_E_INTERNAL) {
    return error_code_name(static_cast<ErrorCode>(static_cast<int>(status) - 2));
  }
  return "Unknown";
}

const char* augsos_last_error(void) { return last_error.c_str(); }

void augsos_string_free(char* s) { std::free(s); }

augsos_status augsos_context_new(const augsos_options* options, augsos_context** out) {
  return guarded([&] {
    require(out, "out");
    augsos_options o;
    augsos_options_init(&o);
    if (options) o = *options;
    if (o.budget <= 0 || o.order_cutoff <= 0) throw Error(ErrorCode::InvalidArgument, "budget and cutoff must be positive");
    if (!(o.tol > 0) || o.max_iter <= 0) throw Error(ErrorCode::InvalidArgument, "tol and max_iter must be positive");
    return emit(out, o, Loader(load_options(o)));
  });
}

void augsos_context_free(augsos_context* ctx) { delete ctx; }

// ---------------------------------------------------------------------------
// Groups

augsos_status augsos_group_load(augsos_context* ctx, const char* path, augsos_group** out) {
  return guarded([&] {
    require(ctx, "context");
    require(path, "path");
    require(out, "out");
    return emit(out, ctx->loader.group_file(path));
  });
}

augsos_status augsos_group_parse(augsos_context* ctx, const char* json, const char* base_dir, augsos_group** out) {
  return guarded([&] {
    require(ctx, "context");
    require(json, "json");
    require(out, "out");
    return emit(out, ctx->loader.group(Json::parse(json), base_dir ? base_dir : "."));
  });
}

augsos_status augsos_group_json(const augsos_group* group, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    put(out, group_to_json(*group->group));
    return AUGSOS_OK;
  });
}

void augsos_group_free(augsos_group* group) { delete group; }

augsos_status augsos_group_check(augsos_context* ctx, const char* path, char** report) {
  return guarded([&] {
    require(ctx, "context");
    require(path, "path");
    require(report, "report");
    Loader lenient(load_options(ctx->options, false));
    const Json spec = read_json_file(path);
    const GroupPtr group = lenient.group(spec, fs::path(path).parent_path());
    const Group& g = *group;

    Json r;
    r["group"] = group_to_json(g);
    r["generators"] = g.alphabet().names();
    if (g.kind() == GroupKind::Finite) r["order"] = g.order();
    Json orders = Json::object();
    for (Letter l = 0; l < g.alphabet().size(); ++l) {
      try {
        const auto m = g.element_order(Word{l});
        orders[g.alphabet().name(l)] = m ? Json(*m) : Json("infinite");
      } catch (const Error&) {
        orders[g.alphabet().name(l)] = "undecided";
      }
    }
    r["orders"] = orders;
    r["warnings"] = g.warnings();

    augsos_status status = AUGSOS_OK;
    Json failing = Json::array();
    if (auto declared = lenient.witness_of(spec, g)) {
      for (const auto& label : g.validate_witness(*declared)) failing.push_back(label);
      r["witness"] = failing.empty() ? "valid" : "invalid";
      if (!failing.empty()) status = AUGSOS_NEGATIVE;
    } else {
      r["witness"] = g.witness() ? "default" : "absent";
    }
    r["failing"] = failing;
    put(report, r);
    return status;
  });
}

// ---------------------------------------------------------------------------
// Elements

augsos_status augsos_element_load(augsos_context* ctx, const char* path, const augsos_group* fallback,
                                  augsos_element** out) {
  return guarded([&] {
    require(ctx, "context");
    require(path, "path");
    require(out, "out");
    return emit(out, ctx->loader.element(read_json_file(path), fs::path(path).parent_path(), fallback_of(fallback)));
  });
}

augsos_status augsos_element_parse(augsos_context* ctx, const char* json, const char* base_dir,
                                   const augsos_group* fallback, augsos_element** out) {
  return guarded([&] {
    require(ctx, "context");
    require(json, "json");
    require(out, "out");
    return emit(out, ctx->loader.element(Json::parse(json), base_dir ? base_dir : ".", fallback_of(fallback)));
  });
}

augsos_status augsos_element_json(const augsos_element* x, char** out) {
  return guarded([&] {
    require(x, "element");
    require(out, "out");
    put(out, element_to_json(x->value));
    return AUGSOS_OK;
  });
}

augsos_status augsos_element_group(const augsos_element* x, augsos_group** out) {
  return guarded([&] {
    require(x, "element");
    require(out, "out");
    return emit(out, x->value.group());
  });
}

void augsos_element_free(augsos_element* x) { delete x; }

augsos_status augsos_elem_eval(augsos_context* ctx, const augsos_element* x, const char* const* ops, size_t n_ops,
                               char** report) {
  return guarded([&] {
    require(ctx, "context");
    require(x, "element");
    require(report, "report");
    if (n_ops) require(ops, "ops");
    RingElement v = x->value;
    auto operand = [&](const std::string& path) {
      return ctx->loader.element(read_json_file(path), fs::path(path).parent_path(), v.group());
    };
    for (size_t i = 0; i < n_ops; ++i) {
      const std::string op = ops[i] ? ops[i] : "";
      const auto colon = op.find(':');
      const std::string name = op.substr(0, colon);
      const std::string arg = colon == std::string::npos ? "" : op.substr(colon + 1);
      if (name == "star") {
        v = v.star();
      } else if (name == "neg") {
        v = -v;
      } else if (name == "scale") {
        v *= parse_rational(arg);
      } else if (name == "mul" || name == "lmul" || name == "add" || name == "sub") {
        if (arg.empty()) throw Error(ErrorCode::InvalidArgument, "operation '" + name + "' needs a file");
        const RingElement y = operand(arg);
        require_same_group(v.group(), y.group());
        if (name == "mul") v = v * y;
        else if (name == "lmul") v = y * v;
        else if (name == "add") v += y;
        else v -= y;
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown operation '" + op + "'");
      }
    }
    Json r{{"element", element_to_json(v)},
           {"augmentation", format_rational(v.augmentation())},
           {"hermitian", v.is_hermitian()},
           {"in_augmentation_ideal", augmentation_check(v)},
           {"support", v.size()}};
    put(report, r);
    return AUGSOS_OK;
  });
}

// ---------------------------------------------------------------------------
// Certificates

augsos_status augsos_certificate_load(augsos_context* ctx, const char* path, const augsos_group* fallback,
                                      augsos_certificate** out) {
  return guarded([&] {
    require(ctx, "context");
    require(path, "path");
    require(out, "out");
    return emit(out, ctx->loader.certificate(read_json_file(path), fs::path(path).parent_path(), fallback_of(fallback)));
  });
}

augsos_status augsos_certificate_parse(augsos_context* ctx, const char* json, const char* base_dir,
                                       const augsos_group* fallback, augsos_certificate** out) {
  return guarded([&] {
    require(ctx, "context");
    require(json, "json");
    require(out, "out");
    return emit(out, ctx->loader.certificate(Json::parse(json), base_dir ? base_dir : ".", fallback_of(fallback)));
  });
}

augsos_status augsos_certificate_json(const augsos_certificate* cert, char** out) {
  return guarded([&] {
    require(cert, "certificate");
    require(out, "out");
    put(out, certificate_to_json(cert->value));
    return AUGSOS_OK;
  });
}

void augsos_certificate_free(augsos_certificate* cert) { delete cert; }

augsos_status augsos_certificate_verify(const augsos_certificate* cert, char** report) {
  return guarded([&] {
    require(cert, "certificate");
    const VerifyResult r = verify(cert->value);
    if (report) put(report, verify_report(r));
    return r.verdict == Verdict::Verified ? AUGSOS_OK : AUGSOS_NEGATIVE;
  });
}

augsos_status augsos_certificate_lambda(const augsos_certificate* cert, char** out) {
  return guarded([&] {
    require(cert, "certificate");
    require(out, "out");
    *out = dup_string(format_rational(cert->value.lambda));
    return AUGSOS_OK;
  });
}

// ---------------------------------------------------------------------------
// Family

augsos_status augsos_family_box(const augsos_group* group, int n, int closed_form, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
    put(out, element_to_json(closed_form ? box_closed(group->group, n) : box(group->group, n)));
    return AUGSOS_OK;
  });
}

augsos_status augsos_family_un(const augsos_element* u, int n, char** out) {
  return guarded([&] {
    require(u, "element");
    require(out, "out");
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
    put(out, element_to_json(u_n(u->value, n)));
    return AUGSOS_OK;
  });
}

augsos_status augsos_family_dpreimage(const augsos_element* xi, int group_ring, char** out) {
  return guarded([&] {
    require(xi, "element");
    require(out, "out");
    const FiniteAbelianizationWitness& w = witness_of(*xi->value.group());
    put(out, matrix_to_json(group_ring ? d_preimage_group_ring(xi->value, w) : d_preimage(xi->value, w)));
    return AUGSOS_OK;
  });
}

// ---------------------------------------------------------------------------
// Builders

augsos_status augsos_cert_build_lemma21(const augsos_group* group, const char* s, const char* t, const char* g,
                                        int sign, augsos_certificate** out) {
  return guarded([&] {
    require(group, "group");
    require(s, "s");
    require(t, "t");
    require(g, "g");
    require(out, "out");
    if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "sign must be +1 or -1");
    const Group& grp = *group->group;
    // Tuples are letter sequences, so "e" is not allowed inside them.
    const GeneratorTuple st = grp.parse_word(s);
    const GeneratorTuple tt = grp.parse_word(t);
    return emit(out, lemma21_certificate(group->group, st, tt, grp.normalize(grp.parse_word(g)),
                                         sign > 0 ? Sign::Plus : Sign::Minus));
  });
}

augsos_status augsos_cert_build_theorem(augsos_context* ctx, const augsos_element* eta, int n, const char* base,
                                        const char* obligation_r, augsos_certificate** out) {
  return guarded([&] {
    require(ctx, "context");
    require(eta, "element");
    require(base, "base");
    require(out, "out");
    const FiniteAbelianizationWitness& w = witness_of(*eta->value.group());
    const std::string b = base;
    ElementCertifier certifier;
    if (b == "gram") {
      certifier = gram_base_certifier(solver_config(ctx->options));
    } else if (b == "remark") {
      certifier = remark_base_certifier(w);
    } else if (b == "obligation") {
      certifier = obligation_base_certifier(obligation_r ? parse_rational(obligation_r) : Rational(1));
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown base certifier '" + b + "'");
    }
    return emit(out, theorem_main_certificate(eta->value, n, w, certifier));
  });
}

augsos_status augsos_cert_build_delta(const augsos_element* eta, augsos_certificate** out) {
  return guarded([&] {
    require(eta, "element");
    require(out, "out");
    return emit(out, delta_order_unit_certificate(eta->value, witness_of(*eta->value.group())));
  });
}

// ---------------------------------------------------------------------------
// Gram

augsos_status augsos_gram_search(augsos_context* ctx, const augsos_element* target, const augsos_element* order_unit,
                                 augsos_certificate** out) {
  return guarded([&] {
    require(ctx, "context");
    require(target, "target");
    require(out, "out");
    *out = nullptr;
    const SolverConfig config = solver_config(ctx->options);
    if (order_unit) return emit(out, order_unit_lambda_search(target->value, order_unit->value, config).certificate);
    auto cert = certify_sos(target->value, config);
    if (!cert) return fail(AUGSOS_NEGATIVE, "no exact Gram certificate found (this is not a disproof)");
    return emit(out, std::move(*cert));
  });
}

augsos_status augsos_gram_gap(augsos_context* ctx, const augsos_group* group, char** lambda,
                              augsos_certificate** out) {
  return guarded([&] {
    require(ctx, "context");
    require(group, "group");
    require(out, "out");
    LambdaResult r = spectral_gap_search(group->group, solver_config(ctx->options));
    if (lambda) *lambda = dup_string(format_rational(r.lambda));
    return emit(out, std::move(r.certificate));
  });
}

// ---------------------------------------------------------------------------
// Oracles

augsos_status augsos_oracle_psd(const augsos_element* f, char** report) {
  return guarded([&] {
    require(f, "element");
    const Group& g = *f->value.group();
    const Positivity p = finite_positivity_oracle(f->value);
    if (report) {
      Json r{{"verdict", p == Positivity::Psd ? "PSD" : "NOT_PSD"}, {"elements", g.element_names()}};
      if (p == Positivity::NotPsd) {
        const LdlResult ldl = ldl_pivoted(regular_representation(f->value));
        Json wv = Json::array();
        for (const auto& c : *ldl.witness) wv.push_back(format_rational(c));
        r["witness"] = wv;
      }
      put(report, r);
    }
    return p == Positivity::Psd ? AUGSOS_OK : AUGSOS_NEGATIVE;
  });
}

augsos_status augsos_oracle_orderunit(const augsos_element* u, char** report) {
  return guarded([&] {
    require(u, "element");
    const bool ok = finite_order_unit_oracle(u->value);
    if (report) put(report, Json{{"order_unit", ok}});
    return ok ? AUGSOS_OK : AUGSOS_NEGATIVE;
  });
}

augsos_status augsos_oracle_eigen_gap(const augsos_group* group, double* gap) {
  return guarded([&] {
    require(group, "group");
    require(gap, "gap");
    *gap = laplacian_eigen_gap(group->group);
    return AUGSOS_OK;
  });
}

// ---------------------------------------------------------------------------
// Augmentation

augsos_status augsos_aug_decompose(const augsos_element* x, const char* side, int depth, char** out) {
  return guarded([&] {
    require(x, "element");
    require(out, "out");
    if (depth >= 2) {
      put(out, expression_to_json(idempotence_decompose(x->value, witness_of(*x->value.group()), depth)));
      return AUGSOS_OK;
    }
    const std::string s = side ? side : "left";
    if (s != "left" && s != "right") throw Error(ErrorCode::InvalidArgument, "side must be left or right");
    put(out, decomposition_to_json(generator_decompose(x->value, s == "left" ? Side::Left : Side::Right)));
    return AUGSOS_OK;
  });
}

augsos_status augsos_aug_dims(const augsos_group* group, int n_max, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    put(out, Json{{"n_max", n_max}, {"dims", quotient_dims(group->group, n_max)}});
    return AUGSOS_OK;
  });
}

augsos_status augsos_aug_dimsub(const augsos_group* group, int n, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    Json elems = Json::array();
    for (const auto& w : dimension_subgroup(group->group, n)) elems.push_back(group->group->format_word(w));
    put(out, Json{{"n", n}, {"elements", elems}});
    return AUGSOS_OK;
  });
}

}  // extern "C"
