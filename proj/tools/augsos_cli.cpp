// augsos command-line front end. Talks to the library only through augsos.h.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "augsos/augsos.h"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

struct Failure {
  int exit_code;
};

struct Globals {
  std::string group;
  std::string out;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  bool quiet = false;
};

Globals globals;

void log(const std::string& msg) {
  if (!globals.quiet) std::cerr << "augsos: " << msg << "\n";
}

// Turns an API status into a process outcome; errors never return.
augsos_status check(augsos_status st) {
  if (st == AUGSOS_OK || st == AUGSOS_NEGATIVE) return st;
  std::cerr << "augsos: error: " << augsos_last_error() << "\n";
  throw Failure{kError};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Context = std::unique_ptr<augsos_context, Deleter<augsos_context, augsos_context_free>>;
using GroupH = std::unique_ptr<augsos_group, Deleter<augsos_group, augsos_group_free>>;
using ElementH = std::unique_ptr<augsos_element, Deleter<augsos_element, augsos_element_free>>;
using CertH = std::unique_ptr<augsos_certificate, Deleter<augsos_certificate, augsos_certificate_free>>;

struct Text {
  char* p = nullptr;
  ~Text() { augsos_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

augsos_options solver_options;

Context make_context() {
  augsos_options o = solver_options;
  o.seed = globals.seed;
  if (globals.budget > 0) o.budget = globals.budget;
  augsos_context* ctx = nullptr;
  check(augsos_context_new(&o, &ctx));
  return Context(ctx);
}

GroupH load_group(augsos_context* ctx, const std::string& path) {
  if (path.empty()) {
    std::cerr << "augsos: error: this command needs --group FILE\n";
    throw Failure{kError};
  }
  augsos_group* g = nullptr;
  check(augsos_group_load(ctx, path.c_str(), &g));
  return GroupH(g);
}

GroupH optional_group(augsos_context* ctx) {
  return globals.group.empty() ? GroupH() : load_group(ctx, globals.group);
}

ElementH load_element(augsos_context* ctx, const std::string& path, const augsos_group* fallback) {
  augsos_element* x = nullptr;
  check(augsos_element_load(ctx, path.c_str(), fallback, &x));
  return ElementH(x);
}

void write_output(const std::string& text) {
  if (globals.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(globals.out, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "augsos: error: cannot write " << globals.out << "\n";
    throw Failure{kError};
  }
}

int write_certificate(const augsos_certificate* cert) {
  Text json;
  check(augsos_certificate_json(cert, &json.p));
  write_output(json.str());
  return kOk;
}

int exit_for(augsos_status st) { return st == AUGSOS_OK ? kOk : kNegative; }

}  // namespace

int main(int argc, char** argv) {
  augsos_options_init(&solver_options);

  CLI::App app{"Exact sums of hermitian squares in rational group rings"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--group", globals.group, "Group definition file")->check(CLI::ExistingFile);
  app.add_option("--out", globals.out, "Write the result here instead of standard output");
  app.add_option("--seed", globals.seed, "Seed for randomized checks");
  app.add_option("--budget", globals.budget, "Rewrite-step budget per normalization");
  app.add_flag("--quiet", globals.quiet, "Suppress log messages");

  int code = kOk;
  std::function<int()> action;

  // group check
  auto* group_cmd = app.add_subcommand("group", "Group models")->require_subcommand(1);
  std::string check_path;
  auto* group_check = group_cmd->add_subcommand("check", "Load a group and validate its witnesses");
  group_check->add_option("file", check_path, "Group file (defaults to --group)");
  group_check->callback([&] {
    action = [&] {
      Context ctx = make_context();
      const std::string path = check_path.empty() ? globals.group : check_path;
      if (path.empty()) {
        std::cerr << "augsos: error: group check needs a file\n";
        return kError;
      }
      Text report;
      const augsos_status st = check(augsos_group_check(ctx.get(), path.c_str(), &report.p));
      write_output(report.str());
      return exit_for(st);
    };
  });

  // elem eval
  auto* elem_cmd = app.add_subcommand("elem", "Ring elements")->require_subcommand(1);
  std::string elem_path;
  std::vector<std::string> ops;
  auto* elem_eval = elem_cmd->add_subcommand("eval", "Normalize an element and apply operations in order");
  elem_eval->add_option("--elem", elem_path, "Element file")->required();
  elem_eval->add_option("--op", ops, "star | neg | scale:p/q | mul:FILE | lmul:FILE | add:FILE | sub:FILE");
  elem_eval->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH x = load_element(ctx.get(), elem_path, g.get());
      std::vector<const char*> raw;
      for (const auto& o : ops) raw.push_back(o.c_str());
      Text report;
      check(augsos_elem_eval(ctx.get(), x.get(), raw.data(), raw.size(), &report.p));
      write_output(report.str());
      return kOk;
    };
  });

  // family
  auto* family_cmd = app.add_subcommand("family", "The codifferential family")->require_subcommand(1);
  int family_n = 1;
  bool group_ring = false;
  std::string family_elem;
  auto* family_box = family_cmd->add_subcommand("box", "box(n) by the recursion box(n) = D(diag(box(n-1)))");
  family_box->add_option("--n", family_n, "n >= 0")->required();
  auto* family_closed = family_cmd->add_subcommand("box-closed", "box(n) as a sum over generator tuples");
  family_closed->add_option("--n", family_n, "n >= 0")->required();
  auto box_action = [&](int closed) {
    return [&, closed] {
      action = [&, closed] {
        Context ctx = make_context();
        GroupH g = load_group(ctx.get(), globals.group);
        Text out;
        check(augsos_family_box(g.get(), family_n, closed, &out.p));
        write_output(out.str());
        return kOk;
      };
    };
  };
  family_box->callback(box_action(0));
  family_closed->callback(box_action(1));
  auto* family_un = family_cmd->add_subcommand("un", "u_n: the tuple-conjugated sum of an element");
  family_un->add_option("--elem", family_elem, "Element file")->required();
  family_un->add_option("--n", family_n, "n >= 0")->required();
  family_un->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH u = load_element(ctx.get(), family_elem, g.get());
      Text out;
      check(augsos_family_un(u.get(), family_n, &out.p));
      write_output(out.str());
      return kOk;
    };
  });
  auto* family_pre = family_cmd->add_subcommand("dpreimage", "A matrix m with D(m) equal to the element");
  family_pre->add_option("--elem", family_elem, "Element file in I[G]")->required();
  family_pre->add_flag("--group-ring", group_ring, "Allow entries anywhere in the group ring");
  family_pre->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH xi = load_element(ctx.get(), family_elem, g.get());
      Text out;
      check(augsos_family_dpreimage(xi.get(), group_ring ? 1 : 0, &out.p));
      write_output(out.str());
      return kOk;
    };
  });

  // cert
  auto* cert_cmd = app.add_subcommand("cert", "Certificates")->require_subcommand(1);
  std::string s_tuple, t_tuple, g_word = "e", sign = "+";
  auto* cert_l21 = cert_cmd->add_subcommand("build-lemma21", "One-row certificate for E_{s,t}(+-g) + box_{s,t}");
  cert_l21->add_option("--s", s_tuple, "Generator tuple, e.g. \"a b\"")->required();
  cert_l21->add_option("--t", t_tuple, "Generator tuple of the same length")->required();
  cert_l21->add_option("--g", g_word, "Group element");
  cert_l21->add_option("--sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
  cert_l21->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = load_group(ctx.get(), globals.group);
      augsos_certificate* c = nullptr;
      check(augsos_cert_build_lemma21(g.get(), s_tuple.c_str(), t_tuple.c_str(), g_word.c_str(),
                                      sign == "-" ? -1 : 1, &c));
      CertH cert(c);
      return write_certificate(cert.get());
    };
  });

  std::string cert_elem, base = "gram", obligation_r = "1";
  int cert_n = 1;
  auto* cert_thm = cert_cmd->add_subcommand("build-theorem", "eta + lambda box(n) through the inductive chain");
  cert_thm->add_option("--elem", cert_elem, "Hermitian element in I[G]")->required();
  cert_thm->add_option("--n", cert_n, "n >= 1")->required();
  cert_thm->add_option("--base", base, "Base certifier for v + lambda Delta")
      ->check(CLI::IsMember({"gram", "remark", "obligation"}));
  cert_thm->add_option("--obligation-r", obligation_r, "Delta multiple recorded by --base obligation");
  cert_thm->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH eta = load_element(ctx.get(), cert_elem, g.get());
      augsos_certificate* c = nullptr;
      check(augsos_cert_build_theorem(ctx.get(), eta.get(), cert_n, base.c_str(), obligation_r.c_str(), &c));
      CertH cert(c);
      Text lambda;
      check(augsos_certificate_lambda(cert.get(), &lambda.p));
      log("lambda = " + lambda.str());
      return write_certificate(cert.get());
    };
  });
  auto* cert_delta = cert_cmd->add_subcommand("build-delta", "eta + lambda Delta via the identity matrix order unit");
  cert_delta->add_option("--elem", cert_elem, "Hermitian element in I[G]")->required();
  cert_delta->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH eta = load_element(ctx.get(), cert_elem, g.get());
      augsos_certificate* c = nullptr;
      check(augsos_cert_build_delta(eta.get(), &c));
      CertH cert(c);
      return write_certificate(cert.get());
    };
  });

  std::string verify_path;
  auto* cert_verify = cert_cmd->add_subcommand("verify", "Exact check of a certificate");
  cert_verify->add_option("file", verify_path, "Certificate file")->required();
  cert_verify->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      augsos_certificate* c = nullptr;
      check(augsos_certificate_load(ctx.get(), verify_path.c_str(), g.get(), &c));
      CertH cert(c);
      Text report;
      const augsos_status st = check(augsos_certificate_verify(cert.get(), &report.p));
      write_output(report.str());
      return exit_for(st);
    };
  });

  // gram
  auto* gram_cmd = app.add_subcommand("gram", "Gram-matrix searches")->require_subcommand(1);
  std::string target_path, unit_path;
  auto* gram_search = gram_cmd->add_subcommand("search", "Certificate for target (+ lambda order-unit)");
  gram_search->add_option("--target", target_path, "Hermitian element")->required();
  gram_search->add_option("--order-unit", unit_path, "Hermitian order unit; omit to certify the target alone");
  for (auto* sub : {gram_search, gram_cmd->add_subcommand("gap", "Largest lambda with Delta^2 - lambda Delta certified")}) {
    sub->add_option("--tol", solver_options.tol, "Numeric solver tolerance");
    sub->add_option("--radius", solver_options.radius, "Basis ball radius (-1: default)");
    sub->add_option("--max-iter", solver_options.max_iter, "Solver iteration limit");
  }
  gram_search->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH target = load_element(ctx.get(), target_path, g.get());
      ElementH unit = unit_path.empty() ? ElementH() : load_element(ctx.get(), unit_path, g.get());
      augsos_certificate* c = nullptr;
      const augsos_status st = check(augsos_gram_search(ctx.get(), target.get(), unit.get(), &c));
      if (st == AUGSOS_NEGATIVE) {
        log(augsos_last_error());
        return kNegative;
      }
      CertH cert(c);
      Text lambda;
      check(augsos_certificate_lambda(cert.get(), &lambda.p));
      log("lambda = " + lambda.str());
      return write_certificate(cert.get());
    };
  });
  gram_cmd->get_subcommand("gap")->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = load_group(ctx.get(), globals.group);
      augsos_certificate* c = nullptr;
      Text lambda;
      check(augsos_gram_gap(ctx.get(), g.get(), &lambda.p, &c));
      CertH cert(c);
      log("spectral gap lambda = " + lambda.str());
      return write_certificate(cert.get());
    };
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Finite-group regular-representation oracles")->require_subcommand(1);
  std::string oracle_elem;
  auto* oracle_psd = oracle_cmd->add_subcommand("psd", "Exact PSD test of the regular representation");
  oracle_psd->add_option("--elem", oracle_elem, "Hermitian element")->required();
  auto* oracle_ou = oracle_cmd->add_subcommand("orderunit", "Order-unit test in I[G]");
  oracle_ou->add_option("--elem", oracle_elem, "Hermitian element in I[G]")->required();
  auto oracle_action = [&](bool psd) {
    return [&, psd] {
      action = [&, psd] {
        Context ctx = make_context();
        GroupH g = optional_group(ctx.get());
        ElementH f = load_element(ctx.get(), oracle_elem, g.get());
        Text report;
        const augsos_status st =
            check(psd ? augsos_oracle_psd(f.get(), &report.p) : augsos_oracle_orderunit(f.get(), &report.p));
        write_output(report.str());
        return exit_for(st);
      };
    };
  };
  oracle_psd->callback(oracle_action(true));
  oracle_ou->callback(oracle_action(false));

  // aug
  auto* aug_cmd = app.add_subcommand("aug", "Augmentation ideal")->require_subcommand(1);
  std::string aug_elem, side = "left";
  int depth = 0, aug_n = 1;
  auto* aug_dec = aug_cmd->add_subcommand("decompose", "Generator decomposition or idempotence expression");
  aug_dec->add_option("--elem", aug_elem, "Element in I[G]")->required();
  aug_dec->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
  aug_dec->add_option("--depth", depth, "Product depth >= 2 (uses the group's witness)");
  aug_dec->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = optional_group(ctx.get());
      ElementH x = load_element(ctx.get(), aug_elem, g.get());
      Text out;
      check(augsos_aug_decompose(x.get(), side.c_str(), depth, &out.p));
      write_output(out.str());
      return kOk;
    };
  });
  auto* aug_dims = aug_cmd->add_subcommand("dims", "dim I^n / I^(n+1) for n = 1..n-max (finite groups)");
  aug_dims->add_option("--n-max", aug_n, "At most 4")->required();
  aug_dims->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = load_group(ctx.get(), globals.group);
      Text out;
      check(augsos_aug_dims(g.get(), aug_n, &out.p));
      write_output(out.str());
      return kOk;
    };
  });
  auto* aug_dimsub = aug_cmd->add_subcommand("dimsub", "Dimension subgroup D_n (finite groups)");
  aug_dimsub->add_option("--n", aug_n, "At most 4")->required();
  aug_dimsub->callback([&] {
    action = [&] {
      Context ctx = make_context();
      GroupH g = load_group(ctx.get(), globals.group);
      Text out;
      check(augsos_aug_dimsub(g.get(), aug_n, &out.p));
      write_output(out.str());
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kError;
  }

  try {
    code = action ? action() : kError;
  } catch (const Failure& f) {
    code = f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "augsos: error: " << e.what() << "\n";
    code = kError;
  }
  return code;
}
