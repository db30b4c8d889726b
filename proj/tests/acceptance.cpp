// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "augsos/augmentation.hpp"
#include "augsos/certificate.hpp"
#include "augsos/error.hpp"
#include "augsos/family.hpp"
#include "augsos/gram.hpp"
#include "augsos/json_io.hpp"
#include "support.hpp"

using namespace augsos;
using namespace augsos::testing;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

GeneratorTuple random_tuple(const Group& g, std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> letter(0, static_cast<int>(g.alphabet().size()) - 1);
  GeneratorTuple t(n);
  for (auto& l : t) l = letter(rng);
  return t;
}

Word random_pick(const std::vector<Word>& words, std::mt19937_64& rng) {
  return words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];
}

Outcome single_row_blocks() {
  Outcome o;
  std::mt19937_64 rng(101);
  for (const char* name : {"f2", "s3"}) {
    const auto g = group(name);
    const auto words = pool(g, 2);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 1 + trial % 2;
      const auto c = lemma21_certificate(g, random_tuple(*g, rng, n), random_tuple(*g, rng, n), random_pick(words, rng),
                                         rng() % 2 ? Sign::Plus : Sign::Minus);
      const auto r = verify(c);
      if (r.verdict != Verdict::Verified || !r.residual || !r.residual->is_zero()) o.fail(std::string(name) + ": residual not zero");
    }
  }
  return o;
}

Outcome family_consistency() {
  Outcome o;
  for (const char* name : {"f2", "s3"}) {
    const auto g = group(name);
    for (int n = 0; n <= 3; ++n) {
      const RingElement b = box(g, n);
      if (b != box_closed(g, n)) o.fail(std::string(name) + ": box != closed form at n=" + std::to_string(n));
      if (u_n(RingElement::one(g), n) != b) o.fail(std::string(name) + ": u_n(1) != box at n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome preimage_identities() {
  Outcome o;
  for (const char* name : {"f2", "s3"}) {
    const auto g = group(name);
    const std::size_t k = g->alphabet().size();
    const RingElement delta = laplacian(g);
    if (apply_D(RingMatrix::identity(g, k)) != delta) o.fail(std::string(name) + ": D(1) != Delta");
    if (apply_D(laplacian_squared_preimage(g)) != delta * delta) o.fail(std::string(name) + ": D(dd*) != Delta^2");
    RingElement direct(g);
    for (Letter s = 0; s < k; ++s) {
      const RingElement x = RingElement::one_minus(g, Word{s});
      direct += x.star() * x * x.star() * x;
    }
    if (apply_D(sq_preimage(g)) != direct) o.fail(std::string(name) + ": D(sq_preimage) mismatch");
  }
  return o;
}

Outcome d_surjectivity() {
  Outcome o;
  std::mt19937_64 rng(104);
  for (const char* name : {"s3", "d4", "q8"}) {
    const auto g = group(name);
    if (!g->witness_is_default()) o.fail(std::string(name) + ": witness is not the default one");
    for (int trial = 0; trial < 100; ++trial) {
      const RingElement xi = random_ideal(g, rng, 4);
      if (apply_D(d_preimage(xi)) != xi) o.fail(std::string(name) + ": D(d_preimage(xi)) != xi");
    }
  }
  return o;
}

Outcome desk_scale_order_unit() {
  Outcome o;
  std::mt19937_64 rng(105);
  const auto s3 = group("s3");
  const auto& w = *s3->witness();
  const ElementCertifier base = gram_base_certifier();
  for (int trial = 0; trial < 25; ++trial) {
    const RingElement eta = random_hermitian_ideal(s3, rng, 3);
    const auto c = theorem_main_certificate(eta, 2, w, base);
    if (c.target(0, 0) != eta || !c.order_unit || (*c.order_unit)(0, 0) != box(s3, 2)) o.fail("wrong target or unit");
    if (verify(c).verdict != Verdict::Verified) o.fail("certificate does not verify");
  }
  return o;
}

Outcome order_unit_oracle() {
  Outcome o;
  for (const char* name : {"s3", "d4", "q8"}) {
    const auto g = group(name);
    for (int n = 1; n <= 3; ++n) {
      if (!finite_order_unit_oracle(box(g, n))) o.fail(std::string(name) + ": box(" + std::to_string(n) + ") rejected");
    }
  }
  return o;
}

Outcome idempotence_falsifier() {
  Outcome o;
  std::mt19937_64 rng(107);
  for (const char* name : {"f2", "z"}) {
    const auto g = group(name);
    const Letter a = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const RingElement p = random_ideal(g, rng, 2, 2) * random_ideal(g, rng, 2, 2);
      for (Letter s = 0; s < g->alphabet().size(); ++s) {
        if (abelianization_functional(p, s) != 0) o.fail(std::string(name) + ": nonzero on I^2");
      }
    }
    if (abelianization_functional(RingElement::one_minus(g, Word{a}), a) != -1) o.fail(std::string(name) + ": L(1-a) != -1");
  }
  return o;
}

Outcome spectral_gaps() {
  Outcome o;
  for (const char* name : {"z2", "s3"}) {
    const auto g = group(name);
    const double oracle = laplacian_eigen_gap(g);
    const auto r = spectral_gap_search(g);
    const double diff = std::abs(r.lambda.get_d() - oracle);
    std::ostringstream msg;
    msg << name << ": lambda " << r.lambda.get_d() << " vs eigen gap " << oracle;
    if (diff > 1e-6) o.fail(msg.str());
    if (verify(r.certificate).verdict != Verdict::Verified) o.fail(std::string(name) + ": certificate does not verify");
    if (o.ok) o.detail += (o.detail.empty() ? "" : "; ") + msg.str();
  }
  return o;
}

// Every rational string inside a certificate document: weights, lambda,
// and the "c" of every term anywhere in it.
void collect_rationals(Json& j, std::vector<Json*>& out, bool in_weights = false) {
  if (j.is_object()) {
    for (auto& [key, value] : j.items()) {
      if (key == "group") continue;
      if ((key == "c" || key == "lambda") && value.is_string()) {
        out.push_back(&value);
      } else {
        collect_rationals(value, out, key == "weights");
      }
    }
  } else if (j.is_array()) {
    for (auto& v : j) {
      if (in_weights && v.is_string()) {
        out.push_back(&v);
      } else {
        collect_rationals(v, out);
      }
    }
  }
}

Outcome exactness_firewall() {
  Outcome o;
  const Rational eps(1, 1000000000);
  std::size_t files = 0, mutations = 0;
  for (const auto& entry : std::filesystem::directory_iterator(golden_dir())) {
    if (entry.path().extension() != ".json") continue;
    ++files;
    Json doc = read_json_file(entry.path());
    Loader l;
    const auto base_dir = entry.path().parent_path();
    if (verify(l.certificate(doc, base_dir)).verdict != Verdict::Verified) {
      o.fail(entry.path().filename().string() + " does not verify unmodified");
      continue;
    }
    std::vector<Json*> fields;
    collect_rationals(doc, fields);
    for (Json* f : fields) {
      const std::string original = f->get<std::string>();
      *f = format_rational(parse_rational(original) + eps);
      ++mutations;
      try {
        if (verify(l.certificate(doc, base_dir)).verdict != Verdict::Falsified) {
          o.fail(entry.path().filename().string() + ": mutation of " + original + " not caught");
        }
      } catch (const Error& e) {
        o.fail(entry.path().filename().string() + ": mutation rejected with an error: " + e.what());
      }
      *f = original;
    }
  }
  if (files == 0) o.fail("no golden certificates found");
  o.detail = (o.ok ? "" : o.detail + "; ") + std::to_string(mutations) + " mutations over " + std::to_string(files) + " files";
  return o;
}

Outcome stabilization() {
  Outcome o;
  for (const char* name : {"s3", "z2"}) {
    const auto dims = quotient_dims(group(name), 4);
    if (dims != std::vector<std::size_t>{0, 0, 0, 0}) o.fail(std::string(name) + ": nonzero quotient dimension");
  }
  return o;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "single-row blocks verify exactly on F2 and S3", 10, single_row_blocks},
      {2, "box equals closed form and u_n(1)", 30, family_consistency},
      {3, "preimage identities for D", 0, preimage_identities},
      {4, "constructive D-surjectivity on S3, D4, Q8", 0, d_surjectivity},
      {5, "order-unit certificates for box(2) on S3 with the Gram base", 300, desk_scale_order_unit},
      {6, "regular-representation order-unit oracle accepts box(n)", 0, order_unit_oracle},
      {7, "abelianization functional separates I from I^2", 0, idempotence_falsifier},
      {8, "spectral gaps match the eigenvalue oracle", 0, spectral_gaps},
      {9, "single-coefficient mutations falsify golden certificates", 0, exactness_firewall},
      {10, "I^n/I^(n+1) vanishes on S3 and Z/2", 0, stabilization},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) o.fail("took longer than " + std::to_string(c.limit_seconds) + " s");
    if (!o.ok) ++failed;
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.number, c.name, secs,
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
