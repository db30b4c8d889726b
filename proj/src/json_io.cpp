#include "augsos/json_io.hpp"

#include <fstream>
#include <sstream>

#include "augsos/error.hpp"
#include "augsos/rational.hpp"

namespace augsos {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

Rational rational_of(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  parse_fail("rationals must be strings \"p/q\" or integers");
}

std::string string_of(const Json& v, const char* what) {
  if (!v.is_string()) parse_fail(std::string(what) + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> default_free_names(std::size_t rank) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < rank; ++i) {
    names.push_back(rank <= 26 ? std::string(1, static_cast<char>('a' + i)) : "x" + std::to_string(i + 1));
  }
  return names;
}

// Words inside a presentation, before a Group exists.
Word word_over(const GeneratorAlphabet& alphabet, const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok == "e") continue;
    auto l = alphabet.find(tok);
    if (!l) parse_fail("unknown generator '" + tok + "' in rule");
    w.push_back(*l);
  }
  return w;
}

Group build_group(const Json& spec, const LoadOptions& options) {
  const std::string kind = string_of(field(spec, "kind"), "kind");
  if (kind == "free") {
    std::vector<std::string> names;
    if (spec.contains("generators")) names = spec.at("generators").get<std::vector<std::string>>();
    if (spec.contains("rank")) {
      const auto rank = spec.at("rank").get<std::size_t>();
      if (names.empty()) names = default_free_names(rank);
      if (names.size() != rank) parse_fail("free group: rank differs from the number of generators");
    }
    if (names.empty()) parse_fail("free group needs \"rank\" or \"generators\"");
    Group g = Group::make_free(names);
    g.set_limits(options.limits);
    return g;
  }
  if (kind == "finite") {
    auto elements = field(spec, "elements").get<std::vector<std::string>>();
    auto table = field(spec, "table").get<std::vector<std::vector<std::size_t>>>();
    auto generators = field(spec, "generators").get<std::vector<std::string>>();
    Group g = Group::make_finite(std::move(elements), std::move(table), generators);
    g.set_limits(options.limits);
    return g;
  }
  if (kind == "presented") {
    GeneratorAlphabet alphabet;
    const auto generators = field(spec, "generators").get<std::vector<std::string>>();
    for (const auto& name : generators) alphabet.add(name);
    std::map<std::string, std::string> inverses;
    if (spec.contains("inverses")) inverses = spec.at("inverses").get<std::map<std::string, std::string>>();
    for (const auto& name : generators) {
      const Letter l = *alphabet.find(name);
      auto it = inverses.find(name);
      const std::string inv = it == inverses.end() ? name + "^-1" : it->second;
      auto il = alphabet.find(inv);
      if (!il) il = alphabet.add(inv);
      alphabet.pair(l, *il);
    }
    std::vector<Group::RewriteRule> rules;
    if (spec.contains("rules")) {
      for (const auto& r : spec.at("rules")) {
        if (!r.is_array() || r.size() != 2) parse_fail("rules must be [lhs, rhs] pairs");
        rules.push_back({word_over(alphabet, string_of(r[0], "rule lhs")), word_over(alphabet, string_of(r[1], "rule rhs"))});
      }
    }
    return Group::make_presented(std::move(alphabet), std::move(rules), options.limits, options.seed);
  }
  parse_fail("unknown group kind '" + kind + "'");
}

Json word_json(const Group& g, const Word& w) { return g.format_word(w); }

}  // namespace

// ---------------------------------------------------------------------------

Json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::optional<FiniteAbelianizationWitness> Loader::witness_of(const Json& spec, const Group& group) const {
  if (!spec.is_object() || !spec.contains("witnesses")) return std::nullopt;
  const Json& ws = spec.at("witnesses");
  if (!ws.is_object()) parse_fail("\"witnesses\" must be an object keyed by generator label");
  std::vector<std::optional<TorsionWitness>> partial(group.alphabet().size());
  try {
    for (const auto& [label, entry] : ws.items()) {
      auto l = group.alphabet().find(label);
      if (!l) parse_fail("witness for unknown generator '" + label + "'");
      TorsionWitness tw;
      tw.exponent = field(entry, "m").get<std::int64_t>();
      if (entry.contains("commutators")) {
        for (const auto& pair : entry.at("commutators")) {
          if (!pair.is_array() || pair.size() != 2) parse_fail("commutators must be [a, b] pairs");
          tw.commutators.push_back({group.parse_word(string_of(pair[0], "commutator")),
                                    group.parse_word(string_of(pair[1], "commutator"))});
        }
      }
      partial[*l] = std::move(tw);
    }
  } catch (const Json::exception& e) {
    parse_fail(std::string("witnesses: ") + e.what());
  }
  return complete_witness(group, std::move(partial));
}

GroupPtr Loader::group(const Json& spec, const fs::path& base_dir) {
  if (spec.is_string()) return group_file(base_dir / spec.get<std::string>());
  if (!spec.is_object()) parse_fail("\"group\" must be a path or an object");
  Group g = [&] {
    try {
      return build_group(spec, options_);
    } catch (const Json::exception& e) {
      parse_fail(std::string("group: ") + e.what());
    }
  }();
  if (auto w = witness_of(spec, g)) {
    if (options_.strict_witness) {
      g.set_witness(std::move(*w));
    } else {
      try {
        g.set_witness(std::move(*w));
      } catch (const Error&) {
      }
    }
  } else if (g.kind() == GroupKind::Finite) {
    g.install_default_witness();
  }
  const std::string key = group_to_json(g).dump();
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto ptr = std::make_shared<const Group>(std::move(g));
  cache_.emplace(key, ptr);
  return ptr;
}

GroupPtr Loader::group_file(const fs::path& path) {
  const Json doc = read_json_file(path);
  return group(doc, path.parent_path());
}

GroupPtr Loader::resolve(const Json& doc, const fs::path& base_dir, GroupPtr fallback) {
  if (doc.is_object() && doc.contains("group") && !doc.at("group").is_null()) return group(doc.at("group"), base_dir);
  if (!fallback) parse_fail("document has no \"group\" and none was given");
  return fallback;
}

RingElement Loader::element(const Json& doc, const fs::path& base_dir, GroupPtr fallback) {
  return element_terms_from_json(doc, resolve(doc, base_dir, std::move(fallback)));
}

RingMatrix Loader::matrix(const Json& doc, const fs::path& base_dir, GroupPtr fallback) {
  return matrix_entries_from_json(doc, resolve(doc, base_dir, std::move(fallback)));
}

SosCertificate Loader::certificate(const Json& doc, const fs::path& base_dir, GroupPtr fallback) {
  const GroupPtr group = resolve(doc, base_dir, std::move(fallback));
  try {
    const auto k = field(doc, "k").get<std::size_t>();
    SosCertificate cert(group, k);
    cert.target = matrix_entries_from_json(field(doc, "target"), group);
    cert.lambda = rational_of(field(doc, "lambda"));
    if (doc.contains("order_unit") && !doc.at("order_unit").is_null()) {
      const Json& u = doc.at("order_unit");
      cert.order_unit = u.contains("entries") ? matrix_entries_from_json(u, group)
                                              : RingMatrix::diag(element_terms_from_json(u, group), k);
    }
    const Json& weights = field(doc, "weights");
    const Json& summands = field(doc, "summands");
    if (!weights.is_array() || !summands.is_array() || weights.size() != summands.size()) {
      throw Error(ErrorCode::MalformedCertificate, "weights and summands must be arrays of equal length");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const Json& row = summands[i];
      if (!row.is_array() || row.size() != k) {
        throw Error(ErrorCode::MalformedCertificate, "summand " + std::to_string(i) + " is not a row of length k");
      }
      RingMatrix a(group, 1, k);
      for (std::size_t j = 0; j < k; ++j) a(0, j) = element_terms_from_json(row[j], group);
      cert.add_summand(rational_of(weights[i]), std::move(a));
    }
    if (doc.contains("obligations")) {
      for (const auto& o : doc.at("obligations")) cert.obligations.push_back(matrix_entries_from_json(o, group));
    }
    return cert;
  } catch (const Json::exception& e) {
    parse_fail(std::string("certificate: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

Json group_to_json(const Group& group) {
  const GeneratorAlphabet& alphabet = group.alphabet();
  Json out;
  switch (group.kind()) {
    case GroupKind::Free: {
      out["kind"] = "free";
      const int rank = alphabet.size() / 2;
      out["rank"] = rank;
      Json names = Json::array();
      for (Letter l = 0; l < rank; ++l) names.push_back(alphabet.name(l));
      out["generators"] = names;
      break;
    }
    case GroupKind::Finite:
      out["kind"] = "finite";
      out["elements"] = group.element_names();
      out["table"] = group.table();
      out["generators"] = alphabet.names();
      break;
    case GroupKind::Presented: {
      out["kind"] = "presented";
      out["generators"] = alphabet.names();
      Json inv = Json::object();
      for (Letter l = 0; l < alphabet.size(); ++l) inv[alphabet.name(l)] = alphabet.name(alphabet.inverse(l));
      out["inverses"] = inv;
      Json rules = Json::array();
      for (const auto& r : group.rules()) rules.push_back(Json::array({group.format_word(r.lhs), group.format_word(r.rhs)}));
      out["rules"] = rules;
      break;
    }
  }
  if (group.witness() && !group.witness_is_default()) {
    Json ws = Json::object();
    const auto& per = group.witness()->per_letter;
    for (Letter l = 0; l < static_cast<Letter>(per.size()); ++l) {
      Json comms = Json::array();
      for (const auto& c : per[l].commutators) comms.push_back(Json::array({word_json(group, c.a), word_json(group, c.b)}));
      ws[alphabet.name(l)] = Json{{"m", per[l].exponent}, {"commutators", comms}};
    }
    out["witnesses"] = ws;
  }
  return out;
}

Json element_to_json(const RingElement& x, bool with_group) {
  const Group& group = *x.group();
  Json terms = Json::array();
  for (const auto& [g, c] : x.terms()) terms.push_back(Json{{"g", group.format_word(g)}, {"c", format_rational(c)}});
  Json out{{"terms", terms}};
  if (with_group) out["group"] = group_to_json(group);
  return out;
}

RingElement element_terms_from_json(const Json& doc, const GroupPtr& group) {
  RingElement x(group);
  const Json& terms = field(doc, "terms");
  if (!terms.is_array()) parse_fail("\"terms\" must be an array");
  for (const auto& t : terms) {
    const Word g = group->normalize(group->parse_word(string_of(field(t, "g"), "term word")));
    x.accumulate(g, rational_of(field(t, "c")));
  }
  return x;
}

Json matrix_to_json(const RingMatrix& m, bool with_group) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(element_to_json(m(i, j), false));
    rows.push_back(row);
  }
  Json out{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
  if (with_group) out["group"] = group_to_json(*m.group());
  return out;
}

RingMatrix matrix_entries_from_json(const Json& doc, const GroupPtr& group) {
  try {
    const auto rows = field(doc, "rows").get<std::size_t>();
    const auto cols = field(doc, "cols").get<std::size_t>();
    const Json& entries = field(doc, "entries");
    if (!entries.is_array() || entries.size() != rows) throw Error(ErrorCode::ShapeMismatch, "matrix row count mismatch");
    RingMatrix m(group, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!entries[i].is_array() || entries[i].size() != cols) {
        throw Error(ErrorCode::ShapeMismatch, "matrix column count mismatch");
      }
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = element_terms_from_json(entries[i][j], group);
    }
    return m;
  } catch (const Json::exception& e) {
    parse_fail(std::string("matrix: ") + e.what());
  }
}

Json certificate_to_json(const SosCertificate& cert) {
  Json out;
  out["group"] = group_to_json(*cert.group);
  out["k"] = cert.k;
  out["lambda"] = format_rational(cert.lambda);
  out["order_unit"] = cert.order_unit ? matrix_to_json(*cert.order_unit, false) : Json(nullptr);
  Json weights = Json::array();
  for (const auto& w : cert.weights) weights.push_back(format_rational(w));
  out["weights"] = weights;
  Json summands = Json::array();
  for (const auto& a : cert.summands) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(element_to_json(a(0, j), false));
    summands.push_back(row);
  }
  out["summands"] = summands;
  out["target"] = matrix_to_json(cert.target, false);
  if (!cert.obligations.empty()) {
    Json obligations = Json::array();
    for (const auto& o : cert.obligations) obligations.push_back(matrix_to_json(o, false));
    out["obligations"] = obligations;
  }
  return out;
}

Json expression_to_json(const ProductExpression& expr) {
  bool pairs = true;
  for (const auto& t : expr.terms) pairs = pairs && t.factors.size() == 2;
  Json terms = Json::array();
  for (const auto& t : expr.terms) {
    Json item{{"lambda", format_rational(t.lambda)}};
    if (pairs) {
      item["left"] = element_to_json(t.factors[0], false);
      item["right"] = element_to_json(t.factors[1], false);
    } else {
      Json factors = Json::array();
      for (const auto& f : t.factors) factors.push_back(element_to_json(f, false));
      item["factors"] = factors;
    }
    terms.push_back(item);
  }
  return Json{{"group", group_to_json(*expr.group)}, {"terms", terms}};
}

Json decomposition_to_json(const GeneratorDecomposition& dec) {
  Json coeffs = Json::object();
  GroupPtr group;
  for (Letter l = 0; l < static_cast<Letter>(dec.coefficients.size()); ++l) {
    const RingElement& c = dec.coefficients[l];
    group = c.group();
    if (!c.is_zero()) coeffs[group->alphabet().name(l)] = element_to_json(c, false);
  }
  Json out{{"side", dec.side == Side::Left ? "left" : "right"}, {"coefficients", coeffs}};
  if (group) out["group"] = group_to_json(*group);
  return out;
}

Json verify_report(const VerifyResult& result) {
  Json out{{"verdict", verdict_name(result.verdict)}, {"reason", result.reason}};
  if (result.verdict == Verdict::Falsified && result.residual) out["residual"] = matrix_to_json(*result.residual, false);
  return out;
}

}  // namespace augsos
