#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "augsos/augmentation.hpp"
#include "augsos/certificate.hpp"
#include "augsos/group.hpp"
#include "augsos/ring.hpp"

namespace augsos {

using Json = nlohmann::json;

struct LoadOptions {
  GroupLimits limits;
  std::uint64_t seed = 0;
  /// When false, an invalid witness is left uninstalled instead of throwing.
  bool strict_witness = true;
};

/// Resolves "group" fields (inline objects or paths relative to the file that
/// mentions them) and hands out one shared GroupPtr per distinct definition,
/// so elements loaded from different files can be combined.
class Loader {
 public:
  explicit Loader(LoadOptions options = {}) : options_(options) {}

  GroupPtr group(const Json& spec, const std::filesystem::path& base_dir);
  GroupPtr group_file(const std::filesystem::path& path);

  /// Witness entries of a group definition, without installing them.
  std::optional<FiniteAbelianizationWitness> witness_of(const Json& spec, const Group& group) const;

  /// Element, matrix or certificate documents. `fallback` is used when the
  /// document has no "group" field.
  RingElement element(const Json& doc, const std::filesystem::path& base_dir, GroupPtr fallback = nullptr);
  RingMatrix matrix(const Json& doc, const std::filesystem::path& base_dir, GroupPtr fallback = nullptr);
  SosCertificate certificate(const Json& doc, const std::filesystem::path& base_dir, GroupPtr fallback = nullptr);

  const LoadOptions& options() const { return options_; }

 private:
  GroupPtr resolve(const Json& doc, const std::filesystem::path& base_dir, GroupPtr fallback);

  LoadOptions options_;
  std::map<std::string, GroupPtr> cache_;
};

Json read_json_file(const std::filesystem::path& path);
/// Two-space indent and a trailing newline; object keys come out sorted.
std::string dump_json(const Json& j);

Json group_to_json(const Group& group);

/// {"terms":[{"g":word,"c":"p/q"}]}, plus "group" when `with_group`.
Json element_to_json(const RingElement& x, bool with_group = true);
RingElement element_terms_from_json(const Json& doc, const GroupPtr& group);

Json matrix_to_json(const RingMatrix& m, bool with_group = true);
RingMatrix matrix_entries_from_json(const Json& doc, const GroupPtr& group);

Json certificate_to_json(const SosCertificate& cert);

Json expression_to_json(const ProductExpression& expr);
Json decomposition_to_json(const GeneratorDecomposition& dec);

Json verify_report(const VerifyResult& result);

}  // namespace augsos
