#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "atlas/howe.hpp"
#include "atlas/latin.hpp"
#include "atlas/su_mc.hpp"

namespace atlas::records {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Compact dump with object keys sorted (nlohmann's default map layout) and a
// trailing newline; equal records dump to identical bytes.
std::string canonical_dump(const json& j);

// Adds schema_version (if absent) and a digest over the canonical dump of
// everything else.  Exact integers travel as decimal strings.
json finalize(json record);
bool digest_ok(const json& record);

json census_record(const SignedCensus& c, int threads, std::int64_t shard_count,
                   std::int64_t elapsed_ms);
json rank_record(const ExactLinearMap& m, const RankReport& r, std::int64_t elapsed_ms);
json estimate_record(const std::string& op, int n, const MCEstimate& e, std::int64_t elapsed_ms);

// Directory-backed record cache.  Layout: <dir>/v<schema>/<op>/<key>.json
// with key a hash of the canonical parameter dump.  Hits must parse, carry a
// valid digest, and match op/schema/params exactly; anything else is evicted
// and treated as a miss.  Unwritable directories warn and degrade to no-op.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  // Resolution order: explicit override, then ATLAS_CACHE_DIR, else nullopt.
  static std::optional<ResultCache> resolve(const std::optional<std::string>& override_dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& op, const json& params) const;

  std::optional<json> load(const std::string& op, const json& params) const;
  bool store(const std::string& op, const json& params, const json& finalized_record) const;

  // Existing record files under the current schema version, sorted.
  std::vector<std::filesystem::path> list() const;
  std::size_t clear() const;  // removes all schema versions; returns file count

 private:
  std::filesystem::path dir_;
};

}  // namespace atlas::records
