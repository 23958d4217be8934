#include "atlas/records.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "atlas/arith.hpp"

namespace atlas::records {

namespace fs = std::filesystem;

std::string canonical_dump(const json& j) { return j.dump() + "\n"; }

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << v;
  return out.str();
}

std::uint64_t record_digest(const json& record) {
  json body = record;
  body.erase("digest");
  return fnv1a64(canonical_dump(body));
}

}  // namespace

json finalize(json record) {
  if (!record.contains("schema_version")) record["schema_version"] = kSchemaVersion;
  record.erase("digest");
  record["digest"] = hex64(record_digest(record));
  return record;
}

bool digest_ok(const json& record) {
  if (!record.is_object() || !record.contains("digest") || !record["digest"].is_string())
    return false;
  return record["digest"].get<std::string>() == hex64(record_digest(record));
}

json census_record(const SignedCensus& c, int threads, std::int64_t shard_count,
                   std::int64_t elapsed_ms) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["op"] = "latin-census";
  r["params"] = {{"n", c.n}};
  r["n"] = c.n;
  r["total"] = c.total.get_str();
  r["even"] = c.even.get_str();
  r["odd"] = c.odd.get_str();
  r["row_even"] = c.row_even.get_str();
  r["row_odd"] = c.row_odd.get_str();
  r["col_even"] = c.col_even.get_str();
  r["col_odd"] = c.col_odd.get_str();
  r["at_difference"] = c.at_difference().get_str();
  r["row_difference"] = c.row_difference().get_str();
  r["col_difference"] = c.col_difference().get_str();
  r["threads"] = threads;
  r["shard_count"] = shard_count;
  r["elapsed_ms"] = elapsed_ms;
  return r;
}

json rank_record(const ExactLinearMap& m, const RankReport& r, std::int64_t elapsed_ms) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["op"] = "howe-rank";
  j["params"] = {{"dimv", m.dimv}, {"d", m.d}, {"n", m.n}, {"weight_zero", m.weight_zero}};
  j["domain_dim"] = r.domain_dim;
  j["codomain_dim"] = r.codomain_dim;
  j["rank"] = r.rank;
  j["injective"] = r.injective;
  j["surjective"] = r.surjective;
  j["method"] = r.method;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

json estimate_record(const std::string& op, int n, const MCEstimate& e, std::int64_t elapsed_ms) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["op"] = op;
  j["params"] = {{"n", n},
                 {"samples", e.samples},
                 {"seed", e.seed},
                 {"chunk_size", e.chunk_size}};
  j["n"] = n;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["chunk_size"] = e.chunk_size;
  j["mean_re"] = e.mean.real();
  j["mean_im"] = e.mean.imag();
  j["stderr"] = e.stderr_total();
  j["stderr_re"] = e.stderr_re;
  j["stderr_im"] = e.stderr_im;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

/******************************** ResultCache *******************************/

std::optional<ResultCache> ResultCache::resolve(const std::optional<std::string>& override_dir) {
  if (override_dir && !override_dir->empty()) return ResultCache(fs::path(*override_dir));
  if (const char* env = std::getenv("ATLAS_CACHE_DIR"); env && *env)
    return ResultCache(fs::path(env));
  return std::nullopt;
}

fs::path ResultCache::path_for(const std::string& op, const json& params) const {
  const std::string key = hex64(fnv1a64(canonical_dump(params)));
  return dir_ / ("v" + std::to_string(kSchemaVersion)) / op / (key + ".json");
}

std::optional<json> ResultCache::load(const std::string& op, const json& params) const {
  const fs::path path = path_for(op, params);
  std::error_code ec;
  if (!fs::exists(path, ec) || ec) return std::nullopt;
  json record;
  bool valid = false;
  {
    std::ifstream in(path);
    if (in) {
      record = json::parse(in, nullptr, false);
      valid = !record.is_discarded() && record.is_object() && digest_ok(record) &&
              record.value("schema_version", -1) == kSchemaVersion &&
              record.value("op", std::string()) == op && record.contains("params") &&
              record["params"] == params;
    }
  }
  if (!valid) {
    fs::remove(path, ec);  // evict; recompute on miss
    return std::nullopt;
  }
  return record;
}

bool ResultCache::store(const std::string& op, const json& params,
                        const json& finalized_record) const {
  const fs::path path = path_for(op, params);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) {
    std::cerr << "warning: cache directory " << path.parent_path().string()
              << " is not writable (" << ec.message() << "); caching disabled for this run\n";
    return false;
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      std::cerr << "warning: cannot write cache file " << tmp.string()
                << "; caching disabled for this run\n";
      return false;
    }
    out << canonical_dump(finalized_record);
    if (!out.good()) {
      std::cerr << "warning: short write to cache file " << tmp.string() << "\n";
      return false;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::cerr << "warning: cannot move cache file into place (" << ec.message() << ")\n";
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

std::vector<fs::path> ResultCache::list() const {
  std::vector<fs::path> out;
  const fs::path root = dir_ / ("v" + std::to_string(kSchemaVersion));
  std::error_code ec;
  if (!fs::exists(root, ec) || ec) return out;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && it->path().extension() == ".json") out.push_back(it->path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t ResultCache::clear() const {
  std::size_t removed = 0;
  std::error_code ec;
  if (!fs::exists(dir_, ec) || ec) return 0;
  for (auto it = fs::recursive_directory_iterator(dir_, ec);
       !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_regular_file(ec) && it->path().extension() == ".json") {
      std::error_code rec;
      if (fs::remove(it->path(), rec) && !rec) ++removed;
    }
  }
  return removed;
}

}  // namespace atlas::records
