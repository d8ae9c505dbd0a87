#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "aql/base.hpp"

namespace aql {

extern const char* const kVersion;

// A task is the unit of caching: command, quiver source text, and a canonical
// key-ordered parameter record. Worker count and cache location are execution
// details and stay out of the digest.
struct TaskDescriptor {
  std::string command;
  std::string quiver_text;
  nlohmann::json params;
};

// Sorted-key compact serialization; integers exact.
std::string canonical_dump(const nlohmann::json& j);

// Integers within the 53-bit window stay numbers, anything larger becomes a
// decimal string so consumers reading doubles never round.
nlohmann::json json_int(Int v);
nlohmann::json json_rat(const Rat& r);

std::string task_digest(const TaskDescriptor& t);

// Runs the command and renders the full report (envelope + result), as the
// exact byte string the CLI prints and the cache stores.
std::string execute_task(const TaskDescriptor& t, int jobs = 1);

// Content-addressed store: dir/<first two hex chars>/<digest>.json. Writes go
// through a temporary file and a rename; unreadable or mismatched entries are
// discarded so a lookup never returns a partial or stale payload.
struct CacheStore {
  std::string dir;
  explicit CacheStore(std::string d) : dir(std::move(d)) {}
  std::string entry_path(const std::string& digest) const;
  std::optional<std::string> lookup(const std::string& digest) const;
  void store(const std::string& digest, const std::string& payload) const;
};

// Cache-aware entry point; empty cache_dir disables caching.
std::string run_task(const TaskDescriptor& t, int jobs, const std::string& cache_dir);

}  // namespace aql
