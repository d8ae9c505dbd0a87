#include "aql.h"

#include <cstring>
#include <new>
#include <string>

#include "aql/quiver.hpp"
#include "aql/report.hpp"

struct aql_quiver {
  aql::Quiver q;
};

namespace {

thread_local std::string g_last_error;

int set_error(const aql::Error& e) {
  g_last_error = e.what();
  return static_cast<int>(e.code());
}

int set_error(const std::exception& e) {
  g_last_error = std::string("InternalAssertion: ") + e.what();
  return AQL_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return AQL_OK;
  } catch (const aql::Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    return set_error(e);
  }
}

aql::LatticeVector to_vec(const long long* data, size_t n) {
  return aql::LatticeVector(data, data + n);
}

}  // namespace

extern "C" {

const char* aql_version(void) { return aql::kVersion; }

const char* aql_last_error(void) { return g_last_error.c_str(); }

void aql_string_free(char* s) { delete[] s; }

int aql_quiver_parse(const char* json_text, aql_quiver** out) {
  return guarded([&] {
    if (!json_text || !out) aql::fail_validation("NullArgument", "json_text and out required");
    auto* h = new aql_quiver{aql::quiver_from_json(json_text)};
    *out = h;
  });
}

void aql_quiver_free(aql_quiver* q) { delete q; }

int aql_quiver_canonical_json(const aql_quiver* q, char** out) {
  return guarded([&] {
    if (!q || !out) aql::fail_validation("NullArgument", "quiver and out required");
    *out = dup_string(aql::quiver_to_canonical_json(q->q));
  });
}

int aql_quiver_vertex_count(const aql_quiver* q, int* out) {
  return guarded([&] {
    if (!q || !out) aql::fail_validation("NullArgument", "quiver and out required");
    *out = static_cast<int>(q->q.num_vertices());
  });
}

int aql_quiver_arrow_count(const aql_quiver* q, int* out) {
  return guarded([&] {
    if (!q || !out) aql::fail_validation("NullArgument", "quiver and out required");
    *out = static_cast<int>(q->q.num_arrows());
  });
}

int aql_euler_form(const aql_quiver* q, const long long* alpha, const long long* beta,
                   size_t n, long long* out) {
  return guarded([&] {
    if (!q || !alpha || !beta || !out)
      aql::fail_validation("NullArgument", "quiver, vectors, and out required");
    *out = aql::euler_form(q->q, to_vec(alpha, n), to_vec(beta, n));
  });
}

int aql_symmetrized_form(const aql_quiver* q, const long long* alpha,
                         const long long* beta, size_t n, long long* out) {
  return guarded([&] {
    if (!q || !alpha || !beta || !out)
      aql::fail_validation("NullArgument", "quiver, vectors, and out required");
    *out = aql::symmetrized_form(q->q, to_vec(alpha, n), to_vec(beta, n));
  });
}

int aql_tits_form(const aql_quiver* q, const long long* alpha, size_t n, long long* out) {
  return guarded([&] {
    if (!q || !alpha || !out)
      aql::fail_validation("NullArgument", "quiver, vector, and out required");
    *out = aql::tits_form(q->q, to_vec(alpha, n));
  });
}

int aql_execute_task(const char* command, const char* quiver_json,
                     const char* params_json, const char* cache_dir, int jobs,
                     char** out_payload) {
  return guarded([&] {
    if (!command || !quiver_json || !params_json || !out_payload)
      aql::fail_validation("NullArgument", "command, quiver, params, and out required");
    aql::TaskDescriptor t;
    t.command = command;
    t.quiver_text = quiver_json;
    try {
      t.params = nlohmann::json::parse(params_json);
    } catch (const nlohmann::json::exception& e) {
      aql::fail_validation("ParseError", std::string("params: ") + e.what());
    }
    std::string payload =
        aql::run_task(t, jobs, cache_dir ? std::string(cache_dir) : std::string());
    *out_payload = dup_string(payload);
  });
}

int aql_task_digest(const char* command, const char* quiver_json,
                    const char* params_json, char** out_digest) {
  return guarded([&] {
    if (!command || !quiver_json || !params_json || !out_digest)
      aql::fail_validation("NullArgument", "command, quiver, params, and out required");
    aql::TaskDescriptor t;
    t.command = command;
    t.quiver_text = quiver_json;
    try {
      t.params = nlohmann::json::parse(params_json);
    } catch (const nlohmann::json::exception& e) {
      aql::fail_validation("ParseError", std::string("params: ") + e.what());
    }
    *out_digest = dup_string(aql::task_digest(t));
  });
}

}  // extern "C"
