#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "aql/report.hpp"
#include "aql/sha256.hpp"

using namespace aql;
using nlohmann::json;

namespace {

const char* kKronecker =
    R"({"vertices":["0","1"],"arrows":[{"id":"a","src":"0","dst":"1"},{"id":"b","src":"0","dst":"1"}]})";

template <class F>
std::string error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "<no error>";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("aql_test_cache_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("sha256 standard vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // block-boundary input
  CHECK(sha256_hex(std::string(64, 'a')).size() == 64);
}

TEST_CASE("canonical json dump") {
  json j = json::object();
  j["zeta"] = 1;
  j["alpha"] = json::array({3, 2, 1});
  j["mid"] = json::object({{"b", 2}, {"a", 1}});
  CHECK(canonical_dump(j) == R"({"alpha":[3,2,1],"mid":{"a":1,"b":2},"zeta":1})");
}

TEST_CASE("json integer widening") {
  CHECK(json_int(7).is_number_integer());
  Int edge = (1LL << 53) - 1;
  CHECK(json_int(edge).is_number_integer());
  json over = json_int(1LL << 53);
  REQUIRE(over.is_string());
  CHECK(over.get<std::string>() == "9007199254740992");
  json neg = json_int(-(1LL << 53) - 5);
  REQUIRE(neg.is_string());
  CHECK(neg.get<std::string>() == "-9007199254740997");

  CHECK(json_rat(Rat(3)) == json_int(3));
  json half = json_rat(Rat(1, 2));
  REQUIRE(half.is_string());
  CHECK(half.get<std::string>() == "1/2");
  CHECK(json_rat(Rat(-3, 2)).get<std::string>() == "-3/2");
}

TEST_CASE("task digests are stable and parameter sensitive") {
  TaskDescriptor t{"forms", kKronecker, json{{"alpha", {1, 1}}, {"beta", {1, 1}}}};
  std::string d1 = task_digest(t);
  CHECK(d1.size() == 64);
  CHECK(d1.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(task_digest(t) == d1);

  // whitespace in the quiver text does not matter: digest uses canonical form
  TaskDescriptor spaced = t;
  spaced.quiver_text = std::string("  ") + kKronecker;
  CHECK(task_digest(spaced) == d1);

  TaskDescriptor other = t;
  other.params["beta"] = {2, 1};
  CHECK(task_digest(other) != d1);

  TaskDescriptor cmd = t;
  cmd.command = "affine-info";
  CHECK(task_digest(cmd) != d1);
}

TEST_CASE("execution is deterministic and jobs independent") {
  TaskDescriptor t{"fk-verify", kKronecker, json{{"cutoff", 2}}};
  std::string p1 = execute_task(t, 1);
  std::string p2 = execute_task(t, 1);
  std::string p4 = execute_task(t, 4);
  CHECK(p1 == p2);
  CHECK(p1 == p4);

  json payload = json::parse(p1);
  CHECK(payload["command"] == "fk-verify");
  CHECK(payload["version"] == std::string(kVersion));
  CHECK(payload["task_digest"] == task_digest(t));
  CHECK(payload["result"]["jacobi"]["pass"] == true);
  CHECK(payload["result"]["basis_size"] == 8);
  CHECK(p1.back() == '\n');
}

TEST_CASE("execution failures carry kinds") {
  CHECK(error_kind([] {
          execute_task({"no-such-command", kKronecker, json::object()});
        }) == "UnknownCommand");
  CHECK(error_kind([] {
          execute_task({"forms", kKronecker, json::object()});
        }) == "MissingParam");
  CHECK(error_kind([] {
          execute_task({"forms", "{bad json", json{{"alpha", {1, 1}}, {"beta", {1, 1}}}});
        }) == "ParseError");

  try {
    execute_task({"kac", kKronecker,
                  json{{"dim", {1, 1}}, {"primes", {2, 3}}, {"budget", 3}}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrCode::Budget);
  }
}

TEST_CASE("cache store round trip and recovery") {
  TempDir tmp;
  CacheStore store(tmp.path.string());

  TaskDescriptor t{"forms", kKronecker, json{{"alpha", {1, 0}}, {"beta", {0, 1}}}};
  std::string digest = task_digest(t);
  CHECK_FALSE(store.lookup(digest).has_value());

  std::string payload = execute_task(t);
  store.store(digest, payload);
  auto hit = store.lookup(digest);
  REQUIRE(hit.has_value());
  CHECK(*hit == payload);

  // two-level fanout by digest prefix
  CHECK(store.entry_path(digest).find(tmp.path.string()) == 0);
  CHECK(store.entry_path(digest).find(digest.substr(0, 2)) != std::string::npos);

  // corrupting the stored payload invalidates the entry and removes it
  {
    std::ofstream out(store.entry_path(digest), std::ios::trunc);
    out << "{\"digest\":\"" << digest << "\",\"payload\":\"tampered\"}";
  }
  CHECK_FALSE(store.lookup(digest).has_value());
  CHECK_FALSE(std::filesystem::exists(store.entry_path(digest)));

  // truncated file likewise
  store.store(digest, payload);
  {
    std::ofstream out(store.entry_path(digest), std::ios::trunc);
    out << "{\"dig";
  }
  CHECK_FALSE(store.lookup(digest).has_value());

  // an entry written by a different library version is stale, never served
  store.store(digest, payload);
  {
    std::ifstream in(store.entry_path(digest));
    json entry = json::parse(in);
    in.close();
    entry["version"] = "0.0.0";
    std::ofstream out(store.entry_path(digest), std::ios::trunc);
    out << entry.dump();
  }
  CHECK_FALSE(store.lookup(digest).has_value());
}

TEST_CASE("run_task is cache transparent") {
  TempDir tmp;
  TaskDescriptor t{"tubes", kKronecker, json::object()};

  std::string cold = run_task(t, 1, tmp.path.string());
  std::string warm = run_task(t, 1, tmp.path.string());
  CHECK(cold == warm);

  std::string uncached = run_task(t, 1, "");
  CHECK(uncached == cold);

  // the store now holds exactly one entry for this task
  CacheStore store(tmp.path.string());
  CHECK(store.lookup(task_digest(t)).has_value());
}
