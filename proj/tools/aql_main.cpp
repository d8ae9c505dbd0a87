#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aql.h"

namespace {

using nlohmann::json;

int fail_usage(const std::string& msg) {
  std::cerr << "Validation: " << msg << "\n";
  return AQL_ERR_VALIDATION;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool parse_csv(const std::string& text, std::vector<long long>& out) {
  out.clear();
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

json csv_json(const std::vector<long long>& v) {
  json a = json::array();
  for (long long x : v) a.push_back(x);
  return a;
}

// inline JSON, or @path to load from a file
bool load_spec(const std::string& value, json& out, std::string& err) {
  std::string text = value;
  if (!value.empty() && value[0] == '@') {
    if (!read_file(value.substr(1), text)) {
      err = "cannot read spec file '" + value.substr(1) + "'";
      return false;
    }
  }
  try {
    out = json::parse(text);
  } catch (const json::exception& e) {
    err = std::string("spec is not valid JSON: ") + e.what();
    return false;
  }
  return true;
}

int run(const std::string& command, const std::string& quiver_path, const json& params,
        const std::string& cache_dir, int jobs) {
  std::string quiver_text;
  if (!read_file(quiver_path, quiver_text))
    return fail_usage("cannot read quiver file '" + quiver_path + "'");
  char* payload = nullptr;
  int rc = aql_execute_task(command.c_str(), quiver_text.c_str(), params.dump().c_str(),
                            cache_dir.empty() ? nullptr : cache_dir.c_str(), jobs,
                            &payload);
  if (rc != AQL_OK) {
    std::cerr << aql_last_error() << "\n";
    return rc;
  }
  std::cout << payload;
  aql_string_free(payload);
  return AQL_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine quiver laboratory"};
  app.set_version_flag("--version", aql_version());
  app.require_subcommand(1);

  std::string quiver_path;
  app.add_option("--quiver", quiver_path, "quiver spec JSON file")->required();
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for verification sweeps");
  std::string cache_dir;
  if (const char* env = std::getenv("AQL_CACHE_DIR")) cache_dir = env;
  app.add_option("--cache-dir", cache_dir, "result cache directory (env AQL_CACHE_DIR)");
  long long budget = 1000000000LL;
  app.add_option("--budget", budget, "field-operation budget");

  std::vector<std::string> dims;
  std::string primes_csv = "2,3";
  long long cutoff = 2;
  std::string variant = "symmetrized", cocycle = "eps";
  std::string x_spec, y_spec, z_spec, rep_spec;
  std::string theta_csv, lambda_csv;

  CLI::App* forms = app.add_subcommand("forms", "Euler, symmetrized, and quadratic forms");
  forms->add_option("--dim", dims, "dimension vector CSV (repeat for a second vector)")
      ->required()
      ->expected(1, 2);

  app.add_subcommand("affine-info", "extended Dynkin label, delta, extending vertices");

  CLI::App* roots = app.add_subcommand("roots", "positive roots within a box of deltas");
  roots->add_option("--cutoff", cutoff, "box bound as a multiple of delta");

  app.add_subcommand("coxeter", "Coxeter transformation data");
  app.add_subcommand("tubes", "periods of the exceptional Coxeter orbits below delta");

  CLI::App* fk_verify = app.add_subcommand("fk-verify", "bracket verification sweep");
  fk_verify->add_option("--cutoff", cutoff, "level cutoff");
  fk_verify->add_option("--variant", variant, "literal|symmetrized");
  fk_verify->add_option("--cocycle", cocycle, "eps|eps-star");

  CLI::App* fk_bracket = app.add_subcommand("fk-bracket", "bracket of two basis keys");
  fk_bracket->add_option("--cutoff", cutoff, "level cutoff");
  fk_bracket->add_option("--variant", variant, "literal|symmetrized");
  fk_bracket->add_option("--cocycle", cocycle, "eps|eps-star");
  fk_bracket->add_option("--x", x_spec, "key JSON, {\"real\":[...]} or {\"imag\":[m,i]}")
      ->required();
  fk_bracket->add_option("--y", y_spec, "key JSON")->required();

  CLI::App* kac = app.add_subcommand("kac", "count polynomial of a dimension vector");
  kac->add_option("--dim", dims, "dimension vector CSV")->required();
  kac->add_option("--primes", primes_csv, "evaluation primes CSV");

  CLI::App* hall = app.add_subcommand("hall", "filtration count for three representations");
  hall->add_option("--x", x_spec, "sub spec JSON or @file")->required();
  hall->add_option("--y", y_spec, "quotient spec JSON or @file")->required();
  hall->add_option("--z", z_spec, "total spec JSON or @file")->required();

  CLI::App* hall_chi = app.add_subcommand("hall-chi", "filtration count interpolated across primes");
  hall_chi->add_option("--x", x_spec, "sub class spec (no p)")->required();
  hall_chi->add_option("--y", y_spec, "quotient class spec (no p)")->required();
  hall_chi->add_option("--z", z_spec, "total class spec (no p)")->required();
  hall_chi->add_option("--primes", primes_csv, "evaluation primes CSV");

  CLI::App* stability = app.add_subcommand("stability", "weight-stability verdict");
  stability->add_option("--rep", rep_spec, "representation spec JSON or @file")->required();
  stability->add_option("--theta", theta_csv, "weight CSV")->required();

  CLI::App* generic = app.add_subcommand("generic", "weight genericity for a dimension");
  generic->add_option("--theta", theta_csv, "weight CSV")->required();
  generic->add_option("--dim", dims, "dimension vector CSV")->required();

  CLI::App* pp_moment = app.add_subcommand("pp-moment", "moment map on a double-quiver point");
  pp_moment->add_option("--rep", rep_spec, "double-quiver spec JSON or @file")->required();
  pp_moment->add_option("--lambda", lambda_csv, "deformation parameter CSV");

  CLI::App* pp_lifts = app.add_subcommand("pp-lifts", "zero-moment lifts of a forward representation");
  pp_lifts->add_option("--rep", rep_spec, "representation spec JSON or @file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return AQL_ERR_VALIDATION;
  }

  auto parse_dim = [&](size_t idx, json& out) {
    std::vector<long long> v;
    if (idx >= dims.size() || !parse_csv(dims[idx], v)) return false;
    out = csv_json(v);
    return true;
  };
  auto parse_csv_flag = [&](const std::string& text, const char* what, json& out) {
    std::vector<long long> v;
    if (!parse_csv(text, v)) {
      fail_usage(std::string(what) + " must be a CSV of integers");
      return false;
    }
    out = csv_json(v);
    return true;
  };

  json params = json::object();
  std::string command;

  if (forms->parsed()) {
    command = "forms";
    json a, b;
    if (!parse_dim(0, a)) return fail_usage("--dim must be a CSV of integers");
    params["alpha"] = a;
    if (dims.size() == 2) {
      if (!parse_dim(1, b)) return fail_usage("--dim must be a CSV of integers");
      params["beta"] = b;
    }
  } else if (app.get_subcommand("affine-info")->parsed()) {
    command = "affine-info";
  } else if (roots->parsed()) {
    command = "roots";
    params["bound"] = cutoff;
    params["budget"] = budget;
  } else if (app.get_subcommand("coxeter")->parsed()) {
    command = "coxeter";
  } else if (app.get_subcommand("tubes")->parsed()) {
    command = "tubes";
  } else if (fk_verify->parsed()) {
    command = "fk-verify";
    params["cutoff"] = cutoff;
    params["variant"] = variant;
    params["cocycle"] = cocycle;
  } else if (fk_bracket->parsed()) {
    command = "fk-bracket";
    params["cutoff"] = cutoff;
    params["variant"] = variant;
    params["cocycle"] = cocycle;
    std::string err;
    json xk, yk;
    if (!load_spec(x_spec, xk, err)) return fail_usage("--x: " + err);
    if (!load_spec(y_spec, yk, err)) return fail_usage("--y: " + err);
    params["x"] = xk;
    params["y"] = yk;
  } else if (kac->parsed()) {
    command = "kac";
    json d, p;
    if (!parse_dim(0, d)) return fail_usage("--dim must be a CSV of integers");
    if (!parse_csv_flag(primes_csv, "--primes", p)) return AQL_ERR_VALIDATION;
    params["dim"] = d;
    params["primes"] = p;
    params["budget"] = budget;
  } else if (hall->parsed()) {
    command = "hall";
    std::string err;
    json xs, ys, zs;
    if (!load_spec(x_spec, xs, err)) return fail_usage("--x: " + err);
    if (!load_spec(y_spec, ys, err)) return fail_usage("--y: " + err);
    if (!load_spec(z_spec, zs, err)) return fail_usage("--z: " + err);
    params["x"] = xs;
    params["y"] = ys;
    params["z"] = zs;
    params["budget"] = budget;
  } else if (hall_chi->parsed()) {
    command = "hall-chi";
    std::string err;
    json xs, ys, zs, p;
    if (!load_spec(x_spec, xs, err)) return fail_usage("--x: " + err);
    if (!load_spec(y_spec, ys, err)) return fail_usage("--y: " + err);
    if (!load_spec(z_spec, zs, err)) return fail_usage("--z: " + err);
    if (!parse_csv_flag(primes_csv, "--primes", p)) return AQL_ERR_VALIDATION;
    params["x"] = xs;
    params["y"] = ys;
    params["z"] = zs;
    params["primes"] = p;
    params["budget"] = budget;
  } else if (stability->parsed()) {
    command = "stability";
    std::string err;
    json xs, th;
    if (!load_spec(rep_spec, xs, err)) return fail_usage("--rep: " + err);
    if (!parse_csv_flag(theta_csv, "--theta", th)) return AQL_ERR_VALIDATION;
    params["x"] = xs;
    params["theta"] = th;
    params["budget"] = budget;
  } else if (generic->parsed()) {
    command = "generic";
    json th, a;
    if (!parse_csv_flag(theta_csv, "--theta", th)) return AQL_ERR_VALIDATION;
    if (!parse_dim(0, a)) return fail_usage("--dim must be a CSV of integers");
    params["lambda"] = th;
    params["alpha"] = a;
    params["budget"] = budget;
  } else if (pp_moment->parsed()) {
    command = "pp-moment";
    std::string err;
    json xs;
    if (!load_spec(rep_spec, xs, err)) return fail_usage("--rep: " + err);
    params["x"] = xs;
    if (!lambda_csv.empty()) {
      json lam;
      if (!parse_csv_flag(lambda_csv, "--lambda", lam)) return AQL_ERR_VALIDATION;
      params["lambda"] = lam;
    }
  } else if (pp_lifts->parsed()) {
    command = "pp-lifts";
    std::string err;
    json xs;
    if (!load_spec(rep_spec, xs, err)) return fail_usage("--rep: " + err);
    params["x"] = xs;
    params["budget"] = budget;
  } else {
    return fail_usage("no command given");
  }

  return run(command, quiver_path, params, cache_dir, jobs);
}
