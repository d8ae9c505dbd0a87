#include "aql/report.hpp"

#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>

#include "aql/fk.hpp"
#include "aql/preproj.hpp"
#include "aql/replab.hpp"
#include "aql/roots.hpp"
#include "aql/sha256.hpp"

namespace aql {

using nlohmann::json;

const char* const kVersion = "1.0.0";

namespace {

constexpr Int kJsonIntWindow = (1LL << 53) - 1;

const json& need(const json& params, const std::string& command, const char* key) {
  if (!params.contains(key))
    fail_validation("MissingParam", "command '" + command + "' needs '" + key + "'");
  return params.at(key);
}

Int as_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    fail_validation("BadParam", std::string(what) + " must be an integer");
  return j.get<Int>();
}

LatticeVector as_vec(const json& j, const char* what) {
  if (!j.is_array()) fail_validation("BadParam", std::string(what) + " must be an array");
  LatticeVector v;
  for (const auto& e : j) v.push_back(as_int(e, what));
  return v;
}

std::vector<Int> as_primes(const json& j) {
  LatticeVector v = as_vec(j, "primes");
  if (v.empty()) fail_validation("BadParam", "primes must be nonempty");
  return v;
}

Int opt_int(const json& params, const char* key, Int fallback) {
  return params.contains(key) ? as_int(params.at(key), key) : fallback;
}

Budget make_budget(const json& params) {
  Budget b;
  b.limit = opt_int(params, "budget", b.limit);
  if (b.limit < 1) fail_validation("BadParam", "budget must be positive");
  return b;
}

json json_vec(const LatticeVector& v) {
  json a = json::array();
  for (Int x : v) a.push_back(json_int(x));
  return a;
}

json json_mat(const IMat& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(json_vec(row));
  return a;
}

json json_fpmat(const FpMat& m) {
  json a = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(json_int(m.at(r, c)));
    a.push_back(row);
  }
  return a;
}

json json_fk_key(const FKKey& k) {
  json j;
  if (k.imag)
    j["imag"] = json::array({json_int(k.m), json_int(k.i)});
  else
    j["real"] = json_vec(k.real);
  return j;
}

json json_fk_element(const FKElement& e) {
  json a = json::array();
  for (const auto& [k, c] : e.terms)
    a.push_back(json{{"key", json_fk_key(k)}, {"coeff", json_rat(c)}});
  return a;
}

FKKey parse_fk_key(const json& j, const char* what) {
  if (j.is_object() && j.contains("real")) return FKKey::real_key(as_vec(j.at("real"), what));
  if (j.is_object() && j.contains("imag")) {
    LatticeVector mi = as_vec(j.at("imag"), what);
    if (mi.size() != 2)
      fail_validation("BadParam", std::string(what) + " imaginary key needs [m, i]");
    return FKKey::imag_key(mi[0], static_cast<int>(mi[1]));
  }
  fail_validation("BadParam", std::string(what) + " must be {\"real\": [...]} or {\"imag\": [m, i]}");
}

FKConfig parse_fk_config(const json& params) {
  FKConfig cfg;
  cfg.cutoff = opt_int(params, "cutoff", 2);
  std::string variant =
      params.contains("variant") ? params.at("variant").get<std::string>() : "symmetrized";
  if (variant == "literal")
    cfg.pairing = FKPairing::Literal;
  else if (variant == "symmetrized")
    cfg.pairing = FKPairing::Symmetrized;
  else
    fail_validation("BadParam", "variant must be 'literal' or 'symmetrized'");
  std::string cocycle =
      params.contains("cocycle") ? params.at("cocycle").get<std::string>() : "eps";
  if (cocycle == "eps")
    cfg.cocycle = FKCocycle::Plain;
  else if (cocycle == "eps-star")
    cfg.cocycle = FKCocycle::Twisted;
  else
    fail_validation("BadParam", "cocycle must be 'eps' or 'eps-star'");
  return cfg;
}

IntRepSpec parse_class_spec(const Quiver& q, const json& j, const char* what) {
  if (!j.is_object()) fail_validation("BadParam", std::string(what) + " must be an object");
  IntRepSpec spec;
  spec.dim = as_vec(need(j, what, "dim"), "dim");
  const json& mats = need(j, what, "matrices");
  if (!mats.is_object())
    fail_validation("BadParam", std::string(what) + ".matrices must be an object");
  for (const auto& [id, mj] : mats.items()) {
    if (!mj.is_array())
      fail_validation("BadParam", std::string(what) + ".matrices['" + id + "'] must be an array");
    IMat m;
    for (const auto& row : mj) m.push_back(as_vec(row, "matrix row"));
    spec.matrices[id] = std::move(m);
  }
  q.check_dim(spec.dim, what);
  return spec;
}

struct RepSpecWithField {
  Int p = 0;
  IntRepSpec spec;
};

RepSpecWithField parse_rep_spec(const Quiver& q, const json& j, const char* what) {
  RepSpecWithField r;
  r.spec = parse_class_spec(q, j, what);
  r.p = as_int(need(j, what, "p"), "p");
  return r;
}

std::string verdict_name(StabilityVerdict v) {
  switch (v) {
    case StabilityVerdict::Unstable: return "unstable";
    case StabilityVerdict::Semistable: return "semistable";
    default: return "stable";
  }
}

json jacobi_json(const JacobiReport& r) {
  json v = json::array();
  for (const auto& viol : r.violations)
    v.push_back(json{{"x", json_fk_key(viol.x)},
                     {"y", json_fk_key(viol.y)},
                     {"z", json_fk_key(viol.z)},
                     {"residual", json_fk_element(viol.residual)}});
  return json{{"triples_checked", json_int(r.triples_checked)},
              {"skipped", json_int(r.skipped)},
              {"violations", v},
              {"pass", r.pass()}};
}

json serre_json(const SerreReport& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back(json{{"i", it.i},
                         {"j", it.j},
                         {"power", json_int(it.power)},
                         {"vanishes", it.vanishes},
                         {"lower_tested", it.lower_tested},
                         {"lower_nonzero", it.lower_nonzero}});
  return json{{"items", items}, {"pass", r.pass()}};
}

json twist_json(const TwistReport& r) {
  json fails = json::array();
  for (const auto& [a, b] : r.failures)
    fails.push_back(json{{"x", json_fk_key(a)}, {"y", json_fk_key(b)}});
  return json{{"pairs_checked", json_int(r.pairs_checked)},
              {"skipped", json_int(r.skipped)},
              {"failures", fails},
              {"pass", r.pass()}};
}

json run_forms(const Quiver& q, const json& params) {
  LatticeVector alpha = as_vec(need(params, "forms", "alpha"), "alpha");
  LatticeVector beta =
      params.contains("beta") ? as_vec(params.at("beta"), "beta") : alpha;
  q.check_dim(alpha, "alpha");
  q.check_dim(beta, "beta");
  return json{{"alpha", json_vec(alpha)},
              {"beta", json_vec(beta)},
              {"euler", json_int(euler_form(q, alpha, beta))},
              {"symmetrized", json_int(symmetrized_form(q, alpha, beta))},
              {"tits_alpha", json_int(tits_form(q, alpha))},
              {"tits_beta", json_int(tits_form(q, beta))}};
}

json run_affine_info(const Quiver& q) {
  AffineData aff = classify_affine(q);
  IMat e = euler_matrix(q);
  LatticeVector defect_w(q.num_vertices(), 0);
  for (size_t j = 0; j < q.num_vertices(); ++j)
    for (size_t i = 0; i < q.num_vertices(); ++i) defect_w[j] += aff.delta[i] * e[i][j];
  json ext = json::array();
  for (int v : aff.extending) ext.push_back(q.vertices[v]);
  return json{{"label", aff.label()},
              {"rank", aff.rank},
              {"n", aff.n},
              {"delta", json_vec(aff.delta)},
              {"extending", ext},
              {"acyclic", aff.acyclic},
              {"defect_weights", json_vec(defect_w)}};
}

json run_roots(const Quiver& q, const json& params, int jobs) {
  AffineData aff = classify_affine(q);
  Int mult = opt_int(params, "bound", 2);
  if (mult < 1) fail_validation("BadParam", "bound must be at least 1");
  Budget budget = make_budget(params);
  LatticeVector bound = vec_scale(mult, aff.delta);
  auto roots = enumerate_positive_roots(q, aff, bound, budget, jobs);
  json arr = json::array();
  for (const Root& r : roots)
    arr.push_back(json{{"vector", json_vec(r.v)},
                       {"real", r.real},
                       {"imaginary", r.imaginary},
                       {"regular", r.regular},
                       {"level", json_int(r.level)},
                       {"multiplicity", json_int(r.multiplicity)},
                       {"defect", json_int(defect(q, aff, r.v))}});
  return json{{"bound", json_vec(bound)}, {"count", json_int(static_cast<Int>(roots.size()))},
              {"roots", arr}};
}

json run_coxeter(const Quiver& q) {
  CoxeterData cd = coxeter_matrix(q);
  return json{{"matrix", json_mat(cd.c)},
              {"euler", json_mat(cd.euler)},
              {"euler_inverse", json_mat(cd.euler_inv)}};
}

json run_tubes(const Quiver& q) {
  AffineData aff = classify_affine(q);
  TubeData t = tube_skeleton(q, aff);
  json orbits = json::array();
  for (const auto& orbit : t.orbits) {
    json o = json::array();
    for (const auto& v : orbit) o.push_back(json_vec(v));
    orbits.push_back(o);
  }
  return json{{"periods", json_vec(t.periods)}, {"orbits", orbits}};
}

json run_fk_verify(const Quiver& q, const json& params, int jobs) {
  FKConfig cfg = parse_fk_config(params);
  FKContext ctx = make_fk_context(q, cfg);
  JacobiReport jac = verify_jacobi(ctx, jobs);
  SerreReport serre = verify_serre(ctx);
  TwistReport twist = twist_isomorphism_check(q, cfg.cutoff);
  json graded = json::array();
  for (Int m = 1; m <= cfg.cutoff; ++m) {
    LatticeVector md = vec_scale(m, ctx.aff.delta);
    graded.push_back(json{{"vector", json_vec(md)},
                          {"dimension", json_int(graded_dimension(q, ctx.aff, md))}});
  }
  return json{{"variant", cfg.pairing == FKPairing::Literal ? "literal" : "symmetrized"},
              {"cocycle", cfg.cocycle == FKCocycle::Plain ? "eps" : "eps-star"},
              {"cutoff", json_int(cfg.cutoff)},
              {"basis_size", json_int(static_cast<Int>(fk_basis(ctx).size()))},
              {"jacobi", jacobi_json(jac)},
              {"serre", serre_json(serre)},
              {"twist", twist_json(twist)},
              {"graded_dimensions", graded}};
}

json run_fk_bracket(const Quiver& q, const json& params) {
  FKConfig cfg = parse_fk_config(params);
  FKContext ctx = make_fk_context(q, cfg);
  FKKey xk = parse_fk_key(need(params, "fk-bracket", "x"), "x");
  FKKey yk = parse_fk_key(need(params, "fk-bracket", "y"), "y");
  FKElement x, y;
  x.add_term(xk, Rat(1));
  y.add_term(yk, Rat(1));
  FKElement b = fk_bracket(ctx, x, y);
  return json{{"x", json_fk_key(xk)},
              {"y", json_fk_key(yk)},
              {"bracket", json_fk_element(b)}};
}

json run_kac(const Quiver& q, const json& params) {
  LatticeVector dim = as_vec(need(params, "kac", "dim"), "dim");
  std::vector<Int> primes = as_primes(need(params, "kac", "primes"));
  Budget budget = make_budget(params);
  KacPolynomial k = kac_polynomial(q, dim, primes, budget);
  json counts = json::array();
  for (const auto& [p, c] : k.counts)
    counts.push_back(json::array({json_int(p), json_int(c)}));
  json coeffs = json::array();
  for (Int c : k.coeffs) coeffs.push_back(json_int(c));
  return json{{"dim", json_vec(dim)},
              {"degree_bound", json_int(k.degree_bound)},
              {"counts", counts},
              {"coefficients", coeffs}};
}

json run_hall(const Quiver& q, const json& params) {
  RepSpecWithField xs = parse_rep_spec(q, need(params, "hall", "x"), "x");
  RepSpecWithField ys = parse_rep_spec(q, need(params, "hall", "y"), "y");
  RepSpecWithField zs = parse_rep_spec(q, need(params, "hall", "z"), "z");
  if (xs.p != ys.p || xs.p != zs.p)
    fail_validation("BadParam", "hall inputs must share one prime field");
  Budget budget = make_budget(params);
  FFRep x = reduce_spec(q, xs.spec, xs.p);
  FFRep y = reduce_spec(q, ys.spec, ys.p);
  FFRep z = reduce_spec(q, zs.spec, zs.p);
  ClassCache cache(q, xs.p, budget);
  Int count = hall_number(x, y, z, cache, budget);
  return json{{"p", json_int(xs.p)},
              {"x_dim", json_vec(x.dim)},
              {"y_dim", json_vec(y.dim)},
              {"z_dim", json_vec(z.dim)},
              {"count", json_int(count)}};
}

json run_hall_chi(const Quiver& q, const json& params) {
  IntRepSpec xs = parse_class_spec(q, need(params, "hall-chi", "x"), "x");
  IntRepSpec ys = parse_class_spec(q, need(params, "hall-chi", "y"), "y");
  IntRepSpec zs = parse_class_spec(q, need(params, "hall-chi", "z"), "z");
  std::vector<Int> primes = as_primes(need(params, "hall-chi", "primes"));
  Budget budget = make_budget(params);
  HallCount hc = hall_euler_characteristic(q, xs, ys, zs, primes, budget);
  json counts = json::array();
  for (const auto& [p, c] : hc.counts)
    counts.push_back(json::array({json_int(p), json_int(c)}));
  json poly = json::array();
  for (const Rat& c : hc.poly) poly.push_back(json_rat(c));
  return json{{"degree_bound", json_int(hc.degree_bound)},
              {"counts", counts},
              {"polynomial", poly},
              {"euler_characteristic", json_int(hc.euler_characteristic)}};
}

json run_stability(const Quiver& q, const json& params) {
  RepSpecWithField xs = parse_rep_spec(q, need(params, "stability", "x"), "x");
  LatticeVector theta = as_vec(need(params, "stability", "theta"), "theta");
  Budget budget = make_budget(params);
  FFRep x = reduce_spec(q, xs.spec, xs.p);
  StabilityResult res = stability_status(x, theta, budget);
  bool geometric = res.verdict == StabilityVerdict::Stable &&
                   is_absolutely_indecomposable(x, budget);
  json out{{"p", json_int(xs.p)},
           {"dim", json_vec(x.dim)},
           {"theta", json_vec(theta)},
           {"verdict", verdict_name(res.verdict)},
           {"max_pairing", json_int(res.max_pairing)},
           {"geometric", geometric}};
  out["witness_dim"] = res.witness_dim ? json_vec(*res.witness_dim) : json(nullptr);
  return out;
}

json run_generic(const Quiver& q, const json& params) {
  LatticeVector lambda = as_vec(need(params, "generic", "lambda"), "lambda");
  LatticeVector alpha = as_vec(need(params, "generic", "alpha"), "alpha");
  Budget budget = make_budget(params);
  return json{{"lambda", json_vec(lambda)},
              {"alpha", json_vec(alpha)},
              {"generic", is_generic(q, lambda, alpha, budget)}};
}

json run_pp_moment(const Quiver& q, const json& params) {
  DoubleQuiver dq = double_quiver(q);
  RepSpecWithField xs = parse_rep_spec(dq.q, need(params, "pp-moment", "x"), "x");
  LatticeVector lambda = params.contains("lambda")
                             ? as_vec(params.at("lambda"), "lambda")
                             : LatticeVector(q.num_vertices(), 0);
  FFRep x = reduce_spec(dq.q, xs.spec, xs.p);
  MomentValue mu = moment_map(dq, x);
  json mats = json::array();
  for (const FpMat& m : mu) mats.push_back(json_fpmat(m));
  return json{{"p", json_int(xs.p)},
              {"dim", json_vec(x.dim)},
              {"lambda", json_vec(lambda)},
              {"moment", mats},
              {"pi_rep", is_pi_rep(dq, x, lambda)},
              {"nilpotent", is_nilpotent(dq, x)}};
}

json run_pp_lifts(const Quiver& q, const json& params) {
  RepSpecWithField xs = parse_rep_spec(q, need(params, "pp-lifts", "x"), "x");
  Budget budget = make_budget(params);
  FFRep x = reduce_spec(q, xs.spec, xs.p);
  NilpotentLifts nl = nilpotent_lifts(x, budget);
  return json{{"p", json_int(xs.p)},
              {"dim", json_vec(x.dim)},
              {"space_dim", json_int(nl.space_dim)},
              {"total", json_int(nl.total)},
              {"nilpotent_count", json_int(nl.count)}};
}

}  // namespace

std::string canonical_dump(const json& j) { return j.dump(); }

json json_int(Int v) {
  if (v > kJsonIntWindow || v < -kJsonIntWindow) return json(std::to_string(v));
  return json(v);
}

json json_rat(const Rat& r) {
  if (r.den == 1) return json_int(r.num);
  return json(r.str());
}

std::string task_digest(const TaskDescriptor& t) {
  Quiver q = quiver_from_json(t.quiver_text);
  json keyed{{"command", t.command},
             {"params", t.params},
             {"quiver", json::parse(quiver_to_canonical_json(q))}};
  return sha256_hex(std::string(kVersion) + "\n" + canonical_dump(keyed));
}

std::string execute_task(const TaskDescriptor& t, int jobs) {
  if (jobs < 1) fail_validation("BadParam", "jobs must be positive");
  if (!t.params.is_object()) fail_validation("BadParam", "params must be an object");
  Quiver q = quiver_from_json(t.quiver_text);
  json result;
  if (t.command == "forms")
    result = run_forms(q, t.params);
  else if (t.command == "affine-info")
    result = run_affine_info(q);
  else if (t.command == "roots")
    result = run_roots(q, t.params, jobs);
  else if (t.command == "coxeter")
    result = run_coxeter(q);
  else if (t.command == "tubes")
    result = run_tubes(q);
  else if (t.command == "fk-verify")
    result = run_fk_verify(q, t.params, jobs);
  else if (t.command == "fk-bracket")
    result = run_fk_bracket(q, t.params);
  else if (t.command == "kac")
    result = run_kac(q, t.params);
  else if (t.command == "hall")
    result = run_hall(q, t.params);
  else if (t.command == "hall-chi")
    result = run_hall_chi(q, t.params);
  else if (t.command == "stability")
    result = run_stability(q, t.params);
  else if (t.command == "generic")
    result = run_generic(q, t.params);
  else if (t.command == "pp-moment")
    result = run_pp_moment(q, t.params);
  else if (t.command == "pp-lifts")
    result = run_pp_lifts(q, t.params);
  else
    fail_validation("UnknownCommand", "no command named '" + t.command + "'");

  std::string quiver_canon = quiver_to_canonical_json(q);
  json payload{{"command", t.command},
               {"version", kVersion},
               {"task_digest", task_digest(t)},
               {"quiver", json::parse(quiver_canon)},
               {"quiver_digest", sha256_hex(quiver_canon)},
               {"params", t.params},
               {"result", result}};
  return payload.dump(2) + "\n";
}

std::string CacheStore::entry_path(const std::string& digest) const {
  return dir + "/" + digest.substr(0, 2) + "/" + digest + ".json";
}

std::optional<std::string> CacheStore::lookup(const std::string& digest) const {
  namespace fs = std::filesystem;
  std::string path = entry_path(digest);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  try {
    json entry = json::parse(text);
    if (entry.at("digest").get<std::string>() == digest &&
        entry.at("version").get<std::string>() == kVersion) {
      std::string payload = entry.at("payload").get<std::string>();
      if (sha256_hex(payload) == entry.at("payload_sha").get<std::string>())
        return payload;
    }
  } catch (const json::exception&) {
  }
  // corrupt or stale entry: drop it and let the caller recompute
  std::error_code ec;
  fs::remove(path, ec);
  return std::nullopt;
}

void CacheStore::store(const std::string& digest, const std::string& payload) const {
  namespace fs = std::filesystem;
  std::string path = entry_path(digest);
  fs::create_directories(fs::path(path).parent_path());
  Int created = std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count();
  json entry{{"digest", digest},
             {"version", kVersion},
             {"payload", payload},
             {"payload_sha", sha256_hex(payload)},
             {"created", json_int(created)}};
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail_validation("CacheUnwritable", "cannot write under '" + dir + "'");
    out << entry.dump(2) << "\n";
  }
  fs::rename(tmp, path);
}

std::string run_task(const TaskDescriptor& t, int jobs, const std::string& cache_dir) {
  if (cache_dir.empty()) return execute_task(t, jobs);
  CacheStore cache(cache_dir);
  std::string digest = task_digest(t);
  if (auto hit = cache.lookup(digest)) return *hit;
  std::string payload = execute_task(t, jobs);
  cache.store(digest, payload);
  return payload;
}

}  // namespace aql
