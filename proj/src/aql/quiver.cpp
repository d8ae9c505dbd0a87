#include "aql/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

namespace aql {

using nlohmann::json;

Quiver build_quiver(const std::vector<std::string>& vertices,
                    const std::vector<ArrowSpec>& arrows) {
  if (vertices.empty()) fail_validation("EmptyQuiver", "quiver needs at least one vertex");
  Quiver q;
  q.vertices = vertices;
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (!q.vertex_index.emplace(vertices[i], static_cast<int>(i)).second)
      fail_validation("DuplicateId", "duplicate vertex id '" + vertices[i] + "'");
  }
  std::set<std::string> arrow_ids;
  for (const auto& a : arrows) {
    if (!arrow_ids.insert(a.id).second)
      fail_validation("DuplicateId", "duplicate arrow id '" + a.id + "'");
    auto s = q.vertex_index.find(a.src);
    auto t = q.vertex_index.find(a.dst);
    if (s == q.vertex_index.end() || t == q.vertex_index.end())
      fail_validation("DanglingEndpoint",
                      "arrow '" + a.id + "' references an undeclared vertex");
    if (s->second == t->second)
      fail_validation("LoopArrow", "arrow '" + a.id + "' is a loop at '" + a.src + "'");
    q.arrows.push_back({a.id, s->second, t->second});
  }
  return q;
}

Int euler_form(const Quiver& q, const LatticeVector& a, const LatticeVector& b) {
  q.check_dim(a, "first argument");
  q.check_dim(b, "second argument");
  __int128 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  for (const auto& ar : q.arrows) s -= static_cast<__int128>(a[ar.src]) * b[ar.dst];
  return checked_i64(s, "euler form");
}

Int symmetrized_form(const Quiver& q, const LatticeVector& a, const LatticeVector& b) {
  return euler_form(q, a, b) + euler_form(q, b, a);
}

Int tits_form(const Quiver& q, const LatticeVector& a) { return euler_form(q, a, a); }

IMat euler_matrix(const Quiver& q) {
  size_t n = q.num_vertices();
  IMat e = mat_identity(n);
  for (const auto& a : q.arrows) e[a.src][a.dst] -= 1;
  return e;
}

IMat cartan_matrix(const Quiver& q) {
  IMat e = euler_matrix(q);
  IMat c = e;
  size_t n = q.num_vertices();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) c[i][j] = e[i][j] + e[j][i];
  return c;
}

std::vector<int> topological_order(const Quiver& q) {
  size_t n = q.num_vertices();
  std::vector<int> indeg(n, 0);
  for (const auto& a : q.arrows) indeg[a.dst]++;
  std::vector<int> order;
  std::vector<int> ready;
  for (size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push_back(static_cast<int>(i));
  // smallest-index-first keeps the order deterministic
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<int>());
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (const auto& a : q.arrows)
      if (a.src == v && --indeg[a.dst] == 0) ready.push_back(a.dst);
  }
  if (order.size() != n)
    fail_validation("OrientedCycle", "quiver has an oriented cycle");
  return order;
}

bool has_oriented_cycle(const Quiver& q) {
  try {
    topological_order(q);
    return false;
  } catch (const Error&) {
    return true;
  }
}

bool is_connected(const Quiver& q) {
  size_t n = q.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& a : q.arrows) {
      int w = -1;
      if (a.src == v) w = a.dst;
      else if (a.dst == v) w = a.src;
      if (w >= 0 && !seen[w]) { seen[w] = 1; stack.push_back(w); }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

std::string AffineData::label() const {
  const char* fam = family == AffineType::A ? "A" : family == AffineType::D ? "D" : "E";
  return std::string(fam) + "~" + std::to_string(rank);
}

namespace {

// Undirected degree (with edge multiplicity) per vertex.
std::vector<int> degrees(const Quiver& q) {
  std::vector<int> d(q.num_vertices(), 0);
  for (const auto& a : q.arrows) { d[a.src]++; d[a.dst]++; }
  return d;
}

// Arm lengths (edge counts) from a single degree-3 center, or empty when the
// graph is not a 3-star of simple paths.
std::vector<int> star_arms(const Quiver& q, int center) {
  size_t n = q.num_vertices();
  std::vector<std::vector<int>> adj(n);
  for (const auto& a : q.arrows) {
    adj[a.src].push_back(a.dst);
    adj[a.dst].push_back(a.src);
  }
  std::vector<int> arms;
  std::vector<char> used(n, 0);
  used[center] = 1;
  for (int next : adj[center]) {
    int prev = center, cur = next, len = 1;
    while (true) {
      if (used[cur]) return {};  // revisit means cycle, not a star
      used[cur] = 1;
      std::vector<int> out;
      for (int w : adj[cur]) if (w != prev) out.push_back(w);
      if (out.empty()) break;
      if (out.size() > 1) return {};
      prev = cur;
      cur = out[0];
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  return arms;
}

}  // namespace

AffineData classify_affine(const Quiver& q) {
  size_t n = q.num_vertices();
  if (n < 2 || !is_connected(q)) fail_validation("NotAffine", "underlying graph is not an extended A-D-E diagram");

  // Strictly positive corank-1 radical of a connected symmetric Cartan matrix
  // certifies affine type (Perron eigenvector at eigenvalue 2).
  auto kernel = integer_kernel(cartan_matrix(q));
  if (kernel.size() != 1) fail_validation("NotAffine", "Cartan radical is not one-dimensional");
  LatticeVector delta = kernel[0];
  for (Int x : delta)
    if (x <= 0) fail_validation("NotAffine", "radical generator is not strictly positive");
  internal_check(tits_form(q, delta) == 0, "radical generator must be isotropic");

  auto deg = degrees(q);
  int leaves = 0, deg2 = 0, deg3 = 0, deg4 = 0, other = 0;
  for (int d : deg) {
    if (d == 1) ++leaves;
    else if (d == 2) ++deg2;
    else if (d == 3) ++deg3;
    else if (d == 4) ++deg4;
    else ++other;
  }

  AffineData out;
  out.delta = delta;
  out.n = static_cast<int>(n) - 1;
  out.acyclic = !has_oriented_cycle(q);

  bool multi_edge = false;
  std::set<std::pair<int, int>> seen_pairs;
  for (const auto& a : q.arrows) {
    auto key = std::minmax(a.src, a.dst);
    if (!seen_pairs.insert({key.first, key.second}).second) multi_edge = true;
  }

  if (multi_edge) {
    // Only the doubled edge on two vertices stays affine.
    if (n == 2 && q.num_arrows() == 2) { out.family = AffineType::A; out.rank = 1; }
    else fail_validation("NotAffine", "multi-edge outside the doubled A~1 shape");
  } else if (other == 0 && deg4 == 0 && deg3 == 0 && leaves == 0) {
    out.family = AffineType::A;  // simple cycle
    out.rank = static_cast<int>(n) - 1;
  } else if (deg4 == 1 && leaves == 4 && deg2 == 0 && deg3 == 0 && other == 0 && n == 5) {
    out.family = AffineType::D;
    out.rank = 4;
  } else if (deg3 == 2 && leaves == 4 && deg4 == 0 && other == 0) {
    out.family = AffineType::D;
    out.rank = static_cast<int>(n) - 1;
  } else if (deg3 == 1 && deg4 == 0 && other == 0) {
    int center = -1;
    for (size_t i = 0; i < n; ++i)
      if (deg[i] == 3) center = static_cast<int>(i);
    auto arms = star_arms(q, center);
    if (arms == std::vector<int>{2, 2, 2}) { out.family = AffineType::E; out.rank = 6; }
    else if (arms == std::vector<int>{1, 3, 3}) { out.family = AffineType::E; out.rank = 7; }
    else if (arms == std::vector<int>{1, 2, 5}) { out.family = AffineType::E; out.rank = 8; }
    else fail_validation("NotAffine", "triple point with non-affine arm lengths");
  } else {
    fail_validation("NotAffine", "degree data matches no extended A-D-E diagram");
  }

  for (size_t i = 0; i < n; ++i)
    if (delta[i] == 1) out.extending.push_back(static_cast<int>(i));
  internal_check(!out.extending.empty(), "affine radical must have a coordinate equal to 1");
  return out;
}

DoubleQuiver double_quiver(const Quiver& q) {
  std::vector<ArrowSpec> specs;
  for (const auto& a : q.arrows)
    specs.push_back({a.id, q.vertices[a.src], q.vertices[a.dst]});
  for (const auto& a : q.arrows)
    specs.push_back({a.id + "*", q.vertices[a.dst], q.vertices[a.src]});
  DoubleQuiver d;
  d.q = build_quiver(q.vertices, specs);
  d.original_arrows = q.num_arrows();
  size_t m = q.num_arrows();
  d.star_of.resize(2 * m);
  for (size_t i = 0; i < m; ++i) {
    d.star_of[i] = static_cast<int>(i + m);
    d.star_of[i + m] = static_cast<int>(i);
  }
  return d;
}

namespace {

std::vector<LatticeVector> path_count_dims(const Quiver& q, bool reverse) {
  auto order = topological_order(q);
  size_t n = q.num_vertices();
  std::vector<LatticeVector> out(n);
  for (size_t i = 0; i < n; ++i) {
    LatticeVector cnt(n, 0);
    cnt[i] = 1;
    if (!reverse) {
      for (int v : order)
        for (const auto& a : q.arrows)
          if (a.src == v) cnt[a.dst] = checked_i64(static_cast<__int128>(cnt[a.dst]) + cnt[v], "path count");
    } else {
      for (auto it = order.rbegin(); it != order.rend(); ++it)
        for (const auto& a : q.arrows)
          if (a.dst == *it) cnt[a.src] = checked_i64(static_cast<__int128>(cnt[a.src]) + cnt[*it], "path count");
    }
    out[i] = cnt;
  }
  return out;
}

}  // namespace

std::vector<LatticeVector> projective_dims(const Quiver& q) { return path_count_dims(q, false); }
std::vector<LatticeVector> injective_dims(const Quiver& q) { return path_count_dims(q, true); }

Quiver quiver_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line/column for actionable messages
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') { ++line; col = 1; } else ++col;
    }
    fail_validation("ParseError", "malformed JSON at line " + std::to_string(line) +
                                      ", column " + std::to_string(col));
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
    fail_validation("ParseError", "quiver JSON needs 'vertices' and 'arrows'");
  std::vector<std::string> verts;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) fail_validation("ParseError", "vertex ids must be strings");
    verts.push_back(v.get<std::string>());
  }
  std::vector<ArrowSpec> arrows;
  for (const auto& a : j["arrows"]) {
    if (!a.is_object() || !a.contains("id") || !a.contains("src") || !a.contains("dst"))
      fail_validation("ParseError", "each arrow needs 'id', 'src', 'dst'");
    arrows.push_back({a["id"].get<std::string>(), a["src"].get<std::string>(),
                      a["dst"].get<std::string>()});
  }
  return build_quiver(verts, arrows);
}

std::string quiver_to_canonical_json(const Quiver& q) {
  json j;
  j["vertices"] = q.vertices;
  json arr = json::array();
  for (const auto& a : q.arrows)
    arr.push_back({{"dst", q.vertices[a.dst]}, {"id", a.id}, {"src", q.vertices[a.src]}});
  j["arrows"] = arr;
  return j.dump();
}

}  // namespace aql
