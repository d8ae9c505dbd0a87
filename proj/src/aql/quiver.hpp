#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aql/base.hpp"

namespace aql {

struct Arrow {
  std::string id;
  int src = 0;  // vertex index
  int dst = 0;
};

// Finite loop-free quiver. Vertices keep their declaration order; all lattice
// vectors are indexed by that order.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::map<std::string, int> vertex_index;

  size_t num_vertices() const { return vertices.size(); }
  size_t num_arrows() const { return arrows.size(); }

  void check_dim(const LatticeVector& v, const char* what = "dimension vector") const {
    if (v.size() != vertices.size())
      fail_validation("IndexMismatch",
                      std::string(what) + " has " + std::to_string(v.size()) +
                          " entries, quiver has " + std::to_string(vertices.size()) +
                          " vertices");
  }
};

struct ArrowSpec {
  std::string id, src, dst;
};

// Validates: nonempty vertex set, distinct vertex ids, distinct arrow ids,
// declared endpoints, no loops.
Quiver build_quiver(const std::vector<std::string>& vertices,
                    const std::vector<ArrowSpec>& arrows);

// <alpha, beta> = sum_i a_i b_i - sum_{arrows s->t} a_s b_t (no homological input).
Int euler_form(const Quiver& q, const LatticeVector& a, const LatticeVector& b);
// (alpha, beta) = <alpha,beta> + <beta,alpha>
Int symmetrized_form(const Quiver& q, const LatticeVector& a, const LatticeVector& b);
// q(alpha) = <alpha, alpha>
Int tits_form(const Quiver& q, const LatticeVector& a);

// E[i][j] = <e_i, e_j>; Cartan C[i][j] = (e_i, e_j).
IMat euler_matrix(const Quiver& q);
IMat cartan_matrix(const Quiver& q);

bool has_oriented_cycle(const Quiver& q);
bool is_connected(const Quiver& q);
// Indices in topological order (sources first). Errors OrientedCycle.
std::vector<int> topological_order(const Quiver& q);

enum class AffineType { A, D, E };

struct AffineData {
  AffineType family;
  int rank = 0;                  // subscript of the extended label
  LatticeVector delta;           // primitive positive radical generator
  std::vector<int> extending;    // vertices with delta = 1
  int n = 0;                     // vertex count - 1
  bool acyclic = true;
  std::string label() const;
};

// Recognizes extended A-D-E underlying graphs in any orientation via the
// connected + strictly-positive-corank-1-radical criterion, then labels by
// degree data. Errors NotAffine otherwise.
AffineData classify_affine(const Quiver& q);

struct DoubleQuiver {
  Quiver q;                   // original arrows first, then starred partners
  std::vector<int> star_of;   // involution on arrow indices
  size_t original_arrows = 0;
};

DoubleQuiver double_quiver(const Quiver& q);

// dims[i][j] = dim of the j-th vertex space of P(i) (paths out of i) or I(i)
// (paths into i). Errors OrientedCycle.
std::vector<LatticeVector> projective_dims(const Quiver& q);
std::vector<LatticeVector> injective_dims(const Quiver& q);

// JSON schema: {"vertices":[str...],"arrows":[{"id":str,"src":str,"dst":str}...]}
Quiver quiver_from_json(const std::string& text);
std::string quiver_to_canonical_json(const Quiver& q);

}  // namespace aql
