#pragma once

#include "aql/quiver.hpp"

// The three house quivers. Vertex order fixes all lattice coordinates:
// kronecker 0 => 1 doubled, a2 an acyclic triangle, d4 four leaves into a hub.
inline aql::Quiver kronecker() {
  return aql::build_quiver({"0", "1"}, {{"a", "0", "1"}, {"b", "0", "1"}});
}

inline aql::Quiver a2_cycle_free() {
  return aql::build_quiver({"0", "1", "2"},
                           {{"a", "0", "1"}, {"b", "1", "2"}, {"c", "0", "2"}});
}

inline aql::Quiver d4_star() {
  return aql::build_quiver({"0", "1", "2", "3", "c"},
                           {{"a0", "0", "c"}, {"a1", "1", "c"}, {"a2", "2", "c"},
                            {"a3", "3", "c"}});
}
