#pragma once

#include <string>
#include <vector>

#include "segre/variety.hpp"

namespace segre {

struct SimpleGraph {
  uint16_t n = 0;
  std::vector<std::array<uint16_t, 2>> edges;  // u < v, sorted, no duplicates

  std::size_t edge_count() const { return edges.size(); }
  std::vector<std::vector<uint16_t>> adjacency() const;
};

// Vertices = members of s (in point-index order), edges = collinear pairs.
SimpleGraph collinearity_graph(const SegreVariety& v, const PointSet& s);

// Reference graphs. Dyck: the 32-vertex cubic symmetric graph of girth six,
// from its LCF construction [5,-5,13,-13]^8. Nauru: the generalized Petersen
// graph GP(12,5). Cube: Q3.
SimpleGraph dyck_graph();
SimpleGraph nauru_graph();
SimpleGraph cube_graph();
SimpleGraph disjoint_copies(const SimpleGraph& g, unsigned copies);

enum class NamedGraph { Dyck, FourCubes, Nauru };
NamedGraph named_graph(const std::string& name);  // "dyck", "4xQ3", "nauru"

unsigned graph_girth(const SimpleGraph& g);  // 0 = acyclic
bool graph_bipartite(const SimpleGraph& g);
std::vector<uint16_t> component_sizes(const SimpleGraph& g);  // sorted

// Exact isomorphism: invariant screening (order, degree sequence,
// bipartiteness, girth, components, refinement colors) followed by
// backtracking search.
bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b);
bool is_isomorphic(const SimpleGraph& g, NamedGraph reference);

}  // namespace segre
