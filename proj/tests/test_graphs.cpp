#include <doctest.h>

#include <stdexcept>
#include "segre/graphs.hpp"

using namespace segre;

TEST_CASE("reference graph parameters") {
  SimpleGraph dy = dyck_graph();
  CHECK(dy.n == 32);
  CHECK(dy.edge_count() == 48);
  CHECK(graph_girth(dy) == 6);
  CHECK(graph_bipartite(dy));
  CHECK(component_sizes(dy) == std::vector<uint16_t>{32});

  SimpleGraph na = nauru_graph();
  CHECK(na.n == 24);
  CHECK(na.edge_count() == 36);
  CHECK(graph_girth(na) == 6);
  CHECK(graph_bipartite(na));

  SimpleGraph q3 = cube_graph();
  CHECK(q3.n == 8);
  CHECK(q3.edge_count() == 12);
  CHECK(graph_girth(q3) == 4);
  SimpleGraph four = disjoint_copies(q3, 4);
  CHECK(four.n == 32);
  CHECK(four.edge_count() == 48);
  CHECK(component_sizes(four) == std::vector<uint16_t>(4, 8));
}

TEST_CASE("isomorphism on relabeled copies and non-isomorphic pairs") {
  SimpleGraph dy = dyck_graph();
  // Relabel by a fixed permutation.
  SimpleGraph relabeled;
  relabeled.n = dy.n;
  auto perm = [&](uint16_t x) { return static_cast<uint16_t>((7 * x + 3) % 32); };
  for (const auto& e : dy.edges) {
    uint16_t a = perm(e[0]), b = perm(e[1]);
    relabeled.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(relabeled.edges.begin(), relabeled.edges.end());
  CHECK(graphs_isomorphic(dy, relabeled));
  CHECK(is_isomorphic(relabeled, NamedGraph::Dyck));
  CHECK_FALSE(is_isomorphic(relabeled, NamedGraph::FourCubes));
  CHECK_FALSE(is_isomorphic(dyck_graph(), NamedGraph::Nauru));
  CHECK(is_isomorphic(disjoint_copies(cube_graph(), 4), NamedGraph::FourCubes));
  CHECK(is_isomorphic(nauru_graph(), NamedGraph::Nauru));
}

TEST_CASE("collinearity graphs on S_3(3)") {
  SegreVariety v = SegreVariety::build(3, 3);
  // A full line gives K4.
  SimpleGraph k4 = collinearity_graph(v, v.line(0).mask);
  CHECK(k4.n == 4);
  CHECK(k4.edge_count() == 6);
  // An ovoid gives the empty graph on 16 vertices.
  PointSet ovoid = v.empty_set();
  for (uint16_t a = 0; a < 4; ++a)
    for (uint16_t b = 0; b < 4; ++b)
      ovoid.set(v.index_of({uint8_t(a), uint8_t(b), uint8_t((a + b) % 4)}));
  CHECK(ovoid.count() == 16);
  SimpleGraph g = collinearity_graph(v, ovoid);
  CHECK(g.n == 16);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("named graph lookup") {
  CHECK(named_graph("dyck") == NamedGraph::Dyck);
  CHECK(named_graph("4xQ3") == NamedGraph::FourCubes);
  CHECK(named_graph("nauru") == NamedGraph::Nauru);
  CHECK_THROWS_AS(named_graph("petersen"), std::invalid_argument);
}
