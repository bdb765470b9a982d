#include "segre/graphs.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace segre {

std::vector<std::vector<uint16_t>> SimpleGraph::adjacency() const {
  std::vector<std::vector<uint16_t>> adj(n);
  for (const auto& e : edges) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

SimpleGraph collinearity_graph(const SegreVariety& v, const PointSet& s) {
  std::vector<uint16_t> verts = s.members();
  SimpleGraph g;
  g.n = static_cast<uint16_t>(verts.size());
  for (uint16_t i = 0; i < g.n; ++i)
    for (uint16_t j = i + 1; j < g.n; ++j)
      if (v.distance(verts[i], verts[j]) == 1) g.edges.push_back({i, j});
  return g;
}

SimpleGraph dyck_graph() {
  SimpleGraph g;
  g.n = 32;
  const int lcf[4] = {5, -5, 13, -13};
  for (uint16_t i = 0; i < 32; ++i) {
    uint16_t j = static_cast<uint16_t>((i + 1) % 32);
    g.edges.push_back({std::min(i, j), std::max(i, j)});
    uint16_t c = static_cast<uint16_t>(((i + lcf[i % 4]) % 32 + 32) % 32);
    if (i < c) g.edges.push_back({i, c});
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

SimpleGraph nauru_graph() {
  // Generalized Petersen graph GP(12,5).
  SimpleGraph g;
  g.n = 24;
  for (uint16_t i = 0; i < 12; ++i) {
    uint16_t j = static_cast<uint16_t>((i + 1) % 12);
    g.edges.push_back({std::min(i, j), std::max(i, j)});
    g.edges.push_back({i, static_cast<uint16_t>(12 + i)});
    uint16_t a = static_cast<uint16_t>(12 + i), b = static_cast<uint16_t>(12 + (i + 5) % 12);
    g.edges.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

SimpleGraph cube_graph() {
  SimpleGraph g;
  g.n = 8;
  for (uint16_t i = 0; i < 8; ++i)
    for (int b = 0; b < 3; ++b) {
      uint16_t j = static_cast<uint16_t>(i ^ (1u << b));
      if (i < j) g.edges.push_back({i, j});
    }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

SimpleGraph disjoint_copies(const SimpleGraph& g, unsigned copies) {
  SimpleGraph out;
  out.n = static_cast<uint16_t>(g.n * copies);
  for (unsigned c = 0; c < copies; ++c)
    for (const auto& e : g.edges)
      out.edges.push_back({static_cast<uint16_t>(e[0] + c * g.n),
                           static_cast<uint16_t>(e[1] + c * g.n)});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

NamedGraph named_graph(const std::string& name) {
  if (name == "dyck") return NamedGraph::Dyck;
  if (name == "4xQ3" || name == "four-cubes") return NamedGraph::FourCubes;
  if (name == "nauru") return NamedGraph::Nauru;
  throw std::invalid_argument("named_graph: unknown reference '" + name + "'");
}

unsigned graph_girth(const SimpleGraph& g) {
  auto adj = g.adjacency();
  unsigned best = 0;
  // BFS from every vertex; shortest cycle through the root.
  for (uint16_t root = 0; root < g.n; ++root) {
    std::vector<int> dist(g.n, -1), parent(g.n, -1);
    std::queue<uint16_t> q;
    dist[root] = 0;
    q.push(root);
    while (!q.empty()) {
      uint16_t u = q.front();
      q.pop();
      for (uint16_t w : adj[u]) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u]) {
          unsigned len = static_cast<unsigned>(dist[u] + dist[w] + 1);
          if (best == 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

bool graph_bipartite(const SimpleGraph& g) {
  auto adj = g.adjacency();
  std::vector<int> color(g.n, -1);
  for (uint16_t root = 0; root < g.n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    std::queue<uint16_t> q;
    q.push(root);
    while (!q.empty()) {
      uint16_t u = q.front();
      q.pop();
      for (uint16_t w : adj[u]) {
        if (color[w] < 0) {
          color[w] = 1 - color[u];
          q.push(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<uint16_t> component_sizes(const SimpleGraph& g) {
  auto adj = g.adjacency();
  std::vector<bool> seen(g.n, false);
  std::vector<uint16_t> sizes;
  for (uint16_t root = 0; root < g.n; ++root) {
    if (seen[root]) continue;
    uint16_t size = 0;
    std::queue<uint16_t> q;
    q.push(root);
    seen[root] = true;
    while (!q.empty()) {
      uint16_t u = q.front();
      q.pop();
      ++size;
      for (uint16_t w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

namespace {

// Iterated neighborhood-color refinement; returns stable color classes.
std::vector<uint32_t> refine_colors(const SimpleGraph& g) {
  auto adj = g.adjacency();
  std::vector<uint32_t> color(g.n, 0);
  for (int round = 0; round < 8; ++round) {
    std::map<std::pair<uint32_t, std::vector<uint32_t>>, uint32_t> relabel;
    std::vector<uint32_t> next(g.n);
    for (uint16_t u = 0; u < g.n; ++u) {
      std::vector<uint32_t> nb;
      for (uint16_t w : adj[u]) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      auto key = std::make_pair(color[u], std::move(nb));
      auto [it, fresh] = relabel.try_emplace(key, static_cast<uint32_t>(relabel.size()));
      next[u] = it->second;
    }
    if (next == color) break;
    color = std::move(next);
  }
  return color;
}

bool backtrack(const SimpleGraph& a, const SimpleGraph& b) {
  auto adj_a = a.adjacency(), adj_b = b.adjacency();
  std::vector<uint32_t> ca = refine_colors(a), cb = refine_colors(b);
  {
    std::vector<uint32_t> sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Map vertices of a in order of ascending color-class size.
  std::map<uint32_t, uint32_t> class_size;
  for (uint32_t c : ca) ++class_size[c];
  std::vector<uint16_t> order(a.n);
  for (uint16_t i = 0; i < a.n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](uint16_t x, uint16_t y) {
    if (class_size[ca[x]] != class_size[ca[y]]) return class_size[ca[x]] < class_size[ca[y]];
    return x < y;
  });

  std::vector<int> map_ab(a.n, -1), used_b(b.n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    uint16_t u = order[pos];
    for (uint16_t v = 0; v < b.n; ++v) {
      if (used_b[v] || cb[v] != ca[u]) continue;
      bool ok = true;
      for (uint16_t w : adj_a[u]) {
        if (map_ab[w] < 0) continue;
        if (!std::binary_search(adj_b[v].begin(), adj_b[v].end(),
                                static_cast<uint16_t>(map_ab[w]))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // Non-adjacency must be preserved too (same degree sequence makes the
      // adjacency count check sufficient).
      unsigned mapped_nb = 0;
      for (uint16_t w : adj_a[u])
        if (map_ab[w] >= 0) ++mapped_nb;
      unsigned mapped_nb_b = 0;
      for (uint16_t w : adj_b[v])
        if (used_b[w]) {
          bool is_image_of_nb = false;
          for (uint16_t x : adj_a[u])
            if (map_ab[x] == w) is_image_of_nb = true;
          if (!is_image_of_nb) {
            ok = false;
            break;
          }
          ++mapped_nb_b;
        }
      if (!ok || mapped_nb != mapped_nb_b) continue;
      map_ab[u] = v;
      used_b[v] = 1;
      if (extend(pos + 1)) return true;
      map_ab[u] = -1;
      used_b[v] = 0;
    }
    return false;
  };
  return extend(0);
}

}  // namespace

bool graphs_isomorphic(const SimpleGraph& a, const SimpleGraph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
  auto degseq = [](const SimpleGraph& g) {
    std::vector<uint16_t> d(g.n, 0);
    for (const auto& e : g.edges) {
      ++d[e[0]];
      ++d[e[1]];
    }
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degseq(a) != degseq(b)) return false;
  if (component_sizes(a) != component_sizes(b)) return false;
  if (graph_bipartite(a) != graph_bipartite(b)) return false;
  if (graph_girth(a) != graph_girth(b)) return false;
  return backtrack(a, b);
}

bool is_isomorphic(const SimpleGraph& g, NamedGraph reference) {
  switch (reference) {
    case NamedGraph::Dyck:
      return graphs_isomorphic(g, dyck_graph());
    case NamedGraph::FourCubes:
      return graphs_isomorphic(g, disjoint_copies(cube_graph(), 4));
    case NamedGraph::Nauru:
      return graphs_isomorphic(g, nauru_graph());
  }
  return false;
}

}  // namespace segre
