#include "tbraid/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace tbraid {

namespace {

struct GraphBuilder {
  CheckerboardGraph g;

  int add_vertex(std::string name) {
    g.names.push_back(std::move(name));
    g.rotation.emplace_back();
    return static_cast<int>(g.names.size()) - 1;
  }
  int add_edge(int u, int v, int sign) {
    g.edges.push_back({u, v, sign});
    return static_cast<int>(g.edges.size()) - 1;
  }
};

int u_dart(int e) { return 2 * e; }
int v_dart(int e) { return 2 * e + 1; }

}  // namespace

int CheckerboardGraph::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

void check_rotation_system(const CheckerboardGraph& g) {
  if (g.rotation.size() != g.vertex_count()) throw std::logic_error("rotation table size mismatch");
  std::vector<int> seen(2 * g.edge_count(), 0);
  for (std::size_t x = 0; x < g.rotation.size(); ++x) {
    for (int d : g.rotation[x]) {
      if (d < 0 || static_cast<std::size_t>(d) >= seen.size())
        throw std::logic_error("rotation lists an unknown dart");
      if (g.dart_vertex(d) != static_cast<int>(x))
        throw std::logic_error("dart listed at the wrong vertex");
      ++seen[static_cast<std::size_t>(d)];
    }
  }
  for (int c : seen)
    if (c != 1) throw std::logic_error("dart missing from or repeated in rotation system");
  for (const auto& e : g.edges)
    if (e.sign != 1 && e.sign != -1) throw std::logic_error("edge sign must be +-1");
}

std::size_t face_count(const CheckerboardGraph& g) {
  const std::size_t darts = 2 * g.edge_count();
  // position of each dart within its vertex rotation
  std::vector<std::size_t> slot(darts);
  for (const auto& rot : g.rotation)
    for (std::size_t i = 0; i < rot.size(); ++i) slot[static_cast<std::size_t>(rot[i])] = i;
  std::vector<char> used(darts, 0);
  std::size_t faces = 0;
  for (std::size_t start = 0; start < darts; ++start) {
    if (used[start]) continue;
    ++faces;
    int d = static_cast<int>(start);
    while (!used[static_cast<std::size_t>(d)]) {
      used[static_cast<std::size_t>(d)] = 1;
      int opposite = d ^ 1;
      const auto& rot = g.rotation[static_cast<std::size_t>(g.dart_vertex(opposite))];
      d = rot[(slot[static_cast<std::size_t>(opposite)] + 1) % rot.size()];
    }
  }
  return faces;
}

namespace {

std::vector<int> component_labels(const CheckerboardGraph& g) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (const auto& e : g.edges) parent[static_cast<std::size_t>(find(e.u))] = find(e.v);
  std::vector<int> out(g.vertex_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = find(static_cast<int>(i));
  return out;
}

}  // namespace

std::size_t component_count(const CheckerboardGraph& g) {
  auto labels = component_labels(g);
  std::sort(labels.begin(), labels.end());
  return static_cast<std::size_t>(std::unique(labels.begin(), labels.end()) - labels.begin());
}

bool satisfies_euler(const CheckerboardGraph& g) {
  check_rotation_system(g);
  // Per component: V - E + F = 2, an isolated vertex bounding one face.
  auto labels = component_labels(g);
  std::map<int, CheckerboardGraph> parts;
  std::map<int, std::vector<int>> vertex_map;
  for (std::size_t v = 0; v < labels.size(); ++v) vertex_map[labels[v]].push_back(static_cast<int>(v));
  for (const auto& [label, verts] : vertex_map) {
    std::map<int, int> local;
    CheckerboardGraph part;
    for (int v : verts) {
      local[v] = static_cast<int>(part.names.size());
      part.names.push_back(g.names[static_cast<std::size_t>(v)]);
      part.rotation.emplace_back();
    }
    std::map<int, int> edge_local;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (labels[static_cast<std::size_t>(g.edges[e].u)] != label) continue;
      edge_local[static_cast<int>(e)] = static_cast<int>(part.edges.size());
      part.edges.push_back({local[g.edges[e].u], local[g.edges[e].v], g.edges[e].sign});
    }
    for (int v : verts)
      for (int d : g.rotation[static_cast<std::size_t>(v)])
        part.rotation[static_cast<std::size_t>(local[v])].push_back(2 * edge_local[d / 2] + d % 2);
    const long long V = static_cast<long long>(part.vertex_count());
    const long long E = static_cast<long long>(part.edge_count());
    const long long F = E == 0 ? 1 : static_cast<long long>(face_count(part));
    if (V - E + F != 2) return false;
  }
  return true;
}

CheckerboardGraph closure_white_graph(const BraidWord& w) {
  const BraidWord word = free_reduce(expand_fulltwist(w));
  const auto& L = word.letters;
  if (L.empty()) throw DegenerateDiagram("braid word without crossings has no white graph");

  std::vector<std::size_t> s2_at;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L[i].generator == 2) s2_at.push_back(i);
  const std::size_t pieces = std::max<std::size_t>(s2_at.size(), 1);

  GraphBuilder b;
  const int root = b.add_vertex("r");
  for (std::size_t s = 0; s < pieces; ++s) b.add_vertex("w" + std::to_string(s));
  b.g.root = root;
  auto piece_vertex = [&](std::size_t s) { return static_cast<int>(s) + 1; };

  // Band piece s follows the s-th sigma2 crossing in reading order; letters
  // before the first sigma2 belong to the last piece.
  auto piece_of = [&](std::size_t i) -> std::size_t {
    if (s2_at.empty()) return 0;
    auto it = std::upper_bound(s2_at.begin(), s2_at.end(), i);
    if (it == s2_at.begin()) return s2_at.size() - 1;
    return static_cast<std::size_t>(it - s2_at.begin()) - 1;
  };

  std::vector<int> edge_of(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i].generator == 2) {
      std::size_t after = piece_of(i);
      std::size_t before = (after + pieces - 1) % pieces;
      edge_of[i] = b.add_edge(piece_vertex(before), piece_vertex(after), -L[i].sign);
    } else {
      edge_of[i] = b.add_edge(piece_vertex(piece_of(i)), root, L[i].sign);
    }
  }

  // Counter-clockwise at a band piece: entering sigma2, the sigma1 crossings
  // in reading order, leaving sigma2. At the root: reverse reading order.
  auto& rot = b.g.rotation;
  std::vector<std::size_t> order(L.size());
  std::iota(order.begin(), order.end(), 0);
  if (!s2_at.empty())
    std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s2_at.back() + 1) % static_cast<std::ptrdiff_t>(L.size()) , order.end());
  // `order` now starts just after the last sigma2, so each piece's sigma1
  // letters appear contiguously and in reading order.
  std::vector<std::vector<int>> s1_darts(pieces);
  for (std::size_t i : order)
    if (L[i].generator == 1) s1_darts[piece_of(i)].push_back(u_dart(edge_of[i]));
  for (std::size_t s = 0; s < pieces; ++s) {
    auto& r = rot[static_cast<std::size_t>(piece_vertex(s))];
    if (!s2_at.empty()) r.push_back(v_dart(edge_of[s2_at[s]]));
    r.insert(r.end(), s1_darts[s].begin(), s1_darts[s].end());
    if (!s2_at.empty()) r.push_back(u_dart(edge_of[s2_at[(s + 1) % s2_at.size()]]));
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (L[*it].generator == 1) rot[static_cast<std::size_t>(root)].push_back(v_dart(edge_of[*it]));
  // Without sigma2 the third strand is a split unknot and the band between
  // strands 2 and 3 is an annulus; the split summand adds an isolated vertex.
  if (s2_at.empty()) b.add_vertex("w1");
  check_rotation_system(b.g);
  return b.g;
}

CheckerboardGraph cycle_graph_from_params(const DecoratedCycleGraph& params) {
  params.validate();
  const int m = params.m;
  const int cn = params.c_n();
  GraphBuilder b;
  std::vector<int> x(static_cast<std::size_t>(m) + 1, -1);
  std::vector<int> y(static_cast<std::size_t>(cn) + 1, -1);
  for (int i = 1; i < m; ++i) x[static_cast<std::size_t>(i)] = b.add_vertex("x" + std::to_string(i));
  for (int j = 0; j <= cn; ++j) y[static_cast<std::size_t>(j)] = b.add_vertex("y" + std::to_string(j));
  const int z = b.add_vertex("z");
  b.g.root = z;

  // y0 -> y1 -> ... -> y_{c_n} -> x_{m-1} -> ... -> x1 -> y0
  std::vector<int> cycle(y.begin(), y.end());
  for (int i = m - 1; i >= 1; --i) cycle.push_back(x[static_cast<std::size_t>(i)]);
  const auto len = cycle.size();
  std::vector<int> cycle_edge(len);
  for (std::size_t i = 0; i < len; ++i)
    cycle_edge[i] = b.add_edge(cycle[i], cycle[(i + 1) % len],
                               i < static_cast<std::size_t>(cn) ? 1 : -1);

  std::vector<std::vector<int>> root_darts(params.a.size());
  for (int k = 0; k <= params.n(); ++k) {
    const int vertex = y[static_cast<std::size_t>(params.c(k))];
    for (int j = 0; j < params.a[static_cast<std::size_t>(k)]; ++j)
      root_darts[static_cast<std::size_t>(k)].push_back(b.add_edge(vertex, z, 1));
  }

  auto& rot = b.g.rotation;
  for (std::size_t i = 0; i < len; ++i) {
    auto& r = rot[static_cast<std::size_t>(cycle[i])];
    r.push_back(v_dart(cycle_edge[(i + len - 1) % len]));
    if (i <= static_cast<std::size_t>(cn)) {
      for (int k = 0; k <= params.n(); ++k)
        if (params.c(k) == static_cast<int>(i))
          for (int e : root_darts[static_cast<std::size_t>(k)]) r.push_back(u_dart(e));
    }
    r.push_back(u_dart(cycle_edge[i]));
  }
  for (int k = params.n(); k >= 0; --k) {
    const auto& block = root_darts[static_cast<std::size_t>(k)];
    for (auto it = block.rbegin(); it != block.rend(); ++it)
      rot[static_cast<std::size_t>(z)].push_back(v_dart(*it));
  }
  check_rotation_system(b.g);
  return b.g;
}

CheckerboardGraph relabelled(const CheckerboardGraph& g, const std::vector<std::string>& names) {
  if (names.size() != g.vertex_count()) throw std::invalid_argument("label count mismatch");
  CheckerboardGraph out = g;
  out.names = names;
  return out;
}

namespace {

using DartKey = std::pair<std::string, int>;

std::vector<DartKey> rotation_keys(const CheckerboardGraph& g, int v) {
  std::vector<DartKey> keys;
  for (int d : g.rotation[static_cast<std::size_t>(v)])
    keys.emplace_back(g.names[static_cast<std::size_t>(g.dart_target(d))], g.dart_sign(d));
  return keys;
}

bool cyclic_match(std::vector<DartKey> a, const std::vector<DartKey>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a == b) return true;
    std::rotate(a.begin(), a.begin() + 1, a.end());
  }
  return false;
}

}  // namespace

bool same_labelled_graph(const CheckerboardGraph& g, const CheckerboardGraph& h) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  if (g.names[static_cast<std::size_t>(g.root)] != h.names[static_cast<std::size_t>(h.root)]) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    int w = h.index_of(g.names[v]);
    if (w < 0) return false;
    if (!cyclic_match(rotation_keys(g, static_cast<int>(v)), rotation_keys(h, w))) return false;
  }
  return true;
}

DecoratedReading read_decorated(const CheckerboardGraph& g) {
  check_rotation_system(g);
  const int root = g.root;
  const std::size_t V = g.vertex_count();
  if (V < 2) throw ShapeMismatch("graph has no vertex besides the root");

  std::vector<int> root_count(V, 0);
  std::vector<std::vector<int>> cycle_adj(V);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges[e];
    const bool at_root_u = edge.u == root, at_root_v = edge.v == root;
    if (at_root_u && at_root_v) throw ShapeMismatch("loop at the root");
    if (at_root_u || at_root_v) {
      if (edge.sign != 1) throw ShapeMismatch("negative edge at the root");
      ++root_count[static_cast<std::size_t>(at_root_u ? edge.v : edge.u)];
      continue;
    }
    cycle_adj[static_cast<std::size_t>(edge.u)].push_back(static_cast<int>(e));
    cycle_adj[static_cast<std::size_t>(edge.v)].push_back(static_cast<int>(e));
  }
  std::vector<int> others;
  for (std::size_t v = 0; v < V; ++v) {
    if (static_cast<int>(v) == root) continue;
    if (cycle_adj[v].size() != 2)
      throw ShapeMismatch("vertex " + g.names[v] + " does not have degree two after removing the root");
    others.push_back(static_cast<int>(v));
  }

  // Walk the cycle: verts[i] -- edges[i] -- verts[i+1].
  std::vector<int> verts{others.front()};
  std::vector<int> walk_edges;
  int came_by = -1;
  int cur = others.front();
  for (;;) {
    const auto& adj = cycle_adj[static_cast<std::size_t>(cur)];
    int e = adj[0] != came_by ? adj[0] : adj[1];
    if (came_by == -1) e = adj[0];
    walk_edges.push_back(e);
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    int next = edge.u == cur ? edge.v : edge.u;
    if (next == verts.front()) break;
    if (std::find(verts.begin(), verts.end(), next) != verts.end())
      throw ShapeMismatch("root removal does not leave a single cycle");
    verts.push_back(next);
    came_by = e;
    cur = next;
  }
  if (verts.size() != others.size())
    throw ShapeMismatch("root removal leaves more than one component");

  const std::size_t L = verts.size();
  auto sign_at = [&](std::size_t i) { return g.edges[static_cast<std::size_t>(walk_edges[i % L])].sign; };
  std::size_t negatives = 0;
  for (std::size_t i = 0; i < L; ++i) negatives += sign_at(i) < 0;
  if (negatives == 0) throw ShapeMismatch("cycle has no negative x-path");

  // Candidate (y0 position, direction) pairs.
  std::vector<std::pair<std::size_t, int>> candidates;
  if (negatives == L) {
    for (std::size_t i = 0; i < L; ++i)
      if (root_count[static_cast<std::size_t>(verts[i])] > 0) {
        candidates.push_back({i, 1});
        candidates.push_back({i, -1});
      }
  } else {
    std::size_t runs = 0, start = 0;
    for (std::size_t i = 0; i < L; ++i)
      if (sign_at(i) < 0 && sign_at(i + L - 1) > 0) {
        ++runs;
        start = i;
      }
    if (runs != 1) throw ShapeMismatch("negative edges do not form a single path");
    candidates.push_back({(start + negatives) % L, 1});  // y-path continues forward
    candidates.push_back({start, -1});                    // y-path runs backward
  }

  for (auto [y0, dir] : candidates) {
    auto vert_at = [&](long long offset) {
      long long idx = (static_cast<long long>(y0) + dir * offset) % static_cast<long long>(L);
      if (idx < 0) idx += static_cast<long long>(L);
      return verts[static_cast<std::size_t>(idx)];
    };
    const int cn = static_cast<int>(L - negatives);
    const int m = static_cast<int>(negatives);
    std::vector<std::string> labels(V);
    labels[static_cast<std::size_t>(root)] = "z";
    DecoratedCycleGraph params;
    params.m = m;
    int last_marked = 0;
    bool ok = true;
    for (int j = 0; j <= cn; ++j) {
      int v = vert_at(j);
      labels[static_cast<std::size_t>(v)] = "y" + std::to_string(j);
      int count = root_count[static_cast<std::size_t>(v)];
      if ((j == 0 || j == cn) && count == 0) ok = false;
      if (count > 0) {
        if (j > 0) params.b.push_back(j - last_marked);
        params.a.push_back(count);
        last_marked = j;
      }
    }
    // Walking on from y_{c_n} along the x-path meets x_{m-1}, ..., x_1.
    for (int i = m - 1; i >= 1; --i) {
      int v = vert_at(cn + (m - i));
      labels[static_cast<std::size_t>(v)] = "x" + std::to_string(i);
      if (root_count[static_cast<std::size_t>(v)] != 0) ok = false;
    }
    if (!ok) continue;
    if (cn == 0 && params.a.size() != 1) continue;
    if (same_labelled_graph(relabelled(g, labels), cycle_graph_from_params(params)))
      return {params, labels};
  }
  throw ShapeMismatch("labels or rotation system do not match the cycle form");
}

DecoratedCycleGraph to_decorated(const CheckerboardGraph& g) { return read_decorated(g).params; }

BigInt GoeritzMatrix::determinant() const {
  IntMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (auto v : entries[i]) m[i].push_back(BigInt(v));
  return tbraid::determinant(std::move(m));
}

bool GoeritzMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = 0; j < entries.size(); ++j)
      if (entries[i][j] != entries[j][i]) return false;
  return true;
}

GoeritzMatrix goeritz_matrix(const CheckerboardGraph& g) {
  GoeritzMatrix out;
  std::vector<int> index(g.vertex_count(), -1);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (static_cast<int>(v) == g.root) continue;
    index[v] = static_cast<int>(out.labels.size());
    out.labels.push_back(g.names[v]);
  }
  const auto n = out.labels.size();
  out.entries.assign(n, std::vector<long long>(n, 0));
  for (const auto& e : g.edges) {
    if (e.u == e.v) continue;
    int iu = index[static_cast<std::size_t>(e.u)], iv = index[static_cast<std::size_t>(e.v)];
    if (iu >= 0) out.entries[static_cast<std::size_t>(iu)][static_cast<std::size_t>(iu)] += e.sign;
    if (iv >= 0) out.entries[static_cast<std::size_t>(iv)][static_cast<std::size_t>(iv)] += e.sign;
    if (iu >= 0 && iv >= 0) {
      out.entries[static_cast<std::size_t>(iu)][static_cast<std::size_t>(iv)] -= e.sign;
      out.entries[static_cast<std::size_t>(iv)][static_cast<std::size_t>(iu)] -= e.sign;
    }
  }
  return out;
}

std::string to_dot(const CheckerboardGraph& g) {
  std::ostringstream out;
  out << "graph white {\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << g.names[v] << "\"";
    if (static_cast<int>(v) == g.root) out << " [root=true]";
    out << ";\n";
  }
  for (const auto& e : g.edges)
    out << "  \"" << g.names[static_cast<std::size_t>(e.u)] << "\" -- \""
        << g.names[static_cast<std::size_t>(e.v)] << "\" [sign=\"" << (e.sign > 0 ? '+' : '-')
        << "\"];\n";
  out << "}\n";
  return out.str();
}

bool is_alternating_closure(const BaldwinClass& c) {
  const auto* t = std::get_if<Type1>(&c);
  return t && t->d == 0;
}

}  // namespace tbraid
