#pragma once

// Undirected simple graphs, edge orientations and gate orderings.
//
// Conventions used throughout:
//  - vertices are 0-based ints;
//  - neighbor lists are kept sorted, edges are unordered pairs (u < v in the
//    canonical list);
//  - an EdgeOrder is a permutation of the canonical edge list and fixes the
//    order in which two-qubit gates are applied;
//  - an OrientedGraph assigns a direction to every edge and additionally
//    fixes the *order* of each incoming list (the first incoming neighbor
//    plays a special role for nodes with no outgoing edges).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace gsnet {

class DegreeDistribution;

struct Graph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(n_) {}

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    int degree(int u) const { return static_cast<int>(adj[u].size()); }
    int edge_count() const;

    // Canonical edge list: pairs (u,v) with u<v, sorted lexicographically.
    std::vector<std::pair<int, int>> edges() const;
};

struct EdgeOrder {
    // Permutation of Graph::edges(); each pair keeps u<v.
    std::vector<std::pair<int, int>> edges;
};

struct OrientedGraph {
    Graph g;
    std::vector<std::vector<int>> out;  // ordered outgoing neighbors
    std::vector<std::vector<int>> in;   // ordered incoming neighbors

    int out_degree(int u) const { return static_cast<int>(out[u].size()); }
    int in_degree(int u) const { return static_cast<int>(in[u].size()); }
};

// Cycle 0-1-2-...-(n-1)-0; requires n >= 3.
Graph ring(int n);

// G(n, p) with p = mean_k/(n-1); mean_k must lie in [0, n-1].
Graph erdos_renyi(int n, double mean_k, std::uint64_t seed);

// Configuration model: degrees drawn from `dist` (sequence redrawn until the
// sum is even), stubs matched uniformly; self-loops and parallel edges are
// rewired for a bounded number of passes and any survivors are dropped.
// If `dropped_edges` is non-null it receives the number of erased pairings.
Graph configuration_model(const DegreeDistribution& dist, int n,
                          std::uint64_t seed, int* dropped_edges = nullptr);

// Each edge oriented u->v or v->u with probability 1/2; incoming lists are
// ordered ascending.
OrientedGraph orient_random(const Graph& g, std::uint64_t seed);

// Ring orientation u -> u+1 (every node: one out, one in).
OrientedGraph orient_ring_forward(const Graph& ring_graph);

// Ring orientation for even n: even nodes point to both neighbors, odd nodes
// only receive; incoming lists are ordered predecessor-first.
OrientedGraph orient_ring_alternating(const Graph& ring_graph);

// All edges in canonical order.
EdgeOrder canonical_order(const Graph& g);

// Ring gate order (0,1),(1,2),...,(n-1,0).
EdgeOrder sequential_ring_order(int n);

// Ring gate order for even n: (0,1),(2,3),... then (1,2),(3,4),...,(n-1,0).
EdgeOrder alternate_ring_order(int n);

// Random permutation of the canonical edge list.
EdgeOrder shuffled_order(const Graph& g, std::uint64_t seed);

// Text format: one "u v" pair per line, 0-indexed; '#' starts a comment.
Graph read_edge_list(std::istream& is);
void write_edge_list(const Graph& g, std::ostream& os);

// Orientation file: one "u v" per line meaning u -> v; must cover each edge
// of `g` exactly once.  Incoming lists are ordered by file position.
OrientedGraph read_orientation(const Graph& g, std::istream& is);

}  // namespace gsnet
