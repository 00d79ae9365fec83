#include "gsnet/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gsnet/degree_distribution.hpp"
#include "gsnet/rng.hpp"

namespace gsnet {

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::out_of_range("Graph::add_edge: vertex out of range");
    if (u == v) throw std::invalid_argument("Graph::add_edge: self-loop");
    if (has_edge(u, v)) throw std::invalid_argument("Graph::add_edge: duplicate edge");
    adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n) return false;
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

int Graph::edge_count() const {
    int twice = 0;
    for (const auto& nb : adj) twice += static_cast<int>(nb.size());
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph ring(int n) {
    if (n < 3) throw std::invalid_argument("ring: need n >= 3");
    Graph g(n);
    for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
}

Graph erdos_renyi(int n, double mean_k, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("erdos_renyi: need n >= 1");
    if (mean_k < 0.0 || (n > 1 && mean_k > n - 1))
        throw std::invalid_argument("erdos_renyi: mean degree outside [0, n-1]");
    const double p = (n > 1) ? mean_k / (n - 1) : 0.0;
    auto rng = make_rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p) g.add_edge(u, v);
    return g;
}

Graph configuration_model(const DegreeDistribution& dist, int n,
                          std::uint64_t seed, int* dropped_edges) {
    if (n < 1) throw std::invalid_argument("configuration_model: need n >= 1");
    auto rng = make_rng(seed);

    std::vector<int> deg(n);
    for (int attempt = 0;; ++attempt) {
        long sum = 0;
        for (int i = 0; i < n; ++i) sum += (deg[i] = dist.sample(rng));
        if (sum % 2 == 0) break;
        if (attempt > 10000)
            throw std::runtime_error("configuration_model: cannot reach even degree sum");
    }

    std::vector<int> stubs;
    for (int i = 0; i < n; ++i) stubs.insert(stubs.end(), deg[i], i);
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);

    // Pair consecutive stubs; rewire conflicting pairs for a bounded number
    // of passes, then drop whatever still conflicts.
    auto conflict = [](const std::set<std::pair<int, int>>& used, int u, int v) {
        return u == v || used.count({std::min(u, v), std::max(u, v)}) > 0;
    };
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        pairs.emplace_back(stubs[i], stubs[i + 1]);

    int dropped = 0;
    std::set<std::pair<int, int>> used;
    std::vector<std::pair<int, int>> accepted, bad;
    for (auto& pr : pairs) {
        if (conflict(used, pr.first, pr.second)) {
            bad.push_back(pr);
        } else {
            used.insert({std::min(pr.first, pr.second), std::max(pr.first, pr.second)});
            accepted.push_back(pr);
        }
    }
    for (int pass = 0; pass < 100 && bad.size() > 1; ++pass) {
        std::vector<int> loose;
        for (auto& pr : bad) {
            loose.push_back(pr.first);
            loose.push_back(pr.second);
        }
        for (std::size_t i = loose.size(); i > 1; --i)
            std::swap(loose[i - 1], loose[uniform_below(rng, i)]);
        bad.clear();
        for (std::size_t i = 0; i + 1 < loose.size(); i += 2) {
            int u = loose[i], v = loose[i + 1];
            if (conflict(used, u, v)) {
                bad.emplace_back(u, v);
            } else {
                used.insert({std::min(u, v), std::max(u, v)});
                accepted.emplace_back(u, v);
            }
        }
    }
    dropped = static_cast<int>(bad.size());

    Graph g(n);
    for (auto& [u, v] : accepted) g.add_edge(u, v);
    if (dropped_edges) *dropped_edges = dropped;
    return g;
}

OrientedGraph orient_random(const Graph& g, std::uint64_t seed) {
    auto rng = make_rng(seed);
    OrientedGraph og;
    og.g = g;
    og.out.assign(g.n, {});
    og.in.assign(g.n, {});
    for (auto& [u, v] : g.edges()) {
        if (rng() & 1u) {
            og.out[u].push_back(v);
            og.in[v].push_back(u);
        } else {
            og.out[v].push_back(u);
            og.in[u].push_back(v);
        }
    }
    for (auto& lst : og.out) std::sort(lst.begin(), lst.end());
    for (auto& lst : og.in) std::sort(lst.begin(), lst.end());
    return og;
}

OrientedGraph orient_ring_forward(const Graph& ring_graph) {
    const int n = ring_graph.n;
    OrientedGraph og;
    og.g = ring_graph;
    og.out.assign(n, {});
    og.in.assign(n, {});
    for (int u = 0; u < n; ++u) {
        og.out[u] = {(u + 1) % n};
        og.in[(u + 1) % n] = {u};
    }
    return og;
}

OrientedGraph orient_ring_alternating(const Graph& ring_graph) {
    const int n = ring_graph.n;
    if (n % 2 != 0)
        throw std::invalid_argument("orient_ring_alternating: need even n");
    OrientedGraph og;
    og.g = ring_graph;
    og.out.assign(n, {});
    og.in.assign(n, {});
    for (int u = 0; u < n; u += 2)
        og.out[u] = {(u + n - 1) % n, (u + 1) % n};
    for (int v = 1; v < n; v += 2)
        og.in[v] = {(v + n - 1) % n, (v + 1) % n};  // predecessor first
    return og;
}

EdgeOrder canonical_order(const Graph& g) { return EdgeOrder{g.edges()}; }

EdgeOrder sequential_ring_order(int n) {
    EdgeOrder o;
    for (int u = 0; u < n; ++u) o.edges.emplace_back(std::min(u, (u + 1) % n),
                                                    std::max(u, (u + 1) % n));
    return o;
}

EdgeOrder alternate_ring_order(int n) {
    if (n % 2 != 0) throw std::invalid_argument("alternate_ring_order: need even n");
    EdgeOrder o;
    for (int u = 0; u < n; u += 2) o.edges.emplace_back(u, u + 1);
    for (int u = 1; u < n; u += 2)
        o.edges.emplace_back(std::min(u, (u + 1) % n), std::max(u, (u + 1) % n));
    return o;
}

EdgeOrder shuffled_order(const Graph& g, std::uint64_t seed) {
    auto rng = make_rng(seed);
    EdgeOrder o{g.edges()};
    for (std::size_t i = o.edges.size(); i > 1; --i)
        std::swap(o.edges[i - 1], o.edges[uniform_below(rng, i)]);
    return o;
}

Graph read_edge_list(std::istream& is) {
    std::vector<std::pair<int, int>> pairs;
    int max_v = -1;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int u, v;
        if (ls >> u >> v) {
            pairs.emplace_back(u, v);
            max_v = std::max({max_v, u, v});
        }
    }
    Graph g(max_v + 1);
    for (auto& [u, v] : pairs) g.add_edge(u, v);
    return g;
}

void write_edge_list(const Graph& g, std::ostream& os) {
    for (auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

OrientedGraph read_orientation(const Graph& g, std::istream& is) {
    OrientedGraph og;
    og.g = g;
    og.out.assign(g.n, {});
    og.in.assign(g.n, {});
    std::set<std::pair<int, int>> seen;
    std::string line;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) continue;
        if (!g.has_edge(u, v))
            throw std::invalid_argument("read_orientation: pair is not an edge");
        auto key = std::minmax(u, v);
        if (!seen.insert({key.first, key.second}).second)
            throw std::invalid_argument("read_orientation: edge oriented twice");
        og.out[u].push_back(v);
        og.in[v].push_back(u);
    }
    if (static_cast<int>(seen.size()) != g.edge_count())
        throw std::invalid_argument("read_orientation: not all edges oriented");
    return og;
}

}  // namespace gsnet
