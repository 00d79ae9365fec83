#pragma once

// Closed-form stabilizer correlators <K_x> of the distributed state for the
// three protocols:
//   bipartite_a — a central node builds the graph state locally and teleports
//                 each qubit through a purified Bell pair (CPHASE + two X
//                 measurements per node);
//   bipartite_b — purified Bell halves are connected directly by CPHASEs and
//                 one X measurement per node teleports the local state;
//   subgraph    — purified star states (one per node, one leaf per outgoing
//                 edge) are merged with CPHASE + Y measurement per edge.
//
// Each noise source contributes a (1-p) factor when the stabilizer element
// touches the affected qubits, so <K_x> is a product of elementary factors;
// ring variants of these products (every gate treated as an interior one)
// are provided separately because the generating-function and transfer-matrix
// routes are built on them.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "gsnet/graph.hpp"
#include "gsnet/noise.hpp"
#include "gsnet/purification.hpp"

namespace gsnet {

// Assignment of one bit x_u per vertex, bit u of the mask.
using Config = std::uint32_t;

// Source of the star/Bell correlator values <K_center^a prod K_leaf^(w sel.)>.
class PurificationModel {
  public:
    // Perfect states: every correlator is 1.
    static PurificationModel ideal();
    // First-order fixed point at p = p1 = p2: c[0][w] = 1 - p*ceil(w/2),
    // c[1][w] = 1 - p*(j+1).
    static PurificationModel first_order(double p);
    // Explicit per-j tables.
    static PurificationModel tables(std::map<int, CorrelatorTable> t);
    // Iterated purification maps for every j in 0..max_j (tables are
    // precomputed so evaluation is thread-safe).
    static PurificationModel fixed_point(double p1, double p2, double pc,
                                         int max_j);

    double ghz(int j, int a, int w) const;
    double bell(int a, int b) const { return ghz(1, a, b); }

  private:
    enum class Kind { ideal, first_order, tables } kind_ = Kind::ideal;
    double p_ = 0.0;
    std::shared_ptr<const std::map<int, CorrelatorTable>> tables_;
};

// theta(args) = 1 unless every argument is zero.
inline int theta(unsigned bits) { return bits ? 1 : 0; }

// Exponent rule for the leaves of distributed stars in the subgraph protocol.
// A node with no outgoing edges adopts its first incoming leaf as its own
// qubit; under `adopted` that leaf's exponent is the node's own bit x_w,
// under `xor_always` every leaf is treated like a merged one (x_u xor x_w).
enum class LeafExponentRule { adopted, xor_always };

enum class Protocol { bipartite_a, bipartite_b, subgraph };

// Treatment of the gate sequence in the bipartite protocols.  `realized`
// follows the supplied edge order: a connection damps configurations that are
// active on neighbors wired up earlier in that concrete sequence.  `annealed`
// integrates over orders with every other edge equally likely to come first,
// independently per edge; each connection then contributes the deterministic
// factor 1 - p2*(1 - 2^-(z_u+z_v)) with z the number of active excess
// neighbors.  The degree-ensemble closed forms average exactly this model.
// Only meaningful with SupportRule::union_or.
enum class OrderStats { realized, annealed };

// Precomputed per-graph evaluator; operator() is cheap and thread-safe.
class GeneralCorrelator {
  public:
    GeneralCorrelator(Protocol protocol, const Graph& g, const EdgeOrder& order,
                      const NoiseParams& noise, const PurificationModel& purif,
                      SupportRule rule = SupportRule::union_or,
                      OrderStats order_stats = OrderStats::realized);
    // Subgraph protocol: orientation decides who distributes which star.
    GeneralCorrelator(const OrientedGraph& og, const NoiseParams& noise,
                      const PurificationModel& purif,
                      SupportRule rule = SupportRule::union_or,
                      LeafExponentRule leaf_rule = LeafExponentRule::adopted);

    // Bitmask evaluation, available for graphs of at most 31 vertices.
    double operator()(Config x) const;
    // List-based evaluation for graphs of any size (one byte per vertex).
    double operator()(const std::vector<std::uint8_t>& x) const;
    int num_vertices() const { return n_; }
    Protocol protocol() const { return protocol_; }
    bool has_mask_path() const { return n_ <= 31; }

  private:
    Protocol protocol_;
    int n_ = 0;
    NoiseParams noise_;
    PurificationModel purif_;
    SupportRule rule_;
    LeafExponentRule leaf_rule_ = LeafExponentRule::adopted;
    OrderStats order_stats_ = OrderStats::realized;
    std::vector<std::vector<int>> nbr_;            // full neighborhoods
    std::vector<std::uint32_t> nbr_mask_;          // same, as masks (n <= 31)
    std::vector<std::pair<int, int>> edges_;       // gate order
    std::vector<std::vector<int>> out_list_;       // subgraph: outgoing
    std::vector<std::uint32_t> out_mask_;          // same, as masks (n <= 31)
    std::vector<std::vector<int>> in_list_;        // subgraph: incoming, ordered
    std::vector<int> out_deg_, in_deg_;
    std::vector<std::uint8_t> adopts_from_;        // subgraph: u adopts leaf sent by
                                                   //   in_list_[u][0] (bool)

    double eval_bipartite_a(Config x) const;
    double eval_bipartite_b(Config x) const;
    double eval_subgraph(Config x) const;
    double eval_bipartite_a(const std::uint8_t* x) const;
    double eval_bipartite_b(const std::uint8_t* x) const;
    double eval_subgraph(const std::uint8_t* x) const;
};

// Ring-specialized per-site factors (all gates treated as interior ones).
// The factor for site u reads `width` consecutive bits of x starting at
// offset(u); sites advance by step().  s2 requires even N and places one
// factor per even node.
enum class RingVariant { s1, s2, bipartite_a, bipartite_b };

struct RingFactor {
    RingVariant variant;
    NoiseParams noise;
    PurificationModel purif;

    int width() const;        // window size in sites
    int step() const;         // distance between consecutive windows
    int anchor_offset() const;  // window start relative to the site index

    // bits: bit k = x at window position k.
    double operator()(unsigned bits) const;
};

// Product of ring site factors for a full configuration on N sites.
double ring_correlator(const RingFactor& f, int n, Config x);

}  // namespace gsnet
