#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "perturbia/rational.hpp"

namespace perturbia::graphs {

/// Vertex kinds for the diagram sums: `internal` vertices come with a
/// declared valence (4 for the quartic vertex), `source` vertices have
/// valence 1.  Plain vertices carry no valence constraint; they are used by
/// the renormalisation module where contracted graphs have arbitrary degrees.
enum class VertexKind : std::uint8_t { internal = 0, source = 1, plain = 2 };

/// Undirected multigraph with self-loops.  Edges are stored as a sorted
/// multiset of normalized (lo <= hi) vertex pairs; a self-loop contributes
/// two edge-ends to its vertex.
struct MultiGraph {
    std::vector<VertexKind> kinds;
    std::vector<std::pair<int, int>> edges;

    int order() const { return static_cast<int>(kinds.size()); }
    int size() const { return static_cast<int>(edges.size()); }

    void add_edge(int u, int v);
    void normalize();

    /// Edge-end count per vertex (a loop counts twice).
    std::vector<int> degrees() const;
    int degree(int v) const;

    int count(VertexKind k) const;
    bool is_connected() const;
    int component_count() const;
    std::vector<int> component_labels() const;

    /// E - V + #components; equals the first Betti number.
    int loop_number() const;

    /// Declared-valence consistency (internal: 4 ends, source: 1 end).
    bool valences_consistent() const;
};

MultiGraph make_graph(std::vector<VertexKind> kinds, std::vector<std::pair<int, int>> edges);

/// Result of canonical labeling: a complete isomorphism invariant plus the
/// order of the automorphism group acting on vertices AND edge-ends.  Two
/// graphs are kind-respecting isomorphic iff their codes agree.
struct CanonicalForm {
    std::string code;            // raw bytes; use code_hex() for display
    std::uint64_t aut_order = 1; // ends action: vertex perms x edge/loop symmetries
    std::uint64_t vertex_aut_order = 1;
};

CanonicalForm canonical_form(const MultiGraph& g);
std::string canonical_code(const MultiGraph& g);
std::uint64_t aut_order(const MultiGraph& g);
std::string code_hex(const std::string& code);

/// Reference implementations used to cross-check the refinement-based search
/// (exhaustive over vertex permutations; practical for <= 8 vertices).
std::uint64_t aut_order_brute(const MultiGraph& g);
bool isomorphic_brute(const MultiGraph& a, const MultiGraph& b);

/// Bridges (cut-edges), maximal 1PI pieces among internal vertices, and the
/// tree obtained by contracting each piece.  Valence-1 vertices are never
/// pieces; every edge incident to them is a bridge.
struct OnePIDecomposition {
    std::vector<std::vector<int>> pieces;       // vertex sets, internal structure only
    std::vector<std::pair<int, int>> bridges;   // cut edges
    std::vector<std::vector<int>> tree;         // adjacency between tree nodes
    std::vector<int> node_of_vertex;            // vertex -> tree node id
};

std::vector<std::pair<int, int>> bridge_edges(const MultiGraph& g);
OnePIDecomposition one_pi_decompose(const MultiGraph& g);

enum class GraphFilter { all, connected, trees, one_pi };

struct ClassEntry {
    MultiGraph representative;
    std::string code;
    std::uint64_t aut;
};

struct EnumerationResult {
    std::vector<ClassEntry> classes;
    bool odd_ends = false;   // no perfect matching of edge-ends exists
};

/// One representative per isomorphism class of graphs built from `v4`
/// valence-4 internal vertices and `v1` valence-1 source vertices, with the
/// requested filter applied.  `max_vertices` is the enumeration resource cap.
EnumerationResult enumerate_classes(int v4, int v1, GraphFilter filter, int max_vertices = 14);

/// All connected multigraphs on unlabeled plain vertices with at most
/// `max_vertices` vertices and `max_edges` edges (the renormalisation-group
/// universe).  Includes the single point.
std::vector<ClassEntry> connected_plain_classes(int max_vertices, int max_edges);

/// Sum over matchings in one class by orbit-stabiliser:
/// (4!)^v4 * v4! * v1! / |Aut|.  Exact.
Int matchings_in_class(int v4, int v1, std::uint64_t aut);

/// Number of perfect matchings of labeled edge-ends generated directly;
/// practical for <= 12 ends.  Used to cross-check aut orders.
struct MatchingCensus {
    Int total;                                    // (#ends - 1)!!
    std::vector<std::pair<std::string, Int>> per_class; // canonical code -> matchings
};
MatchingCensus matching_census(int v4, int v1);

}  // namespace perturbia::graphs
