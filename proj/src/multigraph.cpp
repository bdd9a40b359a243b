#include "perturbia/multigraph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <queue>
#include <tuple>

namespace perturbia::graphs {

void MultiGraph::add_edge(int u, int v) {
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
}

void MultiGraph::normalize() {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
}

std::vector<int> MultiGraph::degrees() const {
    std::vector<int> d(kinds.size(), 0);
    for (const auto& [u, v] : edges) {
        d[u] += 1;
        d[v] += 1;   // a loop (u == v) contributes both ends
    }
    return d;
}

int MultiGraph::degree(int v) const { return degrees()[v]; }

int MultiGraph::count(VertexKind k) const {
    return static_cast<int>(std::count(kinds.begin(), kinds.end(), k));
}

std::vector<int> MultiGraph::component_labels() const {
    const int n = order();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        if (u != v) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::queue<int> q;
        q.push(s);
        comp[s] = c;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : adj[v])
                if (comp[u] == -1) {
                    comp[u] = c;
                    q.push(u);
                }
        }
        ++c;
    }
    return comp;
}

int MultiGraph::component_count() const {
    const auto comp = component_labels();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

bool MultiGraph::is_connected() const { return component_count() == 1; }

int MultiGraph::loop_number() const {
    return size() - order() + component_count();
}

bool MultiGraph::valences_consistent() const {
    const auto d = degrees();
    for (int v = 0; v < order(); ++v) {
        if (kinds[v] == VertexKind::internal && d[v] != 4) return false;
        if (kinds[v] == VertexKind::source && d[v] != 1) return false;
    }
    return true;
}

MultiGraph make_graph(std::vector<VertexKind> kinds, std::vector<std::pair<int, int>> edges) {
    MultiGraph g{std::move(kinds), std::move(edges)};
    for (const auto& [u, v] : g.edges)
        if (u < 0 || v < 0 || u >= g.order() || v >= g.order())
            throw DomainError("make_graph: edge endpoint out of range");
    g.normalize();
    return g;
}

namespace {

/// Multiplicity-matrix view: mult[i][j] is the number of parallel edges for
/// i != j, mult[i][i] the number of self-loops.
std::vector<std::vector<int>> mult_matrix(const MultiGraph& g) {
    const int n = g.order();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (const auto& [u, v] : g.edges) {
        if (u == v)
            m[u][u] += 1;
        else {
            m[u][v] += 1;
            m[v][u] += 1;
        }
    }
    return m;
}

/// One round of color refinement; returns true when the partition changed.
bool refine_once(const std::vector<std::vector<int>>& m, std::vector<int>& color) {
    const int n = static_cast<int>(color.size());
    using Sig = std::tuple<int, int, std::vector<std::pair<int, int>>>;
    std::vector<Sig> sigs(n);
    for (int v = 0; v < n; ++v) {
        std::vector<std::pair<int, int>> nb;
        for (int u = 0; u < n; ++u)
            if (u != v && m[v][u] > 0) nb.emplace_back(color[u], m[v][u]);
        std::sort(nb.begin(), nb.end());
        sigs[v] = Sig(color[v], m[v][v], std::move(nb));
    }
    std::map<Sig, int> rank;
    for (const auto& s : sigs) rank.emplace(s, 0);
    int next = 0;
    for (auto& [sig, r] : rank) r = next++;
    bool changed = false;
    for (int v = 0; v < n; ++v) {
        int c = rank[sigs[v]];
        if (c != color[v]) changed = true;
        color[v] = c;
    }
    return changed;
}

void refine(const std::vector<std::vector<int>>& m, std::vector<int>& color) {
    while (refine_once(m, color)) {
    }
}

std::vector<int> initial_colors(const MultiGraph& g) {
    std::vector<int> color(g.order());
    for (int v = 0; v < g.order(); ++v) color[v] = static_cast<int>(g.kinds[v]);
    return color;
}

/// Encode the graph under a labeling (perm[v] = new index of v).
std::string encode(const MultiGraph& g, const std::vector<std::vector<int>>& m,
                   const std::vector<int>& perm) {
    const int n = g.order();
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[perm[v]] = v;
    std::string code;
    code.reserve(1 + n + n * (n + 1) / 2);
    code.push_back(static_cast<char>(n));
    for (int i = 0; i < n; ++i) code.push_back(static_cast<char>(g.kinds[inv[i]]));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) code.push_back(static_cast<char>(m[inv[i]][inv[j]]));
    return code;
}

/// Canonical-labeling search: individualization + refinement, keeping the
/// lexicographically smallest code over all leaves.
void canon_search(const MultiGraph& g, const std::vector<std::vector<int>>& m,
                  std::vector<int> color, std::string& best, bool& have_best) {
    refine(m, color);
    const int n = g.order();
    int cell_color = -1;
    for (int c = 0;; ++c) {
        int cnt = static_cast<int>(std::count(color.begin(), color.end(), c));
        if (cnt == 0) break;
        if (cnt > 1) {
            cell_color = c;
            break;
        }
    }
    if (cell_color == -1) {
        std::vector<int> perm(n);
        for (int v = 0; v < n; ++v) perm[v] = color[v];
        std::string code = encode(g, m, perm);
        if (!have_best || code < best) {
            best = std::move(code);
            have_best = true;
        }
        return;
    }
    const int fresh = n;   // larger than any refined color
    for (int v = 0; v < n; ++v) {
        if (color[v] != cell_color) continue;
        std::vector<int> next = color;
        next[v] = fresh;
        canon_search(g, m, next, best, have_best);
    }
}

/// Count vertex automorphisms by backtracking over color-compatible maps.
void aut_search(const std::vector<std::vector<int>>& m, const std::vector<int>& color, int v,
                std::vector<int>& image, std::vector<bool>& used, std::uint64_t& found) {
    const int n = static_cast<int>(color.size());
    if (v == n) {
        ++found;
        return;
    }
    for (int u = 0; u < n; ++u) {
        if (used[u] || color[u] != color[v]) continue;
        bool ok = m[v][v] == m[u][u];
        for (int w = 0; ok && w < v; ++w)
            if (m[v][w] != m[u][image[w]]) ok = false;
        if (!ok) continue;
        image[v] = u;
        used[u] = true;
        aut_search(m, color, v + 1, image, used, found);
        used[u] = false;
    }
}

std::uint64_t vertex_aut_count(const MultiGraph& g, const std::vector<std::vector<int>>& m) {
    std::vector<int> color = initial_colors(g);
    refine(m, color);
    std::vector<int> image(g.order(), -1);
    std::vector<bool> used(g.order(), false);
    std::uint64_t found = 0;
    aut_search(m, color, 0, image, used, found);
    return found;
}

/// Edge symmetries on top of a vertex automorphism: parallel edges permute,
/// loops permute and flip.
std::uint64_t edge_symmetry_factor(const std::vector<std::vector<int>>& m) {
    const int n = static_cast<int>(m.size());
    std::uint64_t f = 1;
    auto fact = [](int k) {
        std::uint64_t r = 1;
        for (int i = 2; i <= k; ++i) r *= i;
        return r;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) f *= fact(m[i][j]);
        f *= fact(m[i][i]) << m[i][i];
    }
    return f;
}

}  // namespace

CanonicalForm canonical_form(const MultiGraph& g) {
    const auto m = mult_matrix(g);
    std::string best;
    bool have = false;
    canon_search(g, m, initial_colors(g), best, have);
    CanonicalForm f;
    f.code = std::move(best);
    f.vertex_aut_order = vertex_aut_count(g, m);
    f.aut_order = f.vertex_aut_order * edge_symmetry_factor(m);
    return f;
}

std::string canonical_code(const MultiGraph& g) {
    const auto m = mult_matrix(g);
    std::string best;
    bool have = false;
    canon_search(g, m, initial_colors(g), best, have);
    return best;
}

std::uint64_t aut_order(const MultiGraph& g) {
    const auto m = mult_matrix(g);
    return vertex_aut_count(g, m) * edge_symmetry_factor(m);
}

std::string code_hex(const std::string& code) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(code.size() * 2);
    for (unsigned char c : code) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

namespace {

void kind_respecting_perms(const MultiGraph& g, std::vector<int>& perm, std::vector<bool>& used,
                           int v, const std::function<void(const std::vector<int>&)>& visit) {
    const int n = g.order();
    if (v == n) {
        visit(perm);
        return;
    }
    for (int u = 0; u < n; ++u) {
        if (used[u] || g.kinds[u] != g.kinds[v]) continue;
        perm[v] = u;
        used[u] = true;
        kind_respecting_perms(g, perm, used, v + 1, visit);
        used[u] = false;
    }
}

}  // namespace

std::uint64_t aut_order_brute(const MultiGraph& g) {
    const auto m = mult_matrix(g);
    std::uint64_t vertex_auts = 0;
    std::vector<int> perm(g.order());
    std::vector<bool> used(g.order(), false);
    kind_respecting_perms(g, perm, used, 0, [&](const std::vector<int>& p) {
        const int n = g.order();
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (m[i][j] != m[p[i]][p[j]]) return;
        ++vertex_auts;
    });
    return vertex_auts * edge_symmetry_factor(m);
}

bool isomorphic_brute(const MultiGraph& a, const MultiGraph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    {
        auto ka = a.kinds, kb = b.kinds;
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (ka != kb) return false;
    }
    const auto ma = mult_matrix(a);
    const auto mb = mult_matrix(b);
    bool found = false;
    std::vector<int> perm(a.order());
    std::vector<bool> used(a.order(), false);
    // maps vertex v of a to perm[v] of b; kinds must line up
    std::function<void(int)> rec = [&](int v) {
        if (found) return;
        if (v == a.order()) {
            for (int i = 0; i < a.order(); ++i)
                for (int j = i; j < a.order(); ++j)
                    if (ma[i][j] != mb[perm[i]][perm[j]]) return;
            found = true;
            return;
        }
        for (int u = 0; u < a.order(); ++u) {
            if (used[u] || a.kinds[v] != b.kinds[u]) continue;
            perm[v] = u;
            used[u] = true;
            rec(v + 1);
            used[u] = false;
        }
    };
    rec(0);
    return found;
}

std::vector<std::pair<int, int>> bridge_edges(const MultiGraph& g) {
    std::vector<std::pair<int, int>> bridges;
    const int base_components = g.component_count();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        if (u == v) continue;   // a loop is never a cut edge
        MultiGraph h = g;
        h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(e));
        if (h.component_count() > base_components) bridges.push_back(g.edges[e]);
    }
    return bridges;
}

OnePIDecomposition one_pi_decompose(const MultiGraph& g) {
    if (!g.is_connected()) {
        const auto comp = g.component_labels();
        std::string msg = "one_pi_decompose: graph is disconnected; components:";
        for (int c = 0; c < g.component_count(); ++c) {
            msg += " {";
            for (int v = 0; v < g.order(); ++v)
                if (comp[v] == c) msg += " " + std::to_string(v);
            msg += " }";
        }
        throw DomainError(msg);
    }
    OnePIDecomposition out;
    out.bridges = bridge_edges(g);

    MultiGraph stripped = g;
    for (const auto& b : out.bridges) {
        auto it = std::find(stripped.edges.begin(), stripped.edges.end(), b);
        stripped.edges.erase(it);
    }
    const auto comp = stripped.component_labels();
    const int ncomp = stripped.component_count();

    out.node_of_vertex.assign(g.order(), -1);
    std::vector<int> node_of_comp(ncomp, -1);
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> members;
        bool has_nonsource = false;
        for (int v = 0; v < g.order(); ++v)
            if (comp[v] == c) {
                members.push_back(v);
                if (g.kinds[v] != VertexKind::source) has_nonsource = true;
            }
        if (has_nonsource) {
            node_of_comp[c] = static_cast<int>(out.pieces.size());
            out.pieces.push_back(members);
        }
    }
    int next_node = static_cast<int>(out.pieces.size());
    for (int v = 0; v < g.order(); ++v) {
        if (g.kinds[v] == VertexKind::source)
            out.node_of_vertex[v] = next_node++;
        else
            out.node_of_vertex[v] = node_of_comp[comp[v]];
    }
    out.tree.assign(next_node, {});
    for (const auto& [u, v] : out.bridges) {
        out.tree[out.node_of_vertex[u]].push_back(out.node_of_vertex[v]);
        out.tree[out.node_of_vertex[v]].push_back(out.node_of_vertex[u]);
    }
    return out;
}

namespace {

bool passes_filter(const MultiGraph& g, GraphFilter f) {
    switch (f) {
        case GraphFilter::all:
            return true;
        case GraphFilter::connected:
            return g.is_connected();
        case GraphFilter::trees:
            return g.is_connected() && g.loop_number() == 0;
        case GraphFilter::one_pi: {
            if (!g.is_connected()) return false;
            for (const auto& [u, v] : bridge_edges(g))
                if (g.kinds[u] != VertexKind::source && g.kinds[v] != VertexKind::source)
                    return false;
            return true;
        }
    }
    return false;
}

struct RawClassSet {
    std::map<std::string, ClassEntry> by_code;

    void insert(MultiGraph g) {
        g.normalize();
        auto f = canonical_form(g);
        if (by_code.find(f.code) != by_code.end()) return;
        by_code.emplace(f.code, ClassEntry{std::move(g), f.code, f.aut_order});
    }
};

/// All internal-internal structures on `v4` vertices with prescribed
/// remaining degrees; loops are forced by parity at the end of each branch.
void internal_structures(int v4, const std::vector<int>& rem,
                         const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    std::vector<std::vector<int>> m(v4, std::vector<int>(v4, 0));
    std::vector<int> left = rem;
    std::function<void(int, int)> rec = [&](int i, int j) {
        if (i == v4) {
            for (int v = 0; v < v4; ++v) {
                if (left[v] % 2 != 0) return;
                m[v][v] = left[v] / 2;
            }
            visit(m);
            return;
        }
        if (j == v4) {
            rec(i + 1, i + 2);
            return;
        }
        const int cap = std::min(left[i], left[j]);
        for (int k = 0; k <= cap; ++k) {
            m[i][j] = m[j][i] = k;
            left[i] -= k;
            left[j] -= k;
            rec(i, j + 1);
            left[i] += k;
            left[j] += k;
        }
        m[i][j] = m[j][i] = 0;
    };
    rec(0, 1);
}

MultiGraph assemble(int v4, const std::vector<int>& attach, int src_pairs,
                    const std::vector<std::vector<int>>& m) {
    const int v1 = std::accumulate(attach.begin(), attach.end(), 0) + 2 * src_pairs;
    std::vector<VertexKind> kinds(v4, VertexKind::internal);
    kinds.insert(kinds.end(), v1, VertexKind::source);
    MultiGraph g{std::move(kinds), {}};
    for (int i = 0; i < v4; ++i) {
        for (int l = 0; l < m[i][i]; ++l) g.add_edge(i, i);
        for (int j = i + 1; j < v4; ++j)
            for (int k = 0; k < m[i][j]; ++k) g.add_edge(i, j);
    }
    int s = v4;
    for (int i = 0; i < v4; ++i)
        for (int a = 0; a < attach[i]; ++a) g.add_edge(i, s++);
    for (int p = 0; p < src_pairs; ++p) {
        g.add_edge(s, s + 1);
        s += 2;
    }
    g.normalize();
    return g;
}

/// Non-increasing attachment profiles summing to `total`, entries <= 4.
void attachment_profiles(int v4, int total, const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> a(v4, 0);
    std::function<void(int, int, int)> rec = [&](int i, int left, int maxv) {
        if (i == v4) {
            if (left == 0) visit(a);
            return;
        }
        for (int x = std::min(left, maxv); x >= 0; --x) {
            a[i] = x;
            rec(i + 1, left - x, x);
        }
    };
    rec(0, total, 4);
}

std::vector<ClassEntry> enumerate_all(int v4, int v1) {
    RawClassSet set;
    if (v4 == 0 && v1 == 0) {
        set.insert(MultiGraph{});
        return {set.by_code.begin()->second};
    }
    for (int src_pairs = 0; 2 * src_pairs <= v1; ++src_pairs) {
        const int attached = v1 - 2 * src_pairs;
        if (v4 == 0) {
            if (attached != 0) continue;
            set.insert(assemble(0, {}, src_pairs, {}));
            continue;
        }
        attachment_profiles(v4, attached, [&](const std::vector<int>& a) {
            std::vector<int> rem(v4);
            for (int i = 0; i < v4; ++i) rem[i] = 4 - a[i];
            internal_structures(v4, rem, [&](const std::vector<std::vector<int>>& m) {
                set.insert(assemble(v4, a, src_pairs, m));
            });
        });
    }
    std::vector<ClassEntry> out;
    out.reserve(set.by_code.size());
    for (auto& [code, entry] : set.by_code) out.push_back(std::move(entry));
    return out;
}

std::mutex cache_mutex;

const std::vector<ClassEntry>& cached_classes(int v4, int v1) {
    static std::map<std::pair<int, int>, std::vector<ClassEntry>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(v4, v1);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_all(v4, v1)).first;
    return it->second;
}

}  // namespace

EnumerationResult enumerate_classes(int v4, int v1, GraphFilter filter, int max_vertices) {
    if (v4 < 0 || v1 < 0) throw DomainError("enumerate_classes: negative vertex count");
    EnumerationResult res;
    if ((4 * v4 + v1) % 2 != 0) {
        res.odd_ends = true;
        return res;
    }
    if (v4 + v1 > max_vertices)
        throw ResourceError("enumerate_classes: " + std::to_string(v4 + v1) +
                            " vertices exceeds cap " + std::to_string(max_vertices));
    for (const auto& entry : cached_classes(v4, v1))
        if (passes_filter(entry.representative, filter)) res.classes.push_back(entry);
    return res;
}

std::vector<ClassEntry> connected_plain_classes(int max_vertices, int max_edges) {
    RawClassSet set;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
        std::vector<std::pair<int, int>> slots;   // (i,j) with i <= j
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) slots.emplace_back(i, j);
        std::function<void(std::size_t, int)> rec = [&](std::size_t s, int budget) {
            if (s == slots.size()) {
                MultiGraph g{std::vector<VertexKind>(n, VertexKind::plain), {}};
                for (int i = 0; i < n; ++i) {
                    for (int l = 0; l < m[i][i]; ++l) g.add_edge(i, i);
                    for (int j = i + 1; j < n; ++j)
                        for (int k = 0; k < m[i][j]; ++k) g.add_edge(i, j);
                }
                g.normalize();
                if (g.is_connected() || n == 1) set.insert(std::move(g));
                return;
            }
            auto [i, j] = slots[s];
            for (int k = 0; k <= budget; ++k) {
                m[i][j] = m[j][i] = k;
                rec(s + 1, budget - k);
            }
            m[i][j] = m[j][i] = 0;
        };
        rec(0, max_edges);
    }
    std::vector<ClassEntry> out;
    for (auto& [code, entry] : set.by_code) out.push_back(std::move(entry));
    std::sort(out.begin(), out.end(), [](const ClassEntry& a, const ClassEntry& b) {
        if (a.representative.order() != b.representative.order())
            return a.representative.order() < b.representative.order();
        if (a.representative.size() != b.representative.size())
            return a.representative.size() < b.representative.size();
        return a.code < b.code;
    });
    return out;
}

Int matchings_in_class(int v4, int v1, std::uint64_t aut) {
    Int group = 1;
    for (int i = 0; i < v4; ++i) group *= 24;   // 4! per internal vertex
    group *= factorial(static_cast<unsigned long>(v4));
    group *= factorial(static_cast<unsigned long>(v1));
    Int a(static_cast<unsigned long>(aut));
    if (group % a != 0)
        throw DomainError("matchings_in_class: aut order does not divide the label group order");
    return group / a;
}

MatchingCensus matching_census(int v4, int v1) {
    const int ends = 4 * v4 + v1;
    if (ends % 2 != 0) return MatchingCensus{Int(0), {}};
    if (ends > 14) throw ResourceError("matching_census: too many edge-ends");

    // end e belongs to vertex owner[e]
    std::vector<int> owner;
    for (int i = 0; i < v4; ++i) owner.insert(owner.end(), 4, i);
    for (int i = 0; i < v1; ++i) owner.push_back(v4 + i);

    std::vector<VertexKind> kinds(v4, VertexKind::internal);
    kinds.insert(kinds.end(), v1, VertexKind::source);

    std::map<std::string, Int> per;
    Int total = 0;
    std::vector<int> partner(ends, -1);
    std::function<void()> rec = [&]() {
        int first = -1;
        for (int e = 0; e < ends; ++e)
            if (partner[e] == -1) {
                first = e;
                break;
            }
        if (first == -1) {
            MultiGraph g{kinds, {}};
            for (int e = 0; e < ends; ++e)
                if (partner[e] > e) g.add_edge(owner[e], owner[partner[e]]);
            g.normalize();
            per[canonical_code(g)] += 1;
            total += 1;
            return;
        }
        for (int e = first + 1; e < ends; ++e) {
            if (partner[e] != -1) continue;
            partner[first] = e;
            partner[e] = first;
            rec();
            partner[first] = -1;
            partner[e] = -1;
        }
    };
    if (ends > 0)
        rec();
    else
        total = 1;
    MatchingCensus out;
    out.total = total;
    for (auto& [code, cnt] : per) out.per_class.emplace_back(code, cnt);
    return out;
}

}  // namespace perturbia::graphs
