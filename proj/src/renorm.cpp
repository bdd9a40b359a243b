#include "perturbia/renorm.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>

namespace perturbia::renorm {

using graphs::ClassEntry;
using graphs::MultiGraph;
using graphs::VertexKind;

namespace {

std::vector<int> union_find_components(const MultiGraph& g, unsigned mask) {
    std::vector<int> parent(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) parent[static_cast<std::size_t>(v)] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!(mask & (1u << e))) continue;
        int a = find(g.edges[e].first), b = find(g.edges[e].second);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::vector<int> root(static_cast<std::size_t>(g.order()));
    for (int v = 0; v < g.order(); ++v) root[static_cast<std::size_t>(v)] = find(v);
    return root;
}

/// Extract the subgraph induced by one gamma-component (vertices with the
/// given root, edges of the mask inside it).
MultiGraph component_subgraph(const MultiGraph& g, unsigned mask, const std::vector<int>& root,
                              int which) {
    std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
    std::vector<VertexKind> kinds;
    for (int v = 0; v < g.order(); ++v)
        if (root[static_cast<std::size_t>(v)] == which) {
            local[static_cast<std::size_t>(v)] = static_cast<int>(kinds.size());
            kinds.push_back(VertexKind::plain);
        }
    MultiGraph out{kinds, {}};
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!(mask & (1u << e))) continue;
        const auto [u, v] = g.edges[e];
        if (root[static_cast<std::size_t>(u)] != which) continue;
        out.add_edge(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
    }
    out.normalize();
    return out;
}

/// Contract each gamma-component to a vertex; surviving edges keep their
/// multiplicity, intra-component survivors become self-loops.
MultiGraph contract(const MultiGraph& g, unsigned mask, const std::vector<int>& root) {
    std::vector<int> node(static_cast<std::size_t>(g.order()), -1);
    int n = 0;
    for (int v = 0; v < g.order(); ++v) {
        const int r = root[static_cast<std::size_t>(v)];
        if (node[static_cast<std::size_t>(r)] == -1) node[static_cast<std::size_t>(r)] = n++;
        node[static_cast<std::size_t>(v)] = node[static_cast<std::size_t>(r)];
    }
    MultiGraph out{std::vector<VertexKind>(static_cast<std::size_t>(n), VertexKind::plain), {}};
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (mask & (1u << e)) continue;
        const auto [u, v] = g.edges[e];
        out.add_edge(node[static_cast<std::size_t>(u)], node[static_cast<std::size_t>(v)]);
    }
    out.normalize();
    return out;
}

std::mutex universe_mutex;

}  // namespace

GraphUniverse::GraphUniverse(Bound bound) : bound_(bound) {
    if (bound.vertices < 1 || bound.edges < 0 || bound.edges > 16)
        throw DomainError("GraphUniverse: unsupported bound");
    classes_ = graphs::connected_plain_classes(bound.vertices, bound.edges);
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        index_.emplace(classes_[i].code, static_cast<int>(i));
        const auto& g = classes_[i].representative;
        one_pi_.push_back(graphs::bridge_edges(g).empty());
        if (g.order() == 1 && g.size() == 0) point_ = static_cast<int>(i);
    }
    if (point_ == -1) throw DomainError("GraphUniverse: missing point class");

    subsets_.resize(classes_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        const auto& g = classes_[i].representative;
        const unsigned nmask = 1u << g.size();
        subsets_[i].reserve(nmask);
        for (unsigned mask = 0; mask < nmask; ++mask) {
            const auto root = union_find_components(g, mask);
            SubsetData data;
            std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
            for (int v = 0; v < g.order(); ++v) {
                const int r = root[static_cast<std::size_t>(v)];
                if (seen[static_cast<std::size_t>(r)]) continue;
                seen[static_cast<std::size_t>(r)] = true;
                MultiGraph comp = component_subgraph(g, mask, root, r);
                if (comp.order() == 1 && comp.size() == 0) continue;   // point: value 1
                auto it = index_.find(graphs::canonical_code(comp));
                if (it == index_.end())
                    throw DomainError("GraphUniverse: component escaped the bound");
                data.gamma_components.push_back(it->second);
            }
            auto it = index_.find(graphs::canonical_code(contract(g, mask, root)));
            if (it == index_.end()) throw DomainError("GraphUniverse: contraction escaped the bound");
            data.contracted = it->second;
            subsets_[i].push_back(std::move(data));
        }
    }
}

const GraphUniverse& GraphUniverse::get(Bound bound) {
    static std::map<std::pair<int, int>, std::unique_ptr<GraphUniverse>> cache;
    std::lock_guard<std::mutex> lock(universe_mutex);
    auto key = std::make_pair(bound.vertices, bound.edges);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<GraphUniverse>(new GraphUniverse(bound))).first;
    return *it->second;
}

int GraphUniverse::index_of(const std::string& code) const {
    auto it = index_.find(code);
    return it == index_.end() ? -1 : it->second;
}

CountertermMap::CountertermMap(Bound bound, bool one_pi_supported)
    : bound_(bound), one_pi_(one_pi_supported) {
    GraphUniverse::get(bound);   // validates the bound eagerly
}

CountertermMap CountertermMap::identity(Bound bound) { return CountertermMap(bound, true); }

void CountertermMap::set_value(const std::string& code, const Rat& v) {
    const auto& u = GraphUniverse::get(bound_);
    const int idx = u.index_of(code);
    if (idx == -1) throw DomainError("CountertermMap: unknown class code");
    if (idx == u.point_index())
        throw DomainError("CountertermMap: the point value is fixed at 1");
    if (one_pi_ && !u.is_one_pi(idx) && v != 0)
        throw DomainError("CountertermMap: nonzero value on a non-1PI class in a 1PI-supported map");
    if (v == 0)
        values_.erase(idx);
    else
        values_[idx] = v;
}

Rat CountertermMap::value(int class_index) const {
    const auto& u = GraphUniverse::get(bound_);
    if (class_index == u.point_index()) return Rat(1);
    auto it = values_.find(class_index);
    return it == values_.end() ? Rat(0) : it->second;
}

Rat CountertermMap::value(const std::string& code) const {
    const int idx = GraphUniverse::get(bound_).index_of(code);
    if (idx == -1) throw DomainError("CountertermMap: unknown class code");
    return value(idx);
}

Rat CountertermMap::evaluate(const MultiGraph& g) const {
    const auto& u = GraphUniverse::get(bound_);
    const auto comp = g.component_labels();
    const int ncomp = g.component_count();
    Rat out(1);
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> keep;
        for (int v = 0; v < g.order(); ++v)
            if (comp[static_cast<std::size_t>(v)] == c) keep.push_back(v);
        std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
        MultiGraph sub{std::vector<VertexKind>(keep.size(), VertexKind::plain), {}};
        for (std::size_t i = 0; i < keep.size(); ++i)
            local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
        for (const auto& [a, b] : g.edges)
            if (comp[static_cast<std::size_t>(a)] == c)
                sub.add_edge(local[static_cast<std::size_t>(a)], local[static_cast<std::size_t>(b)]);
        sub.normalize();
        const int idx = u.index_of(graphs::canonical_code(sub));
        if (idx == -1) throw DomainError("CountertermMap::evaluate: component beyond bound");
        out *= value(idx);
        if (out == 0) return out;
    }
    return out;
}

Prescription::Prescription(Bound bound) : bound_(bound) { GraphUniverse::get(bound); }

Prescription Prescription::free_form(Bound bound) {
    const auto& u = GraphUniverse::get(bound);
    Prescription f(bound);
    for (std::size_t i = 0; i < u.classes().size(); ++i) {
        const int idx = static_cast<int>(i);
        if (idx == u.point_index()) continue;
        const auto& g = u.classes()[i].representative;
        // one symbol per 1PI class; a general connected graph maps to the
        // product over its 1PI pieces
        auto pieces = graphs::one_pi_decompose(g);
        Value v = Value::constant(Rat(1));
        for (const auto& piece : pieces.pieces) {
            std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
            MultiGraph sub{std::vector<VertexKind>(piece.size(), VertexKind::plain), {}};
            for (std::size_t k = 0; k < piece.size(); ++k)
                local[static_cast<std::size_t>(piece[k])] = static_cast<int>(k);
            for (const auto& [a, b] : g.edges) {
                if (local[static_cast<std::size_t>(a)] == -1 ||
                    local[static_cast<std::size_t>(b)] == -1)
                    continue;
                sub.add_edge(local[static_cast<std::size_t>(a)], local[static_cast<std::size_t>(b)]);
            }
            sub.normalize();
            if (sub.order() == 1 && sub.size() == 0) continue;
            const int pidx = u.index_of(graphs::canonical_code(sub));
            if (pidx == -1) throw DomainError("free_form: piece beyond bound");
            v = v * Value::variable(pidx);
        }
        f.values_[idx] = std::move(v);
    }
    return f;
}

Prescription Prescription::delta_point(Bound bound) {
    Prescription f(bound);
    const auto& u = GraphUniverse::get(bound);
    for (std::size_t i = 0; i < u.classes().size(); ++i)
        if (static_cast<int>(i) != u.point_index())
            f.values_[static_cast<int>(i)] = Value();   // zero away from the point
    return f;
}

void Prescription::set_value(const std::string& code, Value v) {
    const auto& u = GraphUniverse::get(bound_);
    const int idx = u.index_of(code);
    if (idx == -1) throw DomainError("Prescription: unknown class code");
    if (idx == u.point_index()) throw DomainError("Prescription: the point value is fixed at 1");
    values_[idx] = std::move(v);
}

Value Prescription::value(int class_index) const {
    const auto& u = GraphUniverse::get(bound_);
    if (class_index == u.point_index()) return Value::constant(Rat(1));
    auto it = values_.find(class_index);
    return it == values_.end() ? Value() : it->second;
}

Value Prescription::value(const std::string& code) const {
    const int idx = GraphUniverse::get(bound_).index_of(code);
    if (idx == -1) throw DomainError("Prescription: unknown class code");
    return value(idx);
}

namespace {

void require_same_bound(Bound a, Bound b, const char* what) {
    if (!(a == b)) throw DomainError(std::string(what) + ": bound mismatch");
}

Rat gamma_value(const CountertermMap& c, const std::vector<int>& components) {
    Rat out(1);
    for (int idx : components) {
        out *= c.value(idx);
        if (out == 0) break;
    }
    return out;
}

}  // namespace

CountertermMap compose(const CountertermMap& c1, const CountertermMap& c2) {
    require_same_bound(c1.bound(), c2.bound(), "compose");
    const auto& u = GraphUniverse::get(c1.bound());
    std::map<std::string, Rat> totals;
    bool support_clean = true;
    for (std::size_t i = 0; i < u.classes().size(); ++i) {
        const int idx = static_cast<int>(i);
        if (idx == u.point_index()) continue;
        Rat total(0);
        for (const auto& sub : u.subsets(idx)) {
            Rat v1 = gamma_value(c1, sub.gamma_components);
            if (v1 == 0) continue;
            total += v1 * c2.value(sub.contracted);
        }
        if (total != 0) {
            totals.emplace(u.classes()[i].code, total);
            if (!u.is_one_pi(idx)) support_clean = false;
        }
    }
    const bool flag = c1.one_pi_supported() && c2.one_pi_supported() && support_clean;
    CountertermMap out(c1.bound(), flag);
    for (const auto& [code, v] : totals) out.set_value(code, v);
    return out;
}

CountertermMap compose_pruned(const CountertermMap& c1, const CountertermMap& c2) {
    require_same_bound(c1.bound(), c2.bound(), "compose_pruned");
    if (!c1.one_pi_supported() || !c2.one_pi_supported())
        throw DomainError("compose_pruned: both maps must be 1PI-supported");
    const auto& u = GraphUniverse::get(c1.bound());
    std::map<std::string, Rat> totals;
    for (std::size_t i = 0; i < u.classes().size(); ++i) {
        const int idx = static_cast<int>(i);
        if (idx == u.point_index()) continue;
        Rat total(0);
        for (const auto& sub : u.subsets(idx)) {
            const bool all_one_pi =
                std::all_of(sub.gamma_components.begin(), sub.gamma_components.end(),
                            [&](int comp) { return u.is_one_pi(comp); });
            if (!all_one_pi) continue;
            Rat v1 = gamma_value(c1, sub.gamma_components);
            if (v1 == 0) continue;
            total += v1 * c2.value(sub.contracted);
        }
        if (total != 0) totals.emplace(u.classes()[i].code, total);
    }
    CountertermMap out(c1.bound(), false);
    for (const auto& [code, v] : totals) out.set_value(code, v);
    return out;
}

CountertermMap inverse(const CountertermMap& c) {
    const auto& u = GraphUniverse::get(c.bound());
    CountertermMap inv(c.bound(), false);

    std::vector<int> order;
    for (std::size_t i = 0; i < u.classes().size(); ++i)
        if (static_cast<int>(i) != u.point_index()) order.push_back(static_cast<int>(i));
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return u.edge_count(a) < u.edge_count(b); });

    bool support_clean = true;
    for (int idx : order) {
        const auto& subs = u.subsets(idx);
        const unsigned full = static_cast<unsigned>(subs.size()) - 1;
        Rat total(0);
        for (unsigned mask = 0; mask < full; ++mask) {   // proper subsets only
            const auto& sub = subs[mask];
            Rat v = gamma_value(inv, sub.gamma_components);
            if (v == 0) continue;
            total += v * c.value(sub.contracted);
        }
        if (total != 0) {
            inv.set_value(u.classes()[static_cast<std::size_t>(idx)].code, -total);
            if (!u.is_one_pi(idx)) support_clean = false;
        }
    }
    if (c.one_pi_supported() && support_clean) {
        CountertermMap flagged(c.bound(), true);
        for (const auto& [idx, v] : inv.values())
            flagged.set_value(u.classes()[static_cast<std::size_t>(idx)].code, v);
        return flagged;
    }
    return inv;
}

Prescription act(const CountertermMap& c, const Prescription& f) {
    require_same_bound(c.bound(), f.bound(), "act");
    const auto& u = GraphUniverse::get(c.bound());
    Prescription out(c.bound());
    for (std::size_t i = 0; i < u.classes().size(); ++i) {
        const int idx = static_cast<int>(i);
        if (idx == u.point_index()) continue;
        Value total;
        for (const auto& sub : u.subsets(idx)) {
            Rat v = gamma_value(c, sub.gamma_components);
            if (v == 0) continue;
            total += v * f.value(sub.contracted);
        }
        out.set_value(u.classes()[i].code, std::move(total));
    }
    return out;
}

CountertermMap transitive_connector(const Prescription& f1, const Prescription& f2, Bound bound) {
    require_same_bound(f1.bound(), bound, "transitive_connector");
    require_same_bound(f2.bound(), bound, "transitive_connector");
    const auto& u = GraphUniverse::get(bound);

    std::vector<int> order;
    for (std::size_t i = 0; i < u.classes().size(); ++i)
        if (static_cast<int>(i) != u.point_index()) order.push_back(static_cast<int>(i));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (u.edge_count(a) != u.edge_count(b)) return u.edge_count(a) < u.edge_count(b);
        return a < b;
    });

    CountertermMap total = CountertermMap::identity(bound);
    Prescription current = f1;
    for (int idx : order) {
        Value diff = f2.value(idx) - current.value(idx);
        if (diff.is_zero()) continue;
        if (!diff.is_constant())
            throw DomainError(
                "transitive_connector: difference at a class is not a scalar multiple of the "
                "point slot; prescriptions are not connectable");
        CountertermMap layer(bound, false);
        layer.set_value(u.classes()[static_cast<std::size_t>(idx)].code, diff.constant_value());
        current = act(layer, current);
        total = compose(layer, total);
    }
    if (!(current == f2))
        throw DomainError("transitive_connector: fixpoint failed to reach the target");
    return total;
}

Rat term_degree(const fields::FieldConfig& cfg, const fields::Monomial& m, int d) {
    if (d < 2) throw DomainError("term_degree: dimension must be at least 2");
    Rat deg(0);
    const Rat field_deg = rat(d - 2, 2);
    for (const auto& f : m.factors) {
        if (cfg.symbol(f.sym).constant) continue;
        deg += field_deg;
        deg += f.word.order();
    }
    return deg;
}

std::optional<int> dyson_max_power(int d) {
    if (d < 2) throw DomainError("dyson_max_power: dimension must be at least 2");
    if (d == 2) return std::nullopt;   // arbitrary k
    return (2 * d) / (d - 2);
}

}  // namespace perturbia::renorm
