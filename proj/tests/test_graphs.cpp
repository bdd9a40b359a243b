#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "perturbia/multigraph.hpp"

using namespace perturbia;
using namespace perturbia::graphs;

namespace {

MultiGraph figure_eight() {
    return make_graph({VertexKind::internal}, {{0, 0}, {0, 0}});
}

MultiGraph quadruple_edge() {
    return make_graph({VertexKind::internal, VertexKind::internal},
                      {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
}

MultiGraph cross_graph() {
    return make_graph({VertexKind::internal, VertexKind::source, VertexKind::source,
                       VertexKind::source, VertexKind::source},
                      {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
}

MultiGraph relabel(const MultiGraph& g, const std::vector<int>& perm) {
    std::vector<VertexKind> kinds(g.order());
    for (int v = 0; v < g.order(); ++v) kinds[perm[v]] = g.kinds[v];
    MultiGraph h{kinds, {}};
    for (auto [u, v] : g.edges) h.add_edge(perm[u], perm[v]);
    h.normalize();
    return h;
}

MultiGraph random_graph(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nv(1, 6);
    const int n = nv(rng);
    std::vector<VertexKind> kinds;
    for (int i = 0; i < n; ++i)
        kinds.push_back(rng() % 3 == 0 ? VertexKind::source : VertexKind::internal);
    MultiGraph g{kinds, {}};
    std::uniform_int_distribution<int> ne(0, 7);
    const int e = ne(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < e; ++i) g.add_edge(pick(rng), pick(rng));
    g.normalize();
    return g;
}

}  // namespace

TEST_CASE("aut orders of the structural examples") {
    CHECK(aut_order(figure_eight()) == 8);
    CHECK(aut_order(quadruple_edge()) == 48);
    CHECK(aut_order(make_graph({VertexKind::internal}, {})) == 1);
    // single edge between two sources
    CHECK(aut_order(make_graph({VertexKind::source, VertexKind::source}, {{0, 1}})) == 2);
}

TEST_CASE("single-vertex enumeration: figure-eight only") {
    auto res = enumerate_classes(1, 0, GraphFilter::all);
    REQUIRE(res.classes.size() == 1);
    CHECK(res.classes[0].aut == 8);
}

TEST_CASE("two-vertex vacuum classes carry aut orders 128, 16, 48") {
    auto res = enumerate_classes(2, 0, GraphFilter::all);
    REQUIRE(res.classes.size() == 3);
    std::vector<std::uint64_t> auts;
    for (const auto& c : res.classes) auts.push_back(c.aut);
    std::sort(auts.begin(), auts.end());
    CHECK(auts == std::vector<std::uint64_t>{16, 48, 128});
}

TEST_CASE("two sources, no internal vertices") {
    auto res = enumerate_classes(0, 2, GraphFilter::all);
    REQUIRE(res.classes.size() == 1);
    CHECK(res.classes[0].aut == 2);
}

TEST_CASE("odd end count yields a diagnostic, not an error") {
    auto res = enumerate_classes(1, 1, GraphFilter::all);
    CHECK(res.odd_ends);
    CHECK(res.classes.empty());
    CHECK(!enumerate_classes(1, 2, GraphFilter::all).odd_ends);
}

TEST_CASE("enumeration cap raises a resource error") {
    CHECK_THROWS_AS(enumerate_classes(10, 10, GraphFilter::all, 12), ResourceError);
}

TEST_CASE("matching-sum identity over all v4 <= 3, v1 <= 6") {
    for (int v4 = 0; v4 <= 3; ++v4) {
        for (int v1 = 0; v1 <= 6; ++v1) {
            const int ends = 4 * v4 + v1;
            if (ends % 2 != 0) {
                CHECK(enumerate_classes(v4, v1, GraphFilter::all).odd_ends);
                continue;
            }
            auto res = enumerate_classes(v4, v1, GraphFilter::all);
            Int total = 0;
            for (const auto& c : res.classes) total += matchings_in_class(v4, v1, c.aut);
            CHECK(total == double_factorial(ends - 1));
        }
    }
}

TEST_CASE("direct matching census agrees with orbit-stabiliser counts") {
    for (auto [v4, v1] : {std::pair{1, 0}, {2, 0}, {1, 2}, {0, 4}, {1, 4}, {2, 2}, {0, 6}}) {
        auto census = matching_census(v4, v1);
        auto res = enumerate_classes(v4, v1, GraphFilter::all);
        REQUIRE(census.per_class.size() == res.classes.size());
        for (const auto& c : res.classes) {
            auto it = std::find_if(census.per_class.begin(), census.per_class.end(),
                                   [&](const auto& p) { return p.first == c.code; });
            REQUIRE(it != census.per_class.end());
            CHECK(it->second == matchings_in_class(v4, v1, c.aut));
        }
        CHECK(census.total == double_factorial(4 * v4 + v1 - 1));
    }
}

TEST_CASE("canonical code is relabeling-invariant; distinct classes separate") {
    std::mt19937_64 rng(20260810);
    for (int iter = 0; iter < 300; ++iter) {
        MultiGraph g = random_graph(rng);
        std::vector<int> perm(g.order());
        for (int i = 0; i < g.order(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        MultiGraph h = relabel(g, perm);
        CHECK(canonical_code(g) == canonical_code(h));
        CHECK(aut_order(g) == aut_order(h));
    }
    for (int iter = 0; iter < 200; ++iter) {
        MultiGraph g = random_graph(rng);
        MultiGraph h = random_graph(rng);
        const bool iso = isomorphic_brute(g, h);
        CHECK((canonical_code(g) == canonical_code(h)) == iso);
    }
}

TEST_CASE("refined aut search matches exhaustive permutation count") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        MultiGraph g = random_graph(rng);
        CHECK(aut_order(g) == aut_order_brute(g));
    }
    for (int v4 = 0; v4 <= 2; ++v4)
        for (int v1 = 0; v1 <= 4; ++v1) {
            if ((4 * v4 + v1) % 2 != 0) continue;
            for (const auto& c : enumerate_classes(v4, v1, GraphFilter::all).classes)
                CHECK(c.aut == aut_order_brute(c.representative));
        }
}

TEST_CASE("loop numbers") {
    CHECK(cross_graph().loop_number() == 0);
    CHECK(figure_eight().loop_number() == 2);
    CHECK(quadruple_edge().loop_number() == 3);
}

TEST_CASE("one-pi decomposition of the named examples") {
    auto fe = one_pi_decompose(figure_eight());
    CHECK(fe.pieces.size() == 1);
    CHECK(fe.bridges.empty());

    auto cross = one_pi_decompose(cross_graph());
    CHECK(cross.pieces.size() == 1);
    CHECK(cross.bridges.size() == 4);
    // star: the piece node connects to all four source leaves
    CHECK(cross.tree[0].size() == 4);

    // two self-loop vertices joined by one edge, each with one source
    MultiGraph dumbbell = make_graph(
        {VertexKind::internal, VertexKind::internal, VertexKind::source, VertexKind::source},
        {{0, 0}, {1, 1}, {0, 1}, {0, 2}, {1, 3}});
    auto d = one_pi_decompose(dumbbell);
    CHECK(d.pieces.size() == 2);
    CHECK(d.bridges.size() == 3);
}

TEST_CASE("disconnected input to one-pi decomposition names components") {
    MultiGraph g = make_graph({VertexKind::internal, VertexKind::internal},
                              {{0, 0}, {0, 0}, {1, 1}, {1, 1}});
    CHECK_THROWS_AS(one_pi_decompose(g), DomainError);
}

TEST_CASE("tree-form identity -1 + v1 - bridges + pieces = 0 on connected classes") {
    for (int v4 = 0; v4 <= 3; ++v4)
        for (int v1 = 0; v1 <= 6; ++v1) {
            if ((4 * v4 + v1) % 2 != 0) continue;
            for (const auto& c : enumerate_classes(v4, v1, GraphFilter::connected).classes) {
                auto d = one_pi_decompose(c.representative);
                const int got = -1 + v1 - static_cast<int>(d.bridges.size()) +
                                static_cast<int>(d.pieces.size());
                CHECK(got == 0);
            }
        }
}

TEST_CASE("one_pi filter: source-free connected graphs iff no bridges") {
    for (int v4 = 1; v4 <= 3; ++v4) {
        auto conn = enumerate_classes(v4, 0, GraphFilter::connected);
        auto pi = enumerate_classes(v4, 0, GraphFilter::one_pi);
        for (const auto& c : conn.classes) {
            const bool bridge_free = bridge_edges(c.representative).empty();
            const bool in_pi = std::any_of(pi.classes.begin(), pi.classes.end(),
                                           [&](const ClassEntry& e) { return e.code == c.code; });
            CHECK(in_pi == bridge_free);
        }
    }
}

TEST_CASE("filters nest: trees and one_pi inside connected inside all") {
    auto subset_of = [](const EnumerationResult& a, const EnumerationResult& b) {
        return std::all_of(a.classes.begin(), a.classes.end(), [&](const ClassEntry& c) {
            return std::any_of(b.classes.begin(), b.classes.end(),
                               [&](const ClassEntry& e) { return e.code == c.code; });
        });
    };
    for (auto [v4, v1] : {std::pair{2, 2}, {1, 4}, {2, 0}}) {
        auto all = enumerate_classes(v4, v1, GraphFilter::all);
        auto conn = enumerate_classes(v4, v1, GraphFilter::connected);
        auto trees = enumerate_classes(v4, v1, GraphFilter::trees);
        auto pi = enumerate_classes(v4, v1, GraphFilter::one_pi);
        CHECK(subset_of(conn, all));
        CHECK(subset_of(trees, conn));
        CHECK(subset_of(pi, conn));
    }
}

TEST_CASE("connected plain classes for the renormalisation universe") {
    auto classes = connected_plain_classes(3, 6);
    // single point present exactly once
    int points = 0;
    for (const auto& c : classes)
        if (c.representative.order() == 1 && c.representative.size() == 0) ++points;
    CHECK(points == 1);
    // all entries connected (single point counts), unlabeled-plain, within bounds
    for (const auto& c : classes) {
        CHECK(c.representative.order() <= 3);
        CHECK(c.representative.size() <= 6);
        if (c.representative.order() > 1) CHECK(c.representative.is_connected());
    }
    // bubble: two vertices, two parallel edges
    MultiGraph bubble = make_graph({VertexKind::plain, VertexKind::plain}, {{0, 1}, {0, 1}});
    const auto code = canonical_code(bubble);
    CHECK(std::any_of(classes.begin(), classes.end(),
                      [&](const ClassEntry& c) { return c.code == code; }));
}
