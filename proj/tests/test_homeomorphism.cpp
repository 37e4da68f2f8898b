#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "modsolve/generator.hpp"
#include "modsolve/homeomorphism.hpp"
#include "modsolve/oracles.hpp"
#include "modsolve/rng.hpp"

using namespace modsolve;

namespace {

SolveOptions audit_opts() {
    SolveOptions o;
    o.audit = true;
    return o;
}

using Paths = std::vector<std::vector<int>>;

}  // namespace

TEST_CASE("pattern parsing accepts multigraphs and mirrors host diagnostics") {
    auto h = parse_pattern("# theta with a loop\n2\n0 1\n0 1\n1 0\n0 0\n");
    CHECK(h.n == 2);
    CHECK(h.edges == std::vector<Edge>{{0, 1}, {0, 1}, {1, 0}, {0, 0}});

    auto dot = parse_pattern("1\n");
    CHECK(dot.n == 1);
    CHECK(dot.edges.empty());

    CHECK_THROWS_WITH(parse_pattern(""), "empty input: missing vertex count line");
    CHECK_THROWS_WITH(parse_pattern("zero\n"), "line 1: expected a single integer vertex count");
    CHECK_THROWS_WITH(parse_pattern("0\n"), "line 1: vertex count must be positive");
    CHECK_THROWS_WITH(parse_pattern("2\n0\n"), "line 2: expected two integer endpoints");
    CHECK_THROWS_WITH(parse_pattern("2\n0 2\n"), "line 2: vertex 2 out of range [0, 2)");
    CHECK_THROWS_WITH(parse_pattern("2\n-1 0\n"), "line 2: vertex -1 out of range [0, 2)");
}

TEST_CASE("rooted embeddings on fixed digraphs") {
    auto opts = audit_opts();
    const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
    const PatternDigraph triangle{3, {{0, 1}, {1, 2}, {2, 0}}};
    const PatternDigraph one_arc{2, {{0, 1}}};
    const PatternDigraph loop{1, {{0, 0}}};
    const PatternDigraph digon{2, {{0, 1}, {1, 0}}};

    auto identity = find_rooted_subdivision(c3, triangle, {0, 1, 2}, opts);
    REQUIRE(identity.found);
    CHECK(identity.anchors == std::vector<int>{0, 1, 2});
    CHECK(identity.edge_paths == Paths{{0, 1}, {1, 2}, {2, 0}});

    auto stretched = find_rooted_subdivision(c3, one_arc, {0, 2}, opts);
    REQUIRE(stretched.found);
    CHECK(stretched.edge_paths == Paths{{0, 1, 2}});

    auto around = find_rooted_subdivision(c3, loop, {0}, opts);
    REQUIRE(around.found);
    CHECK(around.edge_paths == Paths{{0, 1, 2, 0}});

    auto split = find_rooted_subdivision(c3, digon, {0, 1}, opts);
    REQUIRE(split.found);
    CHECK(split.edge_paths == Paths{{0, 1}, {1, 2, 0}});

    auto wide = find_rooted_subdivision(c3, digon, {0, 2}, opts);
    REQUIRE(wide.found);
    CHECK(wide.edge_paths == Paths{{0, 1, 2}, {2, 0}});

    // parallel pattern arcs may share a single host edge: internal
    // disjointness is vacuous for length-1 walks
    const Digraph host4(4, {{0, 1}, {0, 2}, {2, 1}, {3, 0}});
    const PatternDigraph theta{2, {{0, 1}, {0, 1}}};
    auto doubled = find_rooted_subdivision(host4, theta, {0, 1}, opts);
    REQUIRE(doubled.found);
    CHECK(doubled.edge_paths == Paths{{0, 1}, {0, 1}});

    const Digraph h5(5, {{0, 1}, {0, 2}, {2, 1}, {1, 3}, {3, 0}, {1, 0}});
    const PatternDigraph antiparallel{2, {{0, 1}, {0, 1}, {1, 0}}};
    auto braided = find_rooted_subdivision(h5, antiparallel, {0, 1}, opts);
    REQUIRE(braided.found);
    CHECK(braided.edge_paths == Paths{{0, 1}, {0, 1}, {1, 0}});

    const Digraph p3(3, {{0, 1}, {1, 2}});
    CHECK_FALSE(find_rooted_subdivision(p3, one_arc, {2, 0}, opts).found);
}

TEST_CASE("free embeddings on fixed digraphs") {
    auto opts = audit_opts();
    const PatternDigraph triangle{3, {{0, 1}, {1, 2}, {2, 0}}};
    const PatternDigraph digon{2, {{0, 1}, {1, 0}}};
    const PatternDigraph loop{1, {{0, 0}}};
    const PatternDigraph dot{1, {}};

    const Digraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    auto spread = find_subdivision(c6, triangle, opts);
    REQUIRE(spread.found);
    CHECK(spread.anchors == std::vector<int>{0, 1, 2});
    CHECK(spread.edge_paths == Paths{{0, 1}, {1, 2}, {2, 3, 4, 5, 0}});

    const Digraph back(3, {{0, 1}, {1, 2}, {2, 1}});
    auto nested = find_subdivision(back, digon, opts);
    REQUIRE(nested.found);
    CHECK(nested.anchors == std::vector<int>{1, 2});
    CHECK(nested.edge_paths == Paths{{1, 2}, {2, 1}});
    CHECK_FALSE(find_subdivision(back, triangle, opts).found);

    const Digraph dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK_FALSE(find_subdivision(dag, digon, opts).found);

    const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
    auto circled = find_subdivision(c3, loop, opts);
    REQUIRE(circled.found);
    CHECK(circled.anchors == std::vector<int>{0});
    CHECK(circled.edge_paths == Paths{{0, 1, 2, 0}});

    const Digraph single(1, {});
    auto trivial = find_subdivision(single, dot, opts);
    REQUIRE(trivial.found);
    CHECK(trivial.anchors == std::vector<int>{0});
    CHECK(trivial.edge_paths.empty());
    CHECK_FALSE(find_subdivision(single, triangle, opts).found);
}

TEST_CASE("embedding checker rejects malformed witnesses") {
    const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
    const PatternDigraph one_arc{2, {{0, 1}}};

    CHECK(is_valid_subdivision(c3, one_arc, {0, 2}, {{0, 1, 2}}));
    CHECK_FALSE(is_valid_subdivision(c3, one_arc, {0}, {{0, 1, 2}}));
    CHECK_FALSE(is_valid_subdivision(c3, one_arc, {0, 0}, {{0, 1, 2}}));
    CHECK_FALSE(is_valid_subdivision(c3, one_arc, {0, 3}, {{0, 1, 2}}));
    CHECK_FALSE(is_valid_subdivision(c3, one_arc, {0, 2}, {{0, 2}}));
    CHECK_FALSE(is_valid_subdivision(c3, one_arc, {0, 2}, {}));

    const Digraph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const PatternDigraph two_arcs{3, {{0, 1}, {1, 2}}};
    CHECK(is_valid_subdivision(c4, two_arcs, {0, 2, 3}, {{0, 1, 2}, {2, 3}}));

    const PatternDigraph theta{2, {{0, 1}, {0, 1}}};
    const Digraph twin(4, {{0, 1}, {0, 2}, {2, 1}, {0, 3}, {3, 1}});
    CHECK(is_valid_subdivision(twin, theta, {0, 1}, {{0, 2, 1}, {0, 3, 1}}));
    // both length-2 walks crossing the same interior vertex collide
    CHECK_FALSE(is_valid_subdivision(twin, theta, {0, 1}, {{0, 2, 1}, {0, 2, 1}}));

    // an isolated pattern vertex reserves its image entirely, so no walk
    // may pass through it
    const PatternDigraph theta_plus{3, {{0, 1}, {0, 1}}};
    CHECK(is_valid_subdivision(twin, theta_plus, {0, 1, 2}, {{0, 1}, {0, 3, 1}}));
    CHECK_FALSE(is_valid_subdivision(twin, theta_plus, {0, 1, 2}, {{0, 2, 1}, {0, 3, 1}}));
}

TEST_CASE("embedding searches match exhaustive search on random digraphs") {
    int found_free = 0;
    int found_rooted = 0;
    for (int iter = 0; iter < 250; ++iter) {
        Rng rng(64000 + iter);
        const int n = 1 + rng.next_below(6);
        const Digraph d = gen_uniform(n, 0.15 + 0.1 * (iter % 7), 9300 + iter);
        const int pn = 1 + rng.next_below(std::min(n, 3));
        PatternDigraph h;
        h.n = pn;
        const int arcs = rng.next_below(4);
        for (int a = 0; a < arcs; ++a) h.edges.push_back({rng.next_below(pn), rng.next_below(pn)});

        INFO("iter " << iter);
        auto free = find_subdivision(d, h, audit_opts());
        CHECK(free.found == brute_has_subdivision(d, pn, h.edges));
        if (free.found) {
            ++found_free;
            CHECK(is_valid_subdivision(d, h, free.anchors, free.edge_paths));
        }

        std::vector<int> anchors;
        std::vector<int> pool(n);
        for (int v = 0; v < n; ++v) pool[v] = v;
        for (int i = 0; i < pn; ++i) {
            const int k = rng.next_below(static_cast<int>(pool.size()));
            anchors.push_back(pool[k]);
            pool.erase(pool.begin() + k);
        }
        auto rooted = find_rooted_subdivision(d, h, anchors, audit_opts());
        std::vector<std::pair<int, int>> host_pairs;
        for (auto [u, v] : h.edges) host_pairs.push_back({anchors[u], anchors[v]});
        CHECK(rooted.found == brute_has_rooted_subdivision(d, host_pairs, anchors));
        if (rooted.found) {
            ++found_rooted;
            CHECK(is_valid_subdivision(d, h, anchors, rooted.edge_paths));
        }
    }
    CHECK(found_free > 100);
    CHECK(found_rooted > 60);
}

TEST_CASE("pattern arc order does not change the embedding outcome") {
    for (int iter = 0; iter < 40; ++iter) {
        Rng rng(77000 + iter);
        const int n = 2 + rng.next_below(5);
        const Digraph d = gen_uniform(n, 0.35, 5100 + iter);
        const int pn = 1 + rng.next_below(std::min(n, 3));
        PatternDigraph h;
        h.n = pn;
        const int arcs = 1 + rng.next_below(3);
        for (int a = 0; a < arcs; ++a) h.edges.push_back({rng.next_below(pn), rng.next_below(pn)});
        PatternDigraph rotated = h;
        std::rotate(rotated.edges.begin(), rotated.edges.begin() + 1, rotated.edges.end());

        INFO("iter " << iter);
        auto a = find_subdivision(d, h, audit_opts());
        auto b = find_subdivision(d, rotated, audit_opts());
        CHECK(a.found == b.found);
        if (a.found) {
            CHECK(a.anchors == b.anchors);
            auto pa = a.edge_paths;
            auto pb = b.edge_paths;
            std::sort(pa.begin(), pa.end());
            std::sort(pb.begin(), pb.end());
            CHECK(pa == pb);
        }
    }
}

TEST_CASE("embedding validation and guard limits are reported") {
    const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
    const PatternDigraph one_arc{2, {{0, 1}}};

    CHECK_THROWS_WITH(find_rooted_subdivision(c3, one_arc, {0}, {}),
                      "subdivision: one anchor per pattern vertex required");
    CHECK_THROWS_WITH(find_rooted_subdivision(c3, one_arc, {0, 0}, {}),
                      "subdivision: anchors must be distinct");
    CHECK_THROWS_WITH(find_rooted_subdivision(c3, one_arc, {0, 3}, {}),
                      "subdivision: anchor out of range");
    CHECK_THROWS_WITH(find_subdivision(c3, PatternDigraph{0, {}}),
                      "subdivision: pattern needs a vertex");
    CHECK_THROWS_WITH(find_subdivision(c3, PatternDigraph{2, {{0, 2}}}),
                      "subdivision: pattern arc out of range");

    PatternDigraph fat{2, {}};
    for (int i = 0; i < 9; ++i) fat.edges.push_back({0, 1});
    CHECK_THROWS_WITH(find_subdivision(c3, fat), "subdivision: at most 8 pattern arcs supported");

    SolveOptions tight;
    tight.max_quotient = 2;
    try {
        find_rooted_subdivision(c3, one_arc, {0, 1}, tight);
        FAIL("guard did not trigger");
    } catch (const quotient_limit_error& e) {
        CHECK(e.quotient_size == 3);
        CHECK(e.guard == 2);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("disjoint_paths"));
    }
}

TEST_CASE("embedding searches are deterministic and accept a prebuilt tree") {
    const Digraph d = gen_bounded(18, 4, 4242);
    const auto tree = decomposition_tree(d);
    const PatternDigraph digon{2, {{0, 1}, {1, 0}}};

    auto from_tree = find_subdivision(tree, digon, audit_opts());
    auto from_graph = find_subdivision(d, digon, audit_opts());
    auto again = find_subdivision(d, digon, audit_opts());
    CHECK(from_tree.found == from_graph.found);
    CHECK(from_tree.anchors == from_graph.anchors);
    CHECK(from_tree.edge_paths == from_graph.edge_paths);
    CHECK(from_graph.anchors == again.anchors);
    CHECK(from_graph.edge_paths == again.edge_paths);
    if (from_graph.found)
        CHECK(is_valid_subdivision(d, digon, from_graph.anchors, from_graph.edge_paths));
}
