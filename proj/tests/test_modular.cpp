#include <catch2/catch_amalgamated.hpp>

#include "modsolve/generator.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/oracles.hpp"

using namespace modsolve;

namespace {

Digraph bidirected_k3() { return Digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}}); }

// three-part linear arrangement whose first part {0,1,2} is itself inseparable
Digraph layered_example() {
    return Digraph(5, {{0, 2}, {2, 1}, {0, 3}, {1, 3}, {2, 3}, {3, 4}, {0, 4}, {1, 4}, {2, 4}});
}

void check_tree_shape(const Digraph& d, const DecompositionTree& t) {
    const int n = d.num_vertices();
    REQUIRE(static_cast<int>(t.nodes.size()) <= 2 * n - 1 + (n == 1 ? 1 : 0));
    int leaves = 0;
    for (const auto& node : t.nodes) {
        REQUIRE(node.graph.num_vertices() == static_cast<int>(node.vertices.size()));
        REQUIRE(std::is_sorted(node.vertices.begin(), node.vertices.end()));
        if (node.kind == ModuleKind::leaf) {
            ++leaves;
            REQUIRE(node.children.empty());
            REQUIRE(node.vertices.size() == 1);
            continue;
        }
        REQUIRE(node.children.size() >= 2);
        REQUIRE(node.quotient.has_value());
        REQUIRE(node.quotient->num_vertices() == static_cast<int>(node.children.size()));
        if (node.kind != ModuleKind::prime) REQUIRE(node.children.size() == 2);
        // children partition the node and each block is a module of the node's graph
        std::vector<int> seen;
        for (size_t ci = 0; ci < node.children.size(); ++ci) {
            const auto& child = t.nodes[node.children[ci]];
            std::vector<int> block_local;
            for (int orig : child.vertices) {
                auto it = std::lower_bound(node.vertices.begin(), node.vertices.end(), orig);
                REQUIRE(it != node.vertices.end());
                REQUIRE(*it == orig);
                int local = static_cast<int>(it - node.vertices.begin());
                REQUIRE(node.block_of[local] == static_cast<int>(ci));
                block_local.push_back(local);
                seen.push_back(local);
            }
            REQUIRE(is_module(node.graph, block_local));
        }
        std::sort(seen.begin(), seen.end());
        REQUIRE(static_cast<int>(seen.size()) == node.graph.num_vertices());
    }
    REQUIRE(leaves == n);
    REQUIRE(t.nodes[t.root].vertices.size() == static_cast<size_t>(n));
}

}  // namespace

TEST_CASE("is_module basics") {
    Digraph d(4, {{0, 1}, {0, 2}, {3, 1}, {3, 2}, {1, 2}});
    CHECK(is_module(d, {1, 2}));
    CHECK(is_module(d, {0, 3}));
    CHECK_FALSE(is_module(d, {0, 1}));
    CHECK(is_module(d, {0}));
    CHECK(is_module(d, {0, 1, 2, 3}));
    CHECK_FALSE(is_module(d, {}));
    CHECK_FALSE(is_module(d, {1, 1}));
}

TEST_CASE("canonical partitions by kind") {
    SECTION("parallel splits off the component with vertex 0") {
        Digraph d(4, {{0, 1}, {1, 0}, {2, 3}});
        auto p = nontrivial_modular_partition(d);
        CHECK(p.kind == ModuleKind::parallel);
        REQUIRE(p.blocks.size() == 2);
        CHECK(p.blocks[0] == std::vector<int>{0, 1});
        CHECK(p.blocks[1] == std::vector<int>{2, 3});
    }
    SECTION("series on the bidirected triangle") {
        auto p = nontrivial_modular_partition(bidirected_k3());
        CHECK(p.kind == ModuleKind::series);
        REQUIRE(p.blocks.size() == 2);
        CHECK(p.blocks[0] == std::vector<int>{0});
        CHECK(p.blocks[1] == std::vector<int>{1, 2});
    }
    SECTION("order needs the merge fixpoint") {
        auto p = nontrivial_modular_partition(layered_example());
        CHECK(p.kind == ModuleKind::order);
        REQUIRE(p.blocks.size() == 2);
        CHECK(p.blocks[0] == std::vector<int>{0, 1, 2});
        CHECK(p.blocks[1] == std::vector<int>{3, 4});
    }
    SECTION("two-vertex digraphs") {
        CHECK(nontrivial_modular_partition(Digraph(2, {})).kind == ModuleKind::parallel);
        CHECK(nontrivial_modular_partition(Digraph(2, {{0, 1}, {1, 0}})).kind == ModuleKind::series);
        auto p = nontrivial_modular_partition(Digraph(2, {{1, 0}}));
        CHECK(p.kind == ModuleKind::order);
        CHECK(p.blocks[0] == std::vector<int>{1});
    }
    SECTION("directed triangle is prime with singleton blocks") {
        Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
        auto p = nontrivial_modular_partition(c3);
        CHECK(p.kind == ModuleKind::prime);
        CHECK(p.blocks.size() == 3);
    }
    CHECK_THROWS_AS(nontrivial_modular_partition(Digraph(1, {})), std::invalid_argument);
}

TEST_CASE("module digraph validates and quotients") {
    Digraph d(4, {{0, 1}, {0, 2}, {3, 1}, {3, 2}, {1, 2}});
    auto q = module_digraph(d, {{0}, {1, 2}, {3}});
    CHECK(q.digraph.num_vertices() == 3);
    CHECK(q.digraph.edges() == std::vector<Edge>{{0, 1}, {2, 1}});
    CHECK(q.block_of == std::vector<int>{0, 1, 1, 2});
    CHECK_THROWS_AS(module_digraph(d, {{0, 1}, {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(module_digraph(d, {{0}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(module_digraph(d, {{0}, {0, 1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("modular width frozen examples") {
    CHECK(modular_width(Digraph(1, {})) == 1);
    CHECK(modular_width(Digraph(3, {{0, 1}, {1, 2}, {2, 0}})) == 3);
    CHECK(modular_width(bidirected_k3()) == 2);
    CHECK(modular_width(Digraph(4, {{0, 1}, {1, 2}, {2, 3}})) == 4);
    CHECK(modular_width(layered_example()) == 3);
    CHECK(is_directed_cograph(bidirected_k3()));
    CHECK_FALSE(is_directed_cograph(Digraph(3, {{0, 1}, {1, 2}, {2, 0}})));
}

TEST_CASE("decomposition tree structure on random digraphs") {
    for (int seed = 0; seed < 120; ++seed) {
        int n = 1 + static_cast<int>(seed % 8);
        double p = 0.15 + 0.1 * (seed % 7);
        auto d = gen_uniform(n, p, 9000 + seed);
        auto t = decomposition_tree(d);
        check_tree_shape(d, t);
    }
    for (int seed = 0; seed < 40; ++seed) {
        auto d = gen_cograph(2 + seed % 12, 500 + seed);
        check_tree_shape(d, decomposition_tree(d));
    }
}

TEST_CASE("modular width agrees with the brute-force reference") {
    for (int seed = 0; seed < 250; ++seed) {
        int n = 1 + static_cast<int>(seed % 8);
        double p = 0.1 + 0.11 * (seed % 8);
        auto d = gen_uniform(n, p, 31000 + seed);
        INFO("seed " << seed << " n " << n << "\n" << serialize_digraph(d));
        CHECK(modular_width(d) == brute_modular_width(d));
    }
}

TEST_CASE("generated co-graphs have width at most two") {
    for (int seed = 0; seed < 60; ++seed) {
        auto d = gen_cograph(1 + seed % 14, 777 + seed);
        CHECK(is_directed_cograph(d));
    }
}

TEST_CASE("bounded generator respects its width target") {
    for (int seed = 0; seed < 60; ++seed) {
        int omega = 2 + seed % 3;
        auto d = gen_bounded(2 + seed % 7, omega, 60 + seed);
        int w = modular_width(d);
        CHECK(w <= std::max(2, omega));
        CHECK(w == brute_modular_width(d));
    }
}

TEST_CASE("width is monotone under induced subgraphs") {
    Rng rng(424242);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(7));
        auto d = gen_uniform(n, 0.3, rng.next());
        int w = modular_width(d);
        std::vector<int> xs;
        for (int v = 0; v < n; ++v)
            if (rng.chance(1, 2)) xs.push_back(v);
        if (xs.empty()) continue;
        CHECK(modular_width(induced_subgraph(d, xs)) <= w);
    }
}
