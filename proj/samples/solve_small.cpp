// Minimal library walkthrough: build a digraph, inspect its decomposition,
// and run three of the solvers on it.

#include <cstdio>

#include "modsolve/coloring.hpp"
#include "modsolve/feedback.hpp"
#include "modsolve/hamiltonian.hpp"
#include "modsolve/modular.hpp"

int main() {
    using namespace modsolve;

    // Two directed triangles joined by all edges from the first to the second.
    Digraph d(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3},
                  {0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                  {2, 3}, {2, 4}, {2, 5}});

    auto tree = decomposition_tree(d);
    std::printf("vertices: %d\n", d.num_vertices());
    std::printf("directed modular width: %d\n", modular_width(tree));
    std::printf("decomposition nodes: %zu\n", tree.nodes.size());

    std::vector<long long> unit(d.num_vertices(), 1);
    auto fvs = solve_feedback_vertex_set(tree, unit);
    std::printf("feedback vertex set weight: %lld (", fvs.weight);
    for (int v : fvs.vertices) std::printf(" %d", v);
    std::printf(" )\n");

    auto coloring = solve_coloring(tree, unit);
    std::printf("colours needed: %lld\n", coloring.colors);

    auto partition = solve_path_partition(tree);
    std::printf("minimum path partition: %lld path(s)\n", partition.count);
    for (const auto& p : partition.paths) {
        std::printf(" ");
        for (int v : p) std::printf(" %d", v);
        std::printf("\n");
    }
    return 0;
}
