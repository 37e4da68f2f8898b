// Routes terminal pairs through a generated low-width digraph and re-checks
// the returned walks with the independent feasibility test.

#include <cstdio>

#include "modsolve/generator.hpp"
#include "modsolve/paths.hpp"

int main() {
    using namespace modsolve;

    Digraph d = gen_bounded(40, 4, 2024);
    std::vector<long long> capacity(d.num_vertices(), 1);
    std::vector<std::pair<int, int>> pairs = {{0, 39}, {5, 17}};

    auto result = solve_disjoint_paths(d, pairs, capacity);
    if (!result.feasible) {
        std::printf("no vertex-disjoint routing exists for these pairs\n");
        return 0;
    }
    std::printf("total routing size: %lld\n", result.total_length);
    for (std::size_t i = 0; i < result.walks.size(); ++i) {
        std::printf("pair %zu (%d -> %d):", i, pairs[i].first, pairs[i].second);
        for (int v : result.walks[i]) std::printf(" %d", v);
        std::printf("\n");
    }
    std::printf("independent check: %s\n",
                is_valid_path_collection(d, pairs, capacity, result.walks) ? "ok" : "violated");
    return 0;
}
