// Acceptance gate: six checks, one pass/fail line each. Exit code is the
// number of failed checks. Limits (counts, time budgets, memory cap) are
// pinned as constants next to each check.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "modsolve/coloring.hpp"
#include "modsolve/digraph.hpp"
#include "modsolve/domination.hpp"
#include "modsolve/feedback.hpp"
#include "modsolve/generator.hpp"
#include "modsolve/hamiltonian.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/oracles.hpp"
#include "modsolve/paths.hpp"
#include "modsolve/rng.hpp"
#include "modsolve/widths.hpp"

namespace {

using namespace modsolve;
using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

// ---- shared corpus for the oracle-equivalence and witness checks --------------------

struct Instance {
    Digraph d{1, {}};
    std::vector<long long> weights;
    std::vector<long long> demands;
    std::vector<long long> caps;
    std::vector<std::pair<int, int>> pairs;
};

constexpr int corpus_size = 500;

Instance make_instance(int iter) {
    Rng rng(910000u + static_cast<std::uint64_t>(iter));
    const int n = 1 + rng.next_below(8);
    Instance ins;
    if (iter % 2 == 0)
        ins.d = gen_uniform(n, 0.1 + 0.1 * (iter % 8), 43000u + static_cast<std::uint64_t>(iter));
    else
        ins.d = gen_bounded(n, 2 + iter % 3, 47000u + static_cast<std::uint64_t>(iter));
    const int dn = ins.d.num_vertices();
    ins.weights.resize(dn);
    for (auto& w : ins.weights) w = 1 + rng.next_below(3);
    ins.demands.assign(dn, 1);
    if (dn >= 2 && rng.next_below(2)) ins.demands[rng.next_below(dn)] = 2;
    ins.caps.assign(dn, 1);
    const int slack = std::min(4, 12 - dn);
    for (int e = 0; e < slack; ++e)
        if (rng.next_below(2)) ++ins.caps[rng.next_below(dn)];
    const int r = rng.next_below(3);
    for (int i = 0; i < r; ++i) ins.pairs.emplace_back(rng.next_below(dn), rng.next_below(dn));
    return ins;
}

// ---- check 1: solver answers equal brute-force answers ------------------------------

Outcome oracle_equivalence() {
    constexpr double limit_s = 300.0;
    const auto t0 = Clock::now();
    for (int iter = 0; iter < corpus_size; ++iter) {
        const Instance ins = make_instance(iter);
        const auto fail = [&](const char* what) {
            return Outcome{false, "instance " + std::to_string(iter) + ": " + what +
                                      " disagrees with its oracle"};
        };
        auto tree = decomposition_tree(ins.d);
        if (modular_width(tree) != brute_modular_width(ins.d)) return fail("dmw");
        if (solve_feedback_vertex_set(tree, ins.weights).weight !=
            brute_feedback_vertex_set(ins.d, ins.weights).weight)
            return fail("fvs");
        if (solve_dominating_set(tree, ins.weights).weight !=
            brute_dominating_set(ins.d, ins.weights).weight)
            return fail("domset");
        if (solve_coloring(tree, ins.demands).colors != brute_coloring(ins.d, ins.demands))
            return fail("color");
        if (solve_path_partition(tree).count != brute_path_number(ins.d)) return fail("ham");
        auto routed = solve_disjoint_paths(tree, ins.pairs, ins.caps);
        auto routed_ref = brute_disjoint_paths(ins.d, ins.pairs, ins.caps);
        if (routed.feasible != routed_ref.feasible ||
            (routed.feasible && routed.total_length != routed_ref.total))
            return fail("paths");
        if (directed_pathwidth(tree).width != brute_dpw(ins.d)) return fail("dpw");
        if (cycle_rank(tree).rank != brute_cycle_rank(ins.d)) return fail("cyclerank");
    }
    const double secs = elapsed_s(t0);
    if (secs >= limit_s)
        return {false, "corpus took " + fmt("%.1f", secs) + " s (limit 300 s)"};
    return {true, "8 problems agree with oracles on " + std::to_string(corpus_size) +
                      " digraphs (" + fmt("%.1f", secs) + " s)"};
}

// ---- check 2: every emitted witness passes the verify subcommand --------------------

int run_cmd(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) return 127;
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string values_text(const std::vector<long long>& vals) {
    std::ostringstream ss;
    for (std::size_t v = 0; v < vals.size(); ++v) ss << v << " " << vals[v] << "\n";
    return ss.str();
}

Outcome witness_validity() {
    const std::string cli = MODSOLVE_CLI_PATH;
    const auto dir = std::filesystem::temp_directory_path() / "modsolve_acceptance";
    std::filesystem::create_directories(dir);
    const std::string graph = (dir / "graph.txt").string();
    const std::string weights = (dir / "weights.txt").string();
    const std::string demands = (dir / "demands.txt").string();
    const std::string pairs = (dir / "pairs.txt").string();
    const std::string caps = (dir / "caps.txt").string();
    const std::string witness = (dir / "witness.json").string();

    struct Step {
        const char* problem;
        std::string flags;
        bool may_report_absence;
    };
    const auto t0 = Clock::now();
    long long checked = 0;
    for (int iter = 0; iter < corpus_size; ++iter) {
        const Instance ins = make_instance(iter);
        write_file(graph, serialize_digraph(ins.d));
        write_file(weights, values_text(ins.weights));
        write_file(demands, values_text(ins.demands));
        write_file(caps, values_text(ins.caps));
        std::ostringstream ps;
        for (auto [s, t] : ins.pairs) ps << s << " " << t << "\n";
        write_file(pairs, ps.str());

        const std::vector<Step> steps = {
            {"fvs", " --weights " + weights, false},
            {"domset", " --weights " + weights, false},
            {"color", " --demands " + demands, false},
            {"ham", "", false},
            {"paths", " --pairs " + pairs + " --capacities " + caps, true},
            {"dpw", "", false},
            {"cyclerank", "", false},
        };
        for (const auto& step : steps) {
            const std::string where =
                "instance " + std::to_string(iter) + " " + step.problem;
            const int solve_rc = run_cmd(cli + " " + step.problem + " " + graph + step.flags +
                                         " > " + witness);
            if (solve_rc != 0 && !(step.may_report_absence && solve_rc == 1))
                return {false, where + ": solver exit " + std::to_string(solve_rc)};
            const int verify_rc = run_cmd(cli + " verify " + step.problem + " " + graph + " " +
                                          witness + step.flags + " > /dev/null");
            if (verify_rc != 0)
                return {false, where + ": verify exit " + std::to_string(verify_rc)};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " witnesses accepted by verify (" +
                      fmt("%.1f", elapsed_s(t0)) + " s)"};
}

// ---- check 3: combination identities re-checked at every recursion node -------------

Outcome audit_identities() {
    constexpr int instances = 200;
    SolveOptions audit;
    audit.audit = true;
    for (int iter = 0; iter < instances; ++iter) {
        Rng rng(930000u + static_cast<std::uint64_t>(iter));
        Digraph d(1, {});
        const auto seed = 51000u + static_cast<std::uint64_t>(iter);
        switch (iter % 3) {
            case 0: d = gen_bounded(5 + rng.next_below(16), 2 + rng.next_below(5), seed); break;
            case 1: d = gen_cograph(1 + rng.next_below(20), seed); break;
            default: d = gen_uniform(1 + rng.next_below(9), 0.1 + 0.1 * (iter % 8), seed); break;
        }
        const int dn = d.num_vertices();
        std::vector<long long> w(dn);
        for (auto& x : w) x = 1 + rng.next_below(3);
        std::vector<long long> dem(dn, 1);
        if (dn >= 2) dem[rng.next_below(dn)] = 2;
        try {
            auto tree = decomposition_tree(d);
            solve_feedback_vertex_set(tree, w, audit);
            solve_dominating_set(tree, w, audit);
            solve_coloring(tree, dem, audit);
            directed_pathwidth(tree, audit);
            cycle_rank(tree, audit);
        } catch (const std::exception& e) {
            return {false, "instance " + std::to_string(iter) + ": " + e.what()};
        }
    }
    return {true, "5 solver identities re-checked per node on " + std::to_string(instances) +
                      " instances"};
}

// ---- check 4: structural facts about the decomposition ------------------------------

Outcome structural_facts() {
    const Digraph c3(3, {{0, 1}, {1, 2}, {2, 0}});
    if (modular_width(c3) != 3) return {false, "C3 width is not 3"};

    for (int i = 0; i < 100; ++i) {
        Rng rng(940000u + static_cast<std::uint64_t>(i));
        const int n = 1 + rng.next_below(30);
        Digraph d = gen_cograph(n, 61000u + static_cast<std::uint64_t>(i));
        auto tree = decomposition_tree(d);
        if (modular_width(tree) > 2 || !is_directed_cograph(d))
            return {false, "cograph " + std::to_string(i) + " exceeds width 2"};
        if (tree.nodes.size() > 2 * static_cast<std::size_t>(d.num_vertices()) - 1)
            return {false, "cograph " + std::to_string(i) + " tree has too many nodes"};
    }

    for (int i = 0; i < 500; ++i) {
        Rng rng(945000u + static_cast<std::uint64_t>(i));
        const auto seed = 67000u + static_cast<std::uint64_t>(i);
        Digraph d = (i % 2 == 0)
                        ? gen_uniform(1 + rng.next_below(14), 0.1 + 0.1 * (i % 8), seed)
                        : gen_bounded(1 + rng.next_below(30), 2 + rng.next_below(4), seed);
        auto tree = decomposition_tree(d);
        if (tree.nodes.size() > 2 * static_cast<std::size_t>(d.num_vertices()) - 1)
            return {false, "pair " + std::to_string(i) + ": tree has too many nodes"};
        std::vector<int> xs;
        for (int v = 0; v < d.num_vertices(); ++v)
            if (rng.next_below(2)) xs.push_back(v);
        if (xs.empty()) xs.push_back(rng.next_below(d.num_vertices()));
        if (modular_width(induced_subgraph(d, xs)) > modular_width(tree))
            return {false, "pair " + std::to_string(i) + ": induced subgraph is wider"};
    }
    return {true, "C3 width 3; 100 co-graphs within width 2; monotone on 500 pairs; "
                  "trees within 2n-1 nodes"};
}

// ---- check 5: scaling smoke test ----------------------------------------------------

long long vm_peak_kb() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmPeak:", 0) == 0) {
            std::istringstream ss(line.substr(7));
            long long kb = -1;
            ss >> kb;
            return kb;
        }
    }
    return -1;
}

Outcome scaling_smoke() {
    constexpr double solver_limit_s = 10.0;
    constexpr double paths_limit_s = 30.0;
    constexpr double control_limit_s = 300.0;
    constexpr long long memory_limit_kb = 1024 * 1024;

    const Digraph big = gen_bounded(200, 4, 777);
    std::vector<long long> unit(big.num_vertices(), 1);
    std::string times;
    const auto timed = [&](const char* name, double limit, auto&& fn) {
        const auto t0 = Clock::now();
        fn();
        const double secs = elapsed_s(t0);
        times += std::string(" ") + name + "=" + fmt("%.1f", secs);
        if (secs >= limit)
            throw std::runtime_error(std::string(name) + " took " + fmt("%.1f", secs) +
                                     " s (limit " + fmt("%.0f", limit) + " s)");
    };
    try {
        int width = 0;
        timed("dmw", solver_limit_s, [&] { width = modular_width(big); });
        if (width > 4) return {false, "bounded generator exceeded width 4"};
        timed("fvs", solver_limit_s, [&] { solve_feedback_vertex_set(big, unit); });
        timed("domset", solver_limit_s, [&] { solve_dominating_set(big, unit); });
        timed("color", solver_limit_s, [&] { solve_coloring(big, unit); });
        timed("ham", solver_limit_s, [&] { solve_path_partition(big); });
        timed("dpw", solver_limit_s, [&] { directed_pathwidth(big); });
        timed("cyclerank", solver_limit_s, [&] { cycle_rank(big); });
        Rng rng(801);
        std::vector<int> terminals;
        while (terminals.size() < 6) {
            const int v = rng.next_below(big.num_vertices());
            bool dup = false;
            for (int u : terminals) dup = dup || u == v;
            if (!dup) terminals.push_back(v);
        }
        const std::vector<std::pair<int, int>> pairs = {{terminals[0], terminals[1]},
                                                        {terminals[2], terminals[3]},
                                                        {terminals[4], terminals[5]}};
        timed("paths", paths_limit_s, [&] { solve_disjoint_paths(big, pairs, unit); });

        const Digraph control = gen_uniform(40, 0.3, 555);
        timed("control_dmw", control_limit_s, [&] {
            auto tree = decomposition_tree(control);
            if (modular_width(tree) < 1 || modular_width(tree) > 40)
                throw std::runtime_error("control width out of range");
        });
        std::vector<long long> cw(control.num_vertices(), 1);
        int guarded = 0;
        timed("control_fvs", control_limit_s, [&] {
            try {
                solve_feedback_vertex_set(control, cw);
            } catch (const quotient_limit_error&) {
                ++guarded;
            }
        });
        timed("control_domset", control_limit_s, [&] {
            try {
                solve_dominating_set(control, cw);
            } catch (const quotient_limit_error&) {
                ++guarded;
            }
        });
        times += " guard_exits=" + std::to_string(guarded);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    const long long peak = vm_peak_kb();
    if (peak < 0) return {false, "could not read peak memory"};
    if (peak >= memory_limit_kb)
        return {false, "peak memory " + std::to_string(peak) + " kB (limit 1 GB)"};
    return {true, "n=200 within limits; peak " + std::to_string(peak) + " kB;" + times};
}

// ---- check 6: integer program solver vs grid enumeration ----------------------------

bool ilp_assignment_ok(const IlpProblem& p, const IlpSolution& sol) {
    if (sol.assignment.size() != p.bounds.size()) return false;
    long long value = 0;
    for (std::size_t i = 0; i < p.bounds.size(); ++i) {
        const long long x = sol.assignment[i];
        if (x < p.bounds[i].first || x > p.bounds[i].second) return false;
        value += p.objective[i] * x;
    }
    if (value != sol.value) return false;
    for (const auto& row : p.rows) {
        long long lhs = 0;
        for (auto [var, coeff] : row.terms) lhs += coeff * sol.assignment[var];
        if (row.sense == RowSense::le && lhs > row.rhs) return false;
        if (row.sense == RowSense::ge && lhs < row.rhs) return false;
        if (row.sense == RowSense::eq && lhs != row.rhs) return false;
    }
    return true;
}

Outcome ilp_against_grid() {
    constexpr int instances = 1000;
    for (int iter = 0; iter < instances; ++iter) {
        Rng rng(960000u + static_cast<std::uint64_t>(iter));
        IlpProblem p;
        const int nv = 1 + rng.next_below(4);
        for (int i = 0; i < nv; ++i) {
            const long long lo = rng.next_below(6);
            const long long hi = lo + rng.next_below(static_cast<int>(16 - lo));
            p.bounds.emplace_back(lo, hi);
            p.objective.push_back(static_cast<long long>(rng.next_below(11)) - 5);
        }
        const int m = rng.next_below(7);
        for (int j = 0; j < m; ++j) {
            IlpRow row;
            for (int i = 0; i < nv; ++i) {
                if (!rng.next_below(2)) continue;
                long long coeff = 1 + rng.next_below(3);
                if (rng.next_below(2)) coeff = -coeff;
                row.terms.emplace_back(i, coeff);
            }
            if (row.terms.empty()) row.terms.emplace_back(rng.next_below(nv), 1);
            const int sense = rng.next_below(3);
            row.sense = sense == 0 ? RowSense::le : (sense == 1 ? RowSense::ge : RowSense::eq);
            row.rhs = static_cast<long long>(rng.next_below(31)) - 10;
            p.rows.push_back(std::move(row));
        }
        const auto got = solve_ilp(p);
        const auto want = brute_ilp(p);
        const std::string where = "instance " + std::to_string(iter);
        if (got.has_value() != want.has_value())
            return {false, where + ": feasibility disagrees with grid enumeration"};
        if (got) {
            if (got->value != want->value)
                return {false, where + ": optimum " + std::to_string(got->value) + " vs grid " +
                                   std::to_string(want->value)};
            if (!ilp_assignment_ok(p, *got))
                return {false, where + ": reported assignment violates the instance"};
        }
    }
    return {true, "optimum and feasibility match grid enumeration on " +
                      std::to_string(instances) + " programs"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria = {
        {"oracle equivalence", oracle_equivalence}, {"witness validity", witness_validity},
        {"combination identities", audit_identities}, {"structural facts", structural_facts},
        {"scaling smoke", scaling_smoke}, {"ilp vs grid", ilp_against_grid},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].run();
        } catch (const std::exception& e) {
            out = {false, std::string("unexpected error: ") + e.what()};
        }
        failures += out.pass ? 0 : 1;
        std::printf("criterion %zu (%s): %s - %s\n", i + 1, criteria[i].name,
                    out.pass ? "PASS" : "FAIL", out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
