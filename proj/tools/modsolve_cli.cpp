// Command-line front end. One JSON object per run on stdout, diagnostics on
// stderr. Exit codes: 0 = solved/feasible, 1 = reported absence (no cycle, no
// routing, no embedding, invalid witness), 2 = any error. The gen subcommand
// is the one exception to JSON output: it prints the edge-list text format so
// generated instances feed straight back into the other subcommands.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "modsolve/coloring.hpp"
#include "modsolve/digraph.hpp"
#include "modsolve/domination.hpp"
#include "modsolve/feedback.hpp"
#include "modsolve/generator.hpp"
#include "modsolve/hamiltonian.hpp"
#include "modsolve/homeomorphism.hpp"
#include "modsolve/modular.hpp"
#include "modsolve/oracles.hpp"
#include "modsolve/paths.hpp"
#include "modsolve/widths.hpp"

namespace {

using json = nlohmann::json;
using namespace modsolve;

struct Opts {
    std::string graph = "-";
    std::string weights_file;
    std::string demands_file;
    std::string pairs_file;
    std::string caps_file;
    std::string pattern_file;
    std::string anchors;
    std::string witness_file;
    std::string problem;
    std::string kind;
    long long tau = -1;
    int n = 1;
    int omega = 3;
    int max_quotient = 0;
    double p = 0.3;
    std::uint64_t seed = 1;
    bool audit = false;
    bool all_sublists = false;
    bool json_out = true;
};

std::string read_text(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        ss << in.rdbuf();
    }
    return ss.str();
}

Digraph load_graph(const std::string& path) { return parse_digraph(read_text(path)); }

SolveOptions solve_opts(const Opts& o) {
    SolveOptions s;
    s.audit = o.audit;
    if (o.max_quotient > 0) s.max_quotient = o.max_quotient;
    return s;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

bool parse_ll(std::string_view t, long long& out) {
    const char* b = t.data();
    const char* e = b + t.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

// Calls fn(line_no, tokens) for every line that carries data; '#' starts a
// comment, blank lines are skipped (same conventions as the edge-list format).
template <class Fn>
void for_each_data_line(std::string_view text, Fn&& fn) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string_view line =
            text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (std::size_t h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        auto toks = detail::split_tokens(line);
        if (toks.empty()) continue;
        fn(line_no, toks);
    }
}

[[noreturn]] void file_fail(const char* what, int line, const std::string& msg) {
    throw std::invalid_argument(std::string(what) + " line " + std::to_string(line) + ": " + msg);
}

// Per-vertex value file: lines "v value"; unlisted vertices get `fallback`.
std::vector<long long> load_values(const std::string& path, int n, long long fallback,
                                   const char* what) {
    std::vector<long long> vals(static_cast<std::size_t>(n), fallback);
    if (path.empty()) return vals;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for_each_data_line(read_text(path), [&](int line, const auto& toks) {
        int v = 0;
        long long x = 0;
        if (toks.size() != 2 || !detail::parse_int(toks[0], v) || !parse_ll(toks[1], x))
            file_fail(what, line, "expected \"vertex value\"");
        if (v < 0 || v >= n) file_fail(what, line, "vertex out of range");
        if (seen[v]) file_fail(what, line, "duplicate vertex " + std::to_string(v));
        seen[v] = 1;
        vals[v] = x;
    });
    return vals;
}

std::vector<std::pair<int, int>> load_pairs(const std::string& path) {
    std::vector<std::pair<int, int>> pairs;
    for_each_data_line(read_text(path), [&](int line, const auto& toks) {
        int s = 0, t = 0;
        if (toks.size() != 2 || !detail::parse_int(toks[0], s) || !detail::parse_int(toks[1], t))
            file_fail("pairs", line, "expected \"source target\"");
        pairs.emplace_back(s, t);
    });
    return pairs;
}

std::vector<int> parse_anchor_list(const std::string& s) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        std::string_view tok(s.data() + start,
                             (comma == std::string::npos ? s.size() : comma) - start);
        auto parts = detail::split_tokens(tok);
        int v = 0;
        if (parts.size() != 1 || !detail::parse_int(parts[0], v))
            throw std::invalid_argument("anchors: expected a comma-separated integer list");
        out.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

long long sum_values(const std::vector<long long>& vals) {
    long long s = 0;
    for (long long v : vals) s += v;
    return s;
}

// tau is a declared budget on the total routing size; the solvers never need
// it (any feasible routing has W <= sum of capacities), so it is validated
// here and nowhere else.
void check_tau(const std::vector<long long>& caps, long long tau) {
    if (tau < 0) return;
    long long total = sum_values(caps);
    if (total > tau)
        throw std::invalid_argument("paths: total capacity " + std::to_string(total) +
                                    " exceeds tau " + std::to_string(tau));
}

json walks_json(const std::vector<std::vector<int>>& walks) {
    json j = json::array();
    for (const auto& w : walks) j.push_back(w);
    return j;
}

json color_lists_json(const std::vector<ColorList>& lists) {
    json j = json::array();
    for (const auto& l : lists) {
        json ranges = json::array();
        for (auto [a, b] : l) ranges.push_back(json::array({a, b}));
        j.push_back(std::move(ranges));
    }
    return j;
}

json forest_json(const EliminationForest& f) {
    auto rec = [&](auto&& self, int id) -> json {
        json c = json::array();
        for (int k : f.nodes[static_cast<std::size_t>(id)].children) c.push_back(self(self, k));
        return json{{"v", f.nodes[static_cast<std::size_t>(id)].vertex},
                    {"children", std::move(c)}};
    };
    json roots = json::array();
    for (int r : f.roots) roots.push_back(rec(rec, r));
    return roots;
}

// ---- solver subcommands -------------------------------------------------------------

int run_decompose(const Opts& o) {
    auto d = load_graph(o.graph);
    auto tree = decomposition_tree(d);
    json nodes = json::array();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        json children = json::array();
        for (int c : node.children) children.push_back(c);
        nodes.push_back(json{{"id", i},
                             {"kind", to_string(node.kind)},
                             {"vertices", node.vertices},
                             {"children", std::move(children)}});
    }
    emit(json{{"n", d.num_vertices()},
              {"dmw", modular_width(tree)},
              {"root", tree.root},
              {"nodes", std::move(nodes)}});
    return 0;
}

int run_dmw(const Opts& o) {
    emit(json{{"dmw", modular_width(load_graph(o.graph))}});
    return 0;
}

int run_fvs(const Opts& o) {
    auto d = load_graph(o.graph);
    auto w = load_values(o.weights_file, d.num_vertices(), 1, "weights");
    auto r = solve_feedback_vertex_set(d, w, solve_opts(o));
    emit(json{{"weight", r.weight}, {"vertices", r.vertices}});
    return 0;
}

int run_domset(const Opts& o) {
    auto d = load_graph(o.graph);
    auto w = load_values(o.weights_file, d.num_vertices(), 1, "weights");
    auto r = solve_dominating_set(d, w, solve_opts(o));
    emit(json{{"weight", r.weight}, {"vertices", r.vertices}});
    return 0;
}

int run_color(const Opts& o) {
    auto d = load_graph(o.graph);
    auto dem = load_values(o.demands_file, d.num_vertices(), 1, "demands");
    auto r = solve_coloring(d, dem, solve_opts(o));
    emit(json{{"k", r.colors}, {"lists", color_lists_json(r.lists)}});
    return 0;
}

int run_ham(const Opts& o) {
    auto d = load_graph(o.graph);
    auto r = solve_path_partition(d, solve_opts(o));
    emit(json{{"ham", r.count}, {"paths", walks_json(r.paths)}});
    return 0;
}

int run_hamcycle(const Opts& o) {
    auto d = load_graph(o.graph);
    auto cycle = solve_hamiltonian_cycle(d, solve_opts(o));
    if (!cycle) {
        emit(json{{"exists", false}});
        return 1;
    }
    emit(json{{"exists", true}, {"cycle", *cycle}});
    return 0;
}

int run_paths(const Opts& o) {
    auto d = load_graph(o.graph);
    if (o.pairs_file.empty()) throw std::invalid_argument("paths: --pairs file required");
    auto pairs = load_pairs(o.pairs_file);
    auto caps = load_values(o.caps_file, d.num_vertices(), 1, "capacities");
    check_tau(caps, o.tau);
    auto tree = decomposition_tree(d);
    auto sopts = solve_opts(o);
    if (!o.all_sublists) {
        auto r = solve_disjoint_paths(tree, pairs, caps, sopts);
        emit(json{{"feasible", r.feasible}, {"W", r.total_length}, {"walks", walks_json(r.walks)}});
        return r.feasible ? 0 : 1;
    }
    const int r = static_cast<int>(pairs.size());
    bool full_feasible = false;
    json table = json::array();
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        std::vector<long long> reduced = caps;
        std::vector<std::pair<int, int>> sub;
        std::vector<int> indices;
        for (int i = 0; i < r; ++i) {
            if (mask & (1u << i)) {
                indices.push_back(i);
                sub.push_back(pairs[static_cast<std::size_t>(i)]);
            } else {
                auto [s, t] = pairs[static_cast<std::size_t>(i)];
                if (s >= 0 && s < d.num_vertices()) --reduced[s];
                if (t >= 0 && t < d.num_vertices()) --reduced[t];
            }
        }
        bool negative = false;
        for (long long c : reduced) negative = negative || c < 0;
        json entry{{"pairs", indices}};
        if (negative) {
            entry["feasible"] = false;
        } else {
            auto sol = solve_disjoint_paths(tree, sub, reduced, sopts);
            entry["feasible"] = sol.feasible;
            if (sol.feasible) {
                entry["W"] = sol.total_length;
                entry["walks"] = walks_json(sol.walks);
            }
        }
        if (mask + 1 == (1u << r)) full_feasible = entry["feasible"].get<bool>();
        table.push_back(std::move(entry));
    }
    emit(json{{"table", std::move(table)}});
    return full_feasible ? 0 : 1;
}

int run_homeo(const Opts& o) {
    auto d = load_graph(o.graph);
    if (o.pattern_file.empty()) throw std::invalid_argument("homeo: --pattern file required");
    auto h = parse_pattern(read_text(o.pattern_file));
    SubdivisionResult r;
    if (o.anchors.empty())
        r = find_subdivision(d, h, solve_opts(o));
    else
        r = find_rooted_subdivision(d, h, parse_anchor_list(o.anchors), solve_opts(o));
    if (!r.found) {
        emit(json{{"found", false}});
        return 1;
    }
    emit(json{{"found", true}, {"anchors", r.anchors}, {"paths", walks_json(r.edge_paths)}});
    return 0;
}

int run_dpw(const Opts& o) {
    auto d = load_graph(o.graph);
    auto r = directed_pathwidth(d, solve_opts(o));
    emit(json{{"width", r.width}, {"bags", walks_json(r.bags)}});
    return 0;
}

int run_cyclerank(const Opts& o) {
    auto d = load_graph(o.graph);
    auto r = cycle_rank(d, solve_opts(o));
    emit(json{{"rank", r.rank}, {"ordering", r.ordering}, {"tree", forest_json(r.forest)}});
    return 0;
}

// ---- generation ---------------------------------------------------------------------

int run_gen(const Opts& o) {
    if (o.n < 1) throw std::invalid_argument("gen: n must be at least 1");
    Digraph d(1, {});
    if (o.kind == "cograph") {
        d = gen_cograph(o.n, o.seed);
    } else if (o.kind == "bounded_dmw") {
        if (o.omega < 2) throw std::invalid_argument("gen: omega must be at least 2");
        d = gen_bounded(o.n, o.omega, o.seed);
    } else if (o.kind == "uniform") {
        if (!(o.p >= 0.0 && o.p <= 1.0))
            throw std::invalid_argument("gen: edge probability must lie in [0,1]");
        d = gen_uniform(o.n, o.p, o.seed);
    } else {
        throw std::invalid_argument("gen: unknown kind " + o.kind);
    }
    std::cout << serialize_digraph(d);
    return 0;
}

// ---- brute-force oracles ------------------------------------------------------------

int run_oracle(const Opts& o) {
    auto d = load_graph(o.graph);
    const OracleBudget budget;
    if (o.problem == "dmw") {
        emit(json{{"dmw", brute_modular_width(d, budget)}});
    } else if (o.problem == "fvs") {
        auto w = load_values(o.weights_file, d.num_vertices(), 1, "weights");
        auto r = brute_feedback_vertex_set(d, w, budget);
        emit(json{{"weight", r.weight}, {"vertices", r.vertices}});
    } else if (o.problem == "domset") {
        auto w = load_values(o.weights_file, d.num_vertices(), 1, "weights");
        auto r = brute_dominating_set(d, w, budget);
        emit(json{{"weight", r.weight}, {"vertices", r.vertices}});
    } else if (o.problem == "color") {
        auto dem = load_values(o.demands_file, d.num_vertices(), 1, "demands");
        emit(json{{"k", brute_coloring(d, dem, budget)}});
    } else if (o.problem == "ham") {
        emit(json{{"ham", brute_path_number(d, budget)}});
    } else if (o.problem == "hamcycle") {
        bool exists = brute_has_hamiltonian_cycle(d, budget);
        emit(json{{"exists", exists}});
        return exists ? 0 : 1;
    } else if (o.problem == "paths") {
        if (o.pairs_file.empty()) throw std::invalid_argument("paths: --pairs file required");
        auto pairs = load_pairs(o.pairs_file);
        auto caps = load_values(o.caps_file, d.num_vertices(), 1, "capacities");
        check_tau(caps, o.tau);
        auto r = brute_disjoint_paths(d, pairs, caps, budget);
        emit(json{{"feasible", r.feasible}, {"W", r.total}});
        return r.feasible ? 0 : 1;
    } else if (o.problem == "homeo") {
        if (o.pattern_file.empty()) throw std::invalid_argument("homeo: --pattern file required");
        auto h = parse_pattern(read_text(o.pattern_file));
        bool found = false;
        if (o.anchors.empty()) {
            found = brute_has_subdivision(d, h.n, h.edges, budget);
        } else {
            auto anchors = parse_anchor_list(o.anchors);
            if (static_cast<int>(anchors.size()) != h.n)
                throw std::invalid_argument("subdivision: one anchor per pattern vertex required");
            std::vector<std::pair<int, int>> host_pairs;
            for (auto [u, v] : h.edges)
                host_pairs.emplace_back(anchors[static_cast<std::size_t>(u)],
                                        anchors[static_cast<std::size_t>(v)]);
            found = brute_has_rooted_subdivision(d, host_pairs, anchors, budget);
        }
        emit(json{{"found", found}});
        return found ? 0 : 1;
    } else if (o.problem == "dpw") {
        emit(json{{"width", brute_dpw(d, budget)}});
    } else if (o.problem == "cyclerank") {
        emit(json{{"rank", brute_cycle_rank(d, budget)}});
    } else {
        throw std::invalid_argument("oracle: unknown problem " + o.problem);
    }
    return 0;
}

// ---- witness verification -----------------------------------------------------------

const json& field(const json& w, const char* key) {
    auto it = w.find(key);
    if (it == w.end())
        throw std::invalid_argument(std::string("witness: missing field \"") + key + "\"");
    return *it;
}

long long int_field(const json& w, const char* key) {
    const json& f = field(w, key);
    if (!f.is_number_integer())
        throw std::invalid_argument(std::string("witness: field \"") + key +
                                    "\" must be an integer");
    return f.get<long long>();
}

bool bool_field(const json& w, const char* key) {
    const json& f = field(w, key);
    if (!f.is_boolean())
        throw std::invalid_argument(std::string("witness: field \"") + key +
                                    "\" must be a boolean");
    return f.get<bool>();
}

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array())
        throw std::invalid_argument(std::string("witness: ") + what +
                                    " must be an array of integers");
    std::vector<int> out;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw std::invalid_argument(std::string("witness: ") + what +
                                        " must be an array of integers");
        out.push_back(e.get<int>());
    }
    return out;
}

std::vector<std::vector<int>> int_list_list(const json& j, const char* what) {
    if (!j.is_array())
        throw std::invalid_argument(std::string("witness: ") + what + " must be an array");
    std::vector<std::vector<int>> out;
    for (const auto& e : j) out.push_back(int_list(e, what));
    return out;
}

std::vector<ColorList> color_lists_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("witness: lists must be an array");
    std::vector<ColorList> out;
    for (const auto& vertex_lists : j) {
        if (!vertex_lists.is_array())
            throw std::invalid_argument("witness: each colour list must be an array of ranges");
        ColorList l;
        for (const auto& range : vertex_lists) {
            if (!range.is_array() || range.size() != 2 || !range[0].is_number_integer() ||
                !range[1].is_number_integer())
                throw std::invalid_argument("witness: each colour range must be [lo, hi]");
            l.emplace_back(range[0].get<long long>(), range[1].get<long long>());
        }
        out.push_back(std::move(l));
    }
    return out;
}

bool in_range_distinct(const std::vector<int>& verts, int n) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : verts) {
        if (v < 0 || v >= n || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

bool weight_matches(const json& w, const char* key, const std::vector<int>& verts,
                    const std::vector<long long>& weights) {
    auto it = w.find(key);
    if (it == w.end()) return true;
    if (!it->is_number_integer())
        throw std::invalid_argument(std::string("witness: field \"") + key +
                                    "\" must be an integer");
    long long total = 0;
    for (int v : verts) total += weights[static_cast<std::size_t>(v)];
    return it->get<long long>() == total;
}

int run_verify(const Opts& o) {
    auto d = load_graph(o.graph);
    const int n = d.num_vertices();
    json w;
    try {
        w = json::parse(read_text(o.witness_file));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("witness: ") + e.what());
    }
    if (!w.is_object()) throw std::invalid_argument("witness: expected a JSON object");

    bool valid = false;
    if (o.problem == "fvs") {
        auto verts = int_list(field(w, "vertices"), "vertices");
        auto weights = load_values(o.weights_file, n, 1, "weights");
        if (in_range_distinct(verts, n) && weight_matches(w, "weight", verts, weights)) {
            std::vector<char> removed(static_cast<std::size_t>(n), 0);
            for (int v : verts) removed[v] = 1;
            std::vector<int> kept;
            for (int v = 0; v < n; ++v)
                if (!removed[v]) kept.push_back(v);
            valid = is_acyclic(induced_subgraph(d, kept));
        }
    } else if (o.problem == "domset") {
        auto verts = int_list(field(w, "vertices"), "vertices");
        auto weights = load_values(o.weights_file, n, 1, "weights");
        valid = in_range_distinct(verts, n) && weight_matches(w, "weight", verts, weights) &&
                is_dominating_set(d, verts);
    } else if (o.problem == "color") {
        auto dem = load_values(o.demands_file, n, 1, "demands");
        valid = is_valid_list_coloring(d, dem, int_field(w, "k"),
                                       color_lists_from_json(field(w, "lists")));
    } else if (o.problem == "ham") {
        auto paths = int_list_list(field(w, "paths"), "paths");
        valid = is_path_partition(d, paths) &&
                int_field(w, "ham") == static_cast<long long>(paths.size());
    } else if (o.problem == "hamcycle") {
        if (!bool_field(w, "exists")) {
            valid = true;
        } else {
            auto cycle = int_list(field(w, "cycle"), "cycle");
            valid = static_cast<int>(cycle.size()) == n && is_cycle_sequence(d, cycle);
        }
    } else if (o.problem == "paths") {
        if (o.pairs_file.empty()) throw std::invalid_argument("paths: --pairs file required");
        auto pairs = load_pairs(o.pairs_file);
        auto caps = load_values(o.caps_file, n, 1, "capacities");
        if (!bool_field(w, "feasible")) {
            valid = true;
        } else {
            auto walks = int_list_list(field(w, "walks"), "walks");
            long long total = 0;
            for (const auto& walk : walks) total += static_cast<long long>(walk.size());
            valid = is_valid_path_collection(d, pairs, caps, walks) &&
                    int_field(w, "W") == total;
        }
    } else if (o.problem == "homeo") {
        if (o.pattern_file.empty()) throw std::invalid_argument("homeo: --pattern file required");
        auto h = parse_pattern(read_text(o.pattern_file));
        if (!bool_field(w, "found")) {
            valid = true;
        } else {
            auto anchors = int_list(field(w, "anchors"), "anchors");
            auto paths = int_list_list(field(w, "paths"), "paths");
            valid = is_valid_subdivision(d, h, anchors, paths);
        }
    } else if (o.problem == "dpw") {
        auto bags = int_list_list(field(w, "bags"), "bags");
        long long widest = 0;
        for (const auto& bag : bags)
            widest = std::max(widest, static_cast<long long>(bag.size()));
        valid = validate_dpd(d, bags) && int_field(w, "width") == widest - 1;
    } else if (o.problem == "cyclerank") {
        auto ordering = int_list(field(w, "ordering"), "ordering");
        valid = static_cast<int>(ordering.size()) == n && in_range_distinct(ordering, n) &&
                rank_of_ordering(d, ordering).rank == int_field(w, "rank") + 1;
    } else {
        throw std::invalid_argument("verify: unknown problem " + o.problem);
    }
    emit(json{{"valid", valid}});
    return valid ? 0 : 1;
}

void add_graph_arg(CLI::App* cmd, Opts& o) {
    cmd->add_option("graph", o.graph, "graph file in edge-list format, or - for stdin");
}

void add_solver_flags(CLI::App* cmd, Opts& o) {
    cmd->add_option("--max-quotient", o.max_quotient,
                    "override the prime-quotient size guard (0 = solver default)");
    cmd->add_flag("--audit", o.audit, "re-check internal combination identities while solving");
    cmd->add_flag("--json", o.json_out, "JSON output (default, always on)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact digraph solvers driven by directed modular decomposition"};
    app.require_subcommand(1);
    Opts o;
    int rc = 0;

    auto* decompose = app.add_subcommand("decompose", "print the modular decomposition tree");
    add_graph_arg(decompose, o);
    add_solver_flags(decompose, o);
    decompose->callback([&] { rc = run_decompose(o); });

    auto* dmw = app.add_subcommand("dmw", "directed modular width");
    add_graph_arg(dmw, o);
    add_solver_flags(dmw, o);
    dmw->callback([&] { rc = run_dmw(o); });

    auto* fvs = app.add_subcommand("fvs", "minimum-weight directed feedback vertex set");
    add_graph_arg(fvs, o);
    fvs->add_option("--weights", o.weights_file, "vertex weight file, lines \"v w\" (default 1)");
    add_solver_flags(fvs, o);
    fvs->callback([&] { rc = run_fvs(o); });

    auto* domset = app.add_subcommand("domset", "minimum-weight dominating set");
    add_graph_arg(domset, o);
    domset->add_option("--weights", o.weights_file,
                       "vertex weight file, lines \"v w\" (default 1)");
    add_solver_flags(domset, o);
    domset->callback([&] { rc = run_domset(o); });

    auto* color = app.add_subcommand("color", "minimum colours for acyclic list colouring");
    add_graph_arg(color, o);
    color->add_option("--demands", o.demands_file,
                      "list-size demand file, lines \"v N\" (default 1)");
    add_solver_flags(color, o);
    color->callback([&] { rc = run_color(o); });

    auto* ham = app.add_subcommand("ham", "minimum path partition");
    add_graph_arg(ham, o);
    add_solver_flags(ham, o);
    ham->callback([&] { rc = run_ham(o); });

    auto* hamcycle = app.add_subcommand("hamcycle", "Hamiltonian cycle test with witness");
    add_graph_arg(hamcycle, o);
    add_solver_flags(hamcycle, o);
    hamcycle->callback([&] { rc = run_hamcycle(o); });

    auto* paths = app.add_subcommand("paths", "capacitated vertex-disjoint terminal routing");
    add_graph_arg(paths, o);
    paths->add_option("--pairs", o.pairs_file, "terminal pair file, lines \"s t\"");
    paths->add_option("--capacities", o.caps_file,
                      "vertex capacity file, lines \"v c\" (default 1)");
    paths->add_option("--tau", o.tau, "total routing size budget (default: capacity sum)");
    paths->add_flag("--all-sublists", o.all_sublists,
                    "solve every terminal sub-list under reserved capacities");
    add_solver_flags(paths, o);
    paths->callback([&] { rc = run_paths(o); });

    auto* homeo = app.add_subcommand("homeo", "directed subgraph homeomorphism");
    add_graph_arg(homeo, o);
    homeo->add_option("--pattern", o.pattern_file,
                      "pattern file: edge-list format, loops and repeats allowed");
    homeo->add_option("--anchors", o.anchors,
                      "fixed pattern-vertex images \"v1,v2,...\" (omit to search)");
    add_solver_flags(homeo, o);
    homeo->callback([&] { rc = run_homeo(o); });

    auto* dpw = app.add_subcommand("dpw", "directed path-width with decomposition");
    add_graph_arg(dpw, o);
    add_solver_flags(dpw, o);
    dpw->callback([&] { rc = run_dpw(o); });

    auto* cyclerank = app.add_subcommand("cyclerank", "cycle rank with elimination forest");
    add_graph_arg(cyclerank, o);
    add_solver_flags(cyclerank, o);
    cyclerank->callback([&] { rc = run_cyclerank(o); });

    auto* gen = app.add_subcommand("gen", "generate a reproducible random digraph");
    gen->add_option("--kind", o.kind, "cograph, bounded_dmw, or uniform")
        ->required()
        ->check(CLI::IsMember({"cograph", "bounded_dmw", "uniform"}));
    gen->add_option("--n", o.n, "vertex count")->required();
    gen->add_option("--omega", o.omega, "quotient size bound for bounded_dmw (default 3)");
    gen->add_option("--p", o.p, "edge probability for uniform (default 0.3)");
    gen->add_option("--seed", o.seed, "RNG seed (default 1)");
    gen->callback([&] { rc = run_gen(o); });

    auto* oracle = app.add_subcommand("oracle", "brute-force reference answers (small inputs)");
    oracle->add_option("problem", o.problem, "dmw, fvs, domset, color, ham, hamcycle, paths, homeo, dpw, or cyclerank")
        ->required()
        ->check(CLI::IsMember({"dmw", "fvs", "domset", "color", "ham", "hamcycle", "paths",
                               "homeo", "dpw", "cyclerank"}));
    add_graph_arg(oracle, o);
    oracle->add_option("--weights", o.weights_file, "vertex weight file (fvs, domset)");
    oracle->add_option("--demands", o.demands_file, "demand file (color)");
    oracle->add_option("--pairs", o.pairs_file, "terminal pair file (paths)");
    oracle->add_option("--capacities", o.caps_file, "capacity file (paths)");
    oracle->add_option("--tau", o.tau, "total routing size budget (paths)");
    oracle->add_option("--pattern", o.pattern_file, "pattern file (homeo)");
    oracle->add_option("--anchors", o.anchors, "anchor list (homeo)");
    oracle->callback([&] { rc = run_oracle(o); });

    auto* verify = app.add_subcommand("verify", "check a witness against its instance");
    verify->add_option("problem", o.problem,
                       "fvs, domset, color, ham, hamcycle, paths, homeo, dpw, or cyclerank")
        ->required()
        ->check(CLI::IsMember({"fvs", "domset", "color", "ham", "hamcycle", "paths", "homeo",
                               "dpw", "cyclerank"}));
    add_graph_arg(verify, o);
    verify->add_option("witness", o.witness_file, "witness JSON file, or - for stdin")
        ->required();
    verify->add_option("--weights", o.weights_file, "vertex weight file (fvs, domset)");
    verify->add_option("--demands", o.demands_file, "demand file (color)");
    verify->add_option("--pairs", o.pairs_file, "terminal pair file (paths)");
    verify->add_option("--capacities", o.caps_file, "capacity file (paths)");
    verify->add_option("--pattern", o.pattern_file, "pattern file (homeo)");
    verify->callback([&] { rc = run_verify(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
