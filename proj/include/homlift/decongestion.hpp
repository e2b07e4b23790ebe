#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "homlift/bitvec.hpp"
#include "homlift/rng.hpp"

namespace homlift {

// Undirected multigraph: parallel edges and self-edges allowed, edges
// identified by index.
struct Multigraph {
    struct Edge {
        int u = 0;
        int w = 0;
        std::uint64_t weight = 1;
    };

    int v = 0;
    std::vector<Edge> edges;

    void validate() const {
        for (const Edge& e : edges)
            if (e.u < 0 || e.u >= v || e.w < 0 || e.w >= v)
                throw std::invalid_argument("Multigraph: endpoint out of range");
    }

    std::vector<int> degrees() const {
        std::vector<int> d(static_cast<std::size_t>(v), 0);
        for (const Edge& e : edges) {
            ++d[static_cast<std::size_t>(e.u)];
            ++d[static_cast<std::size_t>(e.w)];
        }
        return d;
    }

    int components() const {
        std::vector<int> parent(static_cast<std::size_t>(v));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) {
                parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
                x = parent[static_cast<std::size_t>(x)];
            }
            return x;
        };
        int comps = v;
        for (const Edge& e : edges) {
            int a = find(e.u), b = find(e.w);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --comps;
            }
        }
        return comps;
    }

    int cycle_rank() const { return static_cast<int>(edges.size()) - v + components(); }
};

// Ordered cycle basis; cycles are edge-index lists forming simple closed
// walks, and certificates[i] is an edge of cycle i absent from every later
// cycle.
struct CycleBasis {
    std::vector<std::vector<int>> cycles;
    std::vector<int> certificates;

    std::size_t size() const { return cycles.size(); }
};

// Reconstructs the vertex walk of an edge list; nullopt when the edges do
// not chain into a closed walk.  walk[i] is the vertex entered before
// traversing edges[i].
inline std::optional<std::vector<int>> cycle_walk(const Multigraph& g, const std::vector<int>& cyc) {
    if (cyc.empty()) return std::nullopt;
    for (int e : cyc)
        if (e < 0 || e >= static_cast<int>(g.edges.size())) return std::nullopt;
    if (cyc.size() == 1) {
        const auto& e = g.edges[static_cast<std::size_t>(cyc[0])];
        if (e.u != e.w) return std::nullopt;
        return std::vector<int>{e.u};
    }
    auto other = [&](int eid, int at) -> std::optional<int> {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        if (e.u == at) return e.w;
        if (e.w == at) return e.u;
        return std::nullopt;
    };
    const auto& e0 = g.edges[static_cast<std::size_t>(cyc[0])];
    for (int start : {e0.u, e0.w}) {
        std::vector<int> walk{start};
        int cur = *other(cyc[0], start);
        bool good = true;
        for (std::size_t i = 1; i < cyc.size(); ++i) {
            walk.push_back(cur);
            auto nxt = other(cyc[i], cur);
            if (!nxt) { good = false; break; }
            cur = *nxt;
        }
        if (good && cur == start) return walk;
        if (e0.u == e0.w) break;
    }
    return std::nullopt;
}

inline bool cycle_is_simple(const Multigraph& g, const std::vector<int>& cyc) {
    auto walk = cycle_walk(g, cyc);
    if (!walk) return false;
    std::set<int> seen(walk->begin(), walk->end());
    return seen.size() == walk->size();
}

struct PreprocessResult {
    Multigraph simple;          // no self-edges, no parallel edges
    std::vector<int> orig_of;   // simple edge index -> original edge index
    CycleBasis extra;           // self-edge singletons, then parallel pair cycles
};

// Self-edges become singleton cycles; each parallel class collapses to its
// lowest-index representative with the pairwise two-edge cycles recorded.
// The pair cycles are emitted in descending class position so each keeps an
// edge unseen later (the representative, which main-basis cycles may reuse,
// is never a certificate).
inline PreprocessResult preprocess(const Multigraph& g) {
    g.validate();
    PreprocessResult out;
    out.simple.v = g.v;
    std::map<std::pair<int, int>, std::vector<int>> classes;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto& e = g.edges[i];
        if (e.u == e.w) {
            out.extra.cycles.push_back({static_cast<int>(i)});
            out.extra.certificates.push_back(static_cast<int>(i));
        } else {
            classes[{std::min(e.u, e.w), std::max(e.u, e.w)}].push_back(static_cast<int>(i));
        }
    }
    for (const auto& [pair, ids] : classes) {
        for (std::size_t j = ids.size(); j-- > 1;) {
            out.extra.cycles.push_back({ids[j - 1], ids[j]});
            out.extra.certificates.push_back(ids[j]);
        }
    }
    for (const auto& [pair, ids] : classes) {
        out.orig_of.push_back(ids.front());
        out.simple.edges.push_back({pair.first, pair.second, g.edges[static_cast<std::size_t>(ids.front())].weight});
    }
    return out;
}

namespace detail {

// Residual multigraph for the recursive construction, realized iteratively.
// Contracted degree-2 chains keep their expansion as a path of input edge
// ids so emitted cycles stay simple in the input graph.
struct Residual {
    struct REdge {
        int u, w;
        std::vector<int> path; // input edge ids, oriented u -> w
        bool alive = true;
    };

    int nv = 0;
    std::vector<REdge> edges;
    std::vector<std::vector<int>> adj; // incident alive edge ids (self once)
    std::vector<int> deg;
    std::vector<char> vertex_alive;

    explicit Residual(const Multigraph& g) {
        nv = g.v;
        adj.assign(static_cast<std::size_t>(g.v), {});
        deg.assign(static_cast<std::size_t>(g.v), 0);
        vertex_alive.assign(static_cast<std::size_t>(g.v), 1);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const auto& e = g.edges[i];
            edges.push_back({e.u, e.w, {static_cast<int>(i)}, true});
            attach(static_cast<int>(i));
        }
    }

    void attach(int id) {
        const REdge& e = edges[static_cast<std::size_t>(id)];
        adj[static_cast<std::size_t>(e.u)].push_back(id);
        deg[static_cast<std::size_t>(e.u)] += (e.u == e.w) ? 2 : 1;
        if (e.u != e.w) {
            adj[static_cast<std::size_t>(e.w)].push_back(id);
            ++deg[static_cast<std::size_t>(e.w)];
        }
    }

    void detach(int id) {
        REdge& e = edges[static_cast<std::size_t>(id)];
        e.alive = false;
        deg[static_cast<std::size_t>(e.u)] -= (e.u == e.w) ? 2 : 1;
        if (e.u != e.w) --deg[static_cast<std::size_t>(e.w)];
        // adjacency lists are purged lazily
    }

    const std::vector<int>& alive_incident(int v) {
        auto& lst = adj[static_cast<std::size_t>(v)];
        std::size_t k = 0;
        for (std::size_t i = 0; i < lst.size(); ++i)
            if (edges[static_cast<std::size_t>(lst[i])].alive) lst[k++] = lst[i];
        lst.resize(k);
        return lst;
    }
};

// a -> b path of edge ids for a residual edge, honoring stored orientation.
inline std::vector<int> oriented_path(const Residual::REdge& e, int from) {
    std::vector<int> p = e.path;
    if (e.u != from) std::reverse(p.begin(), p.end());
    return p;
}

} // namespace detail

struct CycleBasisOptions {
    int degree_cap = 16;
    int max_retries = 32;
    std::uint64_t mult_ceiling = 0; // 0: use 4 * ceil(log2 V)^2
};

struct CycleBasisResult {
    CycleBasis basis;
    int retries_used = 0;
    std::uint64_t max_multiplicity = 0;
    std::uint64_t ceiling = 0;
};

inline int ceil_log2(std::uint64_t n) {
    int k = 0;
    std::uint64_t p = 1;
    while (p < n) {
        p <<= 1;
        ++k;
    }
    return k;
}

inline std::vector<std::uint64_t> edge_multiplicities(const CycleBasis& basis, std::size_t nedges) {
    std::vector<std::uint64_t> mult(nedges, 0);
    for (const auto& cyc : basis.cycles)
        for (int e : cyc) ++mult[static_cast<std::size_t>(e)];
    return mult;
}

namespace detail {

// One randomized attempt.  Cases in the priority of the construction:
// drop degree-<=1 vertices, clear degree-2 vertices (self-edge emission or
// chain contraction), otherwise emit a minimal cycle and delete one of its
// edges at random.
inline CycleBasis decongest_once(const Multigraph& simple, Rng& rng) {
    Residual R(simple);
    CycleBasis out;

    std::set<int> low1, low2;
    auto reclassify = [&](int v) {
        if (!R.vertex_alive[static_cast<std::size_t>(v)]) {
            low1.erase(v);
            low2.erase(v);
            return;
        }
        int d = R.deg[static_cast<std::size_t>(v)];
        if (d <= 1) {
            low1.insert(v);
            low2.erase(v);
        } else if (d == 2) {
            low1.erase(v);
            low2.insert(v);
        } else {
            low1.erase(v);
            low2.erase(v);
        }
    };
    for (int v = 0; v < R.nv; ++v) reclassify(v);

    std::size_t alive_edges = simple.edges.size();

    auto emit = [&](std::vector<int> cycle_edges, int certificate) {
        out.cycles.push_back(std::move(cycle_edges));
        out.certificates.push_back(certificate);
    };

    // BFS workspace
    std::vector<int> dist(static_cast<std::size_t>(R.nv), -1);
    std::vector<int> par_edge(static_cast<std::size_t>(R.nv), -1);
    std::vector<int> par_vert(static_cast<std::size_t>(R.nv), -1);
    std::vector<int> gen(static_cast<std::size_t>(R.nv), -1);
    int generation = 0;
    std::vector<int> queue;

    while (alive_edges > 0) {
        if (!low1.empty()) {
            int v = *low1.begin();
            auto inc = R.alive_incident(v);
            if (!inc.empty()) {
                int id = inc.front();
                const auto& e = R.edges[static_cast<std::size_t>(id)];
                int o = e.u == v ? e.w : e.u;
                R.detach(id);
                --alive_edges;
                reclassify(o);
            }
            R.vertex_alive[static_cast<std::size_t>(v)] = 0;
            reclassify(v);
            continue;
        }
        if (!low2.empty()) {
            int v = *low2.begin();
            auto inc = R.alive_incident(v);
            int self_id = -1;
            for (int id : inc)
                if (R.edges[static_cast<std::size_t>(id)].u == R.edges[static_cast<std::size_t>(id)].w) {
                    self_id = id;
                    break;
                }
            if (self_id >= 0) {
                // case A: the self-edge is the whole degree; emit it
                std::vector<int> cyc = R.edges[static_cast<std::size_t>(self_id)].path;
                int cert = cyc.front();
                R.detach(self_id);
                --alive_edges;
                emit(std::move(cyc), cert);
                reclassify(v);
            } else {
                // case B: contract the chain through v
                int e1 = inc[0], e2 = inc[1];
                if (e1 > e2) std::swap(e1, e2);
                const auto& r1 = R.edges[static_cast<std::size_t>(e1)];
                const auto& r2 = R.edges[static_cast<std::size_t>(e2)];
                int x = r1.u == v ? r1.w : r1.u;
                int y = r2.u == v ? r2.w : r2.u;
                std::vector<int> path;
                {
                    std::vector<int> p1 = detail::oriented_path(r1, x); // x -> v
                    std::vector<int> p2 = detail::oriented_path(r2, v); // v -> y
                    path = std::move(p1);
                    path.insert(path.end(), p2.begin(), p2.end());
                }
                R.detach(e1);
                R.detach(e2);
                R.vertex_alive[static_cast<std::size_t>(v)] = 0;
                R.edges.push_back({x, y, std::move(path), true});
                R.attach(static_cast<int>(R.edges.size() - 1));
                --alive_edges; // two removed, one added
                reclassify(v);
                reclassify(x);
                reclassify(y);
            }
            continue;
        }

        // case 3: minimum degree >= 3, so a BFS tree from any vertex meets a
        // non-tree edge within depth ~log2(V), closing a simple cycle of
        // logarithmic length.  BFS runs from the lowest-index alive vertex;
        // the first collision wins.  (Scanning every edge for the exact
        // minimum is correct but cubic over a full run; the construction
        // only needs a short cycle.)
        int root = -1;
        for (int v = 0; v < R.nv; ++v)
            if (R.vertex_alive[static_cast<std::size_t>(v)]) {
                root = v;
                break;
            }
        if (root < 0) throw std::logic_error("decongestion: edges alive but no vertices");
        ++generation;
        queue.clear();
        queue.push_back(root);
        gen[static_cast<std::size_t>(root)] = generation;
        dist[static_cast<std::size_t>(root)] = 0;
        par_edge[static_cast<std::size_t>(root)] = -1;
        int hit_edge = -1, hit_a = -1, hit_b = -1;
        for (std::size_t qi = 0; qi < queue.size() && hit_edge < 0; ++qi) {
            int cur = queue[qi];
            for (int eid : R.alive_incident(cur)) {
                if (eid == par_edge[static_cast<std::size_t>(cur)]) continue;
                const auto& f = R.edges[static_cast<std::size_t>(eid)];
                int nxt = f.u == cur ? f.w : f.u;
                if (gen[static_cast<std::size_t>(nxt)] == generation) {
                    hit_edge = eid;
                    hit_a = cur;
                    hit_b = nxt;
                    break;
                }
                gen[static_cast<std::size_t>(nxt)] = generation;
                dist[static_cast<std::size_t>(nxt)] = dist[static_cast<std::size_t>(cur)] + 1;
                par_edge[static_cast<std::size_t>(nxt)] = eid;
                par_vert[static_cast<std::size_t>(nxt)] = cur;
                queue.push_back(nxt);
            }
        }
        if (hit_edge < 0)
            throw std::logic_error("decongestion: no cycle found with min degree >= 3");

        // climb to the meeting point; the two tree paths are disjoint below it
        std::vector<int> up_a, up_b;
        {
            int a = hit_a, b = hit_b;
            while (dist[static_cast<std::size_t>(a)] > dist[static_cast<std::size_t>(b)]) {
                up_a.push_back(par_edge[static_cast<std::size_t>(a)]);
                a = par_vert[static_cast<std::size_t>(a)];
            }
            while (dist[static_cast<std::size_t>(b)] > dist[static_cast<std::size_t>(a)]) {
                up_b.push_back(par_edge[static_cast<std::size_t>(b)]);
                b = par_vert[static_cast<std::size_t>(b)];
            }
            while (a != b) {
                up_a.push_back(par_edge[static_cast<std::size_t>(a)]);
                a = par_vert[static_cast<std::size_t>(a)];
                up_b.push_back(par_edge[static_cast<std::size_t>(b)]);
                b = par_vert[static_cast<std::size_t>(b)];
            }
        }
        // walk: meeting point -> hit_a, across hit_edge, hit_b -> meeting point
        std::vector<int> residual_cycle(up_a.rbegin(), up_a.rend());
        residual_cycle.push_back(hit_edge);
        residual_cycle.insert(residual_cycle.end(), up_b.begin(), up_b.end());

        // expand to input edges along the same walk
        std::vector<int> cyc;
        {
            int at = hit_a;
            for (int eid : up_a) { // climb to the meeting point
                const auto& f = R.edges[static_cast<std::size_t>(eid)];
                at = f.u == at ? f.w : f.u;
            }
            for (int eid : residual_cycle) {
                const auto& f = R.edges[static_cast<std::size_t>(eid)];
                auto p = detail::oriented_path(f, at);
                cyc.insert(cyc.end(), p.begin(), p.end());
                at = f.u == f.w ? at : (f.u == at ? f.w : f.u);
            }
        }
        int kill = residual_cycle[static_cast<std::size_t>(rng.below(residual_cycle.size()))];
        int cert = R.edges[static_cast<std::size_t>(kill)].path.front();
        const auto killed = R.edges[static_cast<std::size_t>(kill)];
        R.detach(kill);
        --alive_edges;
        emit(std::move(cyc), cert);
        reclassify(killed.u);
        reclassify(killed.w);
    }
    return out;
}

} // namespace detail

class RetriesExhaustedError : public std::runtime_error {
  public:
    RetriesExhaustedError(int attempts, std::uint64_t worst, std::uint64_t ceiling)
        : std::runtime_error("cycle basis: " + std::to_string(attempts) +
                             " attempts exhausted; best max multiplicity " + std::to_string(worst) +
                             " above ceiling " + std::to_string(ceiling)) {}
};

// Weakly fundamental cycle basis with per-edge multiplicity below the
// calibrated ceiling.  Deterministic in (graph, seed); each retry restarts
// with seed+1.
inline CycleBasisResult cycle_basis(const Multigraph& g, std::uint64_t seed,
                                    const CycleBasisOptions& opts = {}) {
    g.validate();
    {
        auto deg = g.degrees();
        for (int v = 0; v < g.v; ++v)
            if (deg[static_cast<std::size_t>(v)] > opts.degree_cap)
                throw std::invalid_argument("cycle_basis: vertex " + std::to_string(v) +
                                            " exceeds degree cap " + std::to_string(opts.degree_cap));
    }
    PreprocessResult pre = preprocess(g);
    std::uint64_t ceiling = opts.mult_ceiling;
    if (ceiling == 0) {
        std::uint64_t lg = static_cast<std::uint64_t>(ceil_log2(std::max<std::uint64_t>(static_cast<std::uint64_t>(g.v), 2)));
        ceiling = 4 * lg * lg;
    }

    std::uint64_t best_seen = 0;
    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        Rng rng(seed + static_cast<std::uint64_t>(attempt));
        CycleBasis core = detail::decongest_once(pre.simple, rng);

        CycleBasis full = pre.extra;
        for (std::size_t i = 0; i < core.cycles.size(); ++i) {
            std::vector<int> mapped;
            mapped.reserve(core.cycles[i].size());
            for (int e : core.cycles[i]) mapped.push_back(pre.orig_of[static_cast<std::size_t>(e)]);
            full.cycles.push_back(std::move(mapped));
            full.certificates.push_back(pre.orig_of[static_cast<std::size_t>(core.certificates[i])]);
        }

        auto mult = edge_multiplicities(full, g.edges.size());
        std::uint64_t mx = 0;
        for (auto m : mult) mx = std::max(mx, m);
        if (mx <= ceiling) {
            CycleBasisResult res;
            res.basis = std::move(full);
            res.retries_used = attempt;
            res.max_multiplicity = mx;
            res.ceiling = ceiling;
            return res;
        }
        best_seen = best_seen == 0 ? mx : std::min(best_seen, mx);
    }
    throw RetriesExhaustedError(opts.max_retries, best_seen, ceiling);
}

// Exact minimum-length simple cycle: per-edge BFS in the graph with that
// edge removed, shortest path between its endpoints.  First minimal cycle
// in edge-index order.
inline std::vector<int> shortest_cycle(const Multigraph& g) {
    g.validate();
    const int n = static_cast<int>(g.edges.size());
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(g.v)); // (other, edge)
    for (int i = 0; i < n; ++i) {
        const auto& e = g.edges[static_cast<std::size_t>(i)];
        if (e.u == e.w) continue;
        adj[static_cast<std::size_t>(e.u)].push_back({e.w, i});
        adj[static_cast<std::size_t>(e.w)].push_back({e.u, i});
    }
    long long best_len = -1;
    std::vector<int> best;
    std::vector<int> dist(static_cast<std::size_t>(g.v)), par_e(static_cast<std::size_t>(g.v)),
        par_v(static_cast<std::size_t>(g.v)), gen(static_cast<std::size_t>(g.v), -1);
    int generation = 0;
    for (int i = 0; i < n; ++i) {
        const auto& e = g.edges[static_cast<std::size_t>(i)];
        if (e.u == e.w) {
            best_len = 1;
            best = {i};
            break;
        }
        long long cap = best_len < 0 ? -1 : best_len - 2;
        if (cap == 0) continue;
        ++generation;
        std::vector<int> queue{e.u};
        gen[static_cast<std::size_t>(e.u)] = generation;
        dist[static_cast<std::size_t>(e.u)] = 0;
        bool found = false;
        for (std::size_t qi = 0; qi < queue.size() && !found; ++qi) {
            int cur = queue[qi];
            if (cap > 0 && dist[static_cast<std::size_t>(cur)] >= cap) continue;
            for (auto [nxt, eid] : adj[static_cast<std::size_t>(cur)]) {
                if (eid == i) continue;
                if (gen[static_cast<std::size_t>(nxt)] == generation) continue;
                gen[static_cast<std::size_t>(nxt)] = generation;
                dist[static_cast<std::size_t>(nxt)] = dist[static_cast<std::size_t>(cur)] + 1;
                par_e[static_cast<std::size_t>(nxt)] = eid;
                par_v[static_cast<std::size_t>(nxt)] = cur;
                if (nxt == e.w) {
                    found = true;
                    break;
                }
                queue.push_back(nxt);
            }
        }
        if (!found) continue;
        long long len = dist[static_cast<std::size_t>(e.w)] + 1;
        if (best_len < 0 || len < best_len) {
            best_len = len;
            best.clear();
            int cur = e.w;
            while (cur != e.u) {
                best.push_back(par_e[static_cast<std::size_t>(cur)]);
                cur = par_v[static_cast<std::size_t>(cur)];
            }
            std::reverse(best.begin(), best.end());
            best.push_back(i);
        }
    }
    if (best.empty()) throw std::runtime_error("shortest_cycle: graph is acyclic");
    return best;
}

struct VerifyResult {
    bool ok = true;
    int failing_index = -1;
    std::string reason;
};

// Each cycle must be a simple closed walk containing at least one edge
// absent from every later cycle; the supplied certificate must witness it.
inline VerifyResult verify_weakly_fundamental(const Multigraph& g, const CycleBasis& basis) {
    if (basis.certificates.size() != basis.cycles.size())
        return {false, -1, "certificate count mismatch"};
    std::vector<std::uint64_t> later(g.edges.size(), 0);
    for (const auto& cyc : basis.cycles)
        for (int e : cyc) ++later[static_cast<std::size_t>(e)];
    for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
        const auto& cyc = basis.cycles[i];
        for (int e : cyc) --later[static_cast<std::size_t>(e)]; // multiset of strictly later occurrences
        if (!cycle_is_simple(g, cyc))
            return {false, static_cast<int>(i), "cycle is not a simple closed walk"};
        bool has_unique = false;
        for (int e : cyc)
            if (later[static_cast<std::size_t>(e)] == 0) {
                has_unique = true;
                break;
            }
        if (!has_unique) return {false, static_cast<int>(i), "no edge unique to this suffix position"};
        int cert = basis.certificates[i];
        if (std::find(cyc.begin(), cyc.end(), cert) == cyc.end())
            return {false, static_cast<int>(i), "certificate edge not in cycle"};
        if (later[static_cast<std::size_t>(cert)] != 0)
            return {false, static_cast<int>(i), "certificate edge reappears later"};
    }
    return {};
}

// F2 rank of the cycle incidence vectors must equal E - V + components.
inline bool verify_spanning(const Multigraph& g, const CycleBasis& basis) {
    F2Echelon ech(g.edges.size());
    for (const auto& cyc : basis.cycles) {
        BitVec v(g.edges.size());
        for (int e : cyc) v.flip(static_cast<std::size_t>(e));
        ech.add(v);
    }
    return static_cast<int>(ech.rank()) == g.cycle_rank();
}

struct MultiplicityStats {
    std::vector<std::uint64_t> per_edge;
    std::uint64_t max = 0;
    std::map<std::uint64_t, std::size_t> histogram; // multiplicity -> edge count
};

inline MultiplicityStats multiplicity_stats(const CycleBasis& basis, const Multigraph& g) {
    MultiplicityStats s;
    s.per_edge = edge_multiplicities(basis, g.edges.size());
    for (auto m : s.per_edge) {
        s.max = std::max(s.max, m);
        ++s.histogram[m];
    }
    return s;
}

inline std::uint64_t basis_weight(const CycleBasis& basis, const Multigraph& g) {
    std::uint64_t total = 0;
    for (const auto& cyc : basis.cycles)
        for (int e : cyc) total += g.edges[static_cast<std::size_t>(e)].weight;
    return total;
}

struct IntersectionStats {
    std::vector<int> later_hits; // per cycle: later cycles sharing >= 1 vertex
    int max = 0;
};

inline IntersectionStats intersection_stats(const Multigraph& g, const CycleBasis& basis) {
    IntersectionStats s;
    std::vector<std::set<int>> verts;
    verts.reserve(basis.cycles.size());
    for (const auto& cyc : basis.cycles) {
        auto w = cycle_walk(g, cyc);
        verts.emplace_back(w ? std::set<int>(w->begin(), w->end()) : std::set<int>());
    }
    s.later_hits.assign(basis.cycles.size(), 0);
    for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
        int hits = 0;
        for (std::size_t j = i + 1; j < basis.cycles.size(); ++j) {
            bool share = false;
            const auto& a = verts[i];
            const auto& b = verts[j];
            const auto& small = a.size() <= b.size() ? a : b;
            const auto& big = a.size() <= b.size() ? b : a;
            for (int v : small)
                if (big.count(v)) {
                    share = true;
                    break;
                }
            if (share) ++hits;
        }
        s.later_hits[i] = hits;
        s.max = std::max(s.max, hits);
    }
    return s;
}

} // namespace homlift
