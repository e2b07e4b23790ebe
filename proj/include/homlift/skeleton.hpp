#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homlift/chain_complex.hpp"
#include "homlift/decongestion.hpp"
#include "homlift/rng.hpp"

namespace homlift {

// Handle records are a combinatorial shadow of the construction: incidence
// and signed attachment degrees only, no embedded geometry.

enum class HandleKind { x_stab, qubit, z_stab, internal_1, internal_2, pi1_2, top };

inline const char* handle_kind_name(HandleKind k) {
    switch (k) {
        case HandleKind::x_stab: return "x_stab";
        case HandleKind::qubit: return "qubit";
        case HandleKind::z_stab: return "z_stab";
        case HandleKind::internal_1: return "internal-1";
        case HandleKind::internal_2: return "internal-2";
        case HandleKind::pi1_2: return "pi1-2";
        case HandleKind::top: return "top";
    }
    return "?";
}

struct HandleRecord {
    int id = -1;
    int index = 0; // handle index, 0..11
    HandleKind kind = HandleKind::x_stab;
    int origin = -1; // stabilizer / qubit / owner reference
    struct Attachment {
        int other;
        long long degree; // signed degree, or multiplicity 1 for internal contacts
    };
    std::vector<Attachment> attachments;
    int height_color = -1; // assigned to pi1 disks by height_coloring
    bool mirrored = false;
};

enum class SkeletonStage { x, qx, zqx, zqx_plus, doubled };

inline const char* stage_name(SkeletonStage s) {
    switch (s) {
        case SkeletonStage::x: return "x";
        case SkeletonStage::qx: return "qx";
        case SkeletonStage::zqx: return "zqx";
        case SkeletonStage::zqx_plus: return "zqx+";
        case SkeletonStage::doubled: return "double";
    }
    return "?";
}

// Bipartite pairing data for one Z-stabilizer: red vertices are copies of
// qubits (one per unit of the top boundary degree), black vertices the
// X-stabilizers they touch.  Half-edges carry the sign of the product of
// boundary entries; admissibility makes every black signed sum vanish, and
// pairing opposite signs assembles the components.
struct PairingWitness {
    struct HalfEdge {
        int qubit;
        int copy;
        int unit;
        int sign; // +1 or -1
    };
    struct BlackVertex {
        int x_stab;
        std::vector<HalfEdge> plus, minus;
    };
    struct HalfEdgePair {
        int black_x;
        HalfEdge pos, neg;
    };
    struct Component {
        std::vector<std::pair<int, int>> copies; // (qubit, copy)
        int edges = 0;
        int betti1 = 0;
    };

    int z_stab = -1;
    std::vector<BlackVertex> blacks;
    std::vector<HalfEdgePair> pairs;
    std::vector<Component> components;
};

enum class PairingPolicy { first_fit, randomized };

struct HandleSkeleton {
    SkeletonStage stage = SkeletonStage::x;
    std::vector<HandleRecord> handles;
    std::vector<int> code_dims; // (x, q, z) of the source complex

    std::vector<int> x_zero_handle, x_three_handle; // per X-stabilizer
    std::vector<int> qubit_handle;                  // per qubit
    std::vector<int> z_handle;                      // per Z-stabilizer

    std::vector<std::vector<int>> qubit_slots; // per qubit: X-stab per unit attachment
    std::vector<PairingWitness> witnesses;     // per Z-stabilizer, from stage zqx

    Multigraph pi1_graph;               // extracted 1-skeleton (kill_pi1)
    std::vector<int> pi1_edge_record;   // graph edge -> carrying record id
    CycleBasis pi1_basis;
    int pi1_colors = 0;

    HandleRecord& rec(int id) { return handles[static_cast<std::size_t>(id)]; }
    const HandleRecord& rec(int id) const { return handles[static_cast<std::size_t>(id)]; }

    int new_handle(int index, HandleKind kind, int origin) {
        HandleRecord r;
        r.id = static_cast<int>(handles.size());
        r.index = index;
        r.kind = kind;
        r.origin = origin;
        handles.push_back(std::move(r));
        return handles.back().id;
    }

    void contact(int a, int b, long long degree) {
        rec(a).attachments.push_back({b, degree});
        rec(b).attachments.push_back({a, degree});
    }

    std::map<int, int> counts_by_index() const {
        std::map<int, int> c;
        for (const auto& h : handles) ++c[h.index];
        return c;
    }
};

namespace detail {
inline void require_lifted_code(const ChainComplexZ& cZ) {
    if (cZ.degrees() != 3)
        throw std::invalid_argument("skeleton: need a three-term lifted complex");
    ValidationReport v = validate_complex(cZ);
    if (!v.ok)
        throw std::invalid_argument("skeleton: lift is not admissible (product nonzero at boundary " +
                                    std::to_string(v.j) + ", entry " + std::to_string(v.row) + "," +
                                    std::to_string(v.col) + ")");
}
} // namespace detail

// Stage X: one 0-handle and one 3-handle per X-stabilizer, paired.
inline HandleSkeleton build_X(const ChainComplexZ& cZ) {
    detail::require_lifted_code(cZ);
    HandleSkeleton sk;
    sk.code_dims = cZ.dims;
    const int x = cZ.dims[0];
    for (int i = 0; i < x; ++i) {
        int h0 = sk.new_handle(0, HandleKind::x_stab, i);
        int h3 = sk.new_handle(3, HandleKind::x_stab, i);
        sk.x_zero_handle.push_back(h0);
        sk.x_three_handle.push_back(h3);
        sk.contact(h0, h3, 1);
    }
    sk.stage = SkeletonStage::x;
    return sk;
}

// Stage QX: one "4-handle" per qubit whose unit attachments to the
// 3-handles reproduce the lifted degree-1 boundary column entrywise (an
// entry e splits into |e| attachments of degree sign(e)).
inline void attach_qubit_handles(HandleSkeleton& sk, const ChainComplexZ& cZ) {
    if (sk.stage != SkeletonStage::x)
        throw std::invalid_argument("attach_qubit_handles: skeleton must be at stage x");
    if (sk.code_dims != cZ.dims)
        throw std::invalid_argument("attach_qubit_handles: complex does not match skeleton");
    const IntMatrix& d1 = cZ.boundaries[0];
    const int q = cZ.dims[1];
    sk.qubit_slots.assign(static_cast<std::size_t>(q), {});
    for (int i = 0; i < q; ++i) {
        int h4 = sk.new_handle(4, HandleKind::qubit, i);
        sk.qubit_handle.push_back(h4);
        for (int id : d1.ent_ids_of_col(i)) {
            const auto& e = d1.entry(id);
            long long s = e.val > 0 ? 1 : -1;
            Int units = abs(e.val);
            for (Int u = 0; u < units; ++u) {
                sk.contact(h4, sk.x_three_handle[static_cast<std::size_t>(e.row)], s);
                sk.qubit_slots[static_cast<std::size_t>(i)].push_back(e.row);
            }
        }
    }
    sk.stage = SkeletonStage::qx;
}

// Sum of absolute values of the lifted degree-1 column: the number of
// boundary spheres of the qubit handle.
inline int f_tilde(const HandleSkeleton& sk, int qubit) {
    return static_cast<int>(sk.qubit_slots[static_cast<std::size_t>(qubit)].size());
}

// Pairing of opposite-sign half-edges at the black vertices of one
// Z-stabilizer.  Throws when some black vertex sees a nonzero signed sum
// (the lift is not admissible at that column).
inline PairingWitness euler_pairing(const HandleSkeleton& sk, const ChainComplexZ& cZ, int k,
                                    PairingPolicy policy = PairingPolicy::first_fit,
                                    std::uint64_t seed = 0) {
    if (sk.stage == SkeletonStage::x)
        throw std::invalid_argument("euler_pairing: qubit handles not attached yet");
    if (k < 0 || k >= cZ.dims[2]) throw std::out_of_range("euler_pairing: Z-stabilizer out of range");
    const IntMatrix& d1 = cZ.boundaries[0];
    const IntMatrix& d2 = cZ.boundaries[1];

    PairingWitness w;
    w.z_stab = k;

    // red copies of qubits, one per unit of the top boundary entry
    std::vector<std::pair<int, int>> copies; // (qubit, copy)
    std::vector<int> copy_sign;
    std::map<std::pair<int, int>, int> copy_id;
    for (int id : d2.ent_ids_of_col(k)) {
        const auto& e = d2.entry(id);
        int s = e.val > 0 ? 1 : -1;
        Int units = abs(e.val);
        for (Int u = 0; u < units; ++u) {
            int c = static_cast<int>(u);
            copy_id[{e.row, c}] = static_cast<int>(copies.size());
            copies.emplace_back(e.row, c);
            copy_sign.push_back(s);
        }
    }

    // half-edges grouped at black vertices
    std::map<int, PairingWitness::BlackVertex> blacks;
    for (std::size_t ci = 0; ci < copies.size(); ++ci) {
        auto [qb, cp] = copies[ci];
        for (int id : d1.ent_ids_of_col(qb)) {
            const auto& e = d1.entry(id);
            int s = (e.val > 0 ? 1 : -1) * copy_sign[ci];
            Int units = abs(e.val);
            for (Int u = 0; u < units; ++u) {
                auto& bv = blacks[e.row];
                bv.x_stab = e.row;
                PairingWitness::HalfEdge he{qb, cp, static_cast<int>(u), s};
                (s > 0 ? bv.plus : bv.minus).push_back(he);
            }
        }
    }

    Rng rng(seed);
    for (auto& [x, bv] : blacks) {
        if (bv.plus.size() != bv.minus.size())
            throw std::runtime_error("euler_pairing: nonzero signed half-edge sum at X-stabilizer " +
                                     std::to_string(x) + " (lift not admissible)");
        if (policy == PairingPolicy::randomized) {
            rng.shuffle(bv.plus);
            rng.shuffle(bv.minus);
        }
        for (std::size_t i = 0; i < bv.plus.size(); ++i)
            w.pairs.push_back({x, bv.plus[i], bv.minus[i]});
        w.blacks.push_back(bv);
    }

    // components of the gluing graph on red copies
    std::vector<int> parent(copies.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    for (const auto& pr : w.pairs) {
        int a = find(copy_id[{pr.pos.qubit, pr.pos.copy}]);
        int b = find(copy_id[{pr.neg.qubit, pr.neg.copy}]);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::map<int, int> comp_of_root;
    for (std::size_t ci = 0; ci < copies.size(); ++ci) {
        int r = find(static_cast<int>(ci));
        if (!comp_of_root.count(r)) {
            comp_of_root[r] = static_cast<int>(w.components.size());
            w.components.emplace_back();
        }
        w.components[static_cast<std::size_t>(comp_of_root[r])].copies.push_back(copies[ci]);
    }
    for (const auto& pr : w.pairs) {
        int r = find(copy_id[{pr.pos.qubit, pr.pos.copy}]);
        ++w.components[static_cast<std::size_t>(comp_of_root[r])].edges;
    }
    for (auto& comp : w.components)
        comp.betti1 = comp.edges - static_cast<int>(comp.copies.size()) + 1 >= 0
                          ? comp.edges - static_cast<int>(comp.copies.size()) + 1
                          : 0;
    return w;
}

namespace detail {
// Heap-shaped tree on n nodes: node j > 0 hangs off (j-1)/2; every node
// touches at most 3 tree edges.
inline std::vector<std::pair<int, int>> balanced_tree_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int j = 1; j < n; ++j) e.emplace_back(j, (j - 1) / 2);
    return e;
}
} // namespace detail

// Stage ZQX: one "5-handle" per Z-stabilizer with signed unit attachments
// to the qubit handles; internal 1-handles connect the qubit boundary
// spheres (f-1 per qubit) and the pairing components (components-1 per
// Z-stabilizer), in a balanced-tree pattern with fan-in at most 3;
// internal 2-handles kill the free loops of each component.
inline void attach_z_handles(HandleSkeleton& sk, const ChainComplexZ& cZ,
                             PairingPolicy policy = PairingPolicy::first_fit,
                             std::uint64_t seed = 0) {
    if (sk.stage != SkeletonStage::qx)
        throw std::invalid_argument("attach_z_handles: skeleton must be at stage qx");
    const IntMatrix& d2 = cZ.boundaries[1];
    const int z = cZ.dims[2];

    // qubit-side internal 1-handles over the sphere slots
    for (int i = 0; i < cZ.dims[1]; ++i) {
        const auto& slots = sk.qubit_slots[static_cast<std::size_t>(i)];
        for (auto [a, b] : detail::balanced_tree_edges(static_cast<int>(slots.size()))) {
            int h = sk.new_handle(1, HandleKind::internal_1, i);
            sk.contact(h, sk.qubit_handle[static_cast<std::size_t>(i)], 1);
            sk.contact(h, sk.x_three_handle[static_cast<std::size_t>(slots[static_cast<std::size_t>(a)])], 1);
            sk.contact(h, sk.x_three_handle[static_cast<std::size_t>(slots[static_cast<std::size_t>(b)])], 1);
        }
    }

    for (int k = 0; k < z; ++k) {
        PairingWitness w = euler_pairing(sk, cZ, k, policy, seed + static_cast<std::uint64_t>(k));
        int h5 = sk.new_handle(5, HandleKind::z_stab, k);
        sk.z_handle.push_back(h5);
        for (int id : d2.ent_ids_of_col(k)) {
            const auto& e = d2.entry(id);
            long long s = e.val > 0 ? 1 : -1;
            Int units = abs(e.val);
            for (Int u = 0; u < units; ++u)
                sk.contact(h5, sk.qubit_handle[static_cast<std::size_t>(e.row)], s);
        }
        for (auto [a, b] : detail::balanced_tree_edges(static_cast<int>(w.components.size()))) {
            int h = sk.new_handle(1, HandleKind::internal_1, k);
            sk.contact(h, h5, 1);
            (void)a;
            (void)b;
        }
        for (const auto& comp : w.components)
            for (int t = 0; t < comp.betti1; ++t) {
                int h = sk.new_handle(2, HandleKind::internal_2, k);
                sk.contact(h, h5, 1);
            }
        sk.witnesses.push_back(std::move(w));
    }
    sk.stage = SkeletonStage::zqx;
}

// Extracted 1-skeleton: vertices are the X 0-handles and the pairing
// component hubs; edges are the internal 1-handles (qubit sphere trees map
// onto the X-hubs their slots attach to, Z trees join hubs) and the
// attachment arcs from each hub to the representative X-hub of every red
// copy it carries.
inline Multigraph extract_pi1_graph(const HandleSkeleton& sk, std::vector<int>& edge_record) {
    const int x = static_cast<int>(sk.x_zero_handle.size());
    Multigraph g;
    edge_record.clear();

    std::vector<int> hub_base(sk.witnesses.size() + 1, x);
    for (std::size_t k = 0; k < sk.witnesses.size(); ++k)
        hub_base[k + 1] = hub_base[k] + static_cast<int>(sk.witnesses[k].components.size());
    g.v = hub_base.back();

    // internal 1-handle edges
    std::vector<int> z_tree_cursor(sk.witnesses.size(), 0);
    std::map<int, int> qubit_tree_cursor;
    for (const auto& h : sk.handles) {
        if (h.kind != HandleKind::internal_1) continue;
        bool qubit_side = false;
        for (const auto& at : h.attachments)
            if (sk.rec(at.other).kind == HandleKind::qubit) qubit_side = true;
        if (qubit_side) {
            int qb = h.origin;
            const auto& slots = sk.qubit_slots[static_cast<std::size_t>(qb)];
            auto edges = detail::balanced_tree_edges(static_cast<int>(slots.size()));
            int idx = qubit_tree_cursor[qb]++;
            auto [a, b] = edges[static_cast<std::size_t>(idx)];
            g.edges.push_back({slots[static_cast<std::size_t>(a)], slots[static_cast<std::size_t>(b)], 1});
            edge_record.push_back(h.id);
        } else {
            int k = h.origin;
            auto edges = detail::balanced_tree_edges(
                static_cast<int>(sk.witnesses[static_cast<std::size_t>(k)].components.size()));
            int idx = z_tree_cursor[static_cast<std::size_t>(k)]++;
            auto [a, b] = edges[static_cast<std::size_t>(idx)];
            g.edges.push_back({hub_base[static_cast<std::size_t>(k)] + a, hub_base[static_cast<std::size_t>(k)] + b, 1});
            edge_record.push_back(h.id);
        }
    }
    // attachment arcs
    for (std::size_t k = 0; k < sk.witnesses.size(); ++k) {
        const auto& w = sk.witnesses[k];
        for (std::size_t c = 0; c < w.components.size(); ++c)
            for (auto [qb, copy] : w.components[c].copies) {
                const auto& slots = sk.qubit_slots[static_cast<std::size_t>(qb)];
                if (slots.empty()) continue; // free-floating qubit, no arc
                g.edges.push_back({hub_base[k] + static_cast<int>(c), slots.front(), 1});
                edge_record.push_back(sk.z_handle[k]);
            }
    }
    return g;
}

// Stage ZQX+: weakly fundamental cycle basis of the extracted 1-skeleton;
// one pi1 2-handle per basis cycle, attached along the records carrying its
// edges.
inline void kill_pi1(HandleSkeleton& sk, std::uint64_t seed,
                     const CycleBasisOptions& opts = {}) {
    if (sk.stage != SkeletonStage::zqx)
        throw std::invalid_argument("kill_pi1: skeleton must be at stage zqx");
    sk.pi1_graph = extract_pi1_graph(sk, sk.pi1_edge_record);
    CycleBasisResult res = cycle_basis(sk.pi1_graph, seed, opts);
    sk.pi1_basis = res.basis;
    for (std::size_t i = 0; i < res.basis.cycles.size(); ++i) {
        int h = sk.new_handle(2, HandleKind::pi1_2, static_cast<int>(i));
        for (int e : res.basis.cycles[i])
            sk.contact(h, sk.pi1_edge_record[static_cast<std::size_t>(e)], 1);
    }
    sk.stage = SkeletonStage::zqx_plus;
}

struct HeightColoring {
    std::vector<int> color_of_disk; // indexed by pi1 handle order
    int colors = 0;
    int load = 2;
};

// First-fit coloring of the disk/cell hypergraph: no color may appear on
// more than `load` disks attached to any one cell.  The color is the
// "height" at which the disk attaches after the cells are subdivided.
inline HeightColoring height_coloring(HandleSkeleton& sk, int load = 2) {
    if (sk.stage != SkeletonStage::zqx_plus)
        throw std::invalid_argument("height_coloring: skeleton must be at stage zqx+");
    HeightColoring out;
    out.load = load;
    std::map<std::pair<int, int>, int> cell_color_count; // (cell record, color) -> disks
    for (auto& h : sk.handles) {
        if (h.kind != HandleKind::pi1_2) continue;
        std::vector<int> cells;
        for (const auto& at : h.attachments) cells.push_back(at.other);
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        int c = 0;
        for (;; ++c) {
            bool ok = true;
            for (int cell : cells)
                if (cell_color_count[{cell, c}] >= load) {
                    ok = false;
                    break;
                }
            if (ok) break;
        }
        h.height_color = c;
        for (int cell : cells) ++cell_color_count[{cell, c}];
        out.color_of_disk.push_back(c);
        out.colors = std::max(out.colors, c + 1);
    }
    sk.pi1_colors = out.colors;
    return out;
}

// Stage double: every index-k handle gains a mirror of index 11-k with the
// mirrored contact relation; the mirror of a 0-handle is a top handle.
inline void double_skeleton(HandleSkeleton& sk) {
    if (sk.stage != SkeletonStage::zqx_plus)
        throw std::invalid_argument("double_skeleton: skeleton must be at stage zqx+");
    const int n = static_cast<int>(sk.handles.size());
    for (int i = 0; i < n; ++i) {
        const HandleRecord src = sk.handles[static_cast<std::size_t>(i)];
        HandleRecord m;
        m.id = n + src.id;
        m.index = 11 - src.index;
        m.kind = src.index == 0 ? HandleKind::top : src.kind;
        m.origin = src.origin;
        m.mirrored = true;
        m.height_color = src.height_color;
        for (const auto& at : src.attachments) m.attachments.push_back({n + at.other, at.degree});
        sk.handles.push_back(std::move(m));
    }
    sk.stage = SkeletonStage::doubled;
}

struct MiddleComplexCheck {
    bool ok = true;
    std::string mismatch; // first differing entry, when !ok
};

// The signed attachment degrees 5->4 must reproduce the lifted top boundary
// and 4->3 the lifted degree-1 boundary, under the recorded bijections.
inline MiddleComplexCheck verify_middle_complex(const HandleSkeleton& sk, const ChainComplexZ& cZ) {
    if (sk.stage == SkeletonStage::x || sk.stage == SkeletonStage::qx)
        throw std::invalid_argument("verify_middle_complex: needs stage zqx or later");
    MiddleComplexCheck out;
    const IntMatrix& d1 = cZ.boundaries[0];
    const IntMatrix& d2 = cZ.boundaries[1];
    std::map<std::pair<int, int>, long long> m1, m2;
    for (int i = 0; i < cZ.dims[1]; ++i) {
        const auto& h = sk.rec(sk.qubit_handle[static_cast<std::size_t>(i)]);
        for (const auto& at : h.attachments) {
            const auto& o = sk.rec(at.other);
            if (o.kind == HandleKind::x_stab && o.index == 3 && !o.mirrored)
                m1[{o.origin, i}] += at.degree;
        }
    }
    for (int k = 0; k < cZ.dims[2]; ++k) {
        const auto& h = sk.rec(sk.z_handle[static_cast<std::size_t>(k)]);
        for (const auto& at : h.attachments) {
            const auto& o = sk.rec(at.other);
            if (o.kind == HandleKind::qubit && !o.mirrored) m2[{o.origin, k}] += at.degree;
        }
    }
    auto check = [&](const IntMatrix& want, std::map<std::pair<int, int>, long long>& got,
                     const char* level) -> bool {
        for (int r = 0; r < want.rows(); ++r)
            for (int c = 0; c < want.cols(); ++c) {
                Int w = want.at(r, c);
                Int g = got.count({r, c}) ? Int(got[{r, c}]) : Int(0);
                if (w != g) {
                    out.ok = false;
                    out.mismatch = std::string(level) + " entry (" + std::to_string(r) + "," +
                                   std::to_string(c) + "): skeleton " + g.str() + ", boundary " + w.str();
                    return false;
                }
            }
        return true;
    };
    if (!check(d1, m1, "4->3")) return out;
    if (!check(d2, m2, "5->4")) return out;
    return out;
}

struct CongestionAudit {
    int max = 0;      // audited contact count (per-height after coloring)
    int raw_max = 0;  // ignoring the height subdivision
    std::map<int, int> histogram; // audited contact -> handle count
    int cap = 0;
    bool congested = false;
};

// Contact counts per handle.  pi1 disk attachments are counted per height
// color (the subdivided subcell sees only its own color; without coloring
// they all share one), and a disk itself is refined into unit pieces along
// its boundary, so it contributes a constant to its own audit.
inline CongestionAudit congestion_audit(const HandleSkeleton& sk, int cap = 32) {
    CongestionAudit out;
    out.cap = cap;
    for (const auto& h : sk.handles) {
        int structural = 0;
        std::map<int, int> by_color;
        int pi1_total = 0;
        for (const auto& at : h.attachments) {
            const auto& o = sk.rec(at.other);
            if (o.kind == HandleKind::pi1_2) {
                ++by_color[o.height_color];
                ++pi1_total;
            } else {
                ++structural;
            }
        }
        int audited, raw;
        if (h.kind == HandleKind::pi1_2) {
            raw = static_cast<int>(h.attachments.size());
            audited = raw <= 1 ? raw : 3; // refined into a chain of unit pieces
        } else {
            int worst_color = 0;
            for (const auto& [c, n] : by_color) worst_color = std::max(worst_color, n);
            audited = structural + worst_color;
            raw = structural + pi1_total;
        }
        out.max = std::max(out.max, audited);
        out.raw_max = std::max(out.raw_max, raw);
        ++out.histogram[audited];
    }
    out.congested = out.max > cap;
    return out;
}

struct VolumeReport {
    std::map<int, int> counts_by_index;
    int total_handles = 0;
    int pi1_handles = 0;
    int colors = 0;
    long long dims_sum = 0;
    long long adjusted_volume = 0; // non-pi1 handles + pi1 * max(1, colors)

    double ratio() const { return dims_sum ? static_cast<double>(total_handles) / static_cast<double>(dims_sum) : 0.0; }
};

inline VolumeReport volume_report(const HandleSkeleton& sk) {
    VolumeReport out;
    out.counts_by_index = sk.counts_by_index();
    out.total_handles = static_cast<int>(sk.handles.size());
    for (const auto& h : sk.handles)
        if (h.kind == HandleKind::pi1_2) ++out.pi1_handles;
    out.colors = sk.pi1_colors;
    for (int d : sk.code_dims) out.dims_sum += d;
    long long factor = std::max(1, out.colors);
    out.adjusted_volume = (out.total_handles - out.pi1_handles) + static_cast<long long>(out.pi1_handles) * factor;
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo check of the radial-projection area bound: a flat k-simplex in
// the unit n-ball is pushed to the boundary sphere through a center p drawn
// uniformly from the ball of radius 1/2, and the mean image/source area
// ratio is estimated.

struct McPushResult {
    int k = 0, n = 0;
    long long samples = 0;
    double mean_ratio = 0.0;
    double ceiling = 0.0;
    bool finite = false;
    bool below_ceiling = false;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Local k-area scaling of the projection x -> exit point of the ray from x
// through p, restricted to the simplex spanned by `edges` at x.
inline double push_jacobian(const std::vector<double>& x, const std::vector<double>& p,
                            const std::vector<std::vector<double>>& edges) {
    const std::size_t n = x.size();
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = p[i] - x[i];
    double a = dot(u, u);
    if (a == 0) return std::numeric_limits<double>::infinity();
    double b = 2 * dot(x, u);
    double c = dot(x, x) - 1.0;
    double disc = b * b - 4 * a * c;
    double t = (-b + std::sqrt(disc)) / (2 * a);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = x[i] + t * u[i];
    double fu = dot(f, u);
    if (fu == 0) return std::numeric_limits<double>::infinity();

    const std::size_t k = edges.size();
    std::vector<std::vector<double>> img(k, std::vector<double>(n));
    for (std::size_t j = 0; j < k; ++j) {
        double fe = dot(f, edges[j]);
        for (std::size_t i = 0; i < n; ++i)
            img[j][i] = (1.0 - t) * (edges[j][i] - u[i] * fe / fu);
    }
    auto gram_det = [&](const std::vector<std::vector<double>>& vs) {
        std::vector<std::vector<double>> g(k, std::vector<double>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) g[i][j] = dot(vs[i], vs[j]);
        // small dense determinant
        double det = 1.0;
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < k; ++r)
                if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
            if (g[piv][col] == 0) return 0.0;
            if (piv != col) {
                std::swap(g[piv], g[col]);
                det = -det;
            }
            det *= g[col][col];
            for (std::size_t r = col + 1; r < k; ++r) {
                double m = g[r][col] / g[col][col];
                for (std::size_t cc = col; cc < k; ++cc) g[r][cc] -= m * g[col][cc];
            }
        }
        return det;
    };
    double num = gram_det(img);
    double den = gram_det(edges);
    if (den <= 0) return std::numeric_limits<double>::infinity();
    return std::sqrt(std::max(0.0, num) / den);
}

inline std::vector<double> sample_ball(Rng& rng, int n, double radius) {
    for (;;) {
        std::vector<double> p(static_cast<std::size_t>(n));
        double s = 0;
        for (auto& v : p) {
            v = 2 * rng.unit() - 1;
            s += v * v;
        }
        if (s <= 1.0) {
            for (auto& v : p) v *= radius;
            return p;
        }
    }
}

} // namespace detail

// Canonical placement: v_0 at offset*e_1, v_i = v_0 + scale*e_{i+1}.  Clear
// of the sampling ball of radius 1/2 by construction with the defaults.
inline std::vector<std::vector<double>> mc_push_simplex(int k, int n, double offset = 0.62,
                                                        double scale = 0.25) {
    std::vector<std::vector<double>> verts(static_cast<std::size_t>(k + 1),
                                           std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i <= k; ++i) {
        verts[static_cast<std::size_t>(i)][0] = offset;
        if (i > 0) verts[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = scale;
    }
    return verts;
}

// Mean image/source area ratio for a fixed simplex and fixed projection
// center, integrating over the simplex.
inline double push_image_area_ratio(const std::vector<std::vector<double>>& verts,
                                    const std::vector<double>& p, Rng& rng, int samples) {
    const int k = static_cast<int>(verts.size()) - 1;
    const int n = static_cast<int>(verts[0].size());
    std::vector<std::vector<double>> edges(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 1; j <= k; ++j)
        for (int i = 0; i < n; ++i)
            edges[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)] =
                verts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - verts[0][static_cast<std::size_t>(i)];
    double acc = 0;
    for (int s = 0; s < samples; ++s) {
        // uniform barycentric coordinates
        std::vector<double> lam(static_cast<std::size_t>(k + 1));
        double tot = 0;
        for (auto& l : lam) {
            l = -std::log(std::max(1e-300, 1.0 - rng.unit()));
            tot += l;
        }
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i <= k; ++i)
            for (int d = 0; d < n; ++d)
                x[static_cast<std::size_t>(d)] += (lam[static_cast<std::size_t>(i)] / tot) *
                                                  verts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
        acc += detail::push_jacobian(x, p, edges);
    }
    return acc / samples;
}

inline McPushResult mc_push(int k, int n, long long samples, std::uint64_t seed,
                            double ceiling = 50.0, double offset = 0.62, double scale = 0.25) {
    if (!(1 <= k && k < n && n <= 6)) throw std::invalid_argument("mc_push: need 1 <= k < n <= 6");
    if (samples <= 0) throw std::invalid_argument("mc_push: samples must be positive");
    auto verts = mc_push_simplex(k, n, offset, scale);
    double max_norm = 0;
    for (const auto& v : verts) max_norm = std::max(max_norm, std::sqrt(detail::dot(v, v)));
    if (max_norm >= 1.0 - 1e-9)
        throw std::invalid_argument("mc_push: degenerate placement, simplex touches the boundary sphere");

    std::vector<std::vector<double>> edges(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(n)));
    for (int j = 1; j <= k; ++j)
        for (int i = 0; i < n; ++i)
            edges[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)] =
                verts[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] - verts[0][static_cast<std::size_t>(i)];

    // fixed-size blocks with one substream each; the average is independent
    // of evaluation order
    const long long block = 1024;
    double acc = 0;
    long long done = 0;
    for (long long b = 0; done < samples; ++b) {
        Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(b + 1));
        long long todo = std::min(block, samples - done);
        for (long long s = 0; s < todo; ++s) {
            auto p = detail::sample_ball(rng, n, 0.5);
            std::vector<double> lam(static_cast<std::size_t>(k + 1));
            double tot = 0;
            for (auto& l : lam) {
                l = -std::log(std::max(1e-300, 1.0 - rng.unit()));
                tot += l;
            }
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            for (int i = 0; i <= k; ++i)
                for (int d = 0; d < n; ++d)
                    x[static_cast<std::size_t>(d)] += (lam[static_cast<std::size_t>(i)] / tot) *
                                                      verts[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
            acc += detail::push_jacobian(x, p, edges);
        }
        done += todo;
    }

    McPushResult res;
    res.k = k;
    res.n = n;
    res.samples = samples;
    res.mean_ratio = acc / static_cast<double>(samples);
    res.ceiling = ceiling;
    res.finite = std::isfinite(res.mean_ratio);
    res.below_ceiling = res.finite && res.mean_ratio <= ceiling;
    return res;
}

} // namespace homlift
