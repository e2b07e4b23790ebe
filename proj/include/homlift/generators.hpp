#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homlift/chain_complex.hpp"

namespace homlift {

// Parity-toggling builder: adding the same position twice cancels it.
// Generators need this for degenerate inputs (self-loop cells, fiber
// length 1).
class BinBuilder {
  public:
    BinBuilder(int rows, int cols) : rows_(rows), cols_(cols) {}

    void toggle(int r, int c) {
        auto it = live_.find({r, c});
        if (it == live_.end()) live_.insert({r, c});
        else live_.erase(it);
    }

    BinMatrix build() const {
        std::vector<std::pair<int, int>> e(live_.begin(), live_.end());
        return BinMatrix(rows_, cols_, std::move(e));
    }

  private:
    int rows_, cols_;
    std::set<std::pair<int, int>> live_;
};

// Accumulating builder over Z; zero sums are dropped.
class IntBuilder {
  public:
    IntBuilder(int rows, int cols) : rows_(rows), cols_(cols) {}

    void add(int r, int c, const Int& v) { acc_[{r, c}] += v; }

    IntMatrix build() const {
        std::vector<IntMatrix::Entry> e;
        for (const auto& [pos, v] : acc_)
            if (v != 0) e.push_back({pos.first, pos.second, v});
        return IntMatrix(rows_, cols_, std::move(e));
    }

  private:
    int rows_, cols_;
    std::map<std::pair<int, int>, Int> acc_;
};

// 1-complex of the cycle graph C_m: m vertices (degree 0), m edges
// (degree 1); edge j runs from vertex j to vertex (j+1) mod m.  m = 1 gives
// a single self-loop whose column is zero mod 2.
inline ChainComplex2 gen_cycle(int m) {
    if (m < 1) throw std::invalid_argument("gen_cycle: m must be >= 1");
    BinBuilder b(m, m);
    for (int j = 0; j < m; ++j) {
        b.toggle(j, j);
        b.toggle((j + 1) % m, j);
    }
    return ChainComplex2({m, m}, {b.build()});
}

// Cell index layout shared by the product and bundle generators and by the
// signed lifts, so that "entrywise equal" comparisons are meaningful.
// Degree 2: (a-edge i, b-edge j)      -> i*b1 + j
// Degree 1: (a-edge i, b-vertex j)    -> i*b0 + j            (first block)
//           (a-vertex i, b-edge j)    -> a1*b0 + i*b1 + j    (second block)
// Degree 0: (a-vertex i, b-vertex j)  -> i*b0 + j
struct ProductLayout {
    int a0, a1, b0, b1;
    int dim2() const { return a1 * b1; }
    int dim1() const { return a1 * b0 + a0 * b1; }
    int dim0() const { return a0 * b0; }
    int ee(int i, int j) const { return i * b1 + j; }
    int ev(int i, int j) const { return i * b0 + j; }
    int ve(int i, int j) const { return a1 * b0 + i * b1 + j; }
    int vv(int i, int j) const { return i * b0 + j; }
};

inline ProductLayout product_layout(const ChainComplex2& a, const ChainComplex2& b) {
    if (a.degrees() != 2 || b.degrees() != 2)
        throw std::invalid_argument("hypergraph product: both factors must be 1-complexes");
    return ProductLayout{a.dims[0], a.dims[1], b.dims[0], b.dims[1]};
}

// Homological product of two 1-complexes; the middle dimension is
// a1*b0 + a0*b1.
inline ChainComplex2 gen_hypergraph_product(const ChainComplex2& a, const ChainComplex2& b) {
    ProductLayout L = product_layout(a, b);
    const BinMatrix& da = a.boundaries[0];
    const BinMatrix& db = b.boundaries[0];

    BinBuilder d2(L.dim1(), L.dim2());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < L.b1; ++j) {
            for (int v : db.rows_of(j)) d2.toggle(L.ev(i, v), L.ee(i, j));
            for (int u : da.rows_of(i)) d2.toggle(L.ve(u, j), L.ee(i, j));
        }

    BinBuilder d1(L.dim0(), L.dim1());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < L.b0; ++j)
            for (int u : da.rows_of(i)) d1.toggle(L.vv(u, j), L.ev(i, j));
    for (int i = 0; i < L.a0; ++i)
        for (int j = 0; j < L.b1; ++j)
            for (int v : db.rows_of(j)) d1.toggle(L.vv(i, v), L.ve(i, j));

    return ChainComplex2({L.dim0(), L.dim1(), L.dim2()}, {d1.build(), d2.build()});
}

// Twisted product of a base 1-complex with a cellulated circle fiber of
// length m (m vertices, m edges).  The twist assigns to each incident pair
// (base 1-cell, base 0-cell) a cyclic shift in [0, m).
struct FiberBundleSpec {
    ChainComplex2 base;
    int fiber_len = 1;
    std::map<std::pair<int, int>, int> twists; // (base edge, base vertex) -> shift

    int twist(int edge, int vertex) const {
        auto it = twists.find({edge, vertex});
        if (it == twists.end())
            throw std::invalid_argument("FiberBundleSpec: pair not incident");
        return it->second;
    }

    // Fills zero shifts for unspecified incident pairs; rejects entries on
    // non-incident pairs and shifts outside [0, m).
    static FiberBundleSpec make(ChainComplex2 base, int m,
                                const std::vector<std::tuple<int, int, int>>& given = {}) {
        if (base.degrees() != 2)
            throw std::invalid_argument("FiberBundleSpec: base must be a 1-complex");
        if (m < 1) throw std::invalid_argument("FiberBundleSpec: fiber_len must be >= 1");
        FiberBundleSpec s;
        s.base = std::move(base);
        s.fiber_len = m;
        const BinMatrix& d = s.base.boundaries[0];
        for (auto [r, c] : d.entries()) s.twists[{c, r}] = 0;
        for (auto [e, v, t] : given) {
            if (!d.at(v, e))
                throw std::invalid_argument("FiberBundleSpec: twist on non-incident pair (" +
                                            std::to_string(e) + ", " + std::to_string(v) + ")");
            if (t < 0 || t >= m) throw std::invalid_argument("FiberBundleSpec: twist out of range");
            s.twists[{e, v}] = t;
        }
        return s;
    }
};

// Bundle complex over F2.  Boundary of (b0 x f) is b0 x df; boundary of
// (b1 x f) is b1 x df plus the shifted copies over the base vertices.
inline ChainComplex2 gen_fiber_bundle(const FiberBundleSpec& spec) {
    if (spec.base.degrees() != 2)
        throw std::invalid_argument("gen_fiber_bundle: base must be a 1-complex");
    const int m = spec.fiber_len;
    const BinMatrix& db = spec.base.boundaries[0];
    ProductLayout L{spec.base.dims[0], spec.base.dims[1], m, m};

    BinBuilder d2(L.dim1(), L.dim2());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < m; ++j) {
            d2.toggle(L.ev(i, j), L.ee(i, j));
            d2.toggle(L.ev(i, (j + 1) % m), L.ee(i, j));
            for (int a : db.rows_of(i)) {
                int t = spec.twist(i, a);
                d2.toggle(L.ve(a, (j + t) % m), L.ee(i, j));
            }
        }

    BinBuilder d1(L.dim0(), L.dim1());
    for (int i = 0; i < L.a1; ++i)
        for (int j = 0; j < m; ++j)
            for (int a : db.rows_of(i)) {
                int t = spec.twist(i, a);
                d1.toggle(L.vv(a, (j + t) % m), L.ev(i, j));
            }
    for (int i = 0; i < L.a0; ++i)
        for (int j = 0; j < m; ++j) {
            d1.toggle(L.vv(i, j), L.ve(i, j));
            d1.toggle(L.vv(i, (j + 1) % m), L.ve(i, j));
        }

    return ChainComplex2({L.dim0(), L.dim1(), L.dim2()}, {d1.build(), d2.build()});
}

// Toric complex: product of the length-L cycle with itself.
inline ChainComplex2 gen_toric(int L) {
    ChainComplex2 c = gen_cycle(L);
    return gen_hypergraph_product(c, c);
}

} // namespace homlift
