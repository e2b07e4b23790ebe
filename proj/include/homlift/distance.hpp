#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "homlift/bitvec.hpp"
#include "homlift/chain_complex.hpp"

namespace homlift {

enum class Side { homology, cohomology };

struct DistanceOutcome {
    enum class Kind { found, no_logical, exceeds_budget };
    Kind kind = Kind::no_logical;
    int d = -1;

    bool found() const { return kind == Kind::found; }
};

namespace detail {

// Advance a k-subset of [0, n) in lexicographic order; false when done.
inline bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[static_cast<std::size_t>(i)] < n - k + i) {
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

struct SyndromeKey {
    std::vector<std::uint64_t> words;
    bool operator<(const SyndromeKey& o) const { return words < o.words; }
};

inline SyndromeKey key_of(const BitVec& v) {
    SyndromeKey k;
    for (int i : v.ones()) {
        // pack set-bit positions; cheap and collision-free
        k.words.push_back(static_cast<std::uint64_t>(i));
    }
    return k;
}

} // namespace detail

// Minimum Hamming weight of a middle-degree cycle (resp. cocycle) that is
// not a boundary (resp. coboundary).  Weight-increasing support enumeration
// with boundary membership decided by elimination; above `mitm_threshold`
// the weight-w search switches to a meet-in-the-middle syndrome join.
inline DistanceOutcome distance(const ChainComplex2& c, Side side, int budget = -1,
                                int mitm_threshold = 12) {
    if (c.degrees() != 3) throw std::invalid_argument("distance: need a three-term complex");
    const int q = c.dims[1];
    if (budget < 0) budget = q;
    if (betti2(c, 1) == 0) return {DistanceOutcome::Kind::no_logical, -1};

    // cycle condition matrix (columns indexed by middle cells) and the
    // boundary subspace to quotient out
    BinMatrix zc = side == Side::homology ? c.boundaries[0] : c.boundaries[1].transpose();
    const BinMatrix& img_src = side == Side::homology ? c.boundaries[1] : c.boundaries[0];
    F2Echelon image(static_cast<std::size_t>(q));
    if (side == Side::homology) {
        for (int z = 0; z < img_src.cols(); ++z) image.add(img_src.col_bits(z));
    } else {
        for (int r = 0; r < img_src.rows(); ++r) image.add(img_src.row_bits(r));
    }

    std::vector<BitVec> syndrome_col;
    syndrome_col.reserve(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) syndrome_col.push_back(zc.col_bits(i));

    auto is_logical = [&](const BitVec& v) { return !image.contains(v); };

    for (int w = 1; w <= budget; ++w) {
        if (w <= mitm_threshold || q < 2) {
            if (w > q) break;
            std::vector<int> idx(static_cast<std::size_t>(w));
            std::iota(idx.begin(), idx.end(), 0);
            do {
                BitVec syn(static_cast<std::size_t>(zc.rows()));
                for (int i : idx) syn.xor_with(syndrome_col[static_cast<std::size_t>(i)]);
                if (syn.any()) continue;
                BitVec v(static_cast<std::size_t>(q));
                for (int i : idx) v.set(static_cast<std::size_t>(i));
                if (is_logical(v)) return {DistanceOutcome::Kind::found, w};
            } while (detail::next_combination(idx, q));
        } else {
            // meet in the middle: left supports hashed by syndrome, right
            // supports joined against them
            const int h = q / 2;
            const int rcount = q - h;
            for (int wa = std::max(0, w - rcount); wa <= std::min(w, h); ++wa) {
                const int wb = w - wa;
                std::map<detail::SyndromeKey, std::vector<BitVec>> lefts;
                {
                    if (wa == 0) {
                        BitVec v(static_cast<std::size_t>(q));
                        lefts[detail::key_of(BitVec(static_cast<std::size_t>(zc.rows())))].push_back(v);
                    } else {
                        std::vector<int> idx(static_cast<std::size_t>(wa));
                        std::iota(idx.begin(), idx.end(), 0);
                        do {
                            BitVec syn(static_cast<std::size_t>(zc.rows()));
                            BitVec v(static_cast<std::size_t>(q));
                            for (int i : idx) {
                                syn.xor_with(syndrome_col[static_cast<std::size_t>(i)]);
                                v.set(static_cast<std::size_t>(i));
                            }
                            lefts[detail::key_of(syn)].push_back(v);
                        } while (detail::next_combination(idx, h));
                    }
                }
                auto probe = [&](const BitVec& syn, const BitVec& v) -> const BitVec* {
                    auto it = lefts.find(detail::key_of(syn));
                    if (it == lefts.end()) return nullptr;
                    for (const BitVec& lv : it->second) {
                        BitVec full = lv;
                        full.xor_with(v);
                        if (is_logical(full)) return &lv;
                    }
                    return nullptr;
                };
                if (wb == 0) {
                    BitVec v(static_cast<std::size_t>(q));
                    if (probe(BitVec(static_cast<std::size_t>(zc.rows())), v))
                        return {DistanceOutcome::Kind::found, w};
                } else if (wb <= rcount) {
                    std::vector<int> idx(static_cast<std::size_t>(wb));
                    std::iota(idx.begin(), idx.end(), 0);
                    do {
                        BitVec syn(static_cast<std::size_t>(zc.rows()));
                        BitVec v(static_cast<std::size_t>(q));
                        for (int i : idx) {
                            int col = h + i;
                            syn.xor_with(syndrome_col[static_cast<std::size_t>(col)]);
                            v.set(static_cast<std::size_t>(col));
                        }
                        if (probe(syn, v)) return {DistanceOutcome::Kind::found, w};
                    } while (detail::next_combination(idx, rcount));
                }
            }
        }
    }
    return {DistanceOutcome::Kind::exceeds_budget, -1};
}

// Exact rational, reduced; never floating point.
struct Ratio {
    long long num = 0;
    long long den = 1;

    static Ratio of(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("Ratio: zero denominator");
        long long g = std::gcd(n, d);
        if (g == 0) g = 1;
        n /= g;
        d /= g;
        if (d < 0) { n = -n; d = -d; }
        return {n, d};
    }
};

struct SystolicReport {
    DistanceOutcome d_hom;
    DistanceOutcome d_cohom;
    int n = 0;
    Ratio sr;
    bool ok = false; // both distances found
};

inline SystolicReport systolic_ratio(const ChainComplex2& c, int budget = -1) {
    SystolicReport rep;
    rep.n = c.dims[1];
    rep.d_hom = distance(c, Side::homology, budget);
    rep.d_cohom = distance(c, Side::cohomology, budget);
    rep.ok = rep.d_hom.found() && rep.d_cohom.found();
    if (rep.ok)
        rep.sr = Ratio::of(static_cast<long long>(rep.d_hom.d) * rep.d_cohom.d, rep.n);
    return rep;
}

} // namespace homlift
