#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homlift/bitvec.hpp"
#include "homlift/chain_complex.hpp"
#include "homlift/int_matrix.hpp"
#include "homlift/rng.hpp"

namespace homlift {

using Dense = std::vector<std::vector<Int>>;

namespace detail {

inline Dense dense_identity(int n) {
    Dense d(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return d;
}

inline void row_swap(Dense& m, int a, int b) {
    std::swap(m[static_cast<std::size_t>(a)], m[static_cast<std::size_t>(b)]);
}

inline void row_negate(Dense& m, int a) {
    for (auto& v : m[static_cast<std::size_t>(a)]) v = -v;
}

// row a -= q * row b
inline void row_axpy(Dense& m, int a, int b, const Int& q) {
    auto& ra = m[static_cast<std::size_t>(a)];
    auto& rb = m[static_cast<std::size_t>(b)];
    for (std::size_t j = 0; j < ra.size(); ++j) ra[j] -= q * rb[j];
}

inline void col_swap(Dense& m, int a, int b) {
    for (auto& r : m) std::swap(r[static_cast<std::size_t>(a)], r[static_cast<std::size_t>(b)]);
}

inline void col_negate(Dense& m, int a) {
    for (auto& r : m) r[static_cast<std::size_t>(a)] = -r[static_cast<std::size_t>(a)];
}

// col a -= q * col b
inline void col_axpy(Dense& m, int a, int b, const Int& q) {
    for (auto& r : m)
        r[static_cast<std::size_t>(a)] -= q * r[static_cast<std::size_t>(b)];
}

} // namespace detail

struct HnfResult {
    Dense h;                 // row-style Hermite normal form, h = u * input
    Dense u;                 // unimodular witness
    int rank = 0;
    std::vector<int> pivot_cols; // pivot column per echelon row
};

// Row-style Hermite normal form by integer Gaussian elimination: pivots
// positive, entries above each pivot reduced into [0, pivot).
inline HnfResult hnf_dense(Dense h) {
    const int rows = static_cast<int>(h.size());
    const int cols = rows ? static_cast<int>(h[0].size()) : 0;
    HnfResult res;
    res.u = detail::dense_identity(rows);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // Euclidean reduction within the column until one nonzero survives.
        for (;;) {
            int best = -1;
            for (int i = r; i < rows; ++i) {
                const Int& v = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                if (v != 0 && (best < 0 || abs(v) < abs(h[static_cast<std::size_t>(best)][static_cast<std::size_t>(c)])))
                    best = i;
            }
            if (best < 0) break;
            if (best != r) {
                detail::row_swap(h, best, r);
                detail::row_swap(res.u, best, r);
            }
            bool clean = true;
            for (int i = r + 1; i < rows; ++i) {
                const Int& v = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                if (v == 0) continue;
                Int q = v / h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
                if (q != 0) {
                    detail::row_axpy(h, i, r, q);
                    detail::row_axpy(res.u, i, r, q);
                }
                if (h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) clean = false;
            }
            if (clean) break;
        }
        if (h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 0) continue;
        if (h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] < 0) {
            detail::row_negate(h, r);
            detail::row_negate(res.u, r);
        }
        const Int& piv = h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int i = 0; i < r; ++i) {
            Int v = h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            // floor division so the residue lands in [0, pivot)
            Int q = v / piv;
            if (v - q * piv < 0) q -= 1;
            if (q != 0) {
                detail::row_axpy(h, i, r, q);
                detail::row_axpy(res.u, i, r, q);
            }
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    res.rank = r;
    res.h = std::move(h);
    return res;
}

inline HnfResult hnf(const IntMatrix& m) { return hnf_dense(m.to_dense()); }

inline IntMatrix hnf_matrix(const IntMatrix& m) { return IntMatrix::from_dense(hnf(m).h); }

inline int rank_z(const IntMatrix& m) { return hnf(m).rank; }

// Particular integer solution of A x = b, if one exists.  Works through the
// column-echelon form A U^T = H^T obtained from the HNF of A^T.
inline std::optional<std::vector<Int>> integer_solve(const IntMatrix& a, const std::vector<Int>& b) {
    if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("integer_solve: size mismatch");
    HnfResult t = hnf_dense(a.transpose().to_dense());
    std::vector<Int> resid = b;
    std::vector<Int> y(static_cast<std::size_t>(a.cols()), 0);
    for (int j = 0; j < t.rank; ++j) {
        int p = t.pivot_cols[static_cast<std::size_t>(j)];
        const Int& piv = t.h[static_cast<std::size_t>(j)][static_cast<std::size_t>(p)];
        Int q = resid[static_cast<std::size_t>(p)] / piv;
        if (q * piv != resid[static_cast<std::size_t>(p)]) return std::nullopt;
        y[static_cast<std::size_t>(j)] = q;
        if (q != 0)
            for (int i = 0; i < a.rows(); ++i)
                resid[static_cast<std::size_t>(i)] -= q * t.h[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    for (const Int& v : resid)
        if (v != 0) return std::nullopt;
    std::vector<Int> x(static_cast<std::size_t>(a.cols()), 0);
    for (int j = 0; j < t.rank; ++j) {
        if (y[static_cast<std::size_t>(j)] == 0) continue;
        for (int k = 0; k < a.cols(); ++k)
            x[static_cast<std::size_t>(k)] += y[static_cast<std::size_t>(j)] * t.u[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
    return x;
}

// Basis of the integer kernel of A (rows of the HNF witness of A^T past the
// rank).
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& a) {
    HnfResult t = hnf_dense(a.transpose().to_dense());
    std::vector<std::vector<Int>> basis;
    for (int j = t.rank; j < a.cols(); ++j) basis.push_back(t.u[static_cast<std::size_t>(j)]);
    return basis;
}

struct SnfResult {
    std::vector<Int> invariant_factors; // positive, each dividing the next
    int rank = 0;
    bool has_witnesses = false;
    Dense u, v; // when requested: u * input * v = diag(invariant_factors)
};

// Smith normal form.  Pivoting: minimal absolute value, Markowitz-style
// fill tie-break, then lexicographic position.
inline SnfResult snf(const IntMatrix& m, bool want_witnesses = false) {
    Dense d = m.to_dense();
    const int rows = m.rows(), cols = m.cols();
    SnfResult res;
    res.has_witnesses = want_witnesses;
    if (want_witnesses) {
        res.u = detail::dense_identity(rows);
        res.v = detail::dense_identity(cols);
    }
    auto nnz_row = [&](int i, int from) {
        int c = 0;
        for (int j = from; j < cols; ++j)
            if (d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) ++c;
        return c;
    };
    auto nnz_col = [&](int j, int from) {
        int c = 0;
        for (int i = from; i < rows; ++i)
            if (d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0) ++c;
        return c;
    };

    int t = 0;
    while (t < rows && t < cols) {
        // pivot selection over the trailing submatrix
        int pi = -1, pj = -1;
        long long pmark = 0;
        Int pabs = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                const Int& v = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (v == 0) continue;
                Int a = abs(v);
                long long mark = static_cast<long long>(nnz_row(i, t) - 1) * (nnz_col(j, t) - 1);
                if (pi < 0 || a < pabs || (a == pabs && mark < pmark)) {
                    pi = i; pj = j; pabs = a; pmark = mark;
                }
            }
        if (pi < 0) break;
        if (pi != t) { detail::row_swap(d, pi, t); if (want_witnesses) detail::row_swap(res.u, pi, t); }
        if (pj != t) { detail::col_swap(d, pj, t); if (want_witnesses) detail::col_swap(res.v, pj, t); }

        for (;;) {
            bool again = false;
            for (int i = t + 1; i < rows; ++i) {
                const Int& v = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)];
                if (v == 0) continue;
                Int q = v / d[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
                if (q != 0) {
                    detail::row_axpy(d, i, t, q);
                    if (want_witnesses) detail::row_axpy(res.u, i, t, q);
                }
                if (d[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] != 0) {
                    detail::row_swap(d, i, t);
                    if (want_witnesses) detail::row_swap(res.u, i, t);
                    again = true;
                }
            }
            if (again) continue;
            for (int j = t + 1; j < cols; ++j) {
                const Int& v = d[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                if (v == 0) continue;
                Int q = v / d[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)];
                if (q != 0) {
                    detail::col_axpy(d, j, t, q);
                    if (want_witnesses) detail::col_axpy(res.v, j, t, q);
                }
                if (d[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] != 0) {
                    detail::col_swap(d, j, t);
                    if (want_witnesses) detail::col_swap(res.v, j, t);
                    again = true;
                }
            }
            if (again) continue;
            // divisibility of the trailing block by the pivot
            bool fixed = true;
            for (int i = t + 1; i < rows && fixed; ++i)
                for (int j = t + 1; j < cols && fixed; ++j)
                    if (d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] %
                            d[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] != 0) {
                        detail::row_axpy(d, t, i, Int(-1));
                        if (want_witnesses) detail::row_axpy(res.u, t, i, Int(-1));
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] < 0) {
            detail::row_negate(d, t);
            if (want_witnesses) detail::row_negate(res.u, t);
        }
        ++t;
    }
    res.rank = t;
    for (int i = 0; i < t; ++i)
        res.invariant_factors.push_back(d[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
    return res;
}

// Fraction-free determinant (Bareiss) of a square dense block.
inline Int bareiss_det(Dense m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    for (const auto& r : m)
        if (static_cast<int>(r.size()) != n) throw std::invalid_argument("bareiss_det: not square");
    Int sign = 1, prev = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int s = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) { s = i; break; }
            if (s < 0) return 0;
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(s)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                     m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                    prev;
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0;
        }
        prev = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return sign * m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

inline Int bareiss_det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("bareiss_det: not square");
    return bareiss_det(m.to_dense());
}

struct DegreeHomology {
    int free_rank = 0;
    std::vector<Int> torsion;   // invariant factors > 1 of the incoming boundary
    std::vector<Int> cotorsion; // torsion of the cohomology in this degree
};

struct HomologySummary {
    std::vector<DegreeHomology> degrees;
};

// Integer homology of an admissible complex: free ranks and torsion per
// degree.  Cohomology torsion is the homology torsion shifted up one degree
// (universal coefficients), reported alongside.
inline HomologySummary homology_z(const ChainComplexZ& c) {
    ValidationReport rep = validate_complex(c);
    if (!rep.ok)
        throw std::invalid_argument("homology_z: complex not admissible (boundary " + std::to_string(rep.j) +
                                    " times boundary " + std::to_string(rep.j + 1) + " is nonzero)");
    const int n = static_cast<int>(c.dims.size());
    std::vector<int> ranks(c.boundaries.size());
    std::vector<std::vector<Int>> tors(c.boundaries.size());
    for (std::size_t j = 0; j < c.boundaries.size(); ++j) {
        SnfResult s = snf(c.boundaries[j]);
        ranks[j] = s.rank;
        for (const Int& f : s.invariant_factors)
            if (f > 1) tors[j].push_back(f);
    }
    HomologySummary out;
    out.degrees.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto& deg = out.degrees[static_cast<std::size_t>(j)];
        int rank_out = (j >= 1) ? ranks[static_cast<std::size_t>(j - 1)] : 0;
        int rank_in = (j < n - 1) ? ranks[static_cast<std::size_t>(j)] : 0;
        deg.free_rank = c.dims[static_cast<std::size_t>(j)] - rank_out - rank_in;
        if (j < n - 1) deg.torsion = tors[static_cast<std::size_t>(j)];
        if (j >= 1) deg.cotorsion = tors[static_cast<std::size_t>(j - 1)];
    }
    return out;
}

// Rank-revealing PLUQ factorization over F2: input = P * L * U * Q with L
// unit-lower and U unit-upper trapezoidal of width/height rank.  Pivoting is
// Markowitz-style; `fill` counts entries of L and U beyond what the input
// supplied.  A full-rank square result certifies a determinant +-1 lift (the
// naive lifts of L and U are unit triangular).
struct SparseLuResult {
    bool completed = false;   // false only when the fill budget was exhausted
    int rank = 0;
    int rows = 0, cols = 0;
    long long fill = 0;
    std::vector<int> row_perm; // permuted position -> original row
    std::vector<int> col_perm; // permuted position -> original column
    BinMatrix l, u;            // in permuted coordinates

    bool full_rank() const { return rank == std::min(rows, cols); }
    bool certifies_unimodular_lift() const { return completed && rows == cols && rank == rows; }
};

inline SparseLuResult try_sparse_lu(const BinMatrix& m, long long fill_budget) {
    const int rows = m.rows(), cols = m.cols();
    SparseLuResult res;
    res.rows = rows;
    res.cols = cols;
    std::vector<BitVec> a;
    a.reserve(static_cast<std::size_t>(rows));
    for (int i = 0; i < rows; ++i) a.push_back(m.row_bits(i));
    std::vector<BitVec> lrows(static_cast<std::size_t>(rows), BitVec(static_cast<std::size_t>(rows)));
    std::vector<int> rperm(static_cast<std::size_t>(rows)), cperm(static_cast<std::size_t>(cols));
    std::iota(rperm.begin(), rperm.end(), 0);
    std::iota(cperm.begin(), cperm.end(), 0);
    // cpos[j] = current permuted position of original column j
    std::vector<int> cpos(static_cast<std::size_t>(cols));
    std::iota(cpos.begin(), cpos.end(), 0);

    const long long base_nnz = static_cast<long long>(m.nnz());
    long long lu_nnz = 0;
    int t = 0;
    while (t < rows && t < cols) {
        // Markowitz pivot over the active submatrix (rows >= t in permuted
        // order, columns at permuted position >= t).
        std::vector<int> colcnt(static_cast<std::size_t>(cols), 0);
        std::vector<int> rowcnt(static_cast<std::size_t>(rows), 0);
        for (int pi = t; pi < rows; ++pi) {
            int i = rperm[static_cast<std::size_t>(pi)];
            for (int j : a[static_cast<std::size_t>(i)].ones())
                if (cpos[static_cast<std::size_t>(j)] >= t) {
                    ++rowcnt[static_cast<std::size_t>(i)];
                    ++colcnt[static_cast<std::size_t>(j)];
                }
        }
        long long best = -1;
        int bi = -1, bj = -1;
        for (int pi = t; pi < rows; ++pi) {
            int i = rperm[static_cast<std::size_t>(pi)];
            for (int j : a[static_cast<std::size_t>(i)].ones()) {
                if (cpos[static_cast<std::size_t>(j)] < t) continue;
                long long mark = static_cast<long long>(rowcnt[static_cast<std::size_t>(i)] - 1) *
                                 (colcnt[static_cast<std::size_t>(j)] - 1);
                if (best < 0 || mark < best || (mark == best && (i < bi || (i == bi && j < bj)))) {
                    best = mark; bi = i; bj = j;
                }
            }
        }
        if (best < 0) break; // active submatrix is zero: rank revealed

        // bring pivot to position t
        int piv_rpos = -1;
        for (int pi = t; pi < rows; ++pi)
            if (rperm[static_cast<std::size_t>(pi)] == bi) { piv_rpos = pi; break; }
        std::swap(rperm[static_cast<std::size_t>(piv_rpos)], rperm[static_cast<std::size_t>(t)]);
        int old_cpos = cpos[static_cast<std::size_t>(bj)];
        for (int j = 0; j < cols; ++j)
            if (cpos[static_cast<std::size_t>(j)] == t) { cpos[static_cast<std::size_t>(j)] = old_cpos; break; }
        cpos[static_cast<std::size_t>(bj)] = t;

        for (int pi = t + 1; pi < rows; ++pi) {
            int i = rperm[static_cast<std::size_t>(pi)];
            if (a[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(bj))) {
                a[static_cast<std::size_t>(i)].xor_with(a[static_cast<std::size_t>(bi)]);
                lrows[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(t));
            }
        }
        lu_nnz += static_cast<long long>(a[static_cast<std::size_t>(bi)].popcount());
        ++t;
        long long current_fill = lu_nnz - base_nnz; // U beyond input; L diag free
        for (int pi = 0; pi < rows; ++pi)
            current_fill += static_cast<long long>(lrows[static_cast<std::size_t>(rperm[static_cast<std::size_t>(pi)])].popcount());
        if (current_fill > fill_budget && fill_budget >= 0) {
            res.rank = t;
            res.fill = current_fill;
            res.completed = false;
            return res;
        }
    }
    res.rank = t;
    res.completed = true;

    // assemble L (rows x rank) and U (rank x cols) in permuted coordinates
    std::vector<std::pair<int, int>> le, ue;
    for (int pi = 0; pi < rows; ++pi) {
        int i = rperm[static_cast<std::size_t>(pi)];
        if (pi < t) le.emplace_back(pi, pi);
        for (int k : lrows[static_cast<std::size_t>(i)].ones())
            if (k < pi) le.emplace_back(pi, k);
    }
    for (int pi = 0; pi < t; ++pi) {
        int i = rperm[static_cast<std::size_t>(pi)];
        for (int j : a[static_cast<std::size_t>(i)].ones()) ue.emplace_back(pi, cpos[static_cast<std::size_t>(j)]);
    }
    res.l = BinMatrix(rows, t, std::move(le));
    res.u = BinMatrix(t, cols, std::move(ue));
    res.row_perm = rperm;
    res.col_perm.assign(static_cast<std::size_t>(cols), 0);
    for (int j = 0; j < cols; ++j) res.col_perm[static_cast<std::size_t>(cpos[static_cast<std::size_t>(j)])] = j;
    long long lu = static_cast<long long>(res.l.nnz() + res.u.nnz()) - t;
    res.fill = std::max<long long>(0, lu - base_nnz);
    return res;
}

// Reassemble P*L*U*Q for verification.
inline BinMatrix lu_product(const SparseLuResult& r) {
    std::vector<std::pair<int, int>> pe, qe;
    for (int pi = 0; pi < r.rows; ++pi) pe.emplace_back(r.row_perm[static_cast<std::size_t>(pi)], pi);
    for (int pj = 0; pj < r.cols; ++pj) qe.emplace_back(pj, r.col_perm[static_cast<std::size_t>(pj)]);
    BinMatrix p(r.rows, r.rows, std::move(pe));
    BinMatrix q(r.cols, r.cols, std::move(qe));
    return p.multiply(r.l).multiply(r.u).multiply(q);
}

struct MinorGcdResult {
    Int gcd = 0;        // gcd of |det| over sampled maximal full-rank minors
    int trials_run = 0;
    bool early_exit = false; // stopped because the running gcd reached 1
    std::vector<int> last_columns;
};

// Samples maximal full-rank column subsets (random column order, re-ranked
// by HNF) and accumulates the gcd of their determinants.  The result is an
// upper bound on the gcd over all such minors; 1 certifies a torsion-free
// cokernel.
inline MinorGcdResult probe_minor_gcd(const IntMatrix& m, int trials, std::uint64_t seed) {
    const int r = m.rows();
    if (rank_z(m) != r) throw std::invalid_argument("probe_minor_gcd: input must have full row rank");
    MinorGcdResult out;
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<int> order(static_cast<std::size_t>(m.cols()));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        // greedy independent subset in shuffled order
        std::vector<int> chosen;
        Dense sub;
        for (int c : order) {
            std::vector<int> cand = chosen;
            cand.push_back(c);
            Dense d(static_cast<std::size_t>(r), std::vector<Int>(cand.size(), 0));
            for (std::size_t k = 0; k < cand.size(); ++k)
                for (int i = 0; i < r; ++i)
                    d[static_cast<std::size_t>(i)][k] = m.at(i, cand[k]);
            if (hnf_dense(d).rank == static_cast<int>(cand.size())) {
                chosen = std::move(cand);
                if (static_cast<int>(chosen.size()) == r) break;
            }
        }
        std::sort(chosen.begin(), chosen.end());
        Dense d(static_cast<std::size_t>(r), std::vector<Int>(static_cast<std::size_t>(r), 0));
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k)
                d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = m.at(i, chosen[static_cast<std::size_t>(k)]);
        Int det = abs(bareiss_det(std::move(d)));
        out.gcd = out.gcd == 0 ? det : boost::multiprecision::gcd(out.gcd, det);
        out.last_columns = chosen;
        ++out.trials_run;
        if (out.gcd == 1) {
            out.early_exit = true;
            break;
        }
    }
    return out;
}

} // namespace homlift
