#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "homlift/bin_matrix.hpp"
#include "homlift/int_matrix.hpp"

namespace homlift {

// Index convention, used everywhere: dims[j] is the dimension of degree j,
// and boundaries[j] maps degree j+1 to degree j, so boundaries[j] has shape
// dims[j] x dims[j+1].  A three-term code complex stores two matrices, with
// degree 0 = X-stabilizers, degree 1 = qubits, degree 2 = Z-stabilizers.

struct ValidationReport {
    bool ok = true;
    // First violating triple when !ok: product of boundaries[j] and
    // boundaries[j+1] is nonzero at (row, col).
    int j = -1;
    int row = -1;
    int col = -1;
};

namespace detail {
inline void check_shapes(const std::vector<int>& dims, int rows, int cols, std::size_t j) {
    if (rows != dims[j] || cols != dims[j + 1])
        throw std::invalid_argument("chain complex: boundary " + std::to_string(j) +
                                    " has shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                                    ", expected " + std::to_string(dims[j]) + "x" +
                                    std::to_string(dims[j + 1]));
}
} // namespace detail

struct ChainComplex2 {
    std::vector<int> dims;
    std::vector<BinMatrix> boundaries;

    ChainComplex2() = default;

    ChainComplex2(std::vector<int> d, std::vector<BinMatrix> b)
        : dims(std::move(d)), boundaries(std::move(b)) {
        if (dims.empty()) throw std::invalid_argument("chain complex: no degrees");
        if (boundaries.size() + 1 != dims.size())
            throw std::invalid_argument("chain complex: need one boundary per consecutive degree pair");
        for (std::size_t j = 0; j < boundaries.size(); ++j)
            detail::check_shapes(dims, boundaries[j].rows(), boundaries[j].cols(), j);
    }

    static ChainComplex2 from_boundaries(std::vector<BinMatrix> b) {
        if (b.empty()) throw std::invalid_argument("from_boundaries: empty");
        std::vector<int> d;
        d.push_back(b[0].rows());
        for (std::size_t j = 0; j < b.size(); ++j) d.push_back(b[j].cols());
        return ChainComplex2(std::move(d), std::move(b));
    }

    std::size_t degrees() const { return dims.size(); }
};

struct ChainComplexZ {
    std::vector<int> dims;
    std::vector<IntMatrix> boundaries;

    ChainComplexZ() = default;

    ChainComplexZ(std::vector<int> d, std::vector<IntMatrix> b)
        : dims(std::move(d)), boundaries(std::move(b)) {
        if (dims.empty()) throw std::invalid_argument("chain complex: no degrees");
        if (boundaries.size() + 1 != dims.size())
            throw std::invalid_argument("chain complex: need one boundary per consecutive degree pair");
        for (std::size_t j = 0; j < boundaries.size(); ++j)
            detail::check_shapes(dims, boundaries[j].rows(), boundaries[j].cols(), j);
    }

    static ChainComplexZ from_boundaries(std::vector<IntMatrix> b) {
        if (b.empty()) throw std::invalid_argument("from_boundaries: empty");
        std::vector<int> d;
        d.push_back(b[0].rows());
        for (std::size_t j = 0; j < b.size(); ++j) d.push_back(b[j].cols());
        return ChainComplexZ(std::move(d), std::move(b));
    }

    std::size_t degrees() const { return dims.size(); }
};

// Checks that consecutive boundaries compose to zero.  Shape incompatibility
// is a construction error (the constructors throw), not a failed validation.
inline ValidationReport validate_complex(const ChainComplex2& c) {
    for (std::size_t j = 0; j + 1 < c.boundaries.size(); ++j) {
        BinMatrix p = c.boundaries[j].multiply(c.boundaries[j + 1]);
        if (p.nnz() != 0) {
            auto [r, col] = p.entries().front();
            return {false, static_cast<int>(j), r, col};
        }
    }
    return {};
}

inline ValidationReport validate_complex(const ChainComplexZ& c) {
    for (std::size_t j = 0; j + 1 < c.boundaries.size(); ++j) {
        IntMatrix p = c.boundaries[j].multiply(c.boundaries[j + 1]);
        if (p.nnz() != 0) {
            const auto& e = p.entries().front();
            return {false, static_cast<int>(j), e.row, e.col};
        }
    }
    return {};
}

// Maximum over all rows and columns of all boundaries of the l1 norm.
inline Int sparsity(const ChainComplex2& c) {
    Int m = 0;
    for (const auto& b : c.boundaries) m = std::max(m, Int(b.max_weight()));
    return m;
}

inline Int sparsity(const ChainComplexZ& c) {
    Int m = 0;
    for (const auto& b : c.boundaries) m = std::max(m, b.max_l1());
    return m;
}

// F2 Betti number in degree j: dim ker(boundary out of j) - rank(boundary
// into j); absent boundaries act as zero maps.
inline int betti2(const ChainComplex2& c, int j) {
    if (j < 0 || j >= static_cast<int>(c.dims.size()))
        throw std::out_of_range("betti2: degree out of range");
    int rank_out = 0;
    if (j >= 1) rank_out = rank2(c.boundaries[static_cast<std::size_t>(j - 1)]);
    int rank_in = 0;
    if (j < static_cast<int>(c.boundaries.size())) rank_in = rank2(c.boundaries[static_cast<std::size_t>(j)]);
    return c.dims[static_cast<std::size_t>(j)] - rank_out - rank_in;
}

inline ChainComplex2 mod2(const ChainComplexZ& c) {
    std::vector<BinMatrix> b;
    b.reserve(c.boundaries.size());
    for (const auto& m : c.boundaries) b.push_back(m.mod2());
    return ChainComplex2(c.dims, std::move(b));
}

inline bool complexes_equal(const ChainComplex2& a, const ChainComplex2& b) {
    if (a.dims != b.dims || a.boundaries.size() != b.boundaries.size()) return false;
    for (std::size_t j = 0; j < a.boundaries.size(); ++j)
        if (!(a.boundaries[j] == b.boundaries[j])) return false;
    return true;
}

inline bool complexes_equal(const ChainComplexZ& a, const ChainComplexZ& b) {
    if (a.dims != b.dims || a.boundaries.size() != b.boundaries.size()) return false;
    for (std::size_t j = 0; j < a.boundaries.size(); ++j)
        if (!(a.boundaries[j] == b.boundaries[j])) return false;
    return true;
}

} // namespace homlift
