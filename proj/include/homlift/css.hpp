#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homlift/chain_complex.hpp"

namespace homlift {

// CSS code as stabilizer supports (0-indexed qubit sets, stored sorted).
// Valid when every X-stabilizer meets every Z-stabilizer in an even number
// of qubits; exactly then the dictionary to a three-term complex applies.
struct CssCode {
    int q = 0;
    std::vector<std::vector<int>> x_stabs;
    std::vector<std::vector<int>> z_stabs;

    static std::vector<int> normalize(std::vector<int> s, int q) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int i : s)
            if (i < 0 || i >= q) throw std::invalid_argument("CssCode: qubit index out of range");
        return s;
    }

    static CssCode make(int q, std::vector<std::vector<int>> xs, std::vector<std::vector<int>> zs) {
        CssCode c;
        c.q = q;
        for (auto& s : xs) c.x_stabs.push_back(normalize(std::move(s), q));
        for (auto& s : zs) c.z_stabs.push_back(normalize(std::move(s), q));
        return c;
    }
};

// First (X index, Z index) pair with odd overlap, if any.
inline std::optional<std::pair<int, int>> commutation_violation(const CssCode& code) {
    for (std::size_t i = 0; i < code.x_stabs.size(); ++i)
        for (std::size_t k = 0; k < code.z_stabs.size(); ++k) {
            const auto& a = code.x_stabs[i];
            const auto& b = code.z_stabs[k];
            std::size_t ai = 0, bi = 0, common = 0;
            while (ai < a.size() && bi < b.size()) {
                if (a[ai] < b[bi]) ++ai;
                else if (a[ai] > b[bi]) ++bi;
                else { ++common; ++ai; ++bi; }
            }
            if (common % 2 != 0) return std::make_pair(static_cast<int>(i), static_cast<int>(k));
        }
    return std::nullopt;
}

// Dictionary: degree 0 = X-stabilizers, degree 1 = qubits, degree 2 =
// Z-stabilizers.  boundaries[0][i][j] = 1 iff qubit j occurs in the i-th
// X-stabilizer; boundaries[1][j][k] = 1 iff qubit j occurs in the k-th
// Z-stabilizer.
inline ChainComplex2 css_to_complex(const CssCode& code) {
    if (auto v = commutation_violation(code))
        throw std::invalid_argument("css_to_complex: X-stabilizer " + std::to_string(v->first) +
                                    " and Z-stabilizer " + std::to_string(v->second) +
                                    " share an odd number of qubits");
    int x = static_cast<int>(code.x_stabs.size());
    int z = static_cast<int>(code.z_stabs.size());
    std::vector<std::pair<int, int>> e0, e1;
    for (int i = 0; i < x; ++i)
        for (int j : code.x_stabs[static_cast<std::size_t>(i)]) e0.emplace_back(i, j);
    for (int k = 0; k < z; ++k)
        for (int j : code.z_stabs[static_cast<std::size_t>(k)]) e1.emplace_back(j, k);
    return ChainComplex2({x, code.q, z},
                         {BinMatrix(x, code.q, std::move(e0)), BinMatrix(code.q, z, std::move(e1))});
}

inline CssCode complex_to_css(const ChainComplex2& c) {
    if (c.degrees() != 3) throw std::invalid_argument("complex_to_css: need exactly three degrees");
    CssCode code;
    code.q = c.dims[1];
    code.x_stabs.assign(static_cast<std::size_t>(c.dims[0]), {});
    code.z_stabs.assign(static_cast<std::size_t>(c.dims[2]), {});
    for (auto [i, j] : c.boundaries[0].entries()) code.x_stabs[static_cast<std::size_t>(i)].push_back(j);
    for (auto [j, k] : c.boundaries[1].entries()) code.z_stabs[static_cast<std::size_t>(k)].push_back(j);
    for (auto& s : code.x_stabs) std::sort(s.begin(), s.end());
    for (auto& s : code.z_stabs) std::sort(s.begin(), s.end());
    return code;
}

struct LdpcReport {
    bool ok = true;
    int worst = 0; // heaviest row or column across both check matrices
};

inline LdpcReport check_ldpc(const CssCode& code, int bound) {
    LdpcReport rep;
    std::vector<int> qubit_x(static_cast<std::size_t>(code.q), 0), qubit_z(static_cast<std::size_t>(code.q), 0);
    for (const auto& s : code.x_stabs) {
        rep.worst = std::max(rep.worst, static_cast<int>(s.size()));
        for (int j : s) ++qubit_x[static_cast<std::size_t>(j)];
    }
    for (const auto& s : code.z_stabs) {
        rep.worst = std::max(rep.worst, static_cast<int>(s.size()));
        for (int j : s) ++qubit_z[static_cast<std::size_t>(j)];
    }
    for (int v : qubit_x) rep.worst = std::max(rep.worst, v);
    for (int v : qubit_z) rep.worst = std::max(rep.worst, v);
    rep.ok = rep.worst <= bound;
    return rep;
}

} // namespace homlift
