#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "homlift/chain_complex.hpp"
#include "homlift/css.hpp"
#include "homlift/decongestion.hpp"
#include "homlift/generators.hpp"

namespace homlift {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

namespace io_detail {

// Line reader skipping blanks and '#' comments, tracking line numbers.
// One line of pushback lets block parsers stop at the next header.
class Lines {
  public:
    explicit Lines(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& tokens) {
        if (has_pending_) {
            tokens = pending_;
            has_pending_ = false;
            return true;
        }
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            std::string t;
            while (ss >> t) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    void unread(const std::vector<std::string>& tokens) {
        pending_ = tokens;
        has_pending_ = true;
    }

    int lineno() const { return lineno_; }

  private:
    std::istream& in_;
    int lineno_ = 0;
    bool has_pending_ = false;
    std::vector<std::string> pending_;
};

inline bool is_block_header(const std::vector<std::string>& tok) {
    return !tok.empty() && (tok[0] == "f2" || tok[0] == "int");
}

inline int to_int(const Lines& ln, const std::string& s) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(ln.lineno(), "expected integer, got '" + s + "'");
    }
}

inline Int to_bigint(const Lines& ln, const std::string& s) {
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw ParseError(ln.lineno(), "expected integer, got '" + s + "'");
    }
}

// Entries run until end of input or the next block header.
inline BinMatrix read_bin_body(Lines& ln, const std::vector<std::string>& header) {
    if (header.size() != 3) throw ParseError(ln.lineno(), "matrix header needs 'f2 R C'");
    int rows = to_int(ln, header[1]);
    int cols = to_int(ln, header[2]);
    std::vector<std::pair<int, int>> ents;
    std::vector<std::string> tok;
    while (ln.next(tok)) {
        if (is_block_header(tok)) {
            ln.unread(tok);
            break;
        }
        if (tok.size() != 2) throw ParseError(ln.lineno(), "f2 entry needs 'r c'");
        ents.emplace_back(to_int(ln, tok[0]), to_int(ln, tok[1]));
    }
    try {
        return BinMatrix(rows, cols, std::move(ents));
    } catch (const std::exception& e) {
        throw ParseError(ln.lineno(), e.what());
    }
}

inline IntMatrix read_int_body(Lines& ln, const std::vector<std::string>& header) {
    if (header.size() != 3) throw ParseError(ln.lineno(), "matrix header needs 'int R C'");
    int rows = to_int(ln, header[1]);
    int cols = to_int(ln, header[2]);
    std::vector<IntMatrix::Entry> ents;
    std::vector<std::string> tok;
    while (ln.next(tok)) {
        if (is_block_header(tok)) {
            ln.unread(tok);
            break;
        }
        if (tok.size() != 3) throw ParseError(ln.lineno(), "int entry needs 'r c v'");
        ents.push_back({to_int(ln, tok[0]), to_int(ln, tok[1]), to_bigint(ln, tok[2])});
    }
    try {
        return IntMatrix(rows, cols, std::move(ents));
    } catch (const std::exception& e) {
        throw ParseError(ln.lineno(), e.what());
    }
}

} // namespace io_detail

// --- matrices -------------------------------------------------------------

inline void write_matrix(std::ostream& out, const BinMatrix& m) {
    out << "f2 " << m.rows() << " " << m.cols() << "\n";
    for (auto [r, c] : m.entries()) out << r << " " << c << "\n";
}

inline void write_matrix(std::ostream& out, const IntMatrix& m) {
    out << "int " << m.rows() << " " << m.cols() << "\n";
    for (const auto& e : m.entries()) out << e.row << " " << e.col << " " << e.val << "\n";
}

inline BinMatrix read_bin_matrix(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    if (!ln.next(tok)) throw ParseError(ln.lineno(), "empty input, expected 'f2 R C'");
    if (tok[0] != "f2") throw ParseError(ln.lineno(), "expected 'f2' header, got '" + tok[0] + "'");
    return io_detail::read_bin_body(ln, tok);
}

inline IntMatrix read_int_matrix(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    if (!ln.next(tok)) throw ParseError(ln.lineno(), "empty input, expected 'int R C'");
    if (tok[0] != "int") throw ParseError(ln.lineno(), "expected 'int' header, got '" + tok[0] + "'");
    return io_detail::read_int_body(ln, tok);
}

// --- complexes ------------------------------------------------------------
// Header `complex2 k` or `complexz k`, then k matrix blocks, innermost
// degree first (boundaries[0] maps degree 1 to degree 0).

inline void write_complex(std::ostream& out, const ChainComplex2& c) {
    out << "complex2 " << c.boundaries.size() << "\n";
    for (const auto& b : c.boundaries) write_matrix(out, b);
}

inline void write_complex(std::ostream& out, const ChainComplexZ& c) {
    out << "complexz " << c.boundaries.size() << "\n";
    for (const auto& b : c.boundaries) write_matrix(out, b);
}

inline ChainComplex2 read_complex2(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    if (!ln.next(tok)) throw ParseError(ln.lineno(), "empty input, expected 'complex2 k'");
    if (tok[0] != "complex2" || tok.size() != 2)
        throw ParseError(ln.lineno(), "expected 'complex2 k' header");
    int k = io_detail::to_int(ln, tok[1]);
    if (k < 1) throw ParseError(ln.lineno(), "complex needs at least one boundary block");
    std::vector<BinMatrix> bs;
    for (int j = 0; j < k; ++j) {
        if (!ln.next(tok)) throw ParseError(ln.lineno(), "missing matrix block " + std::to_string(j));
        if (tok[0] != "f2") throw ParseError(ln.lineno(), "expected 'f2' block header");
        bs.push_back(io_detail::read_bin_body(ln, tok));
    }
    try {
        return ChainComplex2::from_boundaries(std::move(bs));
    } catch (const std::exception& e) {
        throw ParseError(ln.lineno(), e.what());
    }
}

inline ChainComplexZ read_complexz(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    if (!ln.next(tok)) throw ParseError(ln.lineno(), "empty input, expected 'complexz k'");
    if (tok[0] != "complexz" || tok.size() != 2)
        throw ParseError(ln.lineno(), "expected 'complexz k' header");
    int k = io_detail::to_int(ln, tok[1]);
    if (k < 1) throw ParseError(ln.lineno(), "complex needs at least one boundary block");
    std::vector<IntMatrix> bs;
    for (int j = 0; j < k; ++j) {
        if (!ln.next(tok)) throw ParseError(ln.lineno(), "missing matrix block " + std::to_string(j));
        if (tok[0] != "int") throw ParseError(ln.lineno(), "expected 'int' block header");
        bs.push_back(io_detail::read_int_body(ln, tok));
    }
    try {
        return ChainComplexZ::from_boundaries(std::move(bs));
    } catch (const std::exception& e) {
        throw ParseError(ln.lineno(), e.what());
    }
}

// --- CSS codes ------------------------------------------------------------
// Header `css q`, then `X i1 i2 ...` and `Z k1 k2 ...` support lines.

inline void write_code(std::ostream& out, const CssCode& code) {
    out << "css " << code.q << "\n";
    for (const auto& s : code.x_stabs) {
        out << "X";
        for (int i : s) out << " " << i;
        out << "\n";
    }
    for (const auto& s : code.z_stabs) {
        out << "Z";
        for (int i : s) out << " " << i;
        out << "\n";
    }
}

inline CssCode read_code(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    if (!ln.next(tok)) throw ParseError(ln.lineno(), "empty input, expected 'css q'");
    if (tok[0] != "css" || tok.size() != 2) throw ParseError(ln.lineno(), "expected 'css q' header");
    int q = io_detail::to_int(ln, tok[1]);
    std::vector<std::vector<int>> xs, zs;
    while (ln.next(tok)) {
        std::vector<int> support;
        for (std::size_t i = 1; i < tok.size(); ++i) support.push_back(io_detail::to_int(ln, tok[i]));
        if (tok[0] == "X") xs.push_back(std::move(support));
        else if (tok[0] == "Z") zs.push_back(std::move(support));
        else throw ParseError(ln.lineno(), "expected 'X' or 'Z' line, got '" + tok[0] + "'");
    }
    try {
        return CssCode::make(q, std::move(xs), std::move(zs));
    } catch (const std::exception& e) {
        throw ParseError(ln.lineno(), e.what());
    }
}

// --- graphs ---------------------------------------------------------------
// Header `graph V E`, then E lines `u v [w]`.

inline void write_graph(std::ostream& out, const Multigraph& g) {
    out << "graph " << g.v << " " << g.edges.size() << "\n";
    for (const auto& e : g.edges) {
        out << e.u << " " << e.w;
        if (e.weight != 1) out << " " << e.weight;
        out << "\n";
    }
}

inline Multigraph read_graph(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    if (!ln.next(tok)) throw ParseError(ln.lineno(), "empty input, expected 'graph V E'");
    if (tok[0] != "graph" || tok.size() != 3) throw ParseError(ln.lineno(), "expected 'graph V E' header");
    Multigraph g;
    g.v = io_detail::to_int(ln, tok[1]);
    int e = io_detail::to_int(ln, tok[2]);
    for (int i = 0; i < e; ++i) {
        if (!ln.next(tok)) throw ParseError(ln.lineno(), "expected " + std::to_string(e) + " edges");
        if (tok.size() != 2 && tok.size() != 3) throw ParseError(ln.lineno(), "edge needs 'u v [w]'");
        Multigraph::Edge edge;
        edge.u = io_detail::to_int(ln, tok[0]);
        edge.w = io_detail::to_int(ln, tok[1]);
        if (tok.size() == 3) {
            long long w = 0;
            try {
                w = std::stoll(tok[2]);
            } catch (const std::exception&) {
                throw ParseError(ln.lineno(), "expected weight, got '" + tok[2] + "'");
            }
            if (w < 0) throw ParseError(ln.lineno(), "negative edge weight");
            edge.weight = static_cast<std::uint64_t>(w);
        }
        g.edges.push_back(edge);
    }
    try {
        g.validate();
    } catch (const std::exception& ex) {
        throw ParseError(ln.lineno(), ex.what());
    }
    return g;
}

// --- bundle twists ---------------------------------------------------------
// Lines `edge vertex shift`, one per incident pair (omitted pairs are 0).

inline std::vector<std::tuple<int, int, int>> read_twists(std::istream& in) {
    io_detail::Lines ln(in);
    std::vector<std::string> tok;
    std::vector<std::tuple<int, int, int>> out;
    while (ln.next(tok)) {
        if (tok.size() != 3) throw ParseError(ln.lineno(), "twist line needs 'edge vertex shift'");
        out.emplace_back(io_detail::to_int(ln, tok[0]), io_detail::to_int(ln, tok[1]),
                         io_detail::to_int(ln, tok[2]));
    }
    return out;
}

} // namespace homlift
