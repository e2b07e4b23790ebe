#include <catch2/catch_amalgamated.hpp>

#include "homlift/lifting.hpp"
#include "homlift/zhomology.hpp"
#include "test_util.hpp"

using namespace homlift;

namespace {
IntMatrix from_rows(std::vector<std::vector<long long>> rows) {
    Dense d;
    for (auto& r : rows) {
        std::vector<Int> row;
        for (long long v : r) row.push_back(v);
        d.push_back(std::move(row));
    }
    return IntMatrix::from_dense(d);
}
} // namespace

TEST_CASE("hnf") {
    SECTION("identity is fixed") {
        auto r = hnf(IntMatrix::identity(3));
        CHECK(IntMatrix::from_dense(r.h) == IntMatrix::identity(3));
        CHECK(r.rank == 3);
    }
    SECTION("pinned 2x2 reduction") {
        auto r = hnf(from_rows({{2, 4}, {0, 3}}));
        CHECK(IntMatrix::from_dense(r.h) == from_rows({{2, 1}, {0, 3}}));
    }
    SECTION("zero matrix") {
        auto r = hnf(IntMatrix::zero(2, 3));
        CHECK(r.rank == 0);
        CHECK(IntMatrix::from_dense(r.h).nnz() == 0);
    }
    SECTION("witness reproduces the form") {
        Rng rng(3);
        for (int t = 0; t < 50; ++t) {
            int n = 1 + static_cast<int>(rng.below(5));
            int m = 1 + static_cast<int>(rng.below(5));
            std::vector<IntMatrix::Entry> ents;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) {
                    int v = static_cast<int>(rng.below(11)) - 5;
                    if (v != 0) ents.push_back({i, j, v});
                }
            IntMatrix a(n, m, std::move(ents));
            auto r = hnf(a);
            // u * a == h, u unimodular
            auto prod = IntMatrix::from_dense(r.u).multiply(a);
            CHECK(prod == IntMatrix::from_dense(r.h));
            CHECK(abs(bareiss_det(r.u)) == 1);
        }
    }
}

TEST_CASE("integer solve and kernel") {
    Rng rng(8);
    for (int t = 0; t < 60; ++t) {
        int n = 1 + static_cast<int>(rng.below(4));
        int m = 1 + static_cast<int>(rng.below(4));
        std::vector<IntMatrix::Entry> ents;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                int v = static_cast<int>(rng.below(7)) - 3;
                if (v != 0) ents.push_back({i, j, v});
            }
        IntMatrix a(n, m, std::move(ents));
        // solvable instance: b = A x0
        std::vector<Int> x0(static_cast<std::size_t>(m));
        for (auto& v : x0) v = static_cast<int>(rng.below(5)) - 2;
        std::vector<Int> b(static_cast<std::size_t>(n), 0);
        for (const auto& e : a.entries()) b[static_cast<std::size_t>(e.row)] += e.val * x0[static_cast<std::size_t>(e.col)];
        auto x = integer_solve(a, b);
        REQUIRE(x);
        std::vector<Int> bx(static_cast<std::size_t>(n), 0);
        for (const auto& e : a.entries()) bx[static_cast<std::size_t>(e.row)] += e.val * (*x)[static_cast<std::size_t>(e.col)];
        CHECK(bx == b);
        // kernel vectors annihilate
        for (const auto& k : integer_kernel(a)) {
            std::vector<Int> kk(static_cast<std::size_t>(n), 0);
            for (const auto& e : a.entries()) kk[static_cast<std::size_t>(e.row)] += e.val * k[static_cast<std::size_t>(e.col)];
            for (const Int& v : kk) CHECK(v == 0);
        }
        CHECK(static_cast<int>(integer_kernel(a).size()) == a.cols() - rank_z(a));
    }
    SECTION("unsolvable divisibility") {
        auto a = from_rows({{2}});
        CHECK_FALSE(integer_solve(a, {Int(1)}));
    }
}

TEST_CASE("snf") {
    SECTION("pinned instances") {
        CHECK(snf(from_rows({{2}})).invariant_factors == std::vector<Int>{2});
        CHECK(snf(from_rows({{1, -1}, {1, -1}})).invariant_factors == std::vector<Int>{1});
        CHECK(snf(from_rows({{6, 0}, {0, 4}})).invariant_factors == std::vector<Int>{2, 12});
    }
    SECTION("divisibility chain and witnesses on random matrices") {
        Rng rng(12);
        for (int t = 0; t < 60; ++t) {
            int n = 1 + static_cast<int>(rng.below(5));
            int m = 1 + static_cast<int>(rng.below(5));
            std::vector<IntMatrix::Entry> ents;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) {
                    int v = static_cast<int>(rng.below(13)) - 6;
                    if (v != 0) ents.push_back({i, j, v});
                }
            IntMatrix a(n, m, std::move(ents));
            auto r = snf(a, true);
            for (std::size_t i = 0; i + 1 < r.invariant_factors.size(); ++i) {
                CHECK(r.invariant_factors[i] > 0);
                CHECK(r.invariant_factors[i + 1] % r.invariant_factors[i] == 0);
            }
            // u * a * v reproduces the diagonal
            auto d = IntMatrix::from_dense(r.u).multiply(a).multiply(IntMatrix::from_dense(r.v));
            for (const auto& e : d.entries()) {
                CHECK(e.row == e.col);
                CHECK(e.val == r.invariant_factors[static_cast<std::size_t>(e.row)]);
            }
            CHECK(static_cast<int>(d.nnz()) == r.rank);
            CHECK(abs(bareiss_det(r.u)) == 1);
            CHECK(abs(bareiss_det(r.v)) == 1);
        }
    }
}

TEST_CASE("homology_z") {
    SECTION("zero complex has free ranks equal to dims") {
        ChainComplexZ c({3, 2}, {IntMatrix::zero(3, 2)});
        auto h = homology_z(c);
        CHECK(h.degrees[0].free_rank == 3);
        CHECK(h.degrees[1].free_rank == 2);
    }
    SECTION("non-admissible input rejected") {
        CHECK_THROWS_AS(homology_z(naive_lift(gen_toric(2))), std::invalid_argument);
    }
    SECTION("cohomology torsion is the homology torsion shifted") {
        BinMatrix circ(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
        auto c = naive_lift(ChainComplex2::from_boundaries({circ}));
        auto h = homology_z(c);
        REQUIRE(h.degrees[0].torsion == std::vector<Int>{2});
        CHECK(h.degrees[1].cotorsion == std::vector<Int>{2});
        CHECK(h.degrees[0].cotorsion.empty());
    }
}

TEST_CASE("try_sparse_lu") {
    SECTION("identity: trivial factors, no fill") {
        auto r = try_sparse_lu(BinMatrix::identity(6), -1);
        REQUIRE(r.completed);
        CHECK(r.rank == 6);
        CHECK(r.fill == 0);
        CHECK(r.certifies_unimodular_lift());
        CHECK(lu_product(r) == BinMatrix::identity(6));
    }
    SECTION("all-ones 4x4 factors with reported fill") {
        BinMatrix ones(4, 4, {{0,0},{0,1},{0,2},{0,3},{1,0},{1,1},{1,2},{1,3},
                              {2,0},{2,1},{2,2},{2,3},{3,0},{3,1},{3,2},{3,3}});
        auto r = try_sparse_lu(ones, -1);
        REQUIRE(r.completed);
        CHECK(r.rank == 1);
        CHECK_FALSE(r.full_rank());
        CHECK(r.fill == 0);
        CHECK(lu_product(r) == ones);
    }
    SECTION("random sparse full-rank instances certify a unimodular lift") {
        Rng rng(19);
        int certified = 0;
        for (int t = 0; t < 40 && certified < 10; ++t) {
            int n = 4 + static_cast<int>(rng.below(21)); // up to 24x24
            std::set<std::pair<int, int>> ents;
            for (int i = 0; i < n; ++i) ents.insert({i, i});
            for (int i = 0; i < 2 * n; ++i)
                ents.insert({static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
                             static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))});
            BinMatrix m(n, n, std::vector<std::pair<int, int>>(ents.begin(), ents.end()));
            if (testutil::dense_rank_oracle(m) != n) continue;
            auto r = try_sparse_lu(m, -1);
            REQUIRE(r.completed);
            REQUIRE(r.rank == n);
            REQUIRE(lu_product(r) == m);
            // the naive lifts of L and U are unit triangular, so the lifted
            // product has determinant +-1
            Int det = bareiss_det(naive_lift(r.l).multiply(naive_lift(r.u)));
            REQUIRE(abs(det) == 1);
            // and it reduces to m up to the permutations
            ++certified;
        }
        CHECK(certified == 10);
    }
    SECTION("budget exhaustion reported distinctly from rank deficiency") {
        // find a random sparse instance that genuinely fills in
        Rng rng(23);
        int n = 40;
        BinMatrix found = BinMatrix::zero(0, 0);
        long long fill = 0;
        for (int t = 0; t < 50 && fill < 4; ++t) {
            std::set<std::pair<int, int>> ents;
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < 3; ++k)
                    ents.insert({i, static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))});
            BinMatrix m(n, n, std::vector<std::pair<int, int>>(ents.begin(), ents.end()));
            auto full = try_sparse_lu(m, -1);
            REQUIRE(full.completed);
            if (full.fill >= 4) {
                found = m;
                fill = full.fill;
            }
        }
        REQUIRE(fill >= 4);
        auto r = try_sparse_lu(found, fill / 2);
        CHECK_FALSE(r.completed); // budget exhausted, not singular
        CHECK(r.rank < n);        // partial progress reported
    }
}

TEST_CASE("probe_minor_gcd") {
    SECTION("pinned instances") {
        auto a = from_rows({{1, 0, 1}, {0, 1, 1}});
        auto r = probe_minor_gcd(a, 16, 1);
        CHECK(r.gcd == 1);
        CHECK(r.early_exit);

        auto b = from_rows({{2, 0, 0}, {0, 2, 0}});
        auto r2 = probe_minor_gcd(b, 8, 1);
        CHECK(r2.gcd == 4);
        CHECK_FALSE(r2.early_exit);

        CHECK(probe_minor_gcd(IntMatrix::identity(4), 4, 9).gcd == 1);
    }
    SECTION("rank-deficient input rejected") {
        auto a = from_rows({{1, 1}, {1, 1}});
        CHECK_THROWS_AS(probe_minor_gcd(a, 4, 0), std::invalid_argument);
    }
    SECTION("gcd over samples upper-bounds nothing smaller than a true minor gcd") {
        // all 2x2 minors of this matrix have |det| in {3, 6, 9}; gcd 3
        auto a = from_rows({{3, 0, 3}, {0, 3, 3}});
        auto r = probe_minor_gcd(a, 32, 4);
        CHECK(r.gcd % 3 == 0);
    }
}
