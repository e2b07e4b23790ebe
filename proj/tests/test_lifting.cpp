#include <catch2/catch_amalgamated.hpp>

#include "homlift/css.hpp"
#include "homlift/lifting.hpp"
#include "homlift/zhomology.hpp"
#include "test_util.hpp"

using namespace homlift;

namespace {
const BinMatrix kCirculant(3, 3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 0}, {2, 2}});
}

TEST_CASE("naive_lift") {
    SECTION("all-ones boundary lifts to all ones") {
        BinMatrix ones(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
        auto c = ChainComplex2::from_boundaries({ones});
        auto lifted = naive_lift(c);
        for (const auto& e : lifted.boundaries[0].entries()) CHECK(e.val == 1);
        CHECK(lifted.boundaries[0].nnz() == 4);
    }
    SECTION("zero lifts to zero") {
        auto c = ChainComplex2({2, 2}, {BinMatrix::zero(2, 2)});
        CHECK(naive_lift(c).boundaries[0].nnz() == 0);
    }
    SECTION("naive lift of the toric complex is not admissible") {
        CHECK_FALSE(check_admissible(naive_lift(gen_toric(2))).ok);
    }
}

TEST_CASE("check_admissible") {
    CHECK(check_admissible(product_lift(gen_cycle(2), gen_cycle(2))).ok);
    // single-boundary complexes are vacuously admissible
    CHECK(check_admissible(naive_lift(gen_cycle(4))).ok);
    auto bad = naive_lift(gen_toric(2));
    auto rep = check_admissible(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(bad.boundaries[0].multiply(bad.boundaries[1]).at(rep.row, rep.col) != 0);
}

TEST_CASE("general_lift") {
    SECTION("all-ones single boundary") {
        BinMatrix ones(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
        auto r = general_lift(ChainComplex2::from_boundaries({ones}));
        REQUIRE(r.parity_ok);
        auto s = snf(r.lifted.boundaries[0]);
        CHECK(s.invariant_factors == std::vector<Int>{1});
        auto h = homology_z(r.lifted);
        CHECK(h.degrees[0].free_rank == 1);
        CHECK(h.degrees[1].free_rank == 1);
    }
    SECTION("circulant discriminator") {
        auto c = ChainComplex2::from_boundaries({kCirculant});
        CHECK(bareiss_det(naive_lift(c).boundaries[0]) == 2);
        auto naive_h = homology_z(naive_lift(c));
        REQUIRE(naive_h.degrees[0].torsion.size() == 1);
        CHECK(naive_h.degrees[0].torsion[0] == 2);

        auto r = general_lift(c);
        REQUIRE(r.parity_ok);
        REQUIRE(r.admissible);
        auto s = snf(r.lifted.boundaries[0]);
        CHECK(s.invariant_factors == std::vector<Int>{1, 1});
        auto h = homology_z(r.lifted);
        CHECK(h.degrees[0].free_rank == betti2(c, 0));
        CHECK(h.degrees[1].free_rank == betti2(c, 1));
        CHECK(h.degrees[0].torsion.empty());
    }
    SECTION("zero complex lifts to zero") {
        auto c = ChainComplex2({3, 2}, {BinMatrix::zero(3, 2)});
        auto r = general_lift(c);
        CHECK(r.lifted.boundaries[0].nnz() == 0);
    }
    SECTION("randomized: admissible, torsion-free, Betti-preserving") {
        Rng rng(2024);
        for (int t = 0; t < 40; ++t) {
            auto c = testutil::random_valid_complex(rng);
            auto r = general_lift(c);
            REQUIRE(r.parity_ok);
            REQUIRE(r.admissible);
            for (const auto& b : r.lifted.boundaries)
                for (const Int& f : snf(b).invariant_factors) REQUIRE(f == 1);
            auto h = homology_z(r.lifted);
            for (int d = 0; d < static_cast<int>(c.dims.size()); ++d)
                REQUIRE(h.degrees[static_cast<std::size_t>(d)].free_rank == betti2(c, d));
        }
    }
}

TEST_CASE("local_matrix") {
    SECTION("empty boundary gives an empty matrix") {
        BinMatrix d2(3, 1, {});
        IntMatrix d1 = IntMatrix::identity(3);
        auto lm = local_matrix(0, d1, d2);
        CHECK(lm.mat.rows() == 0);
        CHECK(lm.mat.cols() == 0);
    }
    SECTION("toric 2-cell under the signed product lift") {
        auto pl = product_lift(gen_cycle(3), gen_cycle(3));
        auto t = gen_toric(3);
        auto lm = local_matrix(0, pl.boundaries[0], t.boundaries[1]);
        CHECK(lm.mat.rows() == 4);
        CHECK(lm.mat.cols() == 4);
        for (int c = 0; c < 4; ++c) {
            CHECK(lm.mat.col_l1(c) == 2);
            Int colsum = 0;
            for (int r = 0; r < 4; ++r) colsum += lm.mat.at(r, c);
            CHECK(colsum == 0); // each column is a +1/-1 pair
        }
        // the product-lift column solves the local condition
        std::vector<Int> v;
        for (int q : lm.col_cells) v.push_back(pl.boundaries[1].at(q, 0));
        std::vector<Int> img(static_cast<std::size_t>(lm.mat.rows()), 0);
        for (const auto& e : lm.mat.entries())
            img[static_cast<std::size_t>(e.row)] += e.val * v[static_cast<std::size_t>(e.col)];
        for (const Int& x : img) CHECK(x == 0);
    }
    SECTION("no Z-stabilizers means no 2-cells") {
        CssCode code = CssCode::make(2, {{0, 1}, {0, 1}}, {});
        auto c = css_to_complex(code);
        CHECK(c.dims[2] == 0);
    }
}

TEST_CASE("has_2torsion") {
    CHECK(has_2torsion(IntMatrix(1, 1, {{0, 0, 2}})));
    CHECK_FALSE(has_2torsion(IntMatrix::identity(3)));
    CHECK_FALSE(has_2torsion(IntMatrix(2, 2, {{0, 0, 1}, {0, 1, -1}, {1, 0, 1}, {1, 1, -1}})));
    SECTION("agrees with the even-Smith-factor characterization") {
        Rng rng(7);
        for (int t = 0; t < 500; ++t) {
            int r = 1 + static_cast<int>(rng.below(4));
            int c = 1 + static_cast<int>(rng.below(4));
            std::vector<IntMatrix::Entry> ents;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) {
                    int v = static_cast<int>(rng.below(7)) - 3;
                    if (v != 0) ents.push_back({i, j, v});
                }
            IntMatrix m(r, c, std::move(ents));
            bool even_factor = false;
            for (const Int& f : snf(m).invariant_factors)
                if (f % 2 == 0) even_factor = true;
            REQUIRE(has_2torsion(m) == even_factor);
        }
    }
}

TEST_CASE("solve_lift_vector") {
    SECTION("A*1 = 0 keeps the all-ones vector") {
        IntMatrix a(2, 2, {{0, 0, 1}, {0, 1, -1}, {1, 0, 1}, {1, 1, -1}});
        LocalLiftMatrix lm{0, {0, 1}, {0, 1}, a};
        auto v = solve_lift_vector(lm);
        REQUIRE(v);
        CHECK(*v == std::vector<Int>{1, 1});
    }
    SECTION("all-ones matrix flips one sign") {
        IntMatrix a(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
        LocalLiftMatrix lm{0, {0, 1}, {0, 1}, a};
        auto v = solve_lift_vector(lm);
        REQUIRE(v);
        CHECK(*v == std::vector<Int>{-1, 1});
        // exhaustive check over the bound box: no odd vector does better
        for (int x = -3; x <= 3; x += 2)
            for (int y = -3; y <= 3; y += 2)
                if (x + y == 0) CHECK(abs(Int(x)) + abs(Int(y)) >= 2);
    }
    SECTION("two-torsion raises NoSparseLift") {
        IntMatrix a(1, 1, {{0, 0, 2}});
        LocalLiftMatrix lm{5, {0}, {0}, a};
        CHECK_THROWS_AS(solve_lift_vector(lm), NoSparseLiftError);
        try {
            solve_lift_vector(lm);
        } catch (const NoSparseLiftError& e) {
            CHECK(e.two_cell() == 5);
        }
    }
}

TEST_CASE("sparse_lift") {
    SECTION("toric with the signed product degree-1 lift recovers the product columns") {
        for (int L : {2, 3}) {
            auto t = gen_toric(L);
            auto pl = product_lift(gen_cycle(L), gen_cycle(L));
            auto r = sparse_lift(t, pl.boundaries[0]);
            CHECK(r.result.admissible);
            CHECK(r.result.parity_ok);
            CHECK(r.result.sparsity_out == r.result.sparsity_in);
            CHECK(r.result.sparsity_out <= r.worst_v_l1 * r.result.sparsity_in);
            // per 2-cell, the minimal solution is the product column up to a
            // global sign (both signs solve the local condition)
            const auto& got = r.result.lifted.boundaries[1];
            const auto& want = pl.boundaries[1];
            for (int z = 0; z < want.cols(); ++z) {
                bool plus = true, minus = true;
                for (int q = 0; q < want.rows(); ++q) {
                    if (got.at(q, z) != want.at(q, z)) plus = false;
                    if (got.at(q, z) != -want.at(q, z)) minus = false;
                }
                CHECK((plus || minus));
            }
        }
    }
    SECTION("engineered 2-torsion cell fails with the offending index") {
        ChainComplex2 fix({1, 1, 1}, {BinMatrix::zero(1, 1), BinMatrix(1, 1, {{0, 0}})});
        IntMatrix d1(1, 1, {{0, 0, 2}});
        CHECK_THROWS_AS(sparse_lift(fix, d1), NoSparseLiftError);
        try {
            sparse_lift(fix, d1);
        } catch (const NoSparseLiftError& e) {
            CHECK(e.two_cell() == 0);
        }
    }
    SECTION("no 2-cells returns the degree-1 lift unchanged") {
        CssCode code = CssCode::make(2, {{0, 1}, {0, 1}}, {});
        auto c = css_to_complex(code);
        auto d1 = naive_lift(c.boundaries[0]);
        auto r = sparse_lift(c, d1);
        CHECK(r.result.lifted.boundaries[0] == d1);
        CHECK(r.result.lifted.boundaries[1].nnz() == 0);
        CHECK(r.result.admissible);
    }
    SECTION("mismatched degree-1 lift rejected") {
        auto t = gen_toric(2);
        CHECK_THROWS_AS(sparse_lift(t, IntMatrix::zero(t.dims[0], t.dims[1])), std::invalid_argument);
    }
}

TEST_CASE("fiber_bundle_lift") {
    SECTION("untwisted bundles over small bases") {
        auto spec = FiberBundleSpec::make(gen_cycle(2), 2);
        auto lz = fiber_bundle_lift(spec);
        CHECK(check_admissible(lz).ok);
        CHECK(complexes_equal(mod2(lz), gen_fiber_bundle(spec)));
    }
    SECTION("fiber of length one has zero fiber boundary") {
        auto spec = FiberBundleSpec::make(gen_cycle(2), 1);
        auto lz = fiber_bundle_lift(spec);
        CHECK(check_admissible(lz).ok);
        CHECK(complexes_equal(mod2(lz), gen_fiber_bundle(spec)));
    }
    SECTION("random twists stay admissible and sparsity-preserving") {
        Rng rng(31);
        for (int t = 0; t < 25; ++t) {
            int bs = 1 + static_cast<int>(rng.below(4));
            int m = 1 + static_cast<int>(rng.below(3));
            auto base = gen_cycle(bs);
            std::vector<std::tuple<int, int, int>> tw;
            for (auto [r, c] : base.boundaries[0].entries())
                tw.emplace_back(c, r, static_cast<int>(rng.below(static_cast<std::uint64_t>(m))));
            auto spec = FiberBundleSpec::make(std::move(base), m, tw);
            auto lz = fiber_bundle_lift(spec);
            auto bin = gen_fiber_bundle(spec);
            REQUIRE(check_admissible(lz).ok);
            REQUIRE(complexes_equal(mod2(lz), bin));
            REQUIRE(sparsity(lz) == sparsity(bin));
        }
    }
}

TEST_CASE("product_lift") {
    SECTION("cycle product lifts the toric complex") {
        for (int L : {2, 3}) {
            auto lz = product_lift(gen_cycle(L), gen_cycle(L));
            CHECK(check_admissible(lz).ok);
            CHECK(complexes_equal(mod2(lz), gen_toric(L)));
            CHECK(sparsity(lz) == sparsity(gen_toric(L)));
        }
    }
    SECTION("empty factor") {
        ChainComplex2 empty({0, 0}, {BinMatrix::zero(0, 0)});
        auto lz = product_lift(gen_cycle(2), empty);
        CHECK(lz.dims == std::vector<int>{0, 0, 0});
    }
    SECTION("random factors: parity and sparsity") {
        Rng rng(13);
        for (int t = 0; t < 25; ++t) {
            auto a = testutil::random_one_complex(rng, 4, 3);
            auto b = testutil::random_one_complex(rng, 4, 3);
            auto lz = product_lift(a, b);
            auto bin = gen_hypergraph_product(a, b);
            REQUIRE(check_admissible(lz).ok);
            REQUIRE(complexes_equal(mod2(lz), bin));
            REQUIRE(sparsity(lz) == sparsity(bin));
        }
    }
}

TEST_CASE("parity law across lift methods, randomized") {
    Rng rng(77);
    for (int t = 0; t < 30; ++t) {
        auto c = testutil::random_valid_complex(rng);
        REQUIRE(complexes_equal(mod2(naive_lift(c)), c));
        auto g = general_lift(c);
        REQUIRE(g.parity_ok);
    }
}
