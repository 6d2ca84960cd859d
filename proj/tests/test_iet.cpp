#include <doctest.h>

#include "helpers.hpp"
#include "iet/oracle.hpp"

using namespace testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InternalAssertion;
}

bool symmetric_part_vanishes(const Iet& f) {
    QMatrix m = displacement_tensor(f);
    return (m + m.transpose()).is_zero();
}

}  // namespace

TEST_SUITE("iet-core") {

TEST_CASE("make_iet examples") {
    auto r = BasisContext::rational();
    Iet half = Iet::make(r, {Scalar::from_rational(r, q("1/2")), Scalar::from_rational(r, q("1/2"))}, {1, 0});
    CHECK(half.interval_count() == 2);
    CHECK(half == rotation(r, Scalar::from_rational(r, q("1/2"))));

    Scalar third = Scalar::from_rational(r, q("1/3"));
    Iet id = Iet::make(r, {third, third, third}, {0, 1, 2});
    CHECK(id.interval_count() == 1);
    CHECK(id.is_identity());

    auto k = BasisContext::quadratic(2);
    Iet f = Iet::make(k, {expr(k, "sqrt(2)-1"), expr(k, "2-sqrt(2)")}, {1, 0});
    CHECK(f.gammas()[0] == expr(k, "2-sqrt(2)"));
    CHECK(f.gammas()[1] == expr(k, "1-sqrt(2)"));
    CHECK(f.discontinuities().size() == 1);
}

TEST_CASE("make_iet merges only co-moving neighbours") {
    auto r = BasisContext::rational();
    Scalar a = Scalar::from_rational(r, q("1/4"));
    // slots (2,3) move together; the result is a 2-IET
    Iet f = Iet::make(r, {a, a, a * Rational(2)}, {1, 2, 0});
    CHECK(f.interval_count() == 2);
    CHECK(f.perm() == Permutation{1, 0});
    CHECK(f.lengths()[0] == Scalar::from_rational(r, q("1/2")));
}

TEST_CASE("make_iet errors") {
    auto r = BasisContext::rational();
    Scalar h = Scalar::from_rational(r, q("1/2"));
    CHECK(code_of([&] { Iet::make(r, {h, -h}, {1, 0}); }) == ErrorCode::NonPositiveLength);
    CHECK(code_of([&] { Iet::make(r, {h, h}, {1, 1}); }) == ErrorCode::InvalidPermutation);
    CHECK(code_of([&] { Iet::make(r, {h, h}, {0}); }) == ErrorCode::InvalidPermutation);
    auto k = BasisContext::quadratic(2);
    CHECK(code_of([&] { Iet::make(r, {h, one(k)}, {0, 1}); }) == ErrorCode::ContextMismatch);
}

TEST_CASE("translation_constants examples") {
    auto sym = symbolic_radicals({2, 3});
    Scalar l1 = expr(sym, "sqrt(2)"), l2 = expr(sym, "sqrt(3)"), l3 = one(sym);
    auto g = translation_constants({l1, l2, l3}, {2, 1, 0});
    CHECK(g[0] == l2 + l3);
    CHECK(g[1] == l3 - l1);
    CHECK(g[2] == -l1 - l2);

    auto id = translation_constants({l1, l2, l3}, {0, 1, 2});
    for (const auto& x : id) CHECK(x.is_zero());

    auto two = translation_constants({l1, l2}, {1, 0});
    CHECK(two[0] == l2);
    CHECK(two[1] == -l1);
}

TEST_CASE("apply examples") {
    auto r = BasisContext::rational();
    Iet id = Iet::identity(r, Scalar::zero(r), one(r));
    CHECK(id.apply(Scalar::from_rational(r, q("2/7"))) == Scalar::from_rational(r, q("2/7")));
    Iet half = rotation(r, Scalar::from_rational(r, q("1/2")));
    CHECK(half.apply(Scalar::from_rational(r, q("1/4"))) == Scalar::from_rational(r, q("3/4")));

    auto k = BasisContext::quadratic(2);
    Iet f = Iet::make(k, {expr(k, "sqrt(2)-1"), expr(k, "2-sqrt(2)")}, {1, 0});
    CHECK(f.apply(Scalar::zero(k)) == expr(k, "2-sqrt(2)"));
    CHECK(code_of([&] { (void)f.apply(one(k)); }) == ErrorCode::OutOfDomain);
    CHECK(code_of([&] { (void)f.apply(-one(k)); }) == ErrorCode::OutOfDomain);
}

TEST_CASE("compose examples") {
    auto r = BasisContext::rational();
    Iet third = rotation(r, Scalar::from_rational(r, q("1/3")));
    CHECK(compose(third, third) == rotation(r, Scalar::from_rational(r, q("2/3"))));
    CHECK(compose(third, inverse(third)).is_identity());

    auto k = BasisContext::quadratic(2);
    Iet f = rotation(k, expr(k, "sqrt(2)-1"));
    Iet ff = compose(f, f);
    CHECK(ff == rotation(k, expr(k, "2*sqrt(2)-2")));
    CHECK(ff.lengths()[0] == expr(k, "3-2*sqrt(2)"));
    CHECK(ff.lengths()[1] == expr(k, "2*sqrt(2)-2"));

    Iet other = Iet::rotation(k, Scalar::zero(k), expr(k, "2"), Scalar::zero(k));
    CHECK(code_of([&] { (void)compose(f, other); }) == ErrorCode::DomainMismatch);
}

TEST_CASE("inverse examples") {
    auto r = BasisContext::rational();
    Iet id = Iet::identity(r, Scalar::zero(r), one(r));
    CHECK(inverse(id) == id);
    CHECK(inverse(rotation(r, Scalar::from_rational(r, q("1/3")))) ==
          rotation(r, Scalar::from_rational(r, q("2/3"))));

    auto sym = symbolic_radicals({2, 3});
    Scalar a = expr(sym, "sqrt(2)") / Rational(10), b = expr(sym, "sqrt(3)") / Rational(10);
    Scalar c = one(sym) - a - b;
    Iet f = reversal(sym, a, b, c);
    CHECK(inverse(f) == reversal(sym, c, b, a));
    CHECK(compose(f, inverse(f)).is_identity());
}

TEST_CASE("conjugate_affine examples") {
    auto r = BasisContext::rational();
    Iet quarter = rotation(r, Scalar::from_rational(r, q("1/4")));
    CHECK(conjugate_affine(quarter, Scalar::zero(r), one(r)) == quarter);
    Iet scaled = conjugate_affine(quarter, Scalar::zero(r), Scalar::from_rational(r, 2));
    CHECK(scaled.lengths()[0] == Scalar::from_rational(r, q("3/2")));
    CHECK(scaled.lengths()[1] == Scalar::from_rational(r, q("1/2")));
    CHECK(scaled.apply(Scalar::zero(r)) == Scalar::from_rational(r, q("1/2")));

    auto k = BasisContext::quadratic(2);
    Iet f = Iet::make(k, {expr(k, "sqrt(2)-1"), expr(k, "2-sqrt(2)")}, {1, 0});
    Iet h = conjugate_affine(f, Scalar::zero(k), expr(k, "1/2"));
    CHECK(h.lengths()[0] == expr(k, "sqrt(2)/2-1/2"));
    CHECK(h.lengths()[1] == expr(k, "1-sqrt(2)/2"));

    // irrational target length over Q(sqrt 2)
    Iet g = conjugate_affine(f, expr(k, "1"), expr(k, "sqrt(2)"));
    CHECK(g.left() == one(k));
    CHECK(g.length() == expr(k, "sqrt(2)"));
    CHECK(g.lengths()[0] == expr(k, "2-sqrt(2)"));
}

TEST_CASE("order examples") {
    auto r = BasisContext::rational();
    CHECK(order(Iet::identity(r, Scalar::zero(r), one(r)), 10) == 1u);
    CHECK(order(rotation(r, Scalar::from_rational(r, q("1/3"))), 10) == 3u);

    Iet rev = reversal(r, Scalar::from_rational(r, q("1/2")), Scalar::from_rational(r, q("1/3")),
                       Scalar::from_rational(r, q("1/6")));
    std::uint64_t expected = oracle::brute_order(oracle::to_cells(rev, 6));
    CHECK(order(rev, 1000) == expected);
    CHECK(order_by_iteration(rev, 1000) == expected);

    auto k = BasisContext::quadratic(2);
    CHECK_FALSE(order(rotation(k, expr(k, "sqrt(2)-1")), 50).has_value());
    CHECK_FALSE(order(rotation(r, Scalar::from_rational(r, q("1/7"))), 6).has_value());

    Scalar a = expr(k, "sqrt(2)/4");
    Iet swap = reversal(k, a, one(k) - a - a, a);
    CHECK(order(swap, 10) == 2u);
    CHECK(order_by_iteration(swap, 10) == 2u);
}

TEST_CASE("rank examples") {
    auto r = BasisContext::rational();
    Gen gen(31);
    CHECK(rank_of_iet(gen.iet(r, 5)) == 1);
    auto k = BasisContext::quadratic(2);
    CHECK(rank_of_iet(reversal(k, expr(k, "sqrt(2)-1"), expr(k, "1/2"), expr(k, "3/2-sqrt(2)"))) == 2);
    auto sym = symbolic_radicals({2, 3});
    CHECK(rank_of_iet(reversal(sym, expr(sym, "sqrt(2)/2-1/2"), expr(sym, "sqrt(3)/2-1/2"),
                               one(sym) * Rational(2) - expr(sym, "sqrt(2)/2") - expr(sym, "sqrt(3)/2"))) == 3);
}

}  // TEST_SUITE

TEST_SUITE("iet-core properties") {

TEST_CASE("group axioms, apply consistency and the displacement identity") {
    Gen gen(32);
    int points = 0;
    for (auto ctx : {BasisContext::rational(), BasisContext::quadratic(2), BasisContext::quadratic(5),
                     symbolic_radicals({2, 3})}) {
        Iet id = Iet::identity(ctx, Scalar::zero(ctx), one(ctx));
        for (int n = 0; n < 25; ++n) {
            Iet f = gen.iet(ctx, 5), g = gen.iet(ctx, 5), h = gen.iet(ctx, 4);
            CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
            CHECK(compose(f, id) == f);
            CHECK(compose(id, f) == f);
            CHECK(compose(inverse(f), f) == id);
            CHECK(compose(f, inverse(f)) == id);

            Iet fg = compose(f, g);
            CHECK(fg.interval_count() <= f.interval_count() + g.interval_count() - 1);
            for (int s = 0; s < 10; ++s) {
                Scalar x = Scalar::from_rational(ctx, rat(gen.integer(0, 999), 1000));
                CHECK(fg.apply(x) == f.apply(g.apply(x)));
                ++points;
            }
            for (const Iet* m : {&f, &g, &fg}) {
                CHECK(symmetric_part_vanishes(*m));
                CHECK(Iet::make(ctx, m->left(), m->lengths(), m->perm()) == *m);
                CHECK(m->discontinuities().size() + 1 == m->interval_count());
                CHECK(translation_constants(m->lengths(), m->perm()) == m->gammas());
            }
        }
    }
    CHECK(points == 1000);
}

TEST_CASE("conjugate_affine is a homomorphism") {
    Gen gen(33);
    for (auto ctx : {BasisContext::rational(), BasisContext::quadratic(2), symbolic_radicals({2, 3})}) {
        for (int n = 0; n < 20; ++n) {
            Iet f = gen.iet(ctx, 4), g = gen.iet(ctx, 4);
            Scalar left = Scalar::from_rational(ctx, gen.rational(5, 3));
            Scalar len = Scalar::from_rational(ctx, rat(gen.integer(1, 9), gen.integer(1, 4)));
            if (ctx->kind() == ContextKind::Quadratic && gen.coin()) len = expr(ctx, "sqrt(2)") * Rational(gen.integer(1, 5));
            CHECK(conjugate_affine(compose(f, g), left, len) ==
                  compose(conjugate_affine(f, left, len), conjugate_affine(g, left, len)));
        }
    }
}

TEST_CASE("rational order matches the cell oracle and repeated composition") {
    Gen gen(34);
    auto r = BasisContext::rational();
    for (int n = 0; n < 100; ++n) {
        std::size_t cells = gen.integer(1, 12);
        Iet f = gen.cell_iet(r, cells, 6);
        std::uint64_t brute = oracle::brute_order(oracle::to_cells(f, cells));
        CHECK(order(f, 1000000) == brute);
        if (brute <= 2000) CHECK(order_by_iteration(f, 2000) == brute);
    }
}

TEST_CASE("order is invariant under irrational conjugation") {
    Gen gen(35);
    auto k = BasisContext::quadratic(2);
    Iet rot = rotation(k, expr(k, "sqrt(2)-1"));
    for (int n = 0; n < 40; ++n) {
        std::size_t cells = gen.integer(1, 8);
        Iet f = gen.cell_iet(k, cells, 4);
        Iet h = compose(compose(inverse(rot), f), rot);
        std::uint64_t brute = oracle::brute_order(oracle::to_cells(f, cells));
        CHECK(order(h, 1000) == brute);
        if (brute <= 60) CHECK(order_by_iteration(h, 60) == brute);
    }
}

}  // TEST_SUITE
