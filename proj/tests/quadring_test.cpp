#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nptk/quadring.hpp"

using namespace nptk;

namespace {

QuadElem e(long a, long b = 0) { return {mpz_class(a), mpz_class(b)}; }

// number of classes of binary quadratic forms a x^2 + b xy + c y^2 of the
// given negative discriminant: count reduced forms, |b| <= a <= c with
// b >= 0 when |b| = a or a = c
long reduced_form_count(long disc) {
    long h = 0;
    for (long a = 1; 3 * a * a <= -disc; ++a)
        for (long b = -a; b <= a; ++b) {
            long num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (b == -a || a == c)) continue;
            ++h;
        }
    return h;
}

QuadIdeal random_ideal(const QuadRing& R, std::mt19937& rng) {
    std::uniform_int_distribution<long> coef(-9, 9);
    for (;;) {
        QuadElem g1 = e(coef(rng), coef(rng));
        QuadElem g2 = e(coef(rng), coef(rng));
        if (g1.is_zero() && g2.is_zero()) continue;
        return ideal_from_gens(R, {g1, g2});
    }
}

} // namespace

TEST_CASE("ideal bases in Hermite form") {
    QuadRing R = QuadRing::create(-5);
    QuadIdeal J = ideal_from_gens(R, {e(2), e(1, 1)});
    CHECK(J.a == 2);
    CHECK(J.b == 1);
    CHECK(J.c == 1);
    CHECK(J.norm() == 2);
    // idempotent under re-generation from basis elements
    CHECK(ideal_from_gens(R, {e(2), {J.b, J.c}}) == J);

    QuadIdeal P = ideal_from_gens(R, {e(3)});
    CHECK(P.norm() == 9);
    CHECK(P == ideal_from_gens(R, {e(3), e(0, 3)}));

    CHECK_THROWS_AS(ideal_from_gens(R, {e(0)}), error);
}

TEST_CASE("ideal products") {
    QuadRing R = QuadRing::create(-5);
    QuadIdeal J = ideal_from_gens(R, {e(2), e(1, 1)});
    CHECK(ideal_mul(R, J, J) == ideal_from_gens(R, {e(2)}));

    QuadIdeal one = ideal_from_gens(R, {e(1)});
    QuadIdeal I = ideal_from_gens(R, {e(3), e(1, 1)});
    CHECK(ideal_mul(R, I, one) == I);

    QuadIdeal Ibar = ideal_from_gens(R, {e(3), e(-1, 1)});
    CHECK(ideal_mul(R, I, Ibar) == ideal_from_gens(R, {e(3)}));
    CHECK(I.norm() * Ibar.norm() == 9);
}

TEST_CASE("norm is multiplicative") {
    std::mt19937 rng(5);
    for (long D : {-1, -5, -14, -23}) {
        QuadRing R = QuadRing::create(D);
        for (int it = 0; it < 500; ++it) {
            QuadIdeal I = random_ideal(R, rng);
            QuadIdeal J = random_ideal(R, rng);
            CHECK(ideal_mul(R, I, J).norm() == I.norm() * J.norm());
        }
    }
}

TEST_CASE("principality tests") {
    QuadRing R5 = QuadRing::create(-5);
    auto g = is_principal(R5, ideal_from_gens(R5, {e(2)}));
    REQUIRE(g.has_value());
    CHECK(*g == e(2));

    CHECK(!is_principal(R5, ideal_from_gens(R5, {e(2), e(1, 1)})));

    QuadRing R23 = QuadRing::create(-23);
    QuadIdeal J = ideal_from_gens(R23, {e(2), e(0, 1)});
    QuadIdeal J3 = ideal_mul(R23, ideal_mul(R23, J, J), J);
    auto d = is_principal(R23, J3);
    REQUIRE(d.has_value());
    CHECK(*d == e(2, -1)); // 2 - w = (3 - sqrt(-23))/2
    CHECK(qnorm(R23, *d) == 8);
}

TEST_CASE("class numbers from reduced forms") {
    CHECK(reduced_form_count(-20) == 2);
    CHECK(reduced_form_count(-23) == 3);
    CHECK(reduced_form_count(-56) == 4);
}

TEST_CASE("the class-number power of any ideal is principal") {
    std::mt19937 rng(17);
    for (long D : {-5, -14, -23}) {
        QuadRing R = QuadRing::create(D);
        long h = reduced_form_count(static_cast<long>(R.disc().get_si()));
        for (int it = 0; it < 20; ++it) {
            QuadIdeal I = random_ideal(R, rng);
            QuadIdeal P = I;
            for (long k = 1; k < h; ++k) P = ideal_mul(R, P, I);
            CHECK(is_principal(R, P).has_value());
        }
    }
}

TEST_CASE("bezout witnesses") {
    QuadRing R5 = QuadRing::create(-5);
    BezoutWitness w = bezout_generator(R5, {e(2), e(1, 1)});
    CHECK(w.n == 2);
    CHECK(w.d == e(2));
    CHECK(verify_witness(R5, w).ok());

    QuadRing R23 = QuadRing::create(-23);
    BezoutWitness w23 = bezout_generator(R23, {e(2), e(0, 1)});
    CHECK(w23.n == 3);
    CHECK(w23.d == e(2, -1)); // (3 - sqrt(-23))/2
    CHECK(verify_witness(R23, w23).ok());

    BezoutWitness wp = bezout_generator(R5, {e(4, 1)});
    CHECK(wp.n == 1);
    CHECK(verify_witness(R5, wp).ok());

    CHECK_THROWS_AS(bezout_generator(R5, {e(2), e(1, 1)}, 1), error);
}

TEST_CASE("witness order divides the class number, and witnesses verify") {
    std::mt19937 rng(29);
    for (long D : {-5, -14, -23}) {
        QuadRing R = QuadRing::create(D);
        long h = reduced_form_count(static_cast<long>(R.disc().get_si()));
        std::uniform_int_distribution<long> coef(-9, 9);
        for (int it = 0; it < 20; ++it) {
            QuadElem g1 = e(coef(rng), coef(rng));
            QuadElem g2 = e(coef(rng), coef(rng));
            if (g1.is_zero() && g2.is_zero()) continue;
            BezoutWitness w = bezout_generator(R, {g1, g2});
            CHECK(h % w.n == 0);
            CHECK(verify_witness(R, w).ok());
        }
    }
}

TEST_CASE("corrupted witnesses fail verification") {
    QuadRing R = QuadRing::create(-5);
    BezoutWitness bad{e(3), 2, {e(2), e(1, 1)}};
    WitnessVerdict v = verify_witness(R, bad);
    CHECK(!v.ok());
    CHECK(!v.power_matches);
    REQUIRE(v.bad_gen.has_value());
    CHECK(*v.bad_gen == 0); // 4 is not in (3)

    BezoutWitness good{e(2), 2, {e(2), e(1, 1)}};
    CHECK(verify_witness(R, good).ok());
}

TEST_CASE("element arithmetic matches the defining relation") {
    QuadRing R = QuadRing::create(-23);
    QuadElem w = e(0, 1);
    CHECK(qmul(R, w, w) == qadd(w, e(-6))); // w^2 = w - 6
    CHECK(qnorm(R, e(1, 1)) == 8);
    CHECK(qmul(R, e(1, 1), qconj(R, e(1, 1))) == e(8));
    CHECK(qstr(e(1, 1)) == "1+w");
    CHECK(qstr(e(0, -1)) == "-w");
    CHECK_THROWS_AS(QuadRing::create(-12), error); // not squarefree
    CHECK_THROWS_AS(QuadRing::create(5), error);   // not imaginary
}
