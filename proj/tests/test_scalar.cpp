#include <catch2/catch_amalgamated.hpp>

#include <fvoa/scalar.hpp>

#include <random>

using namespace fvoa;

TEST_CASE("dyadic arithmetic closed under + - *") {
    Scalar a = Scalar::parse("3/2^3");
    Scalar b = Scalar::parse("1/2^3");
    CHECK((a + b).tag() == RingTag::dyadic);
    CHECK((a + b).to_string() == "1/2^1");
    CHECK((a - b).to_string() == "1/2^2");
    CHECK((a * b).to_string() == "3/2^6");
    CHECK((a.divide_by_pow2(2)).to_string() == "3/2^5");
}

TEST_CASE("dyadic normal form keeps odd numerator when k > 0") {
    Scalar two = Scalar::parse("2");
    CHECK(two.tag() == RingTag::dyadic);
    CHECK(two.to_string() == "2/2^0");
    Scalar half = Scalar::parse("4/2^3");
    CHECK(half.to_string() == "1/2^1");
}

TEST_CASE("scalar string round trips") {
    for (const char* s : {"0", "3/2^3", "-5/2^1", "2/2^0", "1/3", "-4/3", "7/1", "3 mod 5", "0 mod 11"}) {
        Scalar x = Scalar::parse(s);
        Scalar y = Scalar::parse(x.to_string());
        CHECK(x == y);
    }
    // canonical forms are stable under reserialization
    CHECK(Scalar::parse("3/2^3").to_string() == "3/2^3");
    CHECK(Scalar::parse("1/3").to_string() == "1/3");
    CHECK(Scalar::parse("3 mod 5").to_string() == "3 mod 5");
}

TEST_CASE("reduce_mod_p examples") {
    // 3/8 mod 5: 8 = 3, 3^-1 = 2, 3*2 = 6 = 1
    CHECK(reduce_mod_p(Scalar::parse("3/2^3"), 5) == Scalar::make_field(Fp(1, 5)));
    CHECK(reduce_mod_p(Scalar::parse("1"), 13) == Scalar::make_field(Fp(1, 13)));
    CHECK_THROWS_AS(reduce_mod_p(Scalar::parse("1/2^1"), 2), RejectedCharacteristic);
    CHECK_THROWS_AS(reduce_mod_p(Scalar::parse("1"), 7), RejectedCharacteristic);
    CHECK_THROWS_AS(reduce_mod_p(Scalar::parse("1/5"), 5), NonInvertibleDenominator);
}

TEST_CASE("reduce_mod_p is a ring homomorphism on random pairs") {
    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<std::int64_t> num(-500, 500);
    std::uniform_int_distribution<std::int64_t> den(1, 60);
    for (std::uint64_t p : {3ull, 5ull, 11ull, 13ull}) {
        for (int i = 0; i < 1000; ++i) {
            std::int64_t d1 = den(rng), d2 = den(rng);
            if (d1 % p == 0 || d2 % p == 0) continue;
            Rational x(num(rng), d1), y(num(rng), d2);
            Fp rx = reduce_rational_mod_p(x, p);
            Fp ry = reduce_rational_mod_p(y, p);
            REQUIRE(reduce_rational_mod_p(x * y, p) == rx * ry);
            REQUIRE(reduce_rational_mod_p(x + y, p) == rx + ry);
        }
    }
}

TEST_CASE("SixteenthInt matches rational arithmetic") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> v(-200, 200);
    for (int i = 0; i < 200; ++i) {
        SixteenthInt a(v(rng)), b(v(rng));
        CHECK((a + b).to_rational() == a.to_rational() + b.to_rational());
        CHECK((a - b).to_rational() == a.to_rational() - b.to_rational());
    }
    CHECK(SixteenthInt(8).to_string() == "1/2");
    CHECK(SixteenthInt(1).to_string() == "1/16");
    CHECK(SixteenthInt(2).to_string() == "1/8");
    CHECK(SixteenthInt(-32).to_string() == "-2");
    CHECK(SixteenthInt(0).to_string() == "0");
}

TEST_CASE("prime checks") {
    CHECK_NOTHROW(require_good_characteristic(3));
    CHECK_NOTHROW(require_good_characteristic(1000003));
    CHECK_THROWS_AS(require_good_characteristic(2), RejectedCharacteristic);
    CHECK_THROWS_AS(require_good_characteristic(7), RejectedCharacteristic);
    CHECK_THROWS(require_good_characteristic(9));
    CHECK_THROWS(require_good_characteristic(1ull << 62));
}

TEST_CASE("field arithmetic") {
    Fp a(9, 13), b(6, 13);
    CHECK((a + b).v == 2);
    CHECK((a - b).v == 3);
    CHECK((a * b).v == 2);
    CHECK((a / b).v == detail::mulmod_u64(9, detail::invmod_u64(6, 13), 13));
    CHECK((a / b * b) == a);
    CHECK_THROWS(Fp(0, 13).inv());
}
