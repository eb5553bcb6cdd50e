#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "proplie/padic.hpp"

using namespace proplie;

TEST_CASE("context construction guards") {
    CHECK_THROWS_AS(PadicCtx(4, 2), Error);
    CHECK_THROWS_AS(PadicCtx(2, 3), Error); // odd primes only
    CHECK_THROWS_AS(PadicCtx(3, 0), Error);
    CHECK_THROWS_AS(PadicCtx(3, 60), Error); // 3^60 overflows 63 bits
    PadicCtx c(3, 4);
    CHECK(c.mod == 81);
}

TEST_CASE("ring operations") {
    PadicCtx c(3, 4);
    CHECK(c.add(80, 5) == 4);
    CHECK(c.sub(2, 5) == 78);
    CHECK(c.neg(0) == 0);
    CHECK(c.neg(1) == 80);
    CHECK(c.mul(27, 3) == 0);
    CHECK(c.reduce(bigint(-1)) == 80);
    CHECK(c.reduce(bigint("123456789123456789")) ==
          (uint64_t)(bigint("123456789123456789") % 81));
    CHECK(c.reduce_ll(-82) == 80);
}

TEST_CASE("valuation and p-division") {
    PadicCtx c(3, 4);
    CHECK(c.val(0) == 4);
    CHECK(c.val(1) == 0);
    CHECK(c.val(54) == 3); // 54 = 2*27
    CHECK(c.divexact_p(54, 3) == 2);
    CHECK(c.divexact_p(54, 1) == 18);
    CHECK_THROWS_AS(c.divexact_p(5, 1), Error);
    CHECK(c.pow_p(0) == 1);
    CHECK(c.pow_p(4) == 81); // raw power, usable as an exact divisor
}

TEST_CASE("unit inversion") {
    PadicCtx c(5, 6);
    for (uint64_t a : {1ull, 2ull, 7ull, 12344ull}) {
        CHECK(c.mul(a, c.inv(a)) == 1);
    }
    CHECK_THROWS_AS(c.inv(5), Error);
    CHECK_THROWS_AS(c.inv(0), Error);
}

TEST_CASE("rational embedding") {
    // 1/2 mod 3^4: 2x = 1 mod 81 -> x = 41
    PadicInt h = rat_to_padic(1, 2, 3, 4);
    CHECK(h.r == 41);
    // powers of p cancel: 9/3 = 3
    CHECK(rat_to_padic(9, 3, 3, 4).r == 3);
    CHECK(rat_to_padic(-9, 3, 3, 4).r == 78);
    CHECK_THROWS_AS(rat_to_padic(1, 3, 3, 4), Error);
    CHECK_THROWS_AS(rat_to_padic(2, 6, 3, 4), Error);
    CHECK(rat_to_padic(0, 7, 3, 4).r == 0);
}

TEST_CASE("padic value layer") {
    PadicInt a = pad_make(3, 4, bigint(30));
    CHECK(pad_val(a) == 1);
    PadicInt b = pad_make(3, 4, bigint(-3));
    CHECK(pad_add(a, b).r == 27);
    CHECK(pad_sub(a, a).r == 0);
    CHECK(pad_mul(a, b).r == (81 - 90 % 81));
    PadicInt u = pad_make(3, 4, bigint(2));
    CHECK(pad_mul(u, pad_inv(u)).r == 1);
}

TEST_CASE("serialization round trip") {
    PadicInt a = pad_make(7, 5, bigint(12345));
    PadicInt back = pad_deserialize(pad_serialize(a));
    CHECK(back == a);
    CHECK_THROWS_AS(pad_deserialize("junk"), Error);
}

TEST_CASE("primality helper") {
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(1000003));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(561)); // Carmichael
    CHECK(is_prime_u64(2));
    CHECK_FALSE(is_prime_u64(1000001));
}

TEST_CASE("bigint valuation") {
    CHECK(valuation_bigint(bigint(0), 3) == -1);
    CHECK(valuation_bigint(bigint(81), 3) == 4);
    CHECK(valuation_bigint(bigint(-18), 3) == 2);
    CHECK(valuation_bigint(bigint(5), 3) == 0);
}
