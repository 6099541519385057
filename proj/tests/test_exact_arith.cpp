#include <random>

#include "doctest.h"
#include "rikuna/errors.hpp"
#include "rikuna/exact_arith.hpp"

using namespace rikuna;

TEST_SUITE("exact_arith") {

TEST_CASE("valuation states") {
  Valuation inf = Valuation::infinite();
  CHECK(inf.is_infinite());
  CHECK(Valuation(5) < inf);
  CHECK(Valuation(2) < Valuation(3));
  CHECK(inf == Valuation::infinite());
  CHECK_THROWS_AS(inf.value(), DomainError);
  CHECK(inf.to_string() == "inf");
  CHECK(Valuation(7).to_string() == "7");
}

TEST_CASE("p-adic valuation of integers") {
  CHECK(val_p(BigInt(54), 3u).value() == 3);
  CHECK(val_p(BigInt(-135), 3u).value() == 3);
  CHECK(val_p(BigInt(7), 3u).value() == 0);
  CHECK(val_p(BigInt(0), 3u).is_infinite());
  CHECK(val_p(BigInt(343), BigInt(7)).value() == 3);
  CHECK_THROWS_AS(val_p(BigInt(8), 4u), ParameterError);
  CHECK_THROWS_AS(val_p(BigInt(8), BigInt(1)), ParameterError);
}

TEST_CASE("primality") {
  CHECK(is_prime(std::uint64_t{2}));
  CHECK(is_prime(std::uint64_t{1000003}));
  CHECK_FALSE(is_prime(std::uint64_t{1}));
  CHECK_FALSE(is_prime(std::uint64_t{561}));
  CHECK(is_prime(BigInt("170141183460469231731687303715884105727")));
}

TEST_CASE("nu_3 of central binomials matches direct valuation") {
  for (unsigned n = 1; n <= 4; ++n) {
    std::uint64_t N = 1;
    for (unsigned i = 0; i < n; ++i) N *= 3;
    for (std::uint64_t m = 1; m < N; ++m) {
      std::uint64_t direct = val_p(binomial(N, m), 3u).value();
      CHECK(binom_val3(n, BigInt(static_cast<unsigned long>(m))) == direct);
    }
  }
  CHECK_THROWS_AS(binom_val3(2, BigInt(0)), ParameterError);
  CHECK_THROWS_AS(binom_val3(2, BigInt(9)), ParameterError);
}

TEST_CASE("Chebyshev values at 1 obey the three-term recurrence") {
  CHECK(u_seq(0) == 1);
  CHECK(u_seq(1) == 1);
  for (std::uint64_t m = 1; m < 1000; ++m) CHECK(u_seq(m + 1) == u_seq(m) - u_seq(m - 1));
}

TEST_CASE("e_m table is 6-periodic") {
  for (int t = -5; t <= 5; ++t) {
    for (std::uint64_t m = 0; m < 60; ++m) CHECK(e_table(m, t) == e_table(m + 6, t));
  }
  CHECK(e_table(0, 4) == 9);
  CHECK(e_table(3, 4) == 1);
}

TEST_CASE("integer factorization") {
  FactoredInt f = factor_integer(343);
  CHECK(f.complete);
  CHECK(f.factors.size() == 1);
  CHECK(f.factors.at(7) == 3);

  FactoredInt g = factor_integer(-12);
  CHECK(g.sign == -1);
  CHECK(g.factors.at(2) == 2);
  CHECK(g.factors.at(3) == 1);

  CHECK(factor_integer(1).factors.empty());
  CHECK(factor_integer(0).sign == 0);

  // Two primes past the trial bound.
  BigInt semi = BigInt(1000000007) * BigInt(998244353);
  FactoredInt h = factor_integer(semi);
  CHECK(h.complete);
  CHECK(h.factors.size() == 2);
  CHECK(h.value() == semi);
}

TEST_CASE("factorization re-expands to its input") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    BigInt n = BigInt(static_cast<unsigned long>(rng() % 1000000000000ULL)) + 2;
    if (rng() % 2) n = -n;
    FactoredInt f = factor_integer(n);
    CHECK(f.value() == n);
    for (const auto& [p, e] : f.factors) CHECK(is_prime(p));
  }
}

TEST_CASE("stubborn composite is flagged") {
  BigInt p("1000000000000000000000000000057");
  BigInt q("1000000000000000000000000000099");
  REQUIRE(is_prime(p));
  REQUIRE(is_prime(q));
  FactoredInt f = factor_integer(p * q, 1000, 10);
  CHECK_FALSE(f.complete);
  CHECK(f.cofactor == p * q);
  CHECK(f.value() == p * q);
}

TEST_CASE("conversions") {
  CHECK(parse_bigint("-123456789012345678901234567890") ==
        BigInt("-123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_bigint("12a"), ParameterError);
  CHECK_THROWS_AS(parse_bigint(""), ParameterError);
  CHECK_THROWS_AS(to_u64(BigInt(-1)), ParameterError);
  CHECK(to_u64(BigInt("18446744073709551615")) == 18446744073709551615ULL);
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(pow_big(3, 46) == BigInt("8862938119652501095929"));
}

}
