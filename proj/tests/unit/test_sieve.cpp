#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "pairlab/sieve.hpp"

using namespace pairlab;

TEST_CASE("primes_up_to small values") {
  CHECK(primes_up_to(0).empty());
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(primes_up_to(100).size() == 25);
  CHECK(primes_up_to(10000) == oracle::primes_up_to(10000));
}

TEST_CASE("primes_up_to respects the configured maximum") {
  CHECK_THROWS_AS(primes_up_to(2000, 1000), CapacityError);
  CHECK_THROWS_AS(Sieve(kDefaultMaxLimit + 1), CapacityError);
}

TEST_CASE("is_prime matches trial division below 1e5") {
  const Sieve sieve(100'000, {.segment_size = 4096});
  for (std::uint64_t n = 0; n <= 100'000; ++n) {
    REQUIRE_MESSAGE(sieve.is_prime(n) == oracle::is_prime(n), "n=" << n);
  }
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(97));
  CHECK(is_prime(1'000'003));
  CHECK(oracle::is_prime(1'000'003));
}

TEST_CASE("sieve and Miller-Rabin agree above the sieve") {
  const Sieve sieve(1000);
  for (std::uint64_t n = 1'000'000; n < 1'002'000; ++n) {
    REQUIRE(sieve.is_prime(n) == oracle::is_prime(n));
  }
  // Strong pseudoprimes to several small bases.
  CHECK_FALSE(is_prime_deterministic(3215031751ULL));
  CHECK_FALSE(is_prime_deterministic(3825123056546413051ULL));
  CHECK(is_prime_deterministic(2305843009213693951ULL));  // 2^61 - 1
  CHECK_FALSE(is_prime_deterministic(2305843009213693953ULL));
}

TEST_CASE("von_mangoldt") {
  CHECK(von_mangoldt(1) == 0.0);
  CHECK(von_mangoldt(8) == doctest::Approx(std::log(2.0)));
  CHECK(von_mangoldt(6) == 0.0);
  CHECK_THROWS_AS(von_mangoldt(0), DomainError);
  CHECK(von_mangoldt(3486784401ULL) == doctest::Approx(std::log(3.0)));  // 3^20
  CHECK(von_mangoldt(3486784401ULL * 2) == 0.0);
  CHECK(von_mangoldt(999983ULL * 999983ULL) == doctest::Approx(std::log(999983.0)));

  const Sieve sieve(20'000, {.segment_size = 1024});
  for (std::uint64_t n = 1; n <= 20'000; ++n) {
    REQUIRE_MESSAGE(sieve.von_mangoldt(n) == doctest::Approx(oracle::lambda(n)), "n=" << n);
  }
}

TEST_CASE("Chebyshev identity Σ Λ(n) = Σ floor(log x / log p) log p") {
  const Sieve sieve(10'000);
  for (const std::uint64_t x : {2ULL, 10ULL, 97ULL, 1000ULL, 4096ULL, 10'000ULL}) {
    double lhs = 0.0;
    for (std::uint64_t n = 1; n <= x; ++n) lhs += sieve.von_mangoldt(n);
    double rhs = 0.0;
    for (const auto p : oracle::primes_up_to(x)) {
      std::uint64_t k = 0;
      for (std::uint64_t q = p; q <= x; q *= p) ++k;
      rhs += static_cast<double>(k) * std::log(static_cast<double>(p));
    }
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("integer roots are exact") {
  CHECK(integer_root(0, 2) == 0);
  CHECK(integer_root(15, 2) == 3);
  CHECK(integer_root(16, 2) == 4);
  CHECK(integer_root(26, 3) == 2);
  CHECK(integer_root(27, 3) == 3);
  CHECK(integer_root(18446744073709551615ULL, 2) == 4294967295ULL);
  CHECK(integer_root(999999999999999999ULL, 2) == 999999999ULL);
  CHECK(integer_root(1000000000000000000ULL, 2) == 1000000000ULL);
}

TEST_CASE("segments tile the range and counts agree") {
  const std::uint64_t limit = 10'000'000;
  const Sieve sieve(limit, {.segment_size = 1 << 20});
  std::uint64_t next = 0;
  std::uint64_t total = 0;
  for (const auto& seg : sieve.segments()) {
    CHECK(seg.lo() == next);
    CHECK(seg.hi() - seg.lo() + 1 <= (1U << 20));
    next = seg.hi() + 1;
    total += seg.count();
  }
  CHECK(next == limit + 1);
  CHECK(total == 664'579);
  CHECK(sieve.count_primes(limit) == 664'579);
  CHECK(sieve.primes_up_to(limit).size() == 664'579);
}

TEST_CASE("threaded construction is identical to serial") {
  const Sieve serial(3'000'000, {.segment_size = 1 << 18, .threads = 1});
  const Sieve threaded(3'000'000, {.segment_size = 1 << 18, .threads = 4});
  REQUIRE(serial.segments().size() == threaded.segments().size());
  for (std::size_t i = 0; i < serial.segments().size(); ++i) CHECK(serial.segments()[i] == threaded.segments()[i]);
}

TEST_CASE("segment cache round-trips and rejects bad files") {
  const auto dir = std::filesystem::temp_directory_path() / "pairlab_sieve_cache_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  const auto seg = SieveCache::build(1000, 5000);
  const auto path = dir / "seg.bin";
  seg.save(path);
  CHECK(std::filesystem::file_size(path) == SieveCache::kHeaderBytes + 8 * ((5000 - 1000) / 64 + 1));
  const auto loaded = SieveCache::load(path);
  REQUIRE(loaded.has_value());
  CHECK(*loaded == seg);

  CHECK_FALSE(SieveCache::load(dir / "missing.bin").has_value());

  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(4);
    const std::uint32_t other_version = SieveCache::kFileVersion + 1;
    f.write(reinterpret_cast<const char*>(&other_version), sizeof other_version);
  }
  CHECK_FALSE(SieveCache::load(path).has_value());

  {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << "NOPE and some more bytes to fill the header.....";
  }
  CHECK_THROWS_AS(SieveCache::load(path), ParseError);

  seg.save(path);
  std::filesystem::resize_file(path, SieveCache::kHeaderBytes + 8);
  CHECK_THROWS_AS(SieveCache::load(path), ParseError);

  // A sieve backed by the cache directory gives the same answers on reuse.
  SieveOptions options{.segment_size = 1 << 16, .cache_dir = dir / "sieve"};
  const Sieve first(300'000, options);
  const Sieve second(300'000, options);
  CHECK(first.count_primes(300'000) == 25'997);
  CHECK(second.count_primes(300'000) == 25'997);
  std::filesystem::remove_all(dir);
}

TEST_CASE("queries beyond the sieve limit") {
  const Sieve sieve(1000);
  CHECK_THROWS_AS(sieve.count_primes(1001), CapacityError);
  CHECK_THROWS_AS(sieve.for_each_prime(0, 2000, [](std::uint64_t) {}), CapacityError);
  CHECK(sieve.is_prime(1009));
  CHECK(sieve.von_mangoldt(1024 * 1024) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(is_prime(kIntegerCeiling), CapacityError);
}
