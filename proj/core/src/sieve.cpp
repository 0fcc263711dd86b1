#include "pairlab/sieve.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <thread>

namespace pairlab {
namespace {

constexpr std::array<char, 4> kMagic{'P', 'L', 'S', 'V'};

std::uint64_t words_for(std::uint64_t lo, std::uint64_t hi) { return (hi - lo + 1 + 63) / 64; }

std::vector<std::uint64_t> small_primes(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// True when r^k > n.
bool power_exceeds(std::uint64_t r, unsigned k, std::uint64_t n) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r != 0 && acc > n / r) return true;
    acc *= r;
  }
  return acc > n;
}

std::uint64_t checked_power(std::uint64_t r, unsigned k) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < k; ++i) acc *= r;
  return acc;
}

template <class IsPrime>
std::optional<PrimePower> detect_prime_power(std::uint64_t n, IsPrime&& is_prime_fn) {
  if (n < 2) return std::nullopt;
  if ((n & 1U) == 0) {
    if ((n & (n - 1)) == 0) return PrimePower{2, static_cast<unsigned>(std::countr_zero(n))};
    return std::nullopt;
  }
  if (is_prime_fn(n)) return PrimePower{n, 1};
  // Odd n = p^k has p >= 3, so only prime exponents q with 3^q <= n need
  // testing; a q-th root that is itself a prime power finishes the job.
  for (const unsigned q : {2U, 3U, 5U, 7U, 11U, 13U, 17U, 19U, 23U, 29U, 31U, 37U, 41U}) {
    if (power_exceeds(3, q, n)) break;
    const std::uint64_t root = integer_root(n, q);
    if (checked_power(root, q) != n) continue;
    const auto inner = detect_prime_power(root, is_prime_fn);
    if (!inner) return std::nullopt;
    return PrimePower{inner->base, inner->exponent * q};
  }
  return std::nullopt;
}

void check_ceiling(std::uint64_t n) {
  if (n >= kIntegerCeiling) throw CapacityError("integer " + std::to_string(n) + " exceeds 2^63");
}

}  // namespace

SieveCache SieveCache::build(std::uint64_t lo, std::uint64_t hi,
                             std::span<const std::uint64_t> base_primes) {
  if (hi < lo) throw DomainError("segment upper bound below lower bound");
  check_ceiling(hi);
  const std::uint64_t size = hi - lo + 1;
  // Odd numbers start out as candidates.
  std::vector<std::uint64_t> bits(words_for(lo, hi),
                                  (lo & 1U) == 0 ? 0xAAAAAAAAAAAAAAAAULL : 0x5555555555555555ULL);
  if ((size & 63) != 0) bits.back() &= (std::uint64_t{1} << (size & 63)) - 1;
  auto clear = [&](std::uint64_t n) {
    const std::uint64_t i = n - lo;
    bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  };
  auto set = [&](std::uint64_t n) {
    const std::uint64_t i = n - lo;
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  };
  if (lo <= 1 && hi >= 1) clear(1);
  if (lo <= 2 && hi >= 2) set(2);

  for (const std::uint64_t p : base_primes) {
    if (p == 2) continue;
    if (p * p > hi) break;
    std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    if ((start & 1U) == 0) start += p;
    for (std::uint64_t m = start; m <= hi; m += 2 * p) clear(m);
  }
  return SieveCache(lo, hi, std::move(bits));
}

SieveCache SieveCache::build(std::uint64_t lo, std::uint64_t hi) {
  check_ceiling(hi);
  const auto base = small_primes(integer_root(hi, 2));
  return build(lo, hi, base);
}

std::uint64_t SieveCache::count(std::uint64_t a, std::uint64_t b) const noexcept {
  std::uint64_t total = 0;
  if (a < lo_) a = lo_;
  if (b > hi_) b = hi_;
  if (a > b) return 0;
  const std::uint64_t first = a - lo_;
  const std::uint64_t last = b - lo_;
  for (std::uint64_t w = first >> 6; w <= (last >> 6); ++w) {
    std::uint64_t word = bits_[w];
    if (w == (first >> 6)) word &= ~std::uint64_t{0} << (first & 63);
    if (w == (last >> 6) && (last & 63) != 63) word &= (std::uint64_t{1} << ((last & 63) + 1)) - 1;
    total += static_cast<std::uint64_t>(std::popcount(word));
  }
  return total;
}

void SieveCache::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write sieve cache " + path.string());
  const std::uint32_t version = kFileVersion;
  const std::uint64_t count = bits_.size();
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&lo_), sizeof lo_);
  out.write(reinterpret_cast<const char*>(&hi_), sizeof hi_);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(bits_.data()),
            static_cast<std::streamsize>(bits_.size() * sizeof(std::uint64_t)));
  if (!out) throw std::runtime_error("short write to sieve cache " + path.string());
}

std::optional<SieveCache> SieveCache::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, kHeaderBytes> header{};
  in.read(header.data(), header.size());
  if (in.gcount() != static_cast<std::streamsize>(header.size())) {
    throw ParseError("truncated sieve cache header in " + path.string());
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) {
    throw ParseError("bad sieve cache magic in " + path.string());
  }
  std::uint32_t version = 0;
  std::uint64_t lo = 0, hi = 0, count = 0;
  std::memcpy(&version, header.data() + 4, sizeof version);
  std::memcpy(&lo, header.data() + 8, sizeof lo);
  std::memcpy(&hi, header.data() + 16, sizeof hi);
  std::memcpy(&count, header.data() + 24, sizeof count);
  if (version != kFileVersion) return std::nullopt;
  if (hi < lo || hi >= kIntegerCeiling || count != words_for(lo, hi)) {
    throw ParseError("inconsistent sieve cache header in " + path.string());
  }
  std::vector<std::uint64_t> bits(count);
  in.read(reinterpret_cast<char*>(bits.data()), static_cast<std::streamsize>(count * sizeof(std::uint64_t)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(std::uint64_t))) {
    throw ParseError("truncated sieve cache body in " + path.string());
  }
  return SieveCache(lo, hi, std::move(bits));
}

bool is_prime_deterministic(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (const std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  // Bases proven sufficient for n < 2^64.
  for (const std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    const std::uint64_t base = a % n;
    if (base == 0) continue;
    std::uint64_t x = pow_mod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t integer_root(std::uint64_t n, unsigned k) noexcept {
  if (k == 0) return 0;
  if (k == 1 || n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  while (r > 0 && power_exceeds(r, k, n)) --r;
  while (!power_exceeds(r + 1, k, n)) ++r;
  return r;
}

Sieve::Sieve(std::uint64_t limit, SieveOptions options) : limit_(limit), options_(std::move(options)) {
  if (options_.segment_size == 0) throw DomainError("segment size must be positive");
  if (limit_ > options_.max_limit) {
    throw CapacityError("sieve limit " + std::to_string(limit_) + " exceeds configured maximum " +
                        std::to_string(options_.max_limit));
  }
  check_ceiling(limit_);
  const auto base = small_primes(integer_root(limit_, 2));
  const std::size_t n_segments = static_cast<std::size_t>(limit_ / options_.segment_size) + 1;
  std::vector<std::optional<SieveCache>> built(n_segments);
  if (options_.cache_dir) std::filesystem::create_directories(*options_.cache_dir);

  auto make_segment = [&](std::size_t s) {
    const std::uint64_t lo = s * options_.segment_size;
    const std::uint64_t hi = std::min(lo + options_.segment_size - 1, limit_);
    if (options_.cache_dir) {
      const auto path = *options_.cache_dir /
                        ("segment_" + std::to_string(lo) + "_" + std::to_string(hi) + ".bin");
      std::optional<SieveCache> cached;
      try {
        cached = SieveCache::load(path);
      } catch (const ParseError&) {
        cached.reset();
      }
      if (cached && cached->lo() == lo && cached->hi() == hi) {
        built[s] = std::move(cached);
        return;
      }
      built[s] = SieveCache::build(lo, hi, base);
      built[s]->save(path);
      return;
    }
    built[s] = SieveCache::build(lo, hi, base);
  };

  const unsigned workers = std::max(1U, std::min<unsigned>(options_.threads, static_cast<unsigned>(n_segments)));
  if (workers == 1) {
    for (std::size_t s = 0; s < n_segments; ++s) make_segment(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t s = next++; s < n_segments; s = next++) make_segment(s);
      });
    }
  }
  segments_.reserve(n_segments);
  for (auto& seg : built) segments_.push_back(std::move(*seg));
}

void Sieve::require_within(std::uint64_t n) const {
  if (n > limit_) {
    throw CapacityError("value " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
  }
}

bool Sieve::is_prime(std::uint64_t n) const {
  if (n <= limit_) return segments_[segment_index(n)].is_prime(n);
  check_ceiling(n);
  return is_prime_deterministic(n);
}

std::optional<PrimePower> Sieve::prime_power(std::uint64_t n) const {
  check_ceiling(n);
  return detect_prime_power(n, [this](std::uint64_t m) { return is_prime(m); });
}

double Sieve::von_mangoldt(std::uint64_t n) const {
  const auto pp = prime_power(n);
  return pp ? std::log(static_cast<double>(pp->base)) : 0.0;
}

std::vector<std::uint64_t> Sieve::primes_up_to(std::uint64_t n) const {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  require_within(n);
  out.reserve(static_cast<std::size_t>(count_primes(n)));
  for_each_prime(0, n, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

std::uint64_t Sieve::count_primes(std::uint64_t n) const {
  require_within(n);
  std::uint64_t total = 0;
  for (std::size_t s = 0; s <= segment_index(n); ++s) total += segments_[s].count(0, n);
  return total;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n, std::uint64_t max_limit) {
  if (n > max_limit) {
    throw CapacityError("primes_up_to(" + std::to_string(n) + ") exceeds maximum " + std::to_string(max_limit));
  }
  SieveOptions options;
  options.max_limit = max_limit;
  return Sieve(n, options).primes_up_to(n);
}

bool is_prime(std::uint64_t n) {
  check_ceiling(n);
  return is_prime_deterministic(n);
}

double von_mangoldt(std::uint64_t n) {
  if (n == 0) throw DomainError("von_mangoldt requires n >= 1");
  check_ceiling(n);
  const auto pp = detect_prime_power(n, is_prime_deterministic);
  return pp ? std::log(static_cast<double>(pp->base)) : 0.0;
}

}  // namespace pairlab
