#pragma once
// Versioned binary coefficient cache.
//
// Layout (all integers little-endian):
//   "NAHM" | u8 version (=1) | u8 tag (0 = v1, 1 = sigma) | u64 order
//   then order+1 records: u8 sign (0 nonneg, 1 neg) | u32 length | magnitude bytes (LE)

#include "nahm/series.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>

namespace nahm {

enum class SeriesTag : std::uint8_t { v1 = 0, sigma = 1 };

inline constexpr std::uint8_t cache_version = 1;

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

template <class T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> b{};
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b.data(), b.size());
}

template <class T>
T get_le(std::istream& is) {
  std::array<unsigned char, sizeof(T)> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), b.size())) throw CacheError("cache: truncated file");
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
  return v;
}

}  // namespace detail

inline void write_cache(std::ostream& os, SeriesTag tag, const IntSeries& s) {
  os.write("NAHM", 4);
  detail::put_le<std::uint8_t>(os, cache_version);
  detail::put_le<std::uint8_t>(os, static_cast<std::uint8_t>(tag));
  detail::put_le<std::uint64_t>(os, s.order());
  std::vector<unsigned char> buf;
  for (const auto& c : s.coeffs()) {
    const std::size_t nbytes = (mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8;
    buf.assign(c == 0 ? 0 : nbytes, 0);
    std::size_t count = 0;
    if (c != 0) mpz_export(buf.data(), &count, -1, 1, -1, 0, c.get_mpz_t());
    buf.resize(count);
    detail::put_le<std::uint8_t>(os, c < 0 ? 1 : 0);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(count));
    os.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(count));
  }
  if (!os) throw CacheError("cache: write failed");
}

struct CachedSeries {
  SeriesTag tag;
  IntSeries series;
};

inline CachedSeries read_cache(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || std::string(magic.data(), 4) != "NAHM") throw CacheError("cache: bad magic");
  const auto version = detail::get_le<std::uint8_t>(is);
  if (version != cache_version) throw CacheError("cache: unsupported version " + std::to_string(version));
  const auto tag = detail::get_le<std::uint8_t>(is);
  if (tag > 1) throw CacheError("cache: unknown series tag " + std::to_string(tag));
  const auto order = detail::get_le<std::uint64_t>(is);
  std::vector<mpz_class> coeffs;
  coeffs.reserve(order + 1);
  std::vector<unsigned char> buf;
  for (std::uint64_t k = 0; k <= order; ++k) {
    const auto sign = detail::get_le<std::uint8_t>(is);
    if (sign > 1) throw CacheError("cache: bad sign byte");
    const auto len = detail::get_le<std::uint32_t>(is);
    buf.resize(len);
    if (len > 0 && !is.read(reinterpret_cast<char*>(buf.data()), len)) throw CacheError("cache: truncated record");
    mpz_class c;
    if (len > 0) mpz_import(c.get_mpz_t(), len, -1, 1, -1, 0, buf.data());
    if (sign == 1) c = -c;
    coeffs.push_back(std::move(c));
  }
  return {static_cast<SeriesTag>(tag), IntSeries(std::move(coeffs))};
}

inline void write_cache_file(const std::filesystem::path& p, SeriesTag tag, const IntSeries& s) {
  const auto tmp = std::filesystem::path(p.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw CacheError("cache: cannot open " + tmp.string() + " for writing");
    write_cache(os, tag, s);
  }
  std::filesystem::rename(tmp, p);
}

inline CachedSeries read_cache_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw CacheError("cache: cannot open " + p.string());
  return read_cache(is);
}

struct CacheLookup {
  IntSeries series;
  bool hit;  // true when no recomputation was needed
};

/** Read-through: serve a prefix from the cache when it is long enough, else compute and rewrite it. */
inline CacheLookup cached_coefficients(const std::optional<std::filesystem::path>& path, SeriesTag tag, std::size_t N) {
  if (path && std::filesystem::exists(*path)) {
    auto cached = read_cache_file(*path);
    if (cached.tag != tag) throw CacheError("cache: file holds a different series");
    if (cached.series.order() >= N) return {cached.series.prefix(N), true};
  }
  IntSeries s = tag == SeriesTag::v1 ? v1_coefficients(N) : sigma_coefficients(N);
  if (path) write_cache_file(*path, tag, s);
  return {std::move(s), false};
}

}  // namespace nahm
