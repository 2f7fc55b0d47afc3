#include <gtest/gtest.h>

#include <sstream>

#include "nahm/cache.hpp"

using namespace nahm;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nahm_cache_test";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::filesystem::remove(p);
  return p;
}

std::string bytes_of(const IntSeries& s, SeriesTag tag) {
  std::ostringstream os(std::ios::binary);
  write_cache(os, tag, s);
  return os.str();
}

}  // namespace

TEST(Cache, ByteLayout) {
  const IntSeries s(std::vector<mpz_class>{0, -258, 1});
  const std::string b = bytes_of(s, SeriesTag::sigma);
  const std::string expect = std::string("NAHM") + '\x01' + '\x01' + std::string("\x02\0\0\0\0\0\0\0", 8) +
                             std::string("\x00\x00\x00\x00\x00", 5) +
                             std::string("\x01\x02\x00\x00\x00\x02\x01", 7) +
                             std::string("\x00\x01\x00\x00\x00\x01", 6);
  EXPECT_EQ(b, expect);
}

TEST(Cache, RoundTripStream) {
  const auto s = v1_coefficients(5000);
  std::istringstream is(bytes_of(s, SeriesTag::v1), std::ios::binary);
  const auto r = read_cache(is);
  EXPECT_EQ(r.tag, SeriesTag::v1);
  EXPECT_EQ(r.series, s);
}

TEST(Cache, RejectsUnknownVersion) {
  std::string b = bytes_of(v1_coefficients(3), SeriesTag::v1);
  b[4] = 2;
  std::istringstream is(b, std::ios::binary);
  EXPECT_THROW(read_cache(is), CacheError);
}

TEST(Cache, RejectsBadMagicAndTruncation) {
  std::string b = bytes_of(v1_coefficients(30), SeriesTag::v1);
  std::string bad = b;
  bad[0] = 'X';
  std::istringstream is1(bad, std::ios::binary);
  EXPECT_THROW(read_cache(is1), CacheError);
  std::istringstream is2(b.substr(0, b.size() - 1), std::ios::binary);
  EXPECT_THROW(read_cache(is2), CacheError);
  std::string badtag = b;
  badtag[5] = 7;
  std::istringstream is3(badtag, std::ios::binary);
  EXPECT_THROW(read_cache(is3), CacheError);
}

TEST(Cache, ReadThroughHitAndMiss) {
  const auto p = temp_path("v1.bin");
  const auto first = cached_coefficients(p, SeriesTag::v1, 800);
  EXPECT_FALSE(first.hit);
  const auto second = cached_coefficients(p, SeriesTag::v1, 500);
  EXPECT_TRUE(second.hit);
  EXPECT_EQ(second.series, v1_coefficients(500));
  const auto grown = cached_coefficients(p, SeriesTag::v1, 1200);
  EXPECT_FALSE(grown.hit);
  EXPECT_EQ(read_cache_file(p).series.order(), 1200u);
  EXPECT_THROW(cached_coefficients(p, SeriesTag::sigma, 10), CacheError);
}

TEST(Cache, FileRoundTripIsByteStable) {
  const auto p = temp_path("sigma.bin");
  const auto s = sigma_coefficients(2000);
  write_cache_file(p, SeriesTag::sigma, s);
  const auto r = read_cache_file(p);
  EXPECT_EQ(r.series, s);
  EXPECT_EQ(bytes_of(r.series, SeriesTag::sigma), bytes_of(s, SeriesTag::sigma));
}

TEST(Cache, UnwritablePath) {
  EXPECT_THROW(write_cache_file("/nonexistent_dir/x/cache.bin", SeriesTag::v1, v1_coefficients(3)), CacheError);
  EXPECT_THROW(read_cache_file("/nonexistent_dir/x/cache.bin"), CacheError);
}
