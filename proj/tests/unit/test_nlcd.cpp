#include <cstring>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "nlc/error.hpp"
#include "nlc/nlcd.hpp"

using namespace nlc;

TEST_CASE("NLCD roundtrip is bit-exact") {
  for (const Grid& g : {Grid::line(17, -1.0, 1.0), Grid::plane({5, 7}, {-0.3, 2.0}, {1.1, 3.5})}) {
    DensityField f = testing::random_field(g, 2, 7);
    f.set_time(0.123456789);
    std::stringstream buf;
    write_nlcd(buf, f);
    const DensityField h = read_nlcd(buf);
    CHECK(h.grid() == g);
    CHECK(h.populations() == 2);
    CHECK(h.time() == f.time());
    CHECK(std::memcmp(h.values().data(), f.values().data(), f.values().size_bytes()) == 0);
  }
}

TEST_CASE("NLCD header layout") {
  DensityField f(Grid::plane({4, 5}, {0, 0}, {1, 1}), 1, 2.5);
  std::stringstream buf;
  write_nlcd(buf, f);
  const std::string bytes = buf.str();
  CHECK(bytes.substr(0, 4) == "NLCD");
  // magic, version, dim, m, 2 cells, 2 origins, 2 spacings, time, 20 values
  CHECK(bytes.size() == 4 + 4 + 4 + 4 + 2 * 4 + 2 * 8 + 2 * 8 + 8 + 20 * 8);
  const auto u32 = [&](std::size_t at) {
    return static_cast<unsigned>(static_cast<unsigned char>(bytes[at])) |
           static_cast<unsigned>(static_cast<unsigned char>(bytes[at + 1])) << 8;
  };
  CHECK(u32(4) == 1);   // version
  CHECK(u32(8) == 2);   // dim
  CHECK(u32(12) == 1);  // populations
  CHECK(u32(16) == 4);
  CHECK(u32(20) == 5);
}

TEST_CASE("NLCD rejects bad input") {
  std::stringstream bad("XXXX");
  CHECK_THROWS_AS(read_nlcd(bad), IoError);
  DensityField f(Grid::line(4, 0, 1), 1);
  std::stringstream buf;
  write_nlcd(buf, f);
  std::string truncated = buf.str();
  truncated.resize(truncated.size() - 3);
  std::stringstream t(truncated);
  CHECK_THROWS_AS(read_nlcd(t), IoError);
}
