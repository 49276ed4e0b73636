#include <catch_amalgamated.hpp>

#include "catalan_oracle.hpp"
#include "spinwire/walks.hpp"

using namespace spinwire;

TEST_CASE("walk_count reproduces the published table", "[walks]") {
  CHECK(walk_count(8, 2) == 3);
  CHECK(walk_count(12, 0) == 42);
  CHECK(walk_count(10, 3) == 4);
  CHECK(walk_count(2, 1) == 0);
  CHECK(walk_count(12, 5) == 1);
  CHECK(walk_count(12, 6) == 0);
}

TEST_CASE("walk_count rejects odd or non-positive step counts", "[walks]") {
  CHECK_THROWS_AS(walk_count(7, 0), InvalidArgument);
  CHECK_THROWS_AS(walk_count(0, 0), InvalidArgument);
  CHECK_THROWS_AS(walk_count(-4, 0), InvalidArgument);
  CHECK_THROWS_AS(walk_count(4, -1), InvalidArgument);
}

TEST_CASE("enumerate_walks bins paths by intermediate zero visits", "[walks]") {
  CHECK(enumerate_walks(2) == WalkRow{{0, 1}});
  CHECK(enumerate_walks(6) == WalkRow{{0, 2}, {1, 2}, {2, 1}});
  CHECK(enumerate_walks(12) == WalkRow{{0, 42}, {1, 42}, {2, 28}, {3, 14}, {4, 5}, {5, 1}});
}

TEST_CASE("enumerate_walks enforces its cap", "[walks]") {
  CHECK_THROWS_AS(enumerate_walks(22), InvalidArgument);
  CHECK_NOTHROW(enumerate_walks(22, 22));
  CHECK_THROWS_AS(enumerate_walks(5), InvalidArgument);
}

TEST_CASE("enumeration agrees with the closed formula up to n = 20", "[walks]") {
  for (long long n = 2; n <= 20; n += 2) {
    const WalkRow row = enumerate_walks(n);
    for (long long k = 0; k <= n; ++k) {
      const auto it = row.find(static_cast<unsigned>(k));
      const BigInt enumerated = (it == row.end()) ? BigInt{0} : it->second;
      INFO("n=" << n << " k=" << k);
      CHECK(enumerated == walk_count(n, k));
    }
  }
}

TEST_CASE("catalan matches the Segner recurrence", "[walks]") {
  const auto reference = oracle::catalan_numbers(40);
  CHECK(catalan(0) == 1);
  CHECK(catalan(2) == 2);
  CHECK(catalan(5) == 42);
  for (unsigned long m = 0; m < reference.size(); ++m) {
    CHECK(catalan(m) == reference[m]);
  }
}

TEST_CASE("walk table identities", "[walks][property]") {
  for (long long n = 4; n <= 60; n += 2) {
    CHECK(walk_count(n, 0) == walk_count(n, 1));
  }
  for (long long n = 2; n <= 60; n += 2) {
    CHECK(walk_count(n, 0) == catalan(static_cast<unsigned long>(n / 2 - 1)));
    CHECK(walk_count(n, n / 2) == 0);
  }
  for (long long n = 2; n <= 40; n += 2) {
    BigInt total = 0;
    for (long long k = 0; k <= n; ++k) total += walk_count(n, k);
    CHECK(total == catalan(static_cast<unsigned long>(n / 2)));
  }
}

TEST_CASE("counts beyond 64-bit range stay exact", "[walks]") {
  // C(70) exceeds 2^64.
  const BigInt big = walk_count(142, 0);
  CHECK(big == catalan(70));
  CHECK(big > BigInt{"18446744073709551616"});
}

TEST_CASE("build_walk_table is rectangular with zero padding", "[walks]") {
  const WalkTable table = build_walk_table(12);
  CHECK(table.entries.size() == 6 * 6);
  CHECK(table.at(2, 5) == 0);
  CHECK(table.at(10, 2) == 9);
  CHECK_THROWS_AS(build_walk_table(11), InvalidArgument);
}
