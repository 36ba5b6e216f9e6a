#include <doctest.h>

#include <schedalod/store.hpp>

using namespace schedalod;

TEST_SUITE("store") {

TEST_CASE("empty pattern file is rejected") {
  CHECK_THROWS_AS(store::parse_bgp("# only a comment\n"), store::Error);
}

} // TEST_SUITE
