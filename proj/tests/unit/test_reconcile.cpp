#include <doctest.h>

#include <schedalod/reconcile.hpp>

using namespace schedalod;

TEST_SUITE("reconcile") {

TEST_CASE("jaro-winkler on identical strings is 1") {
  CHECK(reconcile::jaro_winkler("giacomo-brogi", "giacomo-brogi") ==
        doctest::Approx(1.0));
}

} // TEST_SUITE
