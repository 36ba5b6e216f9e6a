#include <doctest.h>

#include <schedalod/iri_policy.hpp>

using namespace schedalod;

TEST_SUITE("iri") {

TEST_CASE("slugify lowercases, strips accents, hyphenates") {
  CHECK(iri::slugify("Giacomo Brogi") == "giacomo-brogi");
  CHECK(iri::slugify("Università di Bologna") == "universita-di-bologna");
  CHECK(iri::slugify("  gelatina ai sali d'argento ") ==
        "gelatina-ai-sali-d-argento");
  CHECK(iri::slugify("Mostra di Londra 1987") == "mostra-di-londra-1987");
  CHECK(iri::slugify("A---B") == "a-b");
  CHECK_THROWS_AS(iri::slugify("---"), iri::Error);
  CHECK_THROWS_AS(iri::slugify(""), iri::Error);
}

TEST_CASE("policy mints stable entry iris") {
  iri::IriPolicy p(iri::kDefaultBase);
  CHECK(p.fentry("72486").str() == "https://w3id.org/zericatalog/fentry/72486");
  CHECK(p.oaentry("43677").str() == "https://w3id.org/zericatalog/oaentry/43677");
  CHECK(p.photo("72486").str() == "https://w3id.org/zericatalog/photo/72486");
}

TEST_CASE("artwork takes ids directly and slugs names") {
  iri::IriPolicy p;
  CHECK(p.artwork("47172").str() == "https://w3id.org/zericatalog/artwork/47172");
  CHECK(p.artwork("Battesimo di Cristo").str() ==
        "https://w3id.org/zericatalog/artwork/battesimo-di-cristo");
}

TEST_CASE("distinct names colliding on one slug get numbered suffixes") {
  iri::IriPolicy p;
  CHECK(p.slugged(iri::Kind::Person, "Brogi").str() ==
        "https://w3id.org/zericatalog/person/brogi");
  CHECK(p.slugged(iri::Kind::Person, "BROGI").str() ==
        "https://w3id.org/zericatalog/person/brogi-2");
  CHECK(p.slugged(iri::Kind::Person, "brogi!").str() ==
        "https://w3id.org/zericatalog/person/brogi-3");
  // Same source name always returns its first assignment.
  CHECK(p.slugged(iri::Kind::Person, "Brogi").str() ==
        "https://w3id.org/zericatalog/person/brogi");
  // Pools are separate per kind.
  CHECK(p.slugged(iri::Kind::Place, "Brogi").str() ==
        "https://w3id.org/zericatalog/place/brogi");
}

TEST_CASE("reserve fixes assignments ahead of use") {
  iri::IriPolicy p;
  p.reserve(iri::Kind::Term, "positivo");
  p.reserve(iri::Kind::Term, "POSITIVO");
  CHECK(p.slugged(iri::Kind::Term, "POSITIVO").str() ==
        "https://w3id.org/zericatalog/term/positivo-2");
  CHECK(p.slugged(iri::Kind::Term, "positivo").str() ==
        "https://w3id.org/zericatalog/term/positivo");
}

TEST_CASE("facet nodes chain from their parents") {
  rdf::Iri photo("https://w3id.org/zericatalog/photo/72486");
  CHECK(iri::sub(photo, "shot").str() ==
        "https://w3id.org/zericatalog/photo/72486/shot");
  CHECK(iri::subn(photo, "title", 2).str() ==
        "https://w3id.org/zericatalog/photo/72486/title/2");
}

TEST_CASE("custom base must end with a slash") {
  CHECK_THROWS_AS(iri::IriPolicy("https://ex.org/nobar"), iri::Error);
  iri::IriPolicy p("https://data.example.org/zeri/");
  CHECK(p.photo("1").str() == "https://data.example.org/zeri/photo/1");
}

}  // TEST_SUITE
