#include <doctest.h>

#include <schedalod/rdf.hpp>

#include <algorithm>
#include <sstream>

#include "../common/testkit.hpp"

using namespace schedalod;

TEST_SUITE("rdf") {

TEST_CASE("iri rejects whitespace and control characters") {
  CHECK_NOTHROW(rdf::Iri("https://w3id.org/zericatalog/photo/72486"));
  CHECK_THROWS_AS(rdf::Iri("https://example.org/a b"), rdf::Error);
  CHECK_THROWS_AS(rdf::Iri("https://example.org/a\nb"), rdf::Error);
  CHECK_THROWS_AS(rdf::Iri(""), rdf::Error);
  CHECK_THROWS_AS(rdf::Iri("relative/path"), rdf::Error);
}

TEST_CASE("literal factories canonicalize xsd:string to plain") {
  auto plain = rdf::Literal::plain("Battesimo di Cristo");
  auto typed = rdf::Literal::typed(
      "Battesimo di Cristo", rdf::Iri("http://www.w3.org/2001/XMLSchema#string"));
  CHECK(plain == typed);
  CHECK_FALSE(typed.datatype().has_value());
}

TEST_CASE("language tags are lowercased and validated") {
  auto it = rdf::Literal::tagged("fotografia", "IT");
  CHECK(it.lang() == "it");
  CHECK_THROWS_AS(rdf::Literal::tagged("x", ""), rdf::Error);
  CHECK_THROWS_AS(rdf::Literal::tagged("x", "it_IT"), rdf::Error);
  CHECK_THROWS_AS(rdf::Literal::tagged("x", "toolongtag9"), rdf::Error);
}

TEST_CASE("graph has set semantics") {
  rdf::Graph g;
  rdf::Iri s("https://w3id.org/zericatalog/photo/1");
  rdf::Iri p("http://www.w3.org/2000/01/rdf-schema#label");
  g.add(s, p, rdf::Literal::tagged("foto", "it"));
  g.add(s, p, rdf::Literal::tagged("foto", "it"));
  CHECK(g.size() == 1);
  g.add(s, p, rdf::Literal::tagged("foto", "en"));
  CHECK(g.size() == 2);
}

TEST_CASE("match agrees with a brute-force filter on random graphs") {
  testkit::Rng rng(4201);
  for (int round = 0; round < 60; ++round) {
    rdf::Graph g = testkit::random_graph(rng, 200);
    for (int probe = 0; probe < 8; ++probe) {
      std::optional<rdf::Iri> s, p;
      std::optional<rdf::Term> o;
      if (rng.chance(50)) s = testkit::random_iri(rng);
      if (rng.chance(50)) p = testkit::random_iri(rng);
      if (rng.chance(50)) o = testkit::random_term(rng);
      CHECK(g.match(s, p, o) == testkit::match_oracle(g, s, p, o));
    }
  }
}

TEST_CASE("prefix map expands, compresses, and refuses duplicates") {
  rdf::PrefixMap pm = rdf::PrefixMap::defaults();
  CHECK(pm.expand_curie("crm:E55_Type").str() ==
        "http://www.cidoc-crm.org/cidoc-crm/E55_Type");
  auto curie = pm.compress(rdf::Iri("http://purl.org/spar/fabio/ArtisticWork"));
  REQUIRE(curie.has_value());
  CHECK(curie->first == "fabio");
  CHECK(curie->second == "ArtisticWork");
  CHECK_FALSE(pm.compress(rdf::Iri("http://unrelated.example/x")).has_value());
  CHECK_THROWS_AS(pm.bind("crm", "http://other.example/"), rdf::Error);
  const char* expected[] = {"crm", "fentry", "oaentry", "fabio", "frbr",
                            "pro", "scor",   "hico",    "cito",  "prov",
                            "tv",  "foaf",   "rdfs",    "rdf",   "owl"};
  REQUIRE(pm.entries().size() == 15);
  for (std::size_t i = 0; i < 15; ++i) CHECK(pm.entries()[i].first == expected[i]);
}

TEST_CASE("ntriples output is sorted and escapes the tagged label") {
  rdf::Graph g;
  g.add(rdf::Iri("https://w3id.org/zericatalog/photo/2"),
        rdf::Iri("http://www.w3.org/2000/01/rdf-schema#label"),
        rdf::Literal::tagged("Fotografia \"Alinari, Fratelli\"", "it"));
  g.add(rdf::Iri("https://w3id.org/zericatalog/photo/1"),
        rdf::Iri("http://www.w3.org/2000/01/rdf-schema#label"),
        rdf::Literal::plain("x"));
  std::string out = rdf::serialize_ntriples(g);
  CHECK(out.find("\\\"Alinari, Fratelli\\\"\"@it .\n") != std::string::npos);
  std::vector<std::string> lines;
  std::istringstream in(out);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 2);
  CHECK(std::is_sorted(lines.begin(), lines.end()));
  CHECK(lines[0].find("photo/1") != std::string::npos);
}

TEST_CASE("empty graph serializes to an empty ntriples stream") {
  CHECK(rdf::serialize_ntriples(rdf::Graph{}).empty());
}

TEST_CASE("ntriples round-trip is the identity on 200 random graphs") {
  testkit::Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    rdf::Graph g = testkit::random_graph(rng, 200);
    std::string nt = rdf::serialize_ntriples(g);
    CHECK(rdf::parse_ntriples(nt) == g);
    CHECK(rdf::serialize_ntriples(g) == nt);
  }
}

TEST_CASE("turtle reparses to the same set as ntriples") {
  testkit::Rng rng(11);
  rdf::PrefixMap pm = rdf::PrefixMap::defaults();
  for (int round = 0; round < 60; ++round) {
    rdf::Graph g = testkit::random_graph(rng, 120);
    rdf::Graph from_ttl = testkit::reparse_turtle(rdf::serialize_turtle(g, pm));
    rdf::Graph from_nt = rdf::parse_ntriples(rdf::serialize_ntriples(g));
    CHECK(from_ttl == from_nt);
  }
}

TEST_CASE("turtle groups objects with commas and types with a") {
  rdf::Graph g = testkit::load_nt(std::string(SCHEDALOD_FIXTURES) +
                                  "/excerpts/describes.nt");
  std::string ttl = rdf::serialize_turtle(g, rdf::PrefixMap::defaults());
  CHECK(ttl.rfind("@prefix cito:", 0) == 0);
  std::string describes = ttl.substr(ttl.find("fentry:describes"));
  describes = describes.substr(0, describes.find(" ;"));
  CHECK(std::count(describes.begin(), describes.end(), ',') == 3);
  CHECK(ttl.find("fentry:FEntry") != std::string::npos);
  CHECK(ttl.find(" a ") != std::string::npos);
  CHECK(ttl.find("rdf:type") == std::string::npos);
}

TEST_CASE("parser accepts comments and rejects blank nodes") {
  rdf::Graph g = rdf::parse_ntriples(
      "# comment\n\n<http://a/s> <http://a/p> <http://a/o> .\n"
      "<http://a/s> <http://a/p> \"v\"@EN .\n"
      "<http://a/s> <http://a/p> \"1940\"^^<http://www.w3.org/2001/XMLSchema#gYear> .\n");
  CHECK(g.size() == 3);
  CHECK(g.contains(rdf::Triple{rdf::Iri("http://a/s"), rdf::Iri("http://a/p"),
                               rdf::Literal::tagged("v", "en")}));
  CHECK_THROWS_AS(rdf::parse_ntriples("<http://a/s> <http://a/p> \"v\"@en-us .\n"),
                  rdf::Error);
  CHECK_THROWS_AS(rdf::parse_ntriples("_:b0 <http://a/p> <http://a/o> .\n"),
                  rdf::Error);
  CHECK_THROWS_AS(rdf::parse_ntriples("<http://a/s> <http://a/p> _:b0 .\n"),
                  rdf::Error);
  CHECK_THROWS_AS(rdf::parse_ntriples("<http://a/s> <http://a/p> <http://a/o>\n"),
                  rdf::Error);
  CHECK_THROWS_AS(rdf::parse_ntriples("<http://a/s> <http://a/p> .\n"),
                  rdf::Error);
  try {
    rdf::parse_ntriples("<http://a/s> <http://a/p> <http://a/o> .\nbad line\n");
    FAIL("expected a syntax error");
  } catch (const rdf::Error& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicate lines collapse on parse") {
  rdf::Graph g = rdf::parse_ntriples(
      "<http://a/s> <http://a/p> <http://a/o> .\n"
      "<http://a/s> <http://a/p> <http://a/o> .\n");
  CHECK(g.size() == 1);
}

}  // TEST_SUITE
