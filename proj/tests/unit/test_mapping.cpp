#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>
#include <vector>

#include <schedalod/mapping.hpp>
#include <schedalod/pipeline.hpp>
#include <schedalod/terms.hpp>

#include "../common/testkit.hpp"

using namespace schedalod;
using mapping::ConvertErrorCode;

namespace {

const pipeline::CorpusResult& fixture_corpus() {
  static const pipeline::CorpusResult corpus = [] {
    auto table =
        mapping::MappingTable::load(std::string(SCHEDALOD_DATA) + "/mapping.tsv");
    auto records =
        pipeline::load_records(std::string(SCHEDALOD_FIXTURES) + "/records");
    iri::IriPolicy policy;
    return pipeline::convert_corpus(records, table, policy);
  }();
  return corpus;
}

rdf::Iri zeri(const std::string& local) {
  return rdf::Iri("https://w3id.org/zericatalog/" + local);
}

}  // namespace

TEST_SUITE("mapping") {

TEST_CASE("structural codes are claimed by the pattern builders") {
  CHECK(mapping::MappingEngine::structural_code("TIT"));
  CHECK(mapping::MappingEngine::structural_code("ROF"));
  CHECK(mapping::MappingEngine::structural_code("SID"));
  CHECK(mapping::MappingEngine::structural_code("NCTN"));
  CHECK(!mapping::MappingEngine::structural_code("OGTD"));
  CHECK(!mapping::MappingEngine::structural_code("DTSI"));
}

TEST_CASE("fixture corpus converts cleanly") {
  const auto& corpus = fixture_corpus();
  CHECK(corpus.records.size() == 4);
  CHECK(corpus.warnings.empty());
  CHECK(corpus.merged.size() == 490);
  for (const auto& rec : corpus.records) CHECK(!rec.graph.empty());
}

TEST_CASE("converted corpus contains every reference shape") {
  const auto& merged = fixture_corpus().merged;
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e :
       fs::directory_iterator(std::string(SCHEDALOD_FIXTURES) + "/excerpts"))
    files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::size_t checked = 0;
  for (const auto& p : files) {
    // The seeAlso link appears only after reconciliation, not conversion.
    if (p.filename() == "illustration-seealso.nt") continue;
    CAPTURE(p.filename().string());
    auto expected = testkit::load_nt(p.string());
    CHECK(!expected.empty());
    CHECK(merged.contains_all(expected));
    ++checked;
  }
  CHECK(checked == 14);
}

TEST_CASE("photograph subject carries seven triples over six predicates") {
  auto g = testkit::load_nt(std::string(SCHEDALOD_FIXTURES) +
                            "/excerpts/work-level.nt");
  auto triples = g.match(zeri("photo/72486"), std::nullopt, std::nullopt);
  CHECK(triples.size() == 7);
  std::set<std::string> predicates;
  for (const auto& t : triples) predicates.insert(t.p.str());
  CHECK(predicates.size() == 6);
}

TEST_CASE("header-only record yields entry, expression and identifier") {
  auto table =
      mapping::MappingTable::load(std::string(SCHEDALOD_DATA) + "/mapping.tsv");
  iri::IriPolicy policy;
  mapping::MappingEngine engine(table, policy);
  auto r = record::parse_records("TSK: F\nID: 5\n").front();
  auto result = engine.convert(r);
  const rdf::Graph& g = result.graph;
  using schedalod::terms::T;
  CHECK(g.contains({zeri("fentry/5"), T("rdf:type"), T("fentry:FEntry")}));
  CHECK(g.contains({zeri("fentry/5"), T("rdf:type"), T("fabio:EntityMetadata")}));
  CHECK(g.contains({zeri("fentry/5"), T("rdf:type"), T("crm:E31_Document")}));
  CHECK(g.contains({zeri("fentry/5"), T("rdfs:label"),
                    rdf::Literal::tagged("Scheda F 5", "it")}));
  CHECK(g.contains({zeri("fentry/5"), T("frbr:realization"),
                    zeri("fentry/5/expression")}));
  CHECK(g.contains({zeri("fentry/5/expression"), T("frbr:realizationOf"),
                    zeri("fentry/5")}));
  CHECK(g.contains({zeri("fentry/5"), T("crm:P1_is_identified_by"),
                    zeri("fentry/5/identifier/1")}));
  CHECK(g.contains({zeri("fentry/5/identifier/1"), T("rdf:type"),
                    T("crm:E42_Identifier")}));
  CHECK(g.contains({zeri("fentry/5/identifier/1"), T("rdfs:label"),
                    rdf::Literal::tagged("5", "it")}));
  CHECK(g.contains({zeri("fentry/5/identifier/1"), T("crm:P2_has_type"),
                    zeri("term/catalog-entry-number")}));
  // No described subject, so no work-side nodes are minted.
  CHECK(g.match(std::nullopt, T("fentry:describes"), std::nullopt).empty());
}

TEST_CASE("malformed structural content raises typed errors") {
  auto table =
      mapping::MappingTable::load(std::string(SCHEDALOD_DATA) + "/mapping.tsv");
  auto code_of = [&](const std::string& text) {
    iri::IriPolicy policy;
    mapping::MappingEngine engine(table, policy);
    auto r = record::parse_records(text).front();
    try {
      engine.convert(r);
    } catch (const mapping::ConvertError& e) {
      CHECK(e.record_id() == r.id);
      return e.code();
    }
    FAIL("expected mapping::ConvertError");
    return ConvertErrorCode::BadDimension;
  };
  CHECK(code_of("TSK: F\nID: 11\n[AUF]\nAUFK: persona\n[/AUF]\n") ==
        ConvertErrorCode::DanglingActor);
  CHECK(code_of("TSK: F\nID: 12\n[ROL]\nROLR: fotografo\n[/ROL]\n") ==
        ConvertErrorCode::DanglingActor);
  CHECK(code_of("TSK: F\nID: 13\n[MNF]\nMISA: 12x18\n[/MNF]\n") ==
        ConvertErrorCode::BadDimension);
  CHECK(code_of("TSK: F\nID: 13\n[MNF]\nMISA: 1.2.3\n[/MNF]\n") ==
        ConvertErrorCode::BadDimension);
  CHECK(code_of("TSK: OA\nID: 14\n[ROF]\nROFF: boh\nROFW: Opera X\n[/ROF]\n") ==
        ConvertErrorCode::UnknownInfluenceKind);
  CHECK(code_of("TSK: F\nID: 15\n[ITM]\nITML: Firenze\nITML: Firenze\n[/ITM]\n") ==
        ConvertErrorCode::CyclicPlaceChain);
}

TEST_CASE("merged corpus equals the union of per-record graphs") {
  const auto& corpus = fixture_corpus();
  rdf::Graph manual;
  for (const auto& rec : corpus.records) manual.merge(rec.graph);
  CHECK(manual == corpus.merged);
}

}  // TEST_SUITE
