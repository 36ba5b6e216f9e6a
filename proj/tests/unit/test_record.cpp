#include <doctest.h>

#include <schedalod/mapping_table.hpp>
#include <schedalod/record.hpp>

#include "../common/testkit.hpp"

using namespace schedalod;
using record::RecordError;

namespace {

record::EntryRecord parse_one(const std::string& text) {
  auto records = record::parse_records(text);
  REQUIRE(records.size() == 1);
  return records.front();
}

}  // namespace

TEST_SUITE("record") {

TEST_CASE("minimal record parses with kind and id") {
  auto r = parse_one("TSK: F\nID: 72486\nOGTD: positivo\n");
  CHECK(r.kind == record::RecordKind::F);
  CHECK(r.id == "72486");
  REQUIRE(r.first("OGTD") != nullptr);
  CHECK(r.first("OGTD")->value == "positivo");
  CHECK(r.first("OGTT") == nullptr);
}

TEST_CASE("comments and blank lines are ignored, values are trimmed") {
  auto r = parse_one(
      "# header comment\n"
      "TSK: OA\n"
      "\n"
      "ID:   47\n"
      "SGTI:   Battesimo di Cristo   \n"
      "# trailing comment\n");
  CHECK(r.kind == record::RecordKind::OA);
  CHECK(r.id == "47");
  CHECK(r.first("SGTI")->value == "Battesimo di Cristo");
}

TEST_CASE("repeated simple fields keep order and multiplicity") {
  auto r = parse_one("TSK: F\nID: 1\nSGTI: uno\nOGTD: positivo\nSGTI: due\n");
  auto all = r.all("SGTI");
  REQUIRE(all.size() == 2);
  CHECK(all[0]->value == "uno");
  CHECK(all[1]->value == "due");
  CHECK(r.first("SGTI")->value == "uno");
}

TEST_CASE("group blocks accumulate repetitions under one code") {
  auto r = parse_one(
      "TSK: F\nID: 9\n"
      "[AUTF]\nAUFN: Brogi, Giacomo\nAUFR: fotografo\n[/AUTF]\n"
      "[PRDT]\nPDFN: Alinari\n[/PRDT]\n"
      "[AUTF]\nAUFN: Anonimo\n[/AUTF]\n");
  REQUIRE(r.groups.size() == 2);
  const auto* autf = r.group("AUTF");
  REQUIRE(autf != nullptr);
  REQUIRE(autf->repetitions.size() == 2);
  CHECK(autf->repetitions[0].first("AUFN")->value == "Brogi, Giacomo");
  CHECK(autf->repetitions[0].first("AUFR")->value == "fotografo");
  CHECK(autf->repetitions[1].first("AUFN")->value == "Anonimo");
  const auto* prdt = r.group("PRDT");
  REQUIRE(prdt != nullptr);
  CHECK(prdt->repetitions.size() == 1);
  CHECK(r.group("NOPE") == nullptr);
}

TEST_CASE("records split on percent lines; same id allowed across kinds") {
  auto records = record::parse_records(
      "TSK: F\nID: 1\nOGTD: a\n%%\nTSK: OA\nID: 1\nOGTD: b\n%%\n");
  REQUIRE(records.size() == 2);
  CHECK(records[0].kind == record::RecordKind::F);
  CHECK(records[1].kind == record::RecordKind::OA);
  CHECK(records[0].id == records[1].id);
}

TEST_CASE("header and syntax violations raise typed errors") {
  auto code_of = [](const std::string& text) {
    try {
      record::parse_records(text);
    } catch (const record::Error& e) {
      return e.code();
    }
    FAIL("expected record::Error");
    return RecordError::BadFieldSyntax;
  };
  CHECK(code_of("ID: 1\nOGTD: x\n") == RecordError::MissingTsk);
  CHECK(code_of("TSK: F\nOGTD: x\n") == RecordError::MissingId);
  CHECK(code_of("TSK: F\n") == RecordError::MissingId);
  CHECK(code_of("TSK: F\nID: 1\n[AUTF]\nAUFN: x\n") == RecordError::UnclosedGroup);
  CHECK(code_of("TSK: X\nID: 1\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 12a\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\nOGTD:   \n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\nogtd: x\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\nTOOLONGCODE: x\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\nno colon here\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\nID: 2\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\n[AUTF]\n[PRDT]\n[/PRDT]\n[/AUTF]\n") ==
        RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\n[/AUTF]\n") == RecordError::BadFieldSyntax);
  CHECK(code_of("TSK: F\nID: 1\nOGTD: a\n%%\nTSK: F\nID: 1\nOGTD: b\n") ==
        RecordError::DuplicateRecordId);
}

TEST_CASE("errors carry one-based line numbers") {
  try {
    record::parse_records("TSK: F\nID: 1\nOGTD: ok\nbroken line\n");
    FAIL("expected record::Error");
  } catch (const record::Error& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("serialize then parse is the identity") {
  record::EntryRecord r;
  r.kind = record::RecordKind::OA;
  r.id = "47172";
  r.fields = {{"OGTD", "dipinto", 0}, {"SGTI", "Battesimo di Cristo", 0}};
  record::FieldGroup g;
  g.code = "AUTN";
  g.repetitions.push_back({{{"AUNN", "Verrocchio", 0}}, 0});
  g.repetitions.push_back({{{"AUNN", "Leonardo", 0}, {"AUNM", "attribuito", 0}}, 0});
  r.groups.push_back(g);
  auto back = record::parse_records(record::serialize_record(r));
  REQUIRE(back.size() == 1);
  CHECK(back.front() == r);
}

TEST_CASE("fixture records survive a serialize round-trip") {
  for (const char* name :
       {"f-72486.rec", "oa-15429.rec", "oa-43677.rec", "oa-75147.rec"}) {
    auto text = testkit::slurp(std::string(SCHEDALOD_FIXTURES) + "/records/" + name);
    auto records = record::parse_records(text);
    REQUIRE(records.size() == 1);
    auto back = record::parse_records(record::serialize_record(records.front()));
    REQUIRE(back.size() == 1);
    CHECK(back.front() == records.front());
  }
}

TEST_CASE("check_record flags unknown codes and missing mandatory fields") {
  auto table = mapping::MappingTable::load(std::string(SCHEDALOD_DATA) + "/mapping.tsv");
  auto clean = parse_one("TSK: F\nID: 1\nOGTD: positivo\nNCTN: 72486\n");
  CHECK(record::check_record(clean, table).empty());

  auto odd = parse_one("TSK: F\nID: 2\nOGTD: positivo\nNCTN: 1\nZZZ9: x\n");
  auto warnings = record::check_record(odd, table);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].code == "ZZZ9");
  CHECK(warnings[0].record_id == "2");

  auto bare = parse_one("TSK: OA\nID: 3\nSGTI: soggetto\n");
  warnings = record::check_record(bare, table);
  REQUIRE(warnings.size() == 2);
  CHECK(warnings[0].code == "OGTD");
  CHECK(warnings[1].code == "NCTN");

  // SID is header plumbing, never reported as unknown.
  auto sid = parse_one("TSK: F\nID: 4\nOGTD: positivo\nNCTN: 1\nSID: 47172\n");
  CHECK(record::check_record(sid, table).empty());
}

}  // TEST_SUITE
