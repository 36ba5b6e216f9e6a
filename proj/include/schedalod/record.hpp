#ifndef SCHEDALOD_RECORD_HPP
#define SCHEDALOD_RECORD_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace schedalod::mapping {
class MappingTable;
}

namespace schedalod::record {

enum class RecordError {
  MissingTsk,
  MissingId,
  UnclosedGroup,
  BadFieldSyntax,
  DuplicateRecordId,
};

class Error : public std::runtime_error {
public:
  Error(RecordError code, std::string message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")"
                                : message),
        code_(code),
        line_(line) {}
  RecordError code() const { return code_; }
  std::size_t line() const { return line_; }

private:
  RecordError code_;
  std::size_t line_;
};

enum class RecordKind { F, OA };

std::string to_string(RecordKind kind);

struct FieldOccurrence {
  std::string code;
  std::string value;  // trimmed, never empty
  std::size_t line = 0;

  bool operator==(const FieldOccurrence& o) const {
    return code == o.code && value == o.value;
  }
};

struct GroupRepetition {
  std::vector<FieldOccurrence> fields;
  std::size_t line = 0;

  bool operator==(const GroupRepetition& o) const { return fields == o.fields; }

  const FieldOccurrence* first(std::string_view code) const;
  std::vector<const FieldOccurrence*> all(std::string_view code) const;
};

struct FieldGroup {
  std::string code;
  std::vector<GroupRepetition> repetitions;

  bool operator==(const FieldGroup& o) const {
    return code == o.code && repetitions == o.repetitions;
  }
};

// One catalog entry. Top-level fields and group repetitions keep input
// order; repeated simple fields are multi-valued with the first occurrence
// preferred.
struct EntryRecord {
  RecordKind kind = RecordKind::F;
  std::string id;  // digits only
  std::vector<FieldOccurrence> fields;
  std::vector<FieldGroup> groups;

  bool operator==(const EntryRecord& o) const {
    return kind == o.kind && id == o.id && fields == o.fields && groups == o.groups;
  }

  const FieldOccurrence* first(std::string_view code) const;
  std::vector<const FieldOccurrence*> all(std::string_view code) const;
  const FieldGroup* group(std::string_view code) const;
};

// Parses one file: records separated by %% lines, TSK then ID first,
// [CODE]…[/CODE] groups one level deep, # comment lines ignored.
std::vector<EntryRecord> parse_records(std::string_view text);

// Canonical text form; parse_records(serialize_record(r)) == {r}.
std::string serialize_record(const EntryRecord& r);

struct Warning {
  std::string record_id;
  std::string code;
  std::string message;
};

// Non-fatal checks against the mapping table: unknown field codes and
// missing mandatory codes.
std::vector<Warning> check_record(const EntryRecord& r,
                                  const mapping::MappingTable& table);

}  // namespace schedalod::record

#endif
