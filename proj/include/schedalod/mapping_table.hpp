#ifndef SCHEDALOD_MAPPING_TABLE_HPP
#define SCHEDALOD_MAPPING_TABLE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schedalod/record.hpp"
#include "schedalod/terms.hpp"

namespace schedalod::mapping {

enum class TableError {
  BadHeader,
  BadRow,
  UnknownFrbrLevel,
  BadObjectKind,
  UnresolvableCurie,
};

class Error : public std::runtime_error {
public:
  Error(TableError code, std::string message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")"
                                : message),
        code_(code) {}
  TableError code() const { return code_; }

private:
  TableError code_;
};

enum class FrbrLevel { Entry, Work, Expression, Manifestation, Item };

std::string to_string(FrbrLevel level);

enum class ObjectKind { Literal, LangLiteralIt, TypedTerm, SlugIri };

struct MappingRow {
  record::RecordKind kind;
  std::string code;
  FrbrLevel level;
  std::string predicate_curie;
  ObjectKind object_kind;
  bool mandatory = false;
};

struct VocabEntry {
  std::string slug;      // English slug the IRI uses
  std::string label_en;  // optional English label
};

struct RoleEntry {
  std::string curie;       // ontology role individual
  std::string role_class;  // artistic | cataloguing | pro | scor
  FrbrLevel target;        // FRBR level the role relates to
};

// Field-to-predicate rows plus the value-level vocabulary and role sidecars.
class MappingTable {
public:
  // Parses the TSV rows (header: kind, code, frbr-level, predicate-curie,
  // object-kind, mandatory). Predicate curies must resolve in the registry.
  static MappingTable parse(std::string_view tsv);

  // Loads the table and, when present, vocabulary.tsv and roles.tsv from the
  // same directory.
  static MappingTable load(const std::string& mapping_tsv_path);

  void add_row(MappingRow row);
  void add_vocab(std::string value_it, VocabEntry entry);
  void add_role(std::string name, RoleEntry entry);

  const MappingRow* find(record::RecordKind kind, std::string_view code) const;
  bool knows(record::RecordKind kind, std::string_view code) const;
  const VocabEntry* vocab(std::string_view value_it) const;
  const RoleEntry* role(std::string_view name) const;

  const std::vector<MappingRow>& rows() const { return rows_; }

private:
  std::vector<MappingRow> rows_;
  std::map<std::string, VocabEntry, std::less<>> vocab_;   // normalized key
  std::map<std::string, RoleEntry, std::less<>> roles_;    // normalized key
};

void parse_vocabulary(std::string_view tsv, MappingTable& into);
void parse_roles(std::string_view tsv, MappingTable& into);

std::string read_file(const std::string& path);

}  // namespace schedalod::mapping

#endif
