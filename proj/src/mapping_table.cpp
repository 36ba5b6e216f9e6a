#include "schedalod/mapping_table.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "schedalod/text.hpp"

namespace schedalod::mapping {

namespace {

std::vector<std::string> tsv_cells(std::string_view line) {
  return text::split(line, '\t');
}

FrbrLevel parse_level(const std::string& s, std::size_t lineno) {
  if (s == "entry") return FrbrLevel::Entry;
  if (s == "work") return FrbrLevel::Work;
  if (s == "expression") return FrbrLevel::Expression;
  if (s == "manifestation") return FrbrLevel::Manifestation;
  if (s == "item") return FrbrLevel::Item;
  throw Error(TableError::UnknownFrbrLevel, "unknown frbr-level: " + s, lineno);
}

ObjectKind parse_object_kind(const std::string& s, std::size_t lineno) {
  if (s == "literal") return ObjectKind::Literal;
  if (s == "lang-literal-it") return ObjectKind::LangLiteralIt;
  if (s == "typed-term") return ObjectKind::TypedTerm;
  if (s == "slug-iri") return ObjectKind::SlugIri;
  throw Error(TableError::BadObjectKind, "unknown object-kind: " + s, lineno);
}

record::RecordKind parse_kind(const std::string& s, std::size_t lineno) {
  if (s == "F") return record::RecordKind::F;
  if (s == "OA") return record::RecordKind::OA;
  throw Error(TableError::BadRow, "kind must be F or OA, got: " + s, lineno);
}

bool parse_bool(const std::string& s, std::size_t lineno) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw Error(TableError::BadRow, "mandatory must be boolean, got: " + s, lineno);
}

// Applies fn to each non-empty, non-comment TSV line after the header.
template <typename Fn>
void for_rows(std::string_view tsv, const std::vector<std::string>& header,
              Fn&& fn) {
  std::size_t lineno = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    std::size_t end = tsv.find('\n', start);
    std::string_view raw;
    if (end == std::string_view::npos) {
      if (start >= tsv.size()) break;
      raw = tsv.substr(start);
      start = tsv.size() + 1;
    } else {
      raw = tsv.substr(start, end - start);
      start = end + 1;
    }
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string trimmed = text::trim(raw);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::vector<std::string> cells = tsv_cells(raw);
    if (!header_seen) {
      if (cells != header)
        throw Error(TableError::BadHeader,
                    "unexpected TSV header: " + std::string(raw), lineno);
      header_seen = true;
      continue;
    }
    fn(cells, lineno);
  }
  if (!header_seen)
    throw Error(TableError::BadHeader, "missing TSV header", 0);
}

}  // namespace

std::string to_string(FrbrLevel level) {
  switch (level) {
    case FrbrLevel::Entry: return "entry";
    case FrbrLevel::Work: return "work";
    case FrbrLevel::Expression: return "expression";
    case FrbrLevel::Manifestation: return "manifestation";
    case FrbrLevel::Item: return "item";
  }
  return "";
}

MappingTable MappingTable::parse(std::string_view tsv) {
  MappingTable table;
  const std::vector<std::string> header = {
      "kind", "code", "frbr-level", "predicate-curie", "object-kind", "mandatory"};
  for_rows(tsv, header, [&](const std::vector<std::string>& cells, std::size_t lineno) {
    if (cells.size() != 6)
      throw Error(TableError::BadRow, "expected 6 cells", lineno);
    MappingRow row;
    row.kind = parse_kind(cells[0], lineno);
    row.code = cells[1];
    row.level = parse_level(cells[2], lineno);
    row.predicate_curie = cells[3];
    row.object_kind = parse_object_kind(cells[4], lineno);
    row.mandatory = parse_bool(cells[5], lineno);
    if (!terms::TermRegistry::instance().knows(row.predicate_curie))
      throw Error(TableError::UnresolvableCurie,
                  "predicate not in term registry: " + row.predicate_curie, lineno);
    table.add_row(std::move(row));
  });
  return table;
}

void parse_vocabulary(std::string_view tsv, MappingTable& into) {
  const std::vector<std::string> header = {"value-it", "slug-en", "label-en"};
  for_rows(tsv, header, [&](const std::vector<std::string>& cells, std::size_t lineno) {
    if (cells.size() < 2 || cells.size() > 3)
      throw Error(TableError::BadRow, "expected 2 or 3 cells", lineno);
    VocabEntry entry;
    entry.slug = cells[1];
    if (cells.size() == 3) entry.label_en = cells[2];
    into.add_vocab(cells[0], std::move(entry));
  });
}

void parse_roles(std::string_view tsv, MappingTable& into) {
  const std::vector<std::string> header = {"name-it", "role-curie", "role-class",
                                           "target-level"};
  for_rows(tsv, header, [&](const std::vector<std::string>& cells, std::size_t lineno) {
    if (cells.size() != 4)
      throw Error(TableError::BadRow, "expected 4 cells", lineno);
    RoleEntry entry;
    entry.curie = cells[1];
    entry.role_class = cells[2];
    entry.target = parse_level(cells[3], lineno);
    if (!terms::TermRegistry::instance().knows(entry.curie))
      throw Error(TableError::UnresolvableCurie,
                  "role not in term registry: " + entry.curie, lineno);
    into.add_role(cells[0], std::move(entry));
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(TableError::BadRow, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MappingTable MappingTable::load(const std::string& mapping_tsv_path) {
  MappingTable table = parse(read_file(mapping_tsv_path));
  std::filesystem::path dir =
      std::filesystem::path(mapping_tsv_path).parent_path();
  std::filesystem::path vocab = dir / "vocabulary.tsv";
  std::filesystem::path roles = dir / "roles.tsv";
  if (std::filesystem::exists(vocab))
    parse_vocabulary(read_file(vocab.string()), table);
  if (std::filesystem::exists(roles))
    parse_roles(read_file(roles.string()), table);
  return table;
}

void MappingTable::add_row(MappingRow row) { rows_.push_back(std::move(row)); }

void MappingTable::add_vocab(std::string value_it, VocabEntry entry) {
  vocab_[text::normalize_key(value_it)] = std::move(entry);
}

void MappingTable::add_role(std::string name, RoleEntry entry) {
  roles_[text::normalize_key(name)] = std::move(entry);
}

const MappingRow* MappingTable::find(record::RecordKind kind,
                                     std::string_view code) const {
  for (const auto& row : rows_)
    if (row.kind == kind && row.code == code) return &row;
  return nullptr;
}

bool MappingTable::knows(record::RecordKind kind, std::string_view code) const {
  return find(kind, code) != nullptr;
}

const VocabEntry* MappingTable::vocab(std::string_view value_it) const {
  auto it = vocab_.find(text::normalize_key(value_it));
  return it == vocab_.end() ? nullptr : &it->second;
}

const RoleEntry* MappingTable::role(std::string_view name) const {
  auto it = roles_.find(text::normalize_key(name));
  return it == roles_.end() ? nullptr : &it->second;
}

}  // namespace schedalod::mapping
