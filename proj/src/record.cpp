#include "schedalod/record.hpp"

#include <cctype>
#include <set>

#include "schedalod/mapping_table.hpp"
#include "schedalod/text.hpp"

namespace schedalod::record {

namespace {

bool valid_code(std::string_view code) {
  if (code.size() < 3 || code.size() > 6) return false;
  if (!std::isupper(static_cast<unsigned char>(code[0]))) return false;
  for (char c : code.substr(1))
    if (!std::isupper(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

bool digits_only(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

const FieldOccurrence* find_first(const std::vector<FieldOccurrence>& fields,
                                  std::string_view code) {
  for (const auto& f : fields)
    if (f.code == code) return &f;
  return nullptr;
}

std::vector<const FieldOccurrence*> find_all(
    const std::vector<FieldOccurrence>& fields, std::string_view code) {
  std::vector<const FieldOccurrence*> out;
  for (const auto& f : fields)
    if (f.code == code) out.push_back(&f);
  return out;
}

}  // namespace

std::string to_string(RecordKind kind) {
  return kind == RecordKind::F ? "F" : "OA";
}

const FieldOccurrence* GroupRepetition::first(std::string_view code) const {
  return find_first(fields, code);
}

std::vector<const FieldOccurrence*> GroupRepetition::all(
    std::string_view code) const {
  return find_all(fields, code);
}

const FieldOccurrence* EntryRecord::first(std::string_view code) const {
  return find_first(fields, code);
}

std::vector<const FieldOccurrence*> EntryRecord::all(std::string_view code) const {
  return find_all(fields, code);
}

const FieldGroup* EntryRecord::group(std::string_view code) const {
  for (const auto& g : groups)
    if (g.code == code) return &g;
  return nullptr;
}

namespace {

struct RecordAssembler {
  EntryRecord record;
  bool has_tsk = false;
  bool has_id = false;
  bool any_line = false;
  FieldGroup* open_group = nullptr;
  std::size_t open_line = 0;

  FieldGroup& group_slot(const std::string& code) {
    for (auto& g : record.groups)
      if (g.code == code) return g;
    record.groups.push_back(FieldGroup{code, {}});
    return record.groups.back();
  }

  void header(const std::string& code, const std::string& value, std::size_t line) {
    if (code == "TSK") {
      if (value == "F") record.kind = RecordKind::F;
      else if (value == "OA") record.kind = RecordKind::OA;
      else
        throw Error(RecordError::BadFieldSyntax, "TSK must be F or OA", line);
      has_tsk = true;
      return;
    }
    if (code == "ID") {
      if (!digits_only(value))
        throw Error(RecordError::BadFieldSyntax, "ID must be digits", line);
      record.id = value;
      has_id = true;
      return;
    }
    // TSK and ID lead every record so converters can trust kind and id
    // while streaming.
    if (!has_tsk)
      throw Error(RecordError::MissingTsk, "record does not start with TSK", line);
    throw Error(RecordError::MissingId, "record lacks ID before fields", line);
  }

  void field(FieldOccurrence f, std::size_t line) {
    if (!has_tsk || !has_id) {
      header(f.code, f.value, line);
      return;
    }
    if (f.code == "TSK" || f.code == "ID")
      throw Error(RecordError::BadFieldSyntax, "duplicate " + f.code, line);
    if (open_group)
      open_group->repetitions.back().fields.push_back(std::move(f));
    else
      record.fields.push_back(std::move(f));
  }

  void open(const std::string& code, std::size_t line) {
    if (!has_tsk)
      throw Error(RecordError::MissingTsk, "record does not start with TSK", line);
    if (!has_id)
      throw Error(RecordError::MissingId, "record lacks ID before fields", line);
    if (open_group)
      throw Error(RecordError::BadFieldSyntax,
                  "nested groups are not allowed: [" + code + "]", line);
    FieldGroup& g = group_slot(code);
    g.repetitions.push_back(GroupRepetition{{}, line});
    open_group = &g;
    open_line = line;
  }

  void close(const std::string& code, std::size_t line) {
    if (!open_group || open_group->code != code)
      throw Error(RecordError::BadFieldSyntax,
                  "unexpected [/" + code + "]", line);
    open_group = nullptr;
  }

  EntryRecord finish(std::size_t line) {
    if (open_group)
      throw Error(RecordError::UnclosedGroup,
                  "group [" + open_group->code + "] never closed", open_line);
    if (!has_tsk)
      throw Error(RecordError::MissingTsk, "record has no TSK", line);
    if (!has_id)
      throw Error(RecordError::MissingId, "record has no ID", line);
    return std::move(record);
  }
};

}  // namespace

std::vector<EntryRecord> parse_records(std::string_view text) {
  std::vector<EntryRecord> out;
  std::set<std::string> seen_ids;
  RecordAssembler current;
  std::size_t lineno = 0;
  std::size_t start = 0;

  auto flush = [&](std::size_t line) {
    if (!current.any_line) return;
    EntryRecord r = current.finish(line);
    if (!seen_ids.insert(to_string(r.kind) + ":" + r.id).second)
      throw Error(RecordError::DuplicateRecordId,
                  "duplicate record id " + r.id, line);
    out.push_back(std::move(r));
    current = RecordAssembler{};
  };

  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw;
    if (end == std::string_view::npos) {
      if (start >= text.size()) break;
      raw = text.substr(start);
      start = text.size() + 1;
    } else {
      raw = text.substr(start, end - start);
      start = end + 1;
    }
    ++lineno;
    std::string line = text::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "%%") {
      flush(lineno);
      continue;
    }
    current.any_line = true;
    if (line[0] == '[') {
      bool closing = line.size() > 1 && line[1] == '/';
      std::size_t code_at = closing ? 2 : 1;
      if (line.back() != ']')
        throw Error(RecordError::BadFieldSyntax, "malformed group line", lineno);
      std::string code = line.substr(code_at, line.size() - code_at - 1);
      if (!valid_code(code))
        throw Error(RecordError::BadFieldSyntax, "bad group code: " + code, lineno);
      if (closing)
        current.close(code, lineno);
      else
        current.open(code, lineno);
      continue;
    }
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw Error(RecordError::BadFieldSyntax, "expected CODE: value", lineno);
    std::string code = text::trim(line.substr(0, colon));
    std::string value = text::trim(line.substr(colon + 1));
    if (code != "TSK" && code != "ID" && !valid_code(code))
      throw Error(RecordError::BadFieldSyntax, "bad field code: " + code, lineno);
    if (value.empty())
      throw Error(RecordError::BadFieldSyntax, "empty value for " + code, lineno);
    current.field(FieldOccurrence{code, value, lineno}, lineno);
  }
  flush(lineno);
  return out;
}

std::string serialize_record(const EntryRecord& r) {
  std::string out;
  out += "TSK: " + to_string(r.kind) + "\n";
  out += "ID: " + r.id + "\n";
  for (const auto& f : r.fields) out += f.code + ": " + f.value + "\n";
  for (const auto& g : r.groups) {
    for (const auto& rep : g.repetitions) {
      out += "[" + g.code + "]\n";
      for (const auto& f : rep.fields) out += f.code + ": " + f.value + "\n";
      out += "[/" + g.code + "]\n";
    }
  }
  return out;
}

std::vector<Warning> check_record(const EntryRecord& r,
                                  const mapping::MappingTable& table) {
  std::vector<Warning> warnings;
  auto check_code = [&](const FieldOccurrence& f) {
    if (f.code == "SID") return;  // header-level subject id
    if (!table.knows(r.kind, f.code))
      warnings.push_back(Warning{r.id, f.code,
                                 "unknown field code for kind " + to_string(r.kind)});
  };
  for (const auto& f : r.fields) check_code(f);
  for (const auto& g : r.groups)
    for (const auto& rep : g.repetitions)
      for (const auto& f : rep.fields) check_code(f);

  auto present = [&](const std::string& code) {
    if (find_first(r.fields, code)) return true;
    for (const auto& g : r.groups)
      for (const auto& rep : g.repetitions)
        if (find_first(rep.fields, code)) return true;
    return false;
  };
  for (const auto& row : table.rows()) {
    if (row.kind != r.kind || !row.mandatory) continue;
    if (!present(row.code))
      warnings.push_back(
          Warning{r.id, row.code, "missing mandatory field " + row.code});
  }
  return warnings;
}

}  // namespace schedalod::record
