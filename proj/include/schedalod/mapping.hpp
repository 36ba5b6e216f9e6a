#ifndef SCHEDALOD_MAPPING_HPP
#define SCHEDALOD_MAPPING_HPP

#include <string>
#include <vector>

#include "schedalod/iri_policy.hpp"
#include "schedalod/mapping_table.hpp"
#include "schedalod/rdf.hpp"
#include "schedalod/record.hpp"

namespace schedalod::mapping {

enum class ConvertErrorCode {
  BadDimension,
  UnknownInfluenceKind,
  DanglingActor,
  CyclicPlaceChain,
};

class ConvertError : public std::runtime_error {
public:
  ConvertError(ConvertErrorCode code, std::string record_id, std::string message)
      : std::runtime_error("record " + record_id + ": " + message),
        code_(code),
        record_id_(std::move(record_id)) {}
  ConvertErrorCode code() const { return code_; }
  const std::string& record_id() const { return record_id_; }

private:
  ConvertErrorCode code_;
  std::string record_id_;
};

struct ConvertResult {
  rdf::Graph graph;
  std::vector<record::Warning> warnings;
};

// Turns one catalog record into its entry-centric graph fragment. Stateless
// apart from the shared slug pool inside the policy; safe to call from
// several threads once names are reserved (see Pipeline).
class MappingEngine {
public:
  MappingEngine(const MappingTable& table, iri::IriPolicy& policy)
      : table_(table), policy_(policy) {}

  ConvertResult convert(const record::EntryRecord& r) const;

  // Field codes owned by pattern builders; table rows for them only feed
  // check_record.
  static bool structural_code(const std::string& code);

private:
  const MappingTable& table_;
  iri::IriPolicy& policy_;
};

}  // namespace schedalod::mapping

#endif
