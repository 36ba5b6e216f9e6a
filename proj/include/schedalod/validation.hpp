#ifndef SCHEDALOD_VALIDATION_HPP
#define SCHEDALOD_VALIDATION_HPP

#include <map>
#include <string>
#include <vector>

#include "schedalod/iri_policy.hpp"
#include "schedalod/rdf.hpp"

namespace schedalod::validation {

struct Violation {
  std::string rule;  // "V01" … "V12"
  rdf::Iri node;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;           // sorted by rule, then node
  std::map<std::string, std::size_t> counts;   // per rule

  bool clean() const { return violations.empty(); }
};

// Closed-world audit of a converted graph: what the rules ask for must be
// present in this graph, not merely possible elsewhere.
//
//   V01 F entries describe at least one resource
//   V02 shots realize exactly one photograph
//   V03 roles-in-time carry one role, one context, at least one holder
//   V04 interpretation acts carry type, criterion, and one source
//   V05 photographer roles sit on shots, publisher roles on manifestations
//   V06 interpretation sources are metadata documents or expressions
//   V07 at most one preferred attribution per attributed node
//   V08 influence nodes bind one former work and a conceived work
//   V09 no self-influence and no former-work cycles
//   V10 place containment chains are acyclic
//   V11 custody transfers name a party and exactly one object
//   V12 locally minted resources carry an Italian label
ValidationReport validate(const rdf::Graph& g,
                          const std::string& base = iri::kDefaultBase);

// One line per violation: rule-id, node IRI, message (tab separated).
std::string report_tsv(const ValidationReport& report);

}  // namespace schedalod::validation

#endif
