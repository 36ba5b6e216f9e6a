#ifndef SCHEDALOD_RECONCILE_HPP
#define SCHEDALOD_RECONCILE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schedalod/rdf.hpp"

namespace schedalod::reconcile {

enum class SnapshotError {
  BadHeader,
  BadRow,
  DuplicateId,
  BadYear,
};

class Error : public std::runtime_error {
public:
  Error(SnapshotError code, std::string message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")"
                                : message),
        code_(code) {}
  SnapshotError code() const { return code_; }

private:
  SnapshotError code_;
};

// One row of the offline authority snapshot. External columns hold full IRIs.
struct AuthorityRecord {
  std::string id;
  std::string kind;  // person | place | term
  std::string preferred_name;
  std::vector<std::string> aliases;
  std::optional<int> birth_year;
  std::optional<int> death_year;
  std::vector<std::pair<std::string, std::string>> external;  // name -> IRI
};

// Header: id, kind, preferred_name, aliases, birth_year, death_year,
// viaf, ulan, wikidata, geonames, aat, dbpedia. Aliases are |-separated.
std::vector<AuthorityRecord> parse_snapshot(std::string_view tsv);

// Classic Jaro-Winkler similarity in [0, 1]; prefix bonus capped at 4 chars.
double jaro_winkler(std::string_view a, std::string_view b);

struct LocalEntity {
  rdf::Iri iri;
  std::string kind;                 // person | place | term
  std::vector<std::string> names;   // labels plus the de-hyphenated leaf slug
  std::vector<int> activity_years;  // years from timespans of held roles
};

// Entities under {base}person/, group/, place/, term/; groups reconcile
// against person-kind authority rows.
std::vector<LocalEntity> collect_entities(const rdf::Graph& g,
                                          const std::string& base);

struct Match {
  rdf::Iri local;
  std::string kind;
  std::string local_name;     // best-scoring local name
  std::string authority_id;
  double score = 0;
  std::string runner_up_id;   // empty when no second candidate exists
  double runner_up = 0;       // second-best score over other authority rows
};

struct ReconcileResult {
  rdf::Graph links;           // rdfs:seeAlso triples for accepted matches
  std::vector<Match> accepted;
  std::vector<Match> review;  // above threshold but inside the margin
};

// Name similarity carries 0.8 of the score, date compatibility 0.2; a match
// is accepted at >= threshold with a lead of >= margin over the runner-up.
ReconcileResult reconcile(const rdf::Graph& g,
                          const std::vector<AuthorityRecord>& snapshot,
                          const std::string& base,
                          double threshold = 0.85, double margin = 0.05);

}  // namespace schedalod::reconcile

#endif
