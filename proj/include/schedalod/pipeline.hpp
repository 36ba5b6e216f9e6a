#ifndef SCHEDALOD_PIPELINE_HPP
#define SCHEDALOD_PIPELINE_HPP

#include <string>
#include <vector>

#include "schedalod/iri_policy.hpp"
#include "schedalod/mapping.hpp"
#include "schedalod/mapping_table.hpp"
#include "schedalod/rdf.hpp"
#include "schedalod/record.hpp"

namespace schedalod::pipeline {

struct ConvertedRecord {
  record::RecordKind kind;
  std::string id;
  rdf::Graph graph;
};

struct CorpusResult {
  std::vector<ConvertedRecord> records;     // corpus order
  rdf::Graph merged;                        // union of all record graphs
  std::vector<record::Warning> warnings;    // corpus order
};

// One .rec file, or every *.rec under a directory in sorted path order.
// A (kind, id) pair may appear only once across the whole corpus.
std::vector<record::EntryRecord> load_records(const std::string& path);

// Conversion is embarrassingly parallel except for slug minting, which is
// first-come. A serial naming pass over the corpus fixes every slug before
// workers start, so any job count yields identical graphs.
CorpusResult convert_corpus(const std::vector<record::EntryRecord>& records,
                            const mapping::MappingTable& table,
                            iri::IriPolicy& policy, unsigned jobs = 1);

}  // namespace schedalod::pipeline

#endif
