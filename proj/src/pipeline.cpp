#include "schedalod/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include "schedalod/text.hpp"

namespace schedalod::pipeline {

namespace fs = std::filesystem;

std::vector<record::EntryRecord> load_records(const std::string& path) {
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const fs::directory_entry& e : fs::directory_iterator(path))
      if (e.is_regular_file() && e.path().extension() == ".rec")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<record::EntryRecord> records;
  std::set<std::string> seen;
  for (const std::string& f : files) {
    std::vector<record::EntryRecord> parsed =
        record::parse_records(mapping::read_file(f));
    for (record::EntryRecord& r : parsed) {
      std::string key = record::to_string(r.kind) + ":" + r.id;
      if (!seen.insert(key).second)
        throw record::Error(record::RecordError::DuplicateRecordId,
                            "record " + key + " appears more than once in the "
                            "corpus (" + f + ")");
      records.push_back(std::move(r));
    }
  }
  return records;
}

CorpusResult convert_corpus(const std::vector<record::EntryRecord>& records,
                            const mapping::MappingTable& table,
                            iri::IriPolicy& policy, unsigned jobs) {
  mapping::MappingEngine engine(table, policy);
  if (jobs == 0) jobs = 1;

  // Slug pools fill in corpus order here; workers then only look names up.
  if (jobs > 1) {
    for (const record::EntryRecord& r : records) (void)engine.convert(r);
  }

  std::vector<mapping::ConvertResult> results(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= records.size()) break;
      try {
        results[i] = engine.convert(records[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  CorpusResult out;
  out.records.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    out.merged.merge(results[i].graph);
    out.warnings.insert(out.warnings.end(), results[i].warnings.begin(),
                        results[i].warnings.end());
    out.records.push_back(ConvertedRecord{records[i].kind, records[i].id,
                                          std::move(results[i].graph)});
  }
  return out;
}

}  // namespace schedalod::pipeline
