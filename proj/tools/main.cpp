// Batch front end: convert, validate, reconcile, stats, query.
// Exit codes: 0 success, 1 validation violations found, 2 operational error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "schedalod/iri_policy.hpp"
#include "schedalod/mapping.hpp"
#include "schedalod/mapping_table.hpp"
#include "schedalod/pipeline.hpp"
#include "schedalod/rdf.hpp"
#include "schedalod/reconcile.hpp"
#include "schedalod/store.hpp"
#include "schedalod/terms.hpp"
#include "schedalod/validation.hpp"

namespace {

using namespace schedalod;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << content;
  if (!os) throw std::runtime_error("short write to " + path);
}

rdf::Graph load_graph(const std::string& path) {
  return rdf::parse_ntriples(mapping::read_file(path));
}

void stream_warnings(const std::vector<record::Warning>& warnings) {
  for (const record::Warning& w : warnings)
    std::cerr << "WARN " << w.record_id << " " << w.code << " " << w.message
              << "\n";
}

struct ConvertArgs {
  std::string input, mapping, out;
  std::string base = iri::kDefaultBase;
  std::string format = "turtle";
  bool merge = false;
  unsigned jobs = 1;
};

int cmd_convert(const ConvertArgs& a) {
  mapping::MappingTable table = mapping::MappingTable::load(a.mapping);
  std::vector<record::EntryRecord> records = pipeline::load_records(a.input);
  iri::IriPolicy policy(a.base);
  pipeline::CorpusResult result =
      pipeline::convert_corpus(records, table, policy, a.jobs);
  stream_warnings(result.warnings);

  bool turtle = a.format == "turtle";
  const rdf::PrefixMap& prefixes = terms::TermRegistry::instance().prefixes();
  auto serialize = [&](const rdf::Graph& g) {
    return turtle ? rdf::serialize_turtle(g, prefixes)
                  : rdf::serialize_ntriples(g);
  };
  std::string ext = turtle ? ".ttl" : ".nt";

  if (a.merge) {
    write_file(a.out, serialize(result.merged));
    std::cout << "wrote " << a.out << " (" << result.merged.size()
              << " triples)\n";
    return 0;
  }

  std::filesystem::create_directories(a.out);
  // An id used by both an F and an OA record gets a kind prefix.
  std::set<std::string> f_ids, oa_ids;
  for (const pipeline::ConvertedRecord& r : result.records)
    (r.kind == record::RecordKind::F ? f_ids : oa_ids).insert(r.id);
  for (const pipeline::ConvertedRecord& r : result.records) {
    std::string name = r.id;
    if (f_ids.count(r.id) && oa_ids.count(r.id))
      name = (r.kind == record::RecordKind::F ? "f-" : "oa-") + r.id;
    write_file((std::filesystem::path(a.out) / (name + ext)).string(),
               serialize(r.graph));
  }
  std::cout << "wrote " << result.records.size() << " files to " << a.out
            << "\n";
  return 0;
}

int cmd_validate(const std::string& graph_path, const std::string& report_path,
                 const std::string& base) {
  rdf::Graph g = load_graph(graph_path);
  validation::ValidationReport report = validation::validate(g, base);
  if (!report_path.empty())
    write_file(report_path, validation::report_tsv(report));
  for (const auto& [rule, n] : report.counts)
    std::cout << rule << "\t" << n << "\n";
  std::cout << (report.clean() ? "clean" : "violations") << "\t"
            << report.violations.size() << "\n";
  return report.clean() ? 0 : 1;
}

int cmd_reconcile(const std::string& graph_path, const std::string& auth_path,
                  double min_score, double margin, const std::string& out_path,
                  const std::string& review_path, const std::string& base) {
  rdf::Graph g = load_graph(graph_path);
  std::vector<reconcile::AuthorityRecord> snapshot =
      reconcile::parse_snapshot(mapping::read_file(auth_path));
  reconcile::ReconcileResult result =
      reconcile::reconcile(g, snapshot, base, min_score, margin);
  if (!out_path.empty())
    write_file(out_path, rdf::serialize_ntriples(result.links));
  if (!review_path.empty()) {
    std::string tsv = "local-iri\tauthority-id\tscore\trunner-up-id\trunner-up-score\n";
    for (const reconcile::Match& m : result.review) {
      char score_buf[32], runner_buf[32];
      std::snprintf(score_buf, sizeof score_buf, "%.4f", m.score);
      std::snprintf(runner_buf, sizeof runner_buf, "%.4f", m.runner_up);
      tsv += m.local.str() + "\t" + m.authority_id + "\t" + score_buf + "\t" +
             m.runner_up_id + "\t" + runner_buf + "\n";
    }
    write_file(review_path, tsv);
  }
  std::cout << "accepted\t" << result.accepted.size() << "\n"
            << "review\t" << result.review.size() << "\n"
            << "links\t" << result.links.size() << "\n";
  return 0;
}

int cmd_stats(const std::string& graph_path) {
  store::TripleStore ts;
  ts.bulk_load(load_graph(graph_path));
  std::cout << store::stats_text(store::stats(ts));
  return 0;
}

int cmd_query(const std::string& graph_path, const std::string& bgp_path) {
  store::TripleStore ts;
  ts.bulk_load(load_graph(graph_path));
  store::BgpQuery q = store::parse_bgp(mapping::read_file(bgp_path));
  std::vector<store::Binding> rows = store::evaluate(ts, q);
  std::cout << store::bindings_tsv(q, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Catalog-record to RDF batch toolkit"};
  app.require_subcommand(1);

  ConvertArgs ca;
  CLI::App* convert = app.add_subcommand("convert", "Convert records to RDF");
  convert->add_option("--input", ca.input, "Record file or directory")
      ->required();
  convert->add_option("--mapping", ca.mapping, "Mapping table TSV")->required();
  convert->add_option("--base", ca.base, "Base IRI for minted resources");
  convert->add_option("--out", ca.out, "Output directory (or file with --merge)")
      ->required();
  convert->add_option("--format", ca.format, "turtle|ntriples")
      ->check(CLI::IsMember({"turtle", "ntriples"}));
  convert->add_flag("--merge", ca.merge, "Write one merged file");
  convert->add_option("--jobs", ca.jobs, "Worker threads");

  std::string graph_path, report_path, auth_path, out_path, review_path,
      bgp_path;
  std::string base = iri::kDefaultBase;
  double min_score = 0.85, margin = 0.05;

  CLI::App* validate = app.add_subcommand("validate", "Audit a converted graph");
  validate->add_option("--graph", graph_path, "N-Triples file")->required();
  validate->add_option("--report", report_path, "Violation report TSV");
  validate->add_option("--base", base, "Base IRI of minted resources");

  CLI::App* rec = app.add_subcommand("reconcile", "Link entities to authorities");
  rec->add_option("--graph", graph_path, "N-Triples file")->required();
  rec->add_option("--authorities", auth_path, "Authority snapshot TSV")
      ->required();
  rec->add_option("--min-score", min_score, "Acceptance threshold");
  rec->add_option("--margin", margin, "Required lead over the runner-up");
  rec->add_option("--out", out_path, "Accepted links (N-Triples)");
  rec->add_option("--review", review_path, "Ambiguous matches TSV");
  rec->add_option("--base", base, "Base IRI of minted resources");

  CLI::App* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("--graph", graph_path, "N-Triples file")->required();

  CLI::App* query = app.add_subcommand("query", "Evaluate a basic graph pattern");
  query->add_option("--graph", graph_path, "N-Triples file")->required();
  query->add_option("--bgp", bgp_path, "Pattern file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) return cmd_convert(ca);
    if (validate->parsed()) return cmd_validate(graph_path, report_path, base);
    if (rec->parsed())
      return cmd_reconcile(graph_path, auth_path, min_score, margin, out_path,
                           review_path, base);
    if (stats->parsed()) return cmd_stats(graph_path);
    if (query->parsed()) return cmd_query(graph_path, bgp_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
