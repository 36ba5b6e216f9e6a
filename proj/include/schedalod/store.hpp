#ifndef SCHEDALOD_STORE_HPP
#define SCHEDALOD_STORE_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schedalod/rdf.hpp"

namespace schedalod::store {

enum class QueryError {
  EmptyQuery,
  BadPattern,
  BadVariable,
};

class Error : public std::runtime_error {
public:
  Error(QueryError code, std::string message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")"
                                : message),
        code_(code) {}
  QueryError code() const { return code_; }

private:
  QueryError code_;
};

// One position of a triple pattern: a constant term or a named variable.
struct PatternTerm {
  std::optional<rdf::Term> constant;
  std::string var;  // without the leading '?'

  bool is_var() const { return !constant.has_value(); }
};

struct TriplePattern {
  PatternTerm s, p, o;
};

struct BgpQuery {
  std::vector<TriplePattern> patterns;

  // Variables in order of first appearance; doubles as the result header.
  std::vector<std::string> variables() const;
};

// One pattern per line: three whitespace-separated terms, each `<iri>`,
// `?var` ([a-z][a-z0-9]*), or `"literal"` with optional @lang / ^^<iri>.
// Blank lines and # comments are ignored.
BgpQuery parse_bgp(std::string_view text);

// Immutable after loading; lookups pick the index whose sort order puts the
// pattern's bound positions in front.
class TripleStore {
public:
  void bulk_load(const rdf::Graph& g);

  std::size_t size() const { return graph_.size(); }
  const rdf::Graph& graph() const { return graph_; }

  std::vector<rdf::Triple> match(const std::optional<rdf::Iri>& s,
                                 const std::optional<rdf::Iri>& p,
                                 const std::optional<rdf::Term>& o) const;

  // Exact count of the matching range, used as the join-order estimate.
  std::size_t count(const std::optional<rdf::Iri>& s,
                    const std::optional<rdf::Iri>& p,
                    const std::optional<rdf::Term>& o) const;

private:
  using Key = std::array<std::string, 3>;

  rdf::Graph graph_;
  std::map<Key, rdf::Triple> spo_, pos_, osp_;  // encoded-term orderings

  template <typename Fn>
  void scan(const std::map<Key, rdf::Triple>& index,
            const std::optional<std::string>& k0,
            const std::optional<std::string>& k1,
            const std::optional<std::string>& k2, Fn&& fn) const;
};

using Binding = std::map<std::string, rdf::Term>;

// All solutions of the basic graph pattern, deduplicated and sorted by the
// bound terms in variable order. Join order: ascending match count of each
// pattern's constant positions, ties by input order.
std::vector<Binding> evaluate(const TripleStore& store, const BgpQuery& q);

// Solutions as TSV: header row of variable names, terms in N-Triples syntax.
std::string bindings_tsv(const BgpQuery& q, const std::vector<Binding>& rows);

struct Stats {
  std::size_t total = 0;
  std::size_t typed_subjects = 0;
  std::vector<std::pair<std::string, std::size_t>> class_counts;
  std::vector<std::pair<std::string, std::size_t>> seealso_buckets;
};

// Totals, distinct typed subjects, per-class counts, and rdfs:seeAlso links
// bucketed by authority namespace.
Stats stats(const TripleStore& store);

std::string stats_text(const Stats& s);

}  // namespace schedalod::store

#endif
