#ifndef SCHEDALOD_RDF_HPP
#define SCHEDALOD_RDF_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schedalod::rdf {

enum class ErrorCode {
  MalformedIri,
  MalformedLiteral,
  MalformedLanguageTag,
  SyntaxError,
  BlankNodeRejected,
  DuplicatePrefix,
  UnknownPrefix,
  IoError,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")"
                                : message),
        code_(code),
        line_(line) {}

  ErrorCode code() const { return code_; }
  std::size_t line() const { return line_; }

private:
  ErrorCode code_;
  std::size_t line_;
};

// Absolute IRI. No relative references, no blank node labels, no spaces,
// angle brackets or control characters.
class Iri {
public:
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }
  auto operator<=>(const Iri&) const = default;

private:
  std::string value_;
};

// Either plain, language-tagged, or datatyped; never tagged and typed at
// once. xsd:string-typed literals canonicalize to plain.
class Literal {
public:
  static Literal plain(std::string lexical);
  static Literal tagged(std::string lexical, std::string lang);
  static Literal typed(std::string lexical, Iri datatype);

  const std::string& lexical() const { return lexical_; }
  const std::string& lang() const { return lang_; }
  const std::optional<Iri>& datatype() const { return datatype_; }

  auto operator<=>(const Literal&) const = default;

private:
  Literal() = default;

  std::string lexical_;
  std::string lang_;
  std::optional<Iri> datatype_;
};

// Objects are IRIs or literals; IRIs sort first.
using Term = std::variant<Iri, Literal>;

inline bool is_iri(const Term& t) { return t.index() == 0; }
inline const Iri& as_iri(const Term& t) { return std::get<Iri>(t); }
inline const Literal& as_literal(const Term& t) { return std::get<Literal>(t); }

struct Triple {
  Iri s;
  Iri p;
  Term o;

  auto operator<=>(const Triple&) const = default;
};

// Subject-polymorphic ordering so subject ranges can be located without a
// sentinel triple.
struct TripleOrder {
  using is_transparent = void;
  bool operator()(const Triple& a, const Triple& b) const { return a < b; }
  bool operator()(const Triple& a, const Iri& s) const { return a.s < s; }
  bool operator()(const Iri& s, const Triple& b) const { return s < b.s; }
};

// Set-semantics graph; insertion is idempotent, iteration is ordered.
class Graph {
public:
  using const_iterator = std::set<Triple, TripleOrder>::const_iterator;

  void add(Triple t) { triples_.insert(std::move(t)); }
  void add(Iri s, Iri p, Term o) {
    triples_.insert(Triple{std::move(s), std::move(p), std::move(o)});
  }
  void merge(const Graph& other) {
    triples_.insert(other.triples_.begin(), other.triples_.end());
  }

  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  bool contains_all(const Graph& other) const;

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  // Wildcard match; empty optionals match anything. Result keeps set order.
  std::vector<Triple> match(const std::optional<Iri>& s,
                            const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  bool operator==(const Graph& other) const { return triples_ == other.triples_; }

private:
  std::set<Triple, TripleOrder> triples_;
};

// Ordered prefix table; lookups in both directions, no duplicate prefixes.
class PrefixMap {
public:
  void bind(std::string prefix, std::string ns);

  const std::string* ns_for(std::string_view prefix) const;
  Iri expand(std::string_view prefix, std::string_view local) const;
  Iri expand_curie(std::string_view curie) const;

  // Longest-namespace compression; empty result when no safe curie exists.
  std::optional<std::pair<std::string, std::string>> compress(const Iri& iri) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

  // The bundle used across the toolkit: crm, fentry, oaentry, fabio, frbr,
  // pro, scor, hico, cito, prov, tv, foaf, rdfs, rdf, owl.
  static PrefixMap defaults();

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Canonical N-Triples: one line per triple, lines sorted bytewise,
// trailing newline on every line.
std::string serialize_ntriples(const Graph& g);

// Deterministic Turtle: prefix block sorted by prefix, subject blocks sorted
// by IRI, predicates by IRI with rdf:type rendered as "a", objects in term
// order, comma-grouped.
std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes);

// Strict subset parser: IRIs and literals only; blank nodes rejected with
// BlankNodeRejected; full-line # comments and blank lines allowed.
Graph parse_ntriples(std::string_view text);

std::string escape_literal(std::string_view lexical);

// One term in N-Triples syntax: <iri>, "literal", "lit"@lang, "lit"^^<dt>.
std::string term_ntriples(const Term& t);

}  // namespace schedalod::rdf

#endif
