#ifndef SCHEDALOD_IRI_POLICY_HPP
#define SCHEDALOD_IRI_POLICY_HPP

#include <map>
#include <mutex>
#include <string>

#include "schedalod/rdf.hpp"

namespace schedalod::iri {

enum class PolicyError {
  EmptySlug,
  EmptyKey,
  BadBase,
};

class Error : public std::runtime_error {
public:
  Error(PolicyError code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}
  PolicyError code() const { return code_; }

private:
  PolicyError code_;
};

// Entity kinds minted from source names rather than record ids.
enum class Kind {
  Person,
  Group,
  Place,
  Event,
  Term,
  Timespan,
  Dimension,
  Collection,
  Document,
  Artwork,  // name-referenced works only; id-referenced works use artwork()
};

// Lowercase ASCII slug: accented Latin letters reduce to their base letters,
// every other non-alphanumeric run collapses to a single hyphen.
// Throws EmptySlug when nothing survives.
std::string slugify(const std::string& name);

inline constexpr const char* kDefaultBase = "https://w3id.org/zericatalog/";

// Mints every IRI the converter emits. Slug collisions between distinct
// source names are resolved with -2, -3… suffixes; the assignment is
// first-come, so callers reserve names in corpus order before any parallel
// conversion to keep minting deterministic across worker counts.
class IriPolicy {
public:
  explicit IriPolicy(std::string base = kDefaultBase);

  const std::string& base() const { return base_; }

  rdf::Iri fentry(const std::string& id) const;
  rdf::Iri oaentry(const std::string& id) const;
  rdf::Iri photo(const std::string& id) const;
  // Numeric key -> artwork/{id}; name key -> artwork/{slug} from the pool.
  rdf::Iri artwork(const std::string& key);

  void reserve(Kind kind, const std::string& name);
  rdf::Iri slugged(Kind kind, const std::string& name);

  std::string slug_for(Kind kind, const std::string& name);

private:
  std::string base_;
  // kind -> source name -> assigned slug; plus taken-slug set per kind.
  std::map<Kind, std::map<std::string, std::string>> assigned_;
  std::map<Kind, std::map<std::string, std::string>> taken_;  // slug -> name
  mutable std::mutex mutex_;

  std::string path_for(Kind kind) const;
};

// Facet suffixes for nodes derived from an already minted subject.
rdf::Iri sub(const rdf::Iri& parent, const std::string& facet);
rdf::Iri subn(const rdf::Iri& parent, const std::string& facet, std::size_t n);

}  // namespace schedalod::iri

#endif
