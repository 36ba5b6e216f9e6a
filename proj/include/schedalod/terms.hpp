#ifndef SCHEDALOD_TERMS_HPP
#define SCHEDALOD_TERMS_HPP

#include <map>
#include <string>
#include <string_view>

#include "schedalod/rdf.hpp"

namespace schedalod::terms {

class UnknownTerm : public std::runtime_error {
public:
  explicit UnknownTerm(const std::string& curie)
      : std::runtime_error("term not in registry: " + curie) {}
};

// Closed set of ontology terms the converter may emit; every curie resolves
// under the default prefix bundle.
class TermRegistry {
public:
  static const TermRegistry& instance();

  const rdf::PrefixMap& prefixes() const { return prefixes_; }

  const rdf::Iri& get(std::string_view curie) const;
  bool knows(std::string_view curie) const;

  const std::map<std::string, rdf::Iri, std::less<>>& all() const {
    return by_curie_;
  }

private:
  TermRegistry();

  rdf::PrefixMap prefixes_;
  std::map<std::string, rdf::Iri, std::less<>> by_curie_;
};

// Shorthand used by the emitters.
inline const rdf::Iri& T(std::string_view curie) {
  return TermRegistry::instance().get(curie);
}

const rdf::Iri& xsd_gyear();

}  // namespace schedalod::terms

#endif
