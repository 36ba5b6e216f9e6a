#include "schedalod/iri_policy.hpp"

#include <cctype>

#include "schedalod/text.hpp"

namespace schedalod::iri {

namespace {

// Base-letter mapping for Latin-1 Supplement and Latin Extended-A; equals
// NFKD + strip-combining-marks over these ranges. Returns nullptr when the
// code point is not a letter this table knows.
const char* latin_base(char32_t cp) {
  switch (cp) {
    case U'à': case U'á': case U'â': case U'ã': case U'ä': case U'å':
    case U'À': case U'Á': case U'Â': case U'Ã': case U'Ä': case U'Å':
    case U'ā': case U'Ā': case U'ă': case U'Ă': case U'ą': case U'Ą':
      return "a";
    case U'æ': case U'Æ': return "ae";
    case U'ç': case U'Ç': case U'ć': case U'Ć': case U'ĉ': case U'Ĉ':
    case U'ċ': case U'Ċ': case U'č': case U'Č':
      return "c";
    case U'ď': case U'Ď': case U'đ': case U'Đ': case U'ð': case U'Ð':
      return "d";
    case U'è': case U'é': case U'ê': case U'ë':
    case U'È': case U'É': case U'Ê': case U'Ë':
    case U'ē': case U'Ē': case U'ĕ': case U'Ĕ': case U'ė': case U'Ė':
    case U'ę': case U'Ę': case U'ě': case U'Ě':
      return "e";
    case U'ĝ': case U'Ĝ': case U'ğ': case U'Ğ': case U'ġ': case U'Ġ':
    case U'ģ': case U'Ģ':
      return "g";
    case U'ĥ': case U'Ĥ': case U'ħ': case U'Ħ': return "h";
    case U'ì': case U'í': case U'î': case U'ï':
    case U'Ì': case U'Í': case U'Î': case U'Ï':
    case U'ĩ': case U'Ĩ': case U'ī': case U'Ī': case U'ĭ': case U'Ĭ':
    case U'į': case U'Į': case U'ı': case U'İ':
      return "i";
    case U'ĳ': case U'Ĳ': return "ij";
    case U'ĵ': case U'Ĵ': return "j";
    case U'ķ': case U'Ķ': return "k";
    case U'ĺ': case U'Ĺ': case U'ļ': case U'Ļ': case U'ľ': case U'Ľ':
    case U'ŀ': case U'Ŀ': case U'ł': case U'Ł':
      return "l";
    case U'ñ': case U'Ñ': case U'ń': case U'Ń': case U'ņ': case U'Ņ':
    case U'ň': case U'Ň':
      return "n";
    case U'ò': case U'ó': case U'ô': case U'õ': case U'ö': case U'ø':
    case U'Ò': case U'Ó': case U'Ô': case U'Õ': case U'Ö': case U'Ø':
    case U'ō': case U'Ō': case U'ŏ': case U'Ŏ': case U'ő': case U'Ő':
      return "o";
    case U'œ': case U'Œ': return "oe";
    case U'ŕ': case U'Ŕ': case U'ŗ': case U'Ŗ': case U'ř': case U'Ř':
      return "r";
    case U'ś': case U'Ś': case U'ŝ': case U'Ŝ': case U'ş': case U'Ş':
    case U'š': case U'Š':
      return "s";
    case U'ß': return "ss";
    case U'ţ': case U'Ţ': case U'ť': case U'Ť': case U'ŧ': case U'Ŧ':
      return "t";
    case U'þ': case U'Þ': return "th";
    case U'ù': case U'ú': case U'û': case U'ü':
    case U'Ù': case U'Ú': case U'Û': case U'Ü':
    case U'ũ': case U'Ũ': case U'ū': case U'Ū': case U'ŭ': case U'Ŭ':
    case U'ů': case U'Ů': case U'ű': case U'Ű': case U'ų': case U'Ų':
      return "u";
    case U'ŵ': case U'Ŵ': return "w";
    case U'ý': case U'ÿ': case U'Ý': case U'Ŷ': case U'ŷ': case U'Ÿ':
      return "y";
    case U'ź': case U'Ź': case U'ż': case U'Ż': case U'ž': case U'Ž':
      return "z";
    default: return nullptr;
  }
}

bool combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

bool digits_only(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::string slugify(const std::string& name) {
  std::string out;
  bool pending_hyphen = false;
  std::size_t i = 0;
  while (i < name.size()) {
    char32_t cp = text::utf8_next(name, i);
    std::string piece;
    if (cp < 0x80) {
      char c = static_cast<char>(cp);
      if (std::isalnum(static_cast<unsigned char>(c)))
        piece.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (const char* base = latin_base(cp)) {
      piece = base;
    } else if (combining_mark(cp)) {
      continue;
    }
    if (piece.empty()) {
      pending_hyphen = !out.empty();
      continue;
    }
    if (pending_hyphen) out.push_back('-');
    pending_hyphen = false;
    out += piece;
  }
  if (out.empty())
    throw Error(PolicyError::EmptySlug, "no slug material in: " + name);
  return out;
}

IriPolicy::IriPolicy(std::string base) : base_(std::move(base)) {
  if (base_.empty() || base_.back() != '/')
    throw Error(PolicyError::BadBase, "base IRI must end with '/'");
  rdf::Iri check(base_);  // validates shape
}

rdf::Iri IriPolicy::fentry(const std::string& id) const {
  if (id.empty()) throw Error(PolicyError::EmptyKey, "empty entry id");
  return rdf::Iri(base_ + "fentry/" + id);
}

rdf::Iri IriPolicy::oaentry(const std::string& id) const {
  if (id.empty()) throw Error(PolicyError::EmptyKey, "empty entry id");
  return rdf::Iri(base_ + "oaentry/" + id);
}

rdf::Iri IriPolicy::photo(const std::string& id) const {
  if (id.empty()) throw Error(PolicyError::EmptyKey, "empty photo id");
  return rdf::Iri(base_ + "photo/" + id);
}

rdf::Iri IriPolicy::artwork(const std::string& key) {
  if (key.empty()) throw Error(PolicyError::EmptyKey, "empty artwork key");
  if (digits_only(key)) return rdf::Iri(base_ + "artwork/" + key);
  return rdf::Iri(base_ + "artwork/" + slug_for(Kind::Artwork, key));
}

std::string IriPolicy::path_for(Kind kind) const {
  switch (kind) {
    case Kind::Person: return "person/";
    case Kind::Group: return "group/";
    case Kind::Place: return "place/";
    case Kind::Event: return "event/";
    case Kind::Term: return "term/";
    case Kind::Timespan: return "timespan/";
    case Kind::Dimension: return "dimension/";
    case Kind::Collection: return "collection/";
    case Kind::Document: return "document/";
    case Kind::Artwork: return "artwork/";
  }
  return "";
}

std::string IriPolicy::slug_for(Kind kind, const std::string& name) {
  if (name.empty()) throw Error(PolicyError::EmptyKey, "empty mint key");
  std::lock_guard<std::mutex> lock(mutex_);
  auto& pool = assigned_[kind];
  auto it = pool.find(name);
  if (it != pool.end()) return it->second;
  std::string base_slug = slugify(name);
  auto& slugs = taken_[kind];
  std::string candidate = base_slug;
  for (std::size_t counter = 2; slugs.count(candidate); ++counter)
    candidate = base_slug + "-" + std::to_string(counter);
  slugs.emplace(candidate, name);
  pool.emplace(name, candidate);
  return candidate;
}

void IriPolicy::reserve(Kind kind, const std::string& name) {
  slug_for(kind, name);
}

rdf::Iri IriPolicy::slugged(Kind kind, const std::string& name) {
  return rdf::Iri(base_ + path_for(kind) + slug_for(kind, name));
}

rdf::Iri sub(const rdf::Iri& parent, const std::string& facet) {
  return rdf::Iri(parent.str() + "/" + facet);
}

rdf::Iri subn(const rdf::Iri& parent, const std::string& facet, std::size_t n) {
  return rdf::Iri(parent.str() + "/" + facet + "/" + std::to_string(n));
}

}  // namespace schedalod::iri
