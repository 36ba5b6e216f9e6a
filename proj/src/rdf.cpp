#include "schedalod/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "schedalod/text.hpp"

namespace schedalod::rdf {

namespace {

bool valid_scheme(std::string_view s) {
  std::size_t colon = s.find(':');
  if (colon == 0 || colon == std::string_view::npos) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    char c = s[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.')
      return false;
  }
  return true;
}

// Primary subtags only: two to eight lowercase letters after folding.
bool valid_lang(std::string_view tag) {
  if (tag.size() < 2 || tag.size() > 8) return false;
  for (char c : tag)
    if (c < 'a' || c > 'z') return false;
  return true;
}

constexpr std::string_view kXsdString = "http://www.w3.org/2001/XMLSchema#string";

// Conservative prefixed-name local part: letters, digits, '_', '-', interior
// dots. Everything else falls back to a full IRI in Turtle.
bool safe_local(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
        c != '.')
      return false;
  }
  if (local.front() == '.' || local.back() == '.') return false;
  return true;
}

void append_escaped(std::string& out, std::string_view lexical) {
  for (unsigned char c : lexical) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
}

void append_term_nt(std::string& out, const Term& t) {
  if (is_iri(t)) {
    out.push_back('<');
    out += as_iri(t).str();
    out.push_back('>');
    return;
  }
  const Literal& lit = as_literal(t);
  out.push_back('"');
  append_escaped(out, lit.lexical());
  out.push_back('"');
  if (!lit.lang().empty()) {
    out.push_back('@');
    out += lit.lang();
  } else if (lit.datatype()) {
    out += "^^<";
    out += lit.datatype()->str();
    out.push_back('>');
  }
}

}  // namespace

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty())
    throw Error(ErrorCode::MalformedIri, "empty IRI");
  if (!valid_scheme(value_))
    throw Error(ErrorCode::MalformedIri, "IRI is not absolute: " + value_);
  for (unsigned char c : value_) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
        c == '|' || c == '^' || c == '`' || c == '\\')
      throw Error(ErrorCode::MalformedIri, "forbidden character in IRI: " + value_);
  }
}

Literal Literal::plain(std::string lexical) {
  Literal l;
  l.lexical_ = std::move(lexical);
  return l;
}

Literal Literal::tagged(std::string lexical, std::string lang) {
  // Tags compare case-insensitively, so fold before the identity check.
  for (char& c : lang)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (!valid_lang(lang))
    throw Error(ErrorCode::MalformedLanguageTag, "bad language tag: " + lang);
  Literal l;
  l.lexical_ = std::move(lexical);
  l.lang_ = std::move(lang);
  return l;
}

Literal Literal::typed(std::string lexical, Iri datatype) {
  if (datatype.str() == kXsdString) return plain(std::move(lexical));
  Literal l;
  l.lexical_ = std::move(lexical);
  l.datatype_ = std::move(datatype);
  return l;
}

bool Graph::contains_all(const Graph& other) const {
  return std::includes(triples_.begin(), triples_.end(), other.triples_.begin(),
                       other.triples_.end());
}

std::vector<Triple> Graph::match(const std::optional<Iri>& s,
                                 const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const {
  std::vector<Triple> out;
  auto matches = [&](const Triple& t) {
    if (s && t.s != *s) return false;
    if (p && t.p != *p) return false;
    if (o && t.o != *o) return false;
    return true;
  };
  if (s) {
    // All triples for one subject are contiguous in the set order.
    auto [lo, hi] = triples_.equal_range(*s);
    for (auto it = lo; it != hi; ++it)
      if (matches(*it)) out.push_back(*it);
    return out;
  }
  for (const Triple& t : triples_)
    if (matches(t)) out.push_back(t);
  return out;
}

void PrefixMap::bind(std::string prefix, std::string ns) {
  for (auto& [p, n] : entries_) {
    if (p == prefix) {
      if (n == ns) return;
      throw Error(ErrorCode::DuplicatePrefix, "prefix rebound: " + prefix);
    }
  }
  entries_.emplace_back(std::move(prefix), std::move(ns));
}

const std::string* PrefixMap::ns_for(std::string_view prefix) const {
  for (const auto& [p, n] : entries_)
    if (p == prefix) return &n;
  return nullptr;
}

Iri PrefixMap::expand(std::string_view prefix, std::string_view local) const {
  const std::string* ns = ns_for(prefix);
  if (!ns)
    throw Error(ErrorCode::UnknownPrefix, "unknown prefix: " + std::string(prefix));
  return Iri(*ns + std::string(local));
}

Iri PrefixMap::expand_curie(std::string_view curie) const {
  std::size_t colon = curie.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::UnknownPrefix, "not a curie: " + std::string(curie));
  return expand(curie.substr(0, colon), curie.substr(colon + 1));
}

std::optional<std::pair<std::string, std::string>> PrefixMap::compress(
    const Iri& iri) const {
  const std::string& s = iri.str();
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    const std::string& ns = entry.second;
    if (s.size() > ns.size() && s.compare(0, ns.size(), ns) == 0) {
      if (!best || ns.size() > best->second.size()) best = &entry;
    }
  }
  if (!best) return std::nullopt;
  std::string local = s.substr(best->second.size());
  if (!safe_local(local)) return std::nullopt;
  return std::make_pair(best->first, local);
}

PrefixMap PrefixMap::defaults() {
  PrefixMap m;
  m.bind("crm", "http://www.cidoc-crm.org/cidoc-crm/");
  m.bind("fentry", "http://www.essepuntato.it/2014/03/fentry/");
  m.bind("oaentry", "http://purl.org/emmedi/oaentry/");
  m.bind("fabio", "http://purl.org/spar/fabio/");
  m.bind("frbr", "http://purl.org/spar/frbr/");
  m.bind("pro", "http://purl.org/spar/pro/");
  m.bind("scor", "http://purl.org/spar/scoro/");
  m.bind("hico", "http://purl.org/emmedi/hico/");
  m.bind("cito", "http://purl.org/spar/cito/");
  m.bind("prov", "http://www.w3.org/ns/prov#");
  m.bind("tv", "http://www.essepuntato.it/2012/04/tvc/");
  m.bind("foaf", "http://xmlns.com/foaf/0.1/");
  m.bind("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
  m.bind("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
  m.bind("owl", "http://www.w3.org/2002/07/owl#");
  return m;
}

std::string escape_literal(std::string_view lexical) {
  std::string out;
  out.reserve(lexical.size() + 8);
  append_escaped(out, lexical);
  return out;
}

std::string term_ntriples(const Term& t) {
  std::string out;
  append_term_nt(out, t);
  return out;
}

std::string serialize_ntriples(const Graph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.size());
  for (const Triple& t : g) {
    std::string line;
    line.push_back('<');
    line += t.s.str();
    line += "> <";
    line += t.p.str();
    line += "> ";
    append_term_nt(line, t.o);
    line += " .\n";
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l;
  return out;
}

namespace {

constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

std::string turtle_term(const Term& t, const PrefixMap& prefixes) {
  if (is_iri(t)) {
    if (auto curie = prefixes.compress(as_iri(t)))
      return curie->first + ":" + curie->second;
    return "<" + as_iri(t).str() + ">";
  }
  const Literal& lit = as_literal(t);
  std::string out = "\"" + escape_literal(lit.lexical()) + "\"";
  if (!lit.lang().empty()) {
    out += "@" + lit.lang();
  } else if (lit.datatype()) {
    if (auto curie = prefixes.compress(*lit.datatype()))
      out += "^^" + curie->first + ":" + curie->second;
    else
      out += "^^<" + lit.datatype()->str() + ">";
  }
  return out;
}

}  // namespace

std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes) {
  std::ostringstream out;
  std::vector<std::pair<std::string, std::string>> decls(prefixes.entries());
  std::sort(decls.begin(), decls.end());
  for (const auto& [p, ns] : decls)
    out << "@prefix " << p << ": <" << ns << "> .\n";
  if (!decls.empty() && !g.empty()) out << "\n";

  // The set order already groups by subject, then predicate, then object.
  auto it = g.begin();
  while (it != g.end()) {
    const Iri& subject = it->s;
    out << turtle_term(Term(subject), prefixes);
    bool first_predicate = true;
    while (it != g.end() && it->s == subject) {
      const Iri& predicate = it->p;
      out << (first_predicate ? " " : " ;\n    ");
      first_predicate = false;
      if (predicate.str() == kRdfType)
        out << "a";
      else
        out << turtle_term(Term(predicate), prefixes);
      bool first_object = true;
      while (it != g.end() && it->s == subject && it->p == predicate) {
        out << (first_object ? " " : " , ");
        first_object = false;
        out << turtle_term(it->o, prefixes);
        ++it;
      }
    }
    out << " .\n";
  }
  return out.str();
}

namespace {

struct LineParser {
  std::string_view line;
  std::size_t pos = 0;
  std::size_t lineno;

  LineParser(std::string_view l, std::size_t n) : line(l), lineno(n) {}

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorCode::SyntaxError, "N-Triples syntax error: " + what, lineno);
  }

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }

  char peek() { return pos < line.size() ? line[pos] : '\0'; }

  char32_t read_hex_escape(std::size_t digits) {
    char32_t cp = 0;
    for (std::size_t k = 0; k < digits; ++k) {
      if (pos >= line.size()) fail("truncated \\u escape");
      char c = line[pos++];
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<char32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<char32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<char32_t>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    return cp;
  }

  Iri read_iri() {
    skip_ws();
    if (peek() != '<') fail("expected '<'");
    ++pos;
    std::string value;
    while (true) {
      if (pos >= line.size()) fail("unterminated IRI");
      char c = line[pos];
      if (c == '>') {
        ++pos;
        break;
      }
      if (c == '\\') {
        ++pos;
        if (pos >= line.size()) fail("truncated escape in IRI");
        char e = line[pos++];
        if (e == 'u') text::utf8_append(value, read_hex_escape(4));
        else if (e == 'U') text::utf8_append(value, read_hex_escape(8));
        else fail("unsupported escape in IRI");
        continue;
      }
      value.push_back(c);
      ++pos;
    }
    try {
      return Iri(std::move(value));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Term read_object() {
    skip_ws();
    char c = peek();
    if (c == '<') return Term(read_iri());
    if (c == '_') fail_blank();
    if (c != '"') fail("expected IRI or literal object");
    ++pos;
    std::string lexical;
    while (true) {
      if (pos >= line.size()) fail("unterminated literal");
      char ch = line[pos];
      if (ch == '"') {
        ++pos;
        break;
      }
      if (ch == '\\') {
        ++pos;
        if (pos >= line.size()) fail("truncated escape");
        char e = line[pos++];
        switch (e) {
          case 't': lexical.push_back('\t'); break;
          case 'b': lexical.push_back('\b'); break;
          case 'n': lexical.push_back('\n'); break;
          case 'r': lexical.push_back('\r'); break;
          case 'f': lexical.push_back('\f'); break;
          case '"': lexical.push_back('"'); break;
          case '\'': lexical.push_back('\''); break;
          case '\\': lexical.push_back('\\'); break;
          case 'u': text::utf8_append(lexical, read_hex_escape(4)); break;
          case 'U': text::utf8_append(lexical, read_hex_escape(8)); break;
          default: fail("unsupported string escape");
        }
        continue;
      }
      lexical.push_back(ch);
      ++pos;
    }
    if (peek() == '@') {
      ++pos;
      std::size_t start = pos;
      while (pos < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[pos])) ||
              line[pos] == '-'))
        ++pos;
      std::string tag(line.substr(start, pos - start));
      try {
        return Term(Literal::tagged(std::move(lexical), std::move(tag)));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^') {
      pos += 2;
      Iri datatype = read_iri();
      return Term(Literal::typed(std::move(lexical), std::move(datatype)));
    }
    return Term(Literal::plain(std::move(lexical)));
  }

  [[noreturn]] void fail_blank() {
    throw Error(ErrorCode::BlankNodeRejected,
                "blank nodes are not supported", lineno);
  }

  Triple parse() {
    skip_ws();
    if (peek() == '_') fail_blank();
    Iri s = read_iri();
    skip_ws();
    if (peek() == '_') fail_blank();
    Iri p = read_iri();
    Term o = read_object();
    skip_ws();
    if (peek() != '.') fail("expected '.'");
    ++pos;
    if (!at_end()) fail("trailing content after '.'");
    return Triple{std::move(s), std::move(p), std::move(o)};
  }
};

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph g;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line;
    if (end == std::string_view::npos) {
      if (start >= text.size()) break;
      line = text.substr(start);
      start = text.size() + 1;
    } else {
      line = text.substr(start, end - start);
      start = end + 1;
    }
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] == '#') continue;
    LineParser parser(line, lineno);
    g.add(parser.parse());
  }
  return g;
}

}  // namespace schedalod::rdf
