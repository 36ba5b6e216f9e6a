#ifndef SCHEDALOD_TESTS_COMMON_TESTKIT_HPP
#define SCHEDALOD_TESTS_COMMON_TESTKIT_HPP

// Shared oracles for the test binaries. Everything here is written against
// the contracts only, independently of the library internals, so the suites
// can compare implementation output to brute-force results.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <schedalod/rdf.hpp>
#include <schedalod/store.hpp>

namespace testkit {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline schedalod::rdf::Graph load_nt(const std::string& path) {
  return schedalod::rdf::parse_ntriples(slurp(path));
}

// Deterministic pseudo-random source; every property test seeds its own.
struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
  }
  bool chance(int percent) { return below(100) < static_cast<std::size_t>(percent); }
};

// Small pools keep collision and join probability high.
inline schedalod::rdf::Iri random_iri(Rng& rng) {
  static const char* kHosts[] = {"http://ex.org/", "https://w3id.org/zericatalog/"};
  return schedalod::rdf::Iri(std::string(kHosts[rng.below(2)]) + "n" +
                             std::to_string(rng.below(18)));
}

inline schedalod::rdf::Term random_term(Rng& rng) {
  using schedalod::rdf::Iri;
  using schedalod::rdf::Literal;
  if (rng.chance(60)) return random_iri(rng);
  static const char* kLex[] = {
      "positivo",       "Battesimo di Cristo", "a b c",
      "quote \" here",  "back\\slash",         "tab\there",
      "line\nbreak",    "carriage\rreturn",    "perché",
      "1940",
  };
  std::string lex = kLex[rng.below(10)];
  switch (rng.below(4)) {
    case 0: return Literal::plain(lex);
    case 1: return Literal::tagged(lex, "it");
    case 2: return Literal::tagged(lex, "en");
    default:
      return Literal::typed(
          lex, Iri("http://www.w3.org/2001/XMLSchema#gYear"));
  }
}

inline schedalod::rdf::Graph random_graph(Rng& rng, std::size_t max_triples) {
  schedalod::rdf::Graph g;
  std::size_t n = rng.below(max_triples + 1);
  for (std::size_t i = 0; i < n; ++i)
    g.add(random_iri(rng), random_iri(rng), random_term(rng));
  return g;
}

// Brute-force wildcard filter; the real Graph::match must agree with it.
inline std::vector<schedalod::rdf::Triple> match_oracle(
    const schedalod::rdf::Graph& g, const std::optional<schedalod::rdf::Iri>& s,
    const std::optional<schedalod::rdf::Iri>& p,
    const std::optional<schedalod::rdf::Term>& o) {
  std::vector<schedalod::rdf::Triple> out;
  for (const schedalod::rdf::Triple& t : g) {
    if (s && !(t.s == *s)) continue;
    if (p && !(t.p == *p)) continue;
    if (o && !(t.o == *o)) continue;
    out.push_back(t);
  }
  return out;
}

// Nested-loop join over the raw graph: try every triple at every pattern,
// carrying a substitution. Independent of the store's index machinery.
inline bool unify(const schedalod::store::PatternTerm& pt,
                  const schedalod::rdf::Term& actual,
                  schedalod::store::Binding& b) {
  if (!pt.is_var()) return *pt.constant == actual;
  auto it = b.find(pt.var);
  if (it != b.end()) return it->second == actual;
  b.emplace(pt.var, actual);
  return true;
}

inline void extend_oracle(const schedalod::rdf::Graph& g,
                          const std::vector<schedalod::store::TriplePattern>& ps,
                          std::size_t i, schedalod::store::Binding b,
                          std::vector<schedalod::store::Binding>& out) {
  if (i == ps.size()) {
    out.push_back(std::move(b));
    return;
  }
  for (const schedalod::rdf::Triple& t : g) {
    schedalod::store::Binding nb = b;
    if (!unify(ps[i].s, schedalod::rdf::Term(t.s), nb)) continue;
    if (!unify(ps[i].p, schedalod::rdf::Term(t.p), nb)) continue;
    if (!unify(ps[i].o, t.o, nb)) continue;
    extend_oracle(g, ps, i + 1, std::move(nb), out);
  }
}

inline std::vector<schedalod::store::Binding> evaluate_oracle(
    const schedalod::rdf::Graph& g, const schedalod::store::BgpQuery& q) {
  std::vector<schedalod::store::Binding> raw;
  extend_oracle(g, q.patterns, 0, {}, raw);
  std::vector<std::string> vars = q.variables();
  auto key = [&](const schedalod::store::Binding& b) {
    std::vector<schedalod::rdf::Term> k;
    for (const std::string& v : vars) k.push_back(b.at(v));
    return k;
  };
  std::sort(raw.begin(), raw.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
  return raw;
}

// Reads back the deterministic Turtle this toolkit writes: a sorted
// @prefix block, then space-separated tokens with ';' ',' '.' punctuation.
// Only the output subset is supported; this is a test oracle, not a parser.
class TurtleReader {
public:
  schedalod::rdf::Graph read(const std::string& text) {
    schedalod::rdf::Graph g;
    std::istringstream in(text);
    std::string line, body;
    while (std::getline(in, line)) {
      if (line.rfind("@prefix ", 0) == 0) {
        std::size_t colon = line.find(':', 8);
        std::size_t lt = line.find('<', colon);
        std::size_t gt = line.find('>', lt);
        prefixes_[line.substr(8, colon - 8)] = line.substr(lt + 1, gt - lt - 1);
        continue;
      }
      body += line;
      body.push_back('\n');
    }
    tokenize(body);
    std::size_t i = 0;
    while (i < tokens_.size()) {
      schedalod::rdf::Iri subject = as_iri(tokens_[i++]);
      while (true) {
        schedalod::rdf::Iri predicate =
            tokens_[i] == "a"
                ? schedalod::rdf::Iri(
                      "http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
                : as_iri(tokens_[i]);
        ++i;
        while (true) {
          g.add(subject, predicate, as_term(tokens_[i++]));
          if (tokens_[i] != ",") break;
          ++i;
        }
        if (tokens_[i] == ";") {
          ++i;
          continue;
        }
        if (tokens_[i] == ".") {
          ++i;
          break;
        }
        throw std::runtime_error("turtle oracle: expected ; , or .");
      }
    }
    return g;
  }

private:
  std::map<std::string, std::string> prefixes_;
  std::vector<std::string> tokens_;

  void tokenize(const std::string& body) {
    std::size_t i = 0;
    while (i < body.size()) {
      char c = body[i];
      if (c == ' ' || c == '\n' || c == '\t') {
        ++i;
        continue;
      }
      if (c == ';' || c == ',' || c == '.') {
        tokens_.push_back(std::string(1, c));
        ++i;
        continue;
      }
      std::size_t start = i;
      if (c == '<') {
        while (body[i] != '>') ++i;
        ++i;
      } else if (c == '"') {
        ++i;
        while (body[i] != '"') i += body[i] == '\\' ? 2 : 1;
        ++i;
        if (i < body.size() && body[i] == '@') {
          while (i < body.size() && body[i] != ' ' && body[i] != '\n') ++i;
        } else if (i + 1 < body.size() && body[i] == '^' && body[i + 1] == '^') {
          i += 2;
          if (body[i] == '<') {
            while (body[i] != '>') ++i;
            ++i;
          } else {
            while (i < body.size() && body[i] != ' ' && body[i] != '\n') ++i;
          }
        }
      } else {
        while (i < body.size() && body[i] != ' ' && body[i] != '\n') ++i;
      }
      tokens_.push_back(body.substr(start, i - start));
    }
  }

  schedalod::rdf::Iri as_iri(const std::string& tok) {
    if (tok.front() == '<')
      return schedalod::rdf::Iri(tok.substr(1, tok.size() - 2));
    std::size_t colon = tok.find(':');
    auto it = prefixes_.find(tok.substr(0, colon));
    if (it == prefixes_.end())
      throw std::runtime_error("turtle oracle: unknown prefix in " + tok);
    return schedalod::rdf::Iri(it->second + tok.substr(colon + 1));
  }

  schedalod::rdf::Term as_term(const std::string& tok) {
    if (tok.front() != '"') return as_iri(tok);
    std::size_t close = 1;
    while (tok[close] != '"') close += tok[close] == '\\' ? 2 : 1;
    std::string lex = unescape(tok.substr(1, close - 1));
    std::string rest = tok.substr(close + 1);
    if (rest.empty()) return schedalod::rdf::Literal::plain(lex);
    if (rest[0] == '@')
      return schedalod::rdf::Literal::tagged(lex, rest.substr(1));
    std::string dt = rest.substr(2);  // after ^^
    return schedalod::rdf::Literal::typed(lex, as_iri(dt));
  }

  static std::string unescape(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] != '\\') {
        out.push_back(s[i]);
        continue;
      }
      switch (s[++i]) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'u': {
          unsigned cp = std::stoul(s.substr(i + 1, 4), nullptr, 16);
          i += 4;
          if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
          } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
          } else {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
          }
          break;
        }
        default: out.push_back(s[i]);
      }
    }
    return out;
  }
};

inline schedalod::rdf::Graph reparse_turtle(const std::string& text) {
  return TurtleReader().read(text);
}

// Random basic graph patterns drawing constants from the graph so joins hit.
inline schedalod::store::BgpQuery random_bgp(Rng& rng,
                                             const schedalod::rdf::Graph& g) {
  using schedalod::store::PatternTerm;
  using schedalod::store::TriplePattern;
  static const char* kVars[] = {"x", "y", "z", "w"};
  std::vector<schedalod::rdf::Triple> triples(g.begin(), g.end());
  auto pick_triple = [&]() -> const schedalod::rdf::Triple& {
    return triples[rng.below(triples.size())];
  };
  auto var_term = [&]() {
    PatternTerm t;
    t.var = kVars[rng.below(4)];
    return t;
  };
  auto const_term = [&](int pos) {
    PatternTerm t;
    if (triples.empty() || rng.chance(20)) {
      t.constant = pos == 2 ? random_term(rng)
                            : schedalod::rdf::Term(random_iri(rng));
    } else {
      const schedalod::rdf::Triple& tr = pick_triple();
      t.constant = pos == 0   ? schedalod::rdf::Term(tr.s)
                   : pos == 1 ? schedalod::rdf::Term(tr.p)
                              : tr.o;
    }
    return t;
  };
  schedalod::store::BgpQuery q;
  std::size_t n = 1 + rng.below(3);
  for (std::size_t i = 0; i < n; ++i) {
    TriplePattern p;
    p.s = rng.chance(50) ? var_term() : const_term(0);
    p.p = rng.chance(50) ? var_term() : const_term(1);
    p.o = rng.chance(50) ? var_term() : const_term(2);
    q.patterns.push_back(std::move(p));
  }
  return q;
}

}  // namespace testkit

#endif
