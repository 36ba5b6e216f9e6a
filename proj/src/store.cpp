#include "schedalod/store.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "schedalod/text.hpp"

namespace schedalod::store {
namespace {

std::string enc(const rdf::Term& t) { return rdf::term_ntriples(t); }
std::string enc(const rdf::Iri& i) { return "<" + i.str() + ">"; }

}  // namespace

std::vector<std::string> BgpQuery::variables() const {
  std::vector<std::string> vars;
  auto note = [&](const PatternTerm& pt) {
    if (pt.is_var() && std::find(vars.begin(), vars.end(), pt.var) == vars.end())
      vars.push_back(pt.var);
  };
  for (const TriplePattern& p : patterns) {
    note(p.s);
    note(p.p);
    note(p.o);
  }
  return vars;
}

namespace {

bool valid_var(const std::string& name) {
  if (name.empty()) return false;
  if (name[0] < 'a' || name[0] > 'z') return false;
  for (char c : name)
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) return false;
  return true;
}

// Parses one whitespace-delimited pattern term starting at i.
PatternTerm parse_term(const std::string& line, std::size_t& i,
                       std::size_t lineno, bool subject_or_pred) {
  auto fail = [&](const std::string& what) -> void {
    throw Error(QueryError::BadPattern, what, lineno);
  };
  PatternTerm out;
  if (line[i] == '?') {
    std::size_t j = ++i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    out.var = line.substr(j, i - j);
    if (!valid_var(out.var))
      throw Error(QueryError::BadVariable, "bad variable ?" + out.var, lineno);
    return out;
  }
  if (line[i] == '<') {
    std::size_t close = line.find('>', i);
    if (close == std::string::npos) fail("unterminated IRI");
    std::string iri = line.substr(i + 1, close - i - 1);
    i = close + 1;
    try {
      out.constant = rdf::Term(rdf::Iri(iri));
    } catch (const rdf::Error& e) {
      fail(std::string("bad IRI: ") + e.what());
    }
    return out;
  }
  if (line[i] == '"') {
    if (subject_or_pred) fail("literal not allowed in this position");
    std::string lexical;
    ++i;
    bool closed = false;
    while (i < line.size()) {
      char c = line[i];
      if (c == '\\') {
        if (i + 1 >= line.size()) fail("dangling escape");
        char e = line[i + 1];
        switch (e) {
          case '\\': lexical.push_back('\\'); break;
          case '"': lexical.push_back('"'); break;
          case 'n': lexical.push_back('\n'); break;
          case 'r': lexical.push_back('\r'); break;
          case 't': lexical.push_back('\t'); break;
          default: fail("unsupported escape");
        }
        i += 2;
        continue;
      }
      if (c == '"') {
        closed = true;
        ++i;
        break;
      }
      lexical.push_back(c);
      ++i;
    }
    if (!closed) fail("unterminated literal");
    if (i < line.size() && line[i] == '@') {
      std::size_t j = ++i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      out.constant = rdf::Term(rdf::Literal::tagged(lexical, line.substr(j, i - j)));
      return out;
    }
    if (i + 1 < line.size() && line[i] == '^' && line[i + 1] == '^') {
      i += 2;
      if (i >= line.size() || line[i] != '<') fail("expected datatype IRI");
      std::size_t close = line.find('>', i);
      if (close == std::string::npos) fail("unterminated datatype IRI");
      std::string dt = line.substr(i + 1, close - i - 1);
      i = close + 1;
      out.constant = rdf::Term(rdf::Literal::typed(lexical, rdf::Iri(dt)));
      return out;
    }
    out.constant = rdf::Term(rdf::Literal::plain(lexical));
    return out;
  }
  fail("expected <iri>, ?var, or \"literal\"");
  return out;  // unreachable
}

}  // namespace

BgpQuery parse_bgp(std::string_view text) {
  BgpQuery q;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    bool last = end >= text.size();
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') {
      if (last) break;
      continue;
    }
    std::size_t i = 0;
    std::vector<PatternTerm> terms;
    try {
      while (true) {
        while (i < trimmed.size() &&
               std::isspace(static_cast<unsigned char>(trimmed[i])))
          ++i;
        if (i >= trimmed.size()) break;
        terms.push_back(parse_term(trimmed, i, lineno, terms.size() < 2));
      }
    } catch (const rdf::Error& e) {
      throw Error(QueryError::BadPattern, e.what(), lineno);
    }
    if (terms.size() != 3)
      throw Error(QueryError::BadPattern,
                  "expected 3 terms, found " + std::to_string(terms.size()),
                  lineno);
    if (terms[1].constant && !rdf::is_iri(*terms[1].constant))
      throw Error(QueryError::BadPattern, "predicate must be an IRI", lineno);
    q.patterns.push_back(TriplePattern{terms[0], terms[1], terms[2]});
    if (last) break;
  }
  if (q.patterns.empty())
    throw Error(QueryError::EmptyQuery, "query has no patterns");
  return q;
}

void TripleStore::bulk_load(const rdf::Graph& g) {
  for (const rdf::Triple& t : g) {
    std::string s = enc(t.s), p = enc(t.p), o = enc(t.o);
    if (!spo_.emplace(Key{s, p, o}, t).second) continue;
    graph_.add(t);
    pos_.emplace(Key{p, o, s}, t);
    osp_.emplace(Key{o, s, p}, t);
  }
}

template <typename Fn>
void TripleStore::scan(const std::map<Key, rdf::Triple>& index,
                       const std::optional<std::string>& k0,
                       const std::optional<std::string>& k1,
                       const std::optional<std::string>& k2, Fn&& fn) const {
  Key lo{k0.value_or(""), k0 ? k1.value_or("") : "",
         (k0 && k1) ? k2.value_or("") : ""};
  for (auto it = index.lower_bound(lo); it != index.end(); ++it) {
    const Key& k = it->first;
    if (k0 && k[0] != *k0) break;
    if (k0 && k1) {
      if (k[1] != *k1) break;
      if (k2 && k[2] != *k2) break;
    } else if (k1 && k[1] != *k1) {
      continue;  // unreachable by index choice; defensive
    }
    fn(it->second);
  }
}

std::vector<rdf::Triple> TripleStore::match(
    const std::optional<rdf::Iri>& s, const std::optional<rdf::Iri>& p,
    const std::optional<rdf::Term>& o) const {
  std::optional<std::string> es, ep, eo;
  if (s) es = enc(*s);
  if (p) ep = enc(*p);
  if (o) eo = enc(*o);
  std::vector<rdf::Triple> out;
  auto take = [&](const rdf::Triple& t) { out.push_back(t); };
  if (es) {
    scan(spo_, es, ep, eo, take);
    if (!ep && eo) {  // s and o bound: OSP has the right prefix
      out.clear();
      scan(osp_, eo, es, std::nullopt, take);
    }
  } else if (ep) {
    scan(pos_, ep, eo, std::nullopt, take);
  } else if (eo) {
    scan(osp_, eo, std::nullopt, std::nullopt, take);
  } else {
    scan(spo_, std::nullopt, std::nullopt, std::nullopt, take);
  }
  // Positions the chosen prefix could not pin are filtered here.
  std::vector<rdf::Triple> filtered;
  filtered.reserve(out.size());
  for (rdf::Triple& t : out) {
    if (s && !(t.s == *s)) continue;
    if (p && !(t.p == *p)) continue;
    if (o && !(t.o == *o)) continue;
    filtered.push_back(std::move(t));
  }
  return filtered;
}

std::size_t TripleStore::count(const std::optional<rdf::Iri>& s,
                               const std::optional<rdf::Iri>& p,
                               const std::optional<rdf::Term>& o) const {
  return match(s, p, o).size();
}

namespace {

std::optional<rdf::Term> resolve(const PatternTerm& pt, const Binding& row) {
  if (!pt.is_var()) return pt.constant;
  auto it = row.find(pt.var);
  if (it != row.end()) return it->second;
  return std::nullopt;
}

bool bind_var(Binding& row, const PatternTerm& pt, const rdf::Term& value) {
  if (!pt.is_var()) return true;
  auto [it, inserted] = row.try_emplace(pt.var, value);
  return inserted || it->second == value;
}

}  // namespace

std::vector<Binding> evaluate(const TripleStore& store, const BgpQuery& q) {
  // Static join order from constant-position counts (D-series contract).
  std::vector<std::size_t> order(q.patterns.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<std::size_t> cost(q.patterns.size());
  for (std::size_t i = 0; i < q.patterns.size(); ++i) {
    const TriplePattern& p = q.patterns[i];
    std::optional<rdf::Iri> cs, cp;
    std::optional<rdf::Term> co;
    if (!p.s.is_var() && rdf::is_iri(*p.s.constant))
      cs = rdf::as_iri(*p.s.constant);
    if (!p.p.is_var() && rdf::is_iri(*p.p.constant))
      cp = rdf::as_iri(*p.p.constant);
    if (!p.o.is_var()) co = p.o.constant;
    cost[i] = store.count(cs, cp, co);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost[a] < cost[b]; });

  std::vector<Binding> rows{{}};
  for (std::size_t idx : order) {
    const TriplePattern& p = q.patterns[idx];
    std::vector<Binding> next;
    for (const Binding& row : rows) {
      std::optional<rdf::Term> ts = resolve(p.s, row);
      std::optional<rdf::Term> tp = resolve(p.p, row);
      std::optional<rdf::Term> to = resolve(p.o, row);
      // A variable bound to a literal can never match a subject/predicate.
      if ((ts && !rdf::is_iri(*ts)) || (tp && !rdf::is_iri(*tp))) continue;
      std::optional<rdf::Iri> ms, mp;
      if (ts) ms = rdf::as_iri(*ts);
      if (tp) mp = rdf::as_iri(*tp);
      for (const rdf::Triple& t : store.match(ms, mp, to)) {
        Binding extended = row;
        if (!bind_var(extended, p.s, rdf::Term(t.s))) continue;
        if (!bind_var(extended, p.p, rdf::Term(t.p))) continue;
        if (!bind_var(extended, p.o, t.o)) continue;
        next.push_back(std::move(extended));
      }
    }
    rows = std::move(next);
  }

  std::vector<std::string> vars = q.variables();
  auto key = [&](const Binding& b) {
    std::string k;
    for (const std::string& v : vars) {
      auto it = b.find(v);
      if (it != b.end()) k += rdf::term_ntriples(it->second);
      k.push_back('\t');
    }
    return k;
  };
  std::sort(rows.begin(), rows.end(),
            [&](const Binding& a, const Binding& b) { return key(a) < key(b); });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::string bindings_tsv(const BgpQuery& q, const std::vector<Binding>& rows) {
  std::vector<std::string> vars = q.variables();
  std::ostringstream os;
  for (std::size_t i = 0; i < vars.size(); ++i)
    os << (i ? "\t" : "") << "?" << vars[i];
  os << '\n';
  for (const Binding& row : rows) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i) os << '\t';
      auto it = row.find(vars[i]);
      if (it != row.end()) os << rdf::term_ntriples(it->second);
    }
    os << '\n';
  }
  return os.str();
}

Stats stats(const TripleStore& store) {
  Stats s;
  s.total = store.size();
  const rdf::Iri type("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
  const rdf::Iri see_also("http://www.w3.org/2000/01/rdf-schema#seeAlso");
  std::set<std::string> typed;
  std::map<std::string, std::size_t> classes;
  static const std::pair<const char*, const char*> kBuckets[] = {
      {"viaf", "viaf.org"},
      {"ulan", "vocab.getty.edu/ulan"},
      {"aat", "vocab.getty.edu/aat"},
      {"geonames", "geonames.org"},
      {"wikidata", "wikidata.org"},
      {"dbpedia", "dbpedia.org"},
  };
  std::map<std::string, std::size_t> buckets;
  for (const auto& [name, marker] : kBuckets) {
    (void)marker;
    buckets[name] = 0;
  }
  std::size_t other = 0;
  for (const rdf::Triple& t : store.graph()) {
    if (t.p == type && rdf::is_iri(t.o)) {
      typed.insert(t.s.str());
      ++classes[rdf::as_iri(t.o).str()];
    } else if (t.p == see_also && rdf::is_iri(t.o)) {
      const std::string& target = rdf::as_iri(t.o).str();
      bool hit = false;
      for (const auto& [name, marker] : kBuckets) {
        if (target.find(marker) != std::string::npos) {
          ++buckets[name];
          hit = true;
          break;
        }
      }
      if (!hit) ++other;
    }
  }
  s.typed_subjects = typed.size();
  s.class_counts.assign(classes.begin(), classes.end());
  for (const auto& [name, marker] : kBuckets) {
    (void)marker;
    s.seealso_buckets.emplace_back(name, buckets[name]);
  }
  s.seealso_buckets.emplace_back("other", other);
  return s;
}

std::string stats_text(const Stats& s) {
  std::ostringstream os;
  os << "total triples\t" << s.total << '\n';
  os << "typed subjects\t" << s.typed_subjects << '\n';
  for (const auto& [cls, n] : s.class_counts)
    os << "class\t" << cls << '\t' << n << '\n';
  for (const auto& [bucket, n] : s.seealso_buckets)
    os << "seealso\t" << bucket << '\t' << n << '\n';
  return os.str();
}

}  // namespace schedalod::store
