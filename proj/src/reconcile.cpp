#include "schedalod/reconcile.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "schedalod/iri_policy.hpp"
#include "schedalod/terms.hpp"
#include "schedalod/text.hpp"

namespace schedalod::reconcile {
namespace {

std::vector<std::string> tsv_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cells;
}

std::optional<int> parse_year(const std::string& cell, std::size_t lineno) {
  std::string v = text::trim(cell);
  if (v.empty()) return std::nullopt;
  std::size_t i = v[0] == '-' ? 1 : 0;
  if (i == v.size())
    throw Error(SnapshotError::BadYear, "bad year '" + cell + "'", lineno);
  for (; i < v.size(); ++i)
    if (v[i] < '0' || v[i] > '9')
      throw Error(SnapshotError::BadYear, "bad year '" + cell + "'", lineno);
  return std::stoi(v);
}

constexpr const char* kExternalNames[] = {"viaf",     "ulan", "wikidata",
                                          "geonames", "aat",  "dbpedia"};

// Names are compared in slug space so word order, case and accents do not
// dominate the distance.
std::string compare_key(const std::string& name) {
  std::string t = text::trim(name);
  if (t.empty()) return "";
  try {
    return iri::slugify(t);
  } catch (const iri::Error&) {
    return "";
  }
}

}  // namespace

std::vector<AuthorityRecord> parse_snapshot(std::string_view tsv) {
  std::vector<AuthorityRecord> records;
  std::set<std::string> ids;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    std::size_t end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    std::string raw(tsv.substr(start, end - start));
    start = end + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string trimmed = text::trim(raw);
    if (trimmed.empty() || trimmed[0] == '#') {
      if (start > tsv.size()) break;
      continue;
    }
    std::vector<std::string> cells = tsv_cells(raw);
    for (std::string& c : cells) c = text::trim(c);
    if (!header_seen) {
      static const std::vector<std::string> kHeader = {
          "id",         "kind",       "preferred_name", "aliases",
          "birth_year", "death_year", "viaf",           "ulan",
          "wikidata",   "geonames",   "aat",            "dbpedia"};
      if (cells != kHeader)
        throw Error(SnapshotError::BadHeader, "unexpected snapshot header",
                    lineno);
      header_seen = true;
      continue;
    }
    if (cells.size() > 12)
      throw Error(SnapshotError::BadRow, "too many cells", lineno);
    cells.resize(12);
    AuthorityRecord rec;
    rec.id = cells[0];
    rec.kind = text::normalize_key(cells[1]);
    rec.preferred_name = cells[2];
    if (rec.id.empty() || rec.preferred_name.empty())
      throw Error(SnapshotError::BadRow, "id and preferred_name are required",
                  lineno);
    if (rec.kind != "person" && rec.kind != "place" && rec.kind != "term")
      throw Error(SnapshotError::BadRow, "unknown kind '" + cells[1] + "'",
                  lineno);
    if (!ids.insert(rec.id).second)
      throw Error(SnapshotError::DuplicateId, "duplicate id '" + rec.id + "'",
                  lineno);
    for (const std::string& alias : text::split(cells[3], '|')) {
      std::string a = text::trim(alias);
      if (!a.empty()) rec.aliases.push_back(a);
    }
    rec.birth_year = parse_year(cells[4], lineno);
    rec.death_year = parse_year(cells[5], lineno);
    for (std::size_t i = 0; i < 6; ++i)
      if (!cells[6 + i].empty())
        rec.external.emplace_back(kExternalNames[i], cells[6 + i]);
    records.push_back(std::move(rec));
    if (start > tsv.size()) break;
  }
  if (!header_seen)
    throw Error(SnapshotError::BadHeader, "empty snapshot", lineno);
  return records;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  if (a == b) return 1.0;
  std::size_t la = a.size(), lb = b.size();
  std::size_t window = std::max(la, lb) / 2;
  window = window > 0 ? window - 1 : 0;
  std::vector<bool> ma(la, false), mb(lb, false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < la; ++i) {
    std::size_t lo = i > window ? i - window : 0;
    std::size_t hi = std::min(lb, i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (mb[j] || a[i] != b[j]) continue;
      ma[i] = mb[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;
  std::size_t transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < la; ++i) {
    if (!ma[i]) continue;
    while (!mb[k]) ++k;
    if (a[i] != b[k]) ++transpositions;
    ++k;
  }
  double m = static_cast<double>(matches);
  double jaro = (m / la + m / lb + (m - transpositions / 2.0) / m) / 3.0;
  std::size_t prefix = 0;
  for (std::size_t i = 0; i < std::min({la, lb, std::size_t{4}}); ++i) {
    if (a[i] != b[i]) break;
    ++prefix;
  }
  return jaro + prefix * 0.1 * (1.0 - jaro);
}

std::vector<LocalEntity> collect_entities(const rdf::Graph& g,
                                          const std::string& base) {
  std::vector<LocalEntity> out;
  std::set<std::string> seen;
  const rdf::Iri& label_p = terms::T("rdfs:label");
  for (const rdf::Triple& t : g) {
    const std::string& s = t.s.str();
    if (s.rfind(base, 0) != 0) continue;
    std::string rest = s.substr(base.size());
    std::size_t slash = rest.find('/');
    if (slash == std::string::npos) continue;
    std::string prefix = rest.substr(0, slash);
    std::string leaf = rest.substr(slash + 1);
    if (leaf.empty() || leaf.find('/') != std::string::npos) continue;
    std::string kind;
    if (prefix == "person" || prefix == "group")
      kind = "person";
    else if (prefix == "place")
      kind = "place";
    else if (prefix == "term")
      kind = "term";
    else
      continue;
    if (!seen.insert(s).second) continue;
    LocalEntity e{t.s, kind, {}, {}};
    for (const rdf::Triple& lt : g.match(t.s, label_p, std::nullopt))
      if (!rdf::is_iri(lt.o))
        e.names.push_back(rdf::as_literal(lt.o).lexical());
    std::string from_slug = leaf;
    std::replace(from_slug.begin(), from_slug.end(), '-', ' ');
    e.names.push_back(from_slug);
    for (const rdf::Triple& rt :
         g.match(t.s, terms::T("pro:holdsRoleInTime"), std::nullopt)) {
      if (!rdf::is_iri(rt.o)) continue;
      for (const rdf::Triple& at :
           g.match(rdf::as_iri(rt.o), terms::T("tv:atTime"), std::nullopt)) {
        if (!rdf::is_iri(at.o)) continue;
        for (const char* p :
             {"crm:P82a_begin_of_the_begin", "crm:P82b_end_of_the_end"}) {
          for (const rdf::Triple& yt :
               g.match(rdf::as_iri(at.o), terms::T(p), std::nullopt)) {
            if (rdf::is_iri(yt.o)) continue;
            const std::string& lex = rdf::as_literal(yt.o).lexical();
            if (lex.size() == 4 &&
                std::all_of(lex.begin(), lex.end(),
                            [](char ch) { return ch >= '0' && ch <= '9'; }))
              e.activity_years.push_back(std::stoi(lex));
          }
        }
      }
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(),
            [](const LocalEntity& x, const LocalEntity& y) {
              return x.iri.str() < y.iri.str();
            });
  return out;
}

namespace {

double date_compat(const LocalEntity& e, const AuthorityRecord& a) {
  if (e.activity_years.empty()) return 1.0;
  if (!a.birth_year && !a.death_year) return 1.0;
  int lo = a.birth_year ? *a.birth_year - 10 : -1000000;
  int hi = a.death_year ? *a.death_year + 10 : 1000000;
  for (int y : e.activity_years)
    if (y >= lo && y <= hi) return 1.0;
  return 0.0;
}

}  // namespace

ReconcileResult reconcile(const rdf::Graph& g,
                          const std::vector<AuthorityRecord>& snapshot,
                          const std::string& base, double threshold,
                          double margin) {
  ReconcileResult result;
  const rdf::Iri& see_also = terms::T("rdfs:seeAlso");
  for (const LocalEntity& e : collect_entities(g, base)) {
    std::vector<std::pair<std::string, std::string>> keys;  // key, source name
    for (const std::string& n : e.names) {
      std::string k = compare_key(n);
      if (!k.empty()) keys.emplace_back(k, n);
    }
    if (keys.empty()) continue;
    double best = 0, second = 0;
    const AuthorityRecord* best_rec = nullptr;
    const AuthorityRecord* second_rec = nullptr;
    std::string best_name;
    for (const AuthorityRecord& a : snapshot) {
      if (a.kind != e.kind) continue;
      double name_sim = 0;
      std::string name_used;
      std::vector<std::string> cand_keys;
      cand_keys.push_back(compare_key(a.preferred_name));
      for (const std::string& al : a.aliases)
        cand_keys.push_back(compare_key(al));
      for (const auto& [key, source_name] : keys) {
        for (const std::string& ck : cand_keys) {
          if (ck.empty()) continue;
          double s = jaro_winkler(key, ck);
          if (s > name_sim) {
            name_sim = s;
            name_used = source_name;
          }
        }
      }
      double score = 0.8 * name_sim + 0.2 * date_compat(e, a);
      if (score > best) {
        second = best;
        second_rec = best_rec;
        best = score;
        best_rec = &a;
        best_name = name_used;
      } else if (score > second) {
        second = score;
        second_rec = &a;
      }
    }
    if (!best_rec || best < threshold) continue;
    Match m{e.iri, e.kind, best_name, best_rec->id, best,
            second_rec ? second_rec->id : std::string{}, second};
    if (best - second >= margin) {
      for (const auto& [name, ext] : best_rec->external) {
        (void)name;
        result.links.add(rdf::Triple{e.iri, see_also, rdf::Iri(ext)});
      }
      result.accepted.push_back(std::move(m));
    } else {
      result.review.push_back(std::move(m));
    }
  }
  return result;
}

}  // namespace schedalod::reconcile
