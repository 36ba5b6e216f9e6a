#include "schedalod/validation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "schedalod/terms.hpp"

namespace schedalod::validation {
namespace {

using terms::T;

std::vector<rdf::Iri> subjects_typed(const rdf::Graph& g, const rdf::Iri& cls) {
  std::vector<rdf::Iri> out;
  for (const rdf::Triple& t : g)
    if (t.p == T("rdf:type") && rdf::is_iri(t.o) && rdf::as_iri(t.o) == cls)
      out.push_back(t.s);
  return out;
}

bool is_typed(const rdf::Graph& g, const rdf::Iri& node, const rdf::Iri& cls) {
  return g.contains(rdf::Triple{node, T("rdf:type"), cls});
}

std::vector<rdf::Term> objs(const rdf::Graph& g, const rdf::Iri& s,
                            const rdf::Iri& p) {
  std::vector<rdf::Term> out;
  for (const rdf::Triple& t : g.match(s, p, std::nullopt)) out.push_back(t.o);
  return out;
}

std::vector<rdf::Iri> iri_objs(const rdf::Graph& g, const rdf::Iri& s,
                               const rdf::Iri& p) {
  std::vector<rdf::Iri> out;
  for (const rdf::Triple& t : g.match(s, p, std::nullopt))
    if (rdf::is_iri(t.o)) out.push_back(rdf::as_iri(t.o));
  return out;
}

// Smallest node of every strongly connected component that contains a cycle
// (size > 1, or a self-loop). Iterative Tarjan; graphs are edge maps.
std::vector<std::string> cyclic_scc_representatives(
    const std::map<std::string, std::set<std::string>>& edges) {
  std::map<std::string, int> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::string> reps;
  int next_index = 0;

  struct Frame {
    std::string node;
    std::set<std::string>::const_iterator it, end;
  };

  std::set<std::string> nodes;
  for (const auto& [from, tos] : edges) {
    nodes.insert(from);
    nodes.insert(tos.begin(), tos.end());
  }
  static const std::set<std::string> kEmpty;

  for (const std::string& start : nodes) {
    if (index.count(start)) continue;
    std::vector<Frame> frames;
    auto push_node = [&](const std::string& n) {
      index[n] = low[n] = next_index++;
      stack.push_back(n);
      on_stack.insert(n);
      auto eit = edges.find(n);
      const std::set<std::string>& tos = eit == edges.end() ? kEmpty : eit->second;
      frames.push_back(Frame{n, tos.begin(), tos.end()});
    };
    push_node(start);
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.it != f.end) {
        const std::string& to = *f.it;
        ++f.it;
        if (!index.count(to)) {
          push_node(to);
        } else if (on_stack.count(to)) {
          low[f.node] = std::min(low[f.node], index[to]);
        }
      } else {
        std::string done = f.node;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().node] = std::min(low[frames.back().node], low[done]);
        if (low[done] == index[done]) {
          std::vector<std::string> comp;
          while (true) {
            std::string n = stack.back();
            stack.pop_back();
            on_stack.erase(n);
            comp.push_back(n);
            if (n == done) break;
          }
          bool cyclic = comp.size() > 1;
          if (!cyclic) {
            auto eit = edges.find(done);
            cyclic = eit != edges.end() && eit->second.count(done) > 0;
          }
          if (cyclic) reps.push_back(*std::min_element(comp.begin(), comp.end()));
        }
      }
    }
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

struct Auditor {
  const rdf::Graph& g;
  const std::string& base;
  std::vector<Violation> out;

  void flag(const char* rule, const rdf::Iri& node, std::string message) {
    out.push_back(Violation{rule, node, std::move(message)});
  }

  void v01() {
    for (const rdf::Iri& e : subjects_typed(g, T("fentry:FEntry")))
      if (g.match(e, T("fentry:describes"), std::nullopt).empty())
        flag("V01", e, "F entry describes nothing");
  }

  void v02() {
    for (const rdf::Iri& s : subjects_typed(g, T("fentry:Shot"))) {
      std::size_t photos = 0;
      for (const rdf::Iri& o : iri_objs(g, s, T("frbr:realizationOf")))
        if (is_typed(g, o, T("fentry:Photograph"))) ++photos;
      if (photos != 1)
        flag("V02", s,
             "shot realizes " + std::to_string(photos) +
                 " photographs, expected exactly 1");
    }
  }

  void v03() {
    std::map<std::string, std::set<std::string>> inverse_holders;
    for (const rdf::Triple& t : g)
      if (t.p == T("pro:holdsRoleInTime") && rdf::is_iri(t.o))
        inverse_holders[rdf::as_iri(t.o).str()].insert(t.s.str());
    for (const rdf::Iri& rn : subjects_typed(g, T("pro:RoleInTime"))) {
      std::size_t roles = objs(g, rn, T("pro:withRole")).size();
      std::size_t contexts = objs(g, rn, T("pro:relatesTo")).size();
      std::set<std::string> holders;
      for (const rdf::Iri& h : iri_objs(g, rn, T("pro:isHeldBy")))
        holders.insert(h.str());
      if (auto it = inverse_holders.find(rn.str()); it != inverse_holders.end())
        holders.insert(it->second.begin(), it->second.end());
      if (roles != 1 || contexts != 1 || holders.empty())
        flag("V03", rn,
             "role-in-time needs exactly one role (" + std::to_string(roles) +
                 "), one context (" + std::to_string(contexts) +
                 "), and a holder (" + std::to_string(holders.size()) + ")");
    }
  }

  void v04() {
    for (const rdf::Iri& act : subjects_typed(g, T("hico:InterpretationAct"))) {
      std::size_t types = objs(g, act, T("hico:hasInterpretationType")).size();
      std::size_t criteria =
          objs(g, act, T("hico:hasInterpretationCriterion")).size();
      std::size_t sources = objs(g, act, T("hico:isExtractedFrom")).size();
      if (types < 1 || criteria < 1 || sources != 1)
        flag("V04", act,
             "interpretation act needs a type, a criterion, and exactly one "
             "source (found " +
                 std::to_string(types) + "/" + std::to_string(criteria) + "/" +
                 std::to_string(sources) + ")");
    }
  }

  void v05() {
    for (const rdf::Iri& rn : subjects_typed(g, T("pro:RoleInTime"))) {
      bool photographer = g.contains(
          rdf::Triple{rn, T("pro:withRole"), T("scor:photographer")});
      bool publisher =
          g.contains(rdf::Triple{rn, T("pro:withRole"), T("pro:publisher")});
      if (!photographer && !publisher) continue;
      for (const rdf::Iri& target : iri_objs(g, rn, T("pro:relatesTo"))) {
        if (photographer && !is_typed(g, target, T("fentry:Shot")))
          flag("V05", rn, "photographer role relates to a non-shot node");
        if (publisher &&
            !is_typed(g, target, T("fabio:AnalogManifestation")) &&
            !is_typed(g, target, T("fabio:DigitalManifestation")))
          flag("V05", rn, "publisher role relates to a non-manifestation node");
      }
    }
  }

  void v06() {
    for (const rdf::Triple& t : g) {
      if (t.p != T("hico:isExtractedFrom")) continue;
      bool ok = rdf::is_iri(t.o) &&
                (is_typed(g, rdf::as_iri(t.o), T("fabio:MetadataDocument")) ||
                 is_typed(g, rdf::as_iri(t.o), T("fabio:Expression")));
      if (!ok)
        flag("V06", t.s,
             "interpretation source is not a metadata document or expression");
    }
  }

  void v07() {
    rdf::Iri marker(base + "term/zeri-preferred-attribution");
    std::map<std::string, std::pair<rdf::Iri, std::set<std::string>>> preferred;
    for (const rdf::Triple& t : g) {
      if (t.p != T("prov:wasGeneratedBy") || !rdf::is_iri(t.o)) continue;
      const rdf::Iri& act = rdf::as_iri(t.o);
      if (!g.contains(rdf::Triple{act, T("hico:hasInterpretationType"), marker}))
        continue;
      auto [it, inserted] = preferred.try_emplace(
          t.s.str(), std::make_pair(t.s, std::set<std::string>{}));
      (void)inserted;
      it->second.second.insert(act.str());
    }
    for (const auto& [node_str, entry] : preferred) {
      (void)node_str;
      if (entry.second.size() > 1)
        flag("V07", entry.first,
             std::to_string(entry.second.size()) +
                 " preferred attributions on one node");
    }
  }

  std::vector<rdf::Iri> influence_nodes() {
    std::set<std::string> seen;
    std::vector<rdf::Iri> out;
    auto take = [&](const rdf::Iri& n) {
      if (seen.insert(n.str()).second) out.push_back(n);
    };
    for (const char* cls :
         {"oaentry:Cartoon", "oaentry:Copy", "oaentry:Derivation",
          "oaentry:Drawing"})
      for (const rdf::Iri& s : subjects_typed(g, T(cls))) take(s);
    for (const rdf::Triple& t : g)
      if (t.p == T("oaentry:hasFormerWork") || t.p == T("oaentry:hasConceived"))
        take(t.s);
    std::sort(out.begin(), out.end());
    return out;
  }

  void v08_v09() {
    std::map<std::string, std::set<std::string>> work_edges;
    for (const rdf::Iri& inf : influence_nodes()) {
      std::vector<rdf::Iri> former = iri_objs(g, inf, T("oaentry:hasFormerWork"));
      std::vector<rdf::Iri> conceived =
          iri_objs(g, inf, T("oaentry:hasConceived"));
      if (former.size() != 1 || conceived.empty())
        flag("V08", inf,
             "influence needs exactly one former work (" +
                 std::to_string(former.size()) + ") and a conceived work (" +
                 std::to_string(conceived.size()) + ")");
      bool self = false;
      for (const rdf::Iri& f : former)
        for (const rdf::Iri& c : conceived)
          if (f == c) self = true;
      if (self) {
        flag("V09", inf, "work influences itself");
        continue;
      }
      for (const rdf::Iri& c : conceived)
        for (const rdf::Iri& f : former)
          work_edges[c.str()].insert(f.str());
    }
    for (const std::string& rep : cyclic_scc_representatives(work_edges))
      flag("V09", rdf::Iri(rep), "former-work relation forms a cycle");
  }

  void v10() {
    std::map<std::string, std::set<std::string>> edges;
    for (const rdf::Triple& t : g)
      if (t.p == T("crm:P89_falls_within") && rdf::is_iri(t.o))
        edges[t.s.str()].insert(rdf::as_iri(t.o).str());
    for (const std::string& rep : cyclic_scc_representatives(edges))
      flag("V10", rdf::Iri(rep), "place containment chain forms a cycle");
  }

  void v11() {
    for (const rdf::Iri& tr :
         subjects_typed(g, T("crm:E10_Transfer_of_Custody"))) {
      std::size_t parties =
          objs(g, tr, T("crm:P28_custody_surrendered_by")).size() +
          objs(g, tr, T("crm:P29_custody_received_by")).size();
      std::size_t objects =
          objs(g, tr, T("crm:P30_transferred_custody_of")).size();
      if (parties < 1 || objects != 1)
        flag("V11", tr,
             "custody transfer needs a party and exactly one object (found " +
                 std::to_string(parties) + "/" + std::to_string(objects) + ")");
    }
  }

  void v12() {
    std::set<std::string> checked;
    for (const rdf::Triple& t : g) {
      if (t.s.str().rfind(base, 0) != 0) continue;
      if (!checked.insert(t.s.str()).second) continue;
      bool labelled = false;
      for (const rdf::Triple& lt : g.match(t.s, T("rdfs:label"), std::nullopt))
        if (!rdf::is_iri(lt.o) && rdf::as_literal(lt.o).lang() == "it")
          labelled = true;
      if (!labelled) flag("V12", t.s, "minted resource lacks an Italian label");
    }
  }
};

}  // namespace

ValidationReport validate(const rdf::Graph& g, const std::string& base) {
  Auditor a{g, base, {}};
  a.v01();
  a.v02();
  a.v03();
  a.v04();
  a.v05();
  a.v06();
  a.v07();
  a.v08_v09();
  a.v10();
  a.v11();
  a.v12();
  std::sort(a.out.begin(), a.out.end(),
            [](const Violation& x, const Violation& y) {
              if (x.rule != y.rule) return x.rule < y.rule;
              if (!(x.node == y.node)) return x.node < y.node;
              return x.message < y.message;
            });
  ValidationReport report;
  report.violations = std::move(a.out);
  for (const Violation& v : report.violations) ++report.counts[v.rule];
  return report;
}

std::string report_tsv(const ValidationReport& report) {
  std::ostringstream os;
  os << "rule\tnode\tmessage\n";
  for (const Violation& v : report.violations)
    os << v.rule << '\t' << v.node.str() << '\t' << v.message << '\n';
  return os.str();
}

}  // namespace schedalod::validation
