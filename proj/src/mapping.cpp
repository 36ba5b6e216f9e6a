#include "schedalod/mapping.hpp"

#include <map>
#include <optional>
#include <set>

#include "schedalod/terms.hpp"
#include "schedalod/text.hpp"

namespace schedalod::mapping {
namespace {

using record::EntryRecord;
using record::FieldGroup;
using record::FieldOccurrence;
using record::GroupRepetition;
using record::RecordKind;
using terms::T;

rdf::Literal lit_it(const std::string& s) { return rdf::Literal::tagged(s, "it"); }
rdf::Literal lit_en(const std::string& s) { return rdf::Literal::tagged(s, "en"); }
rdf::Literal lit(const std::string& s) { return rdf::Literal::plain(s); }

struct Manifestation {
  std::string facet;     // slug used in the IRI path
  std::string value_it;  // source value, used in labels
  rdf::Iri iri;
  bool digital = false;
};

struct ItemNode {
  std::string facet;  // facet of the manifestation it exemplifies ("" for OA)
  rdf::Iri iri;
  std::size_t identifiers = 0;
  std::size_t acquisitions = 0;
  std::size_t custodies = 0;
  std::size_t moves = 0;
};

struct Ctx {
  const EntryRecord& r;
  const MappingTable& table;
  iri::IriPolicy& policy;
  rdf::Graph g;
  std::vector<record::Warning> warnings;

  std::string sid;          // described subject id (SID field, else record id)
  std::string work_title;   // first title, else subject caption, may be empty
  rdf::Iri entry;
  rdf::Iri expression;
  std::optional<rdf::Iri> work;      // photo (F) / artwork (OA)
  std::optional<rdf::Iri> shot;      // F only
  std::optional<rdf::Iri> artwork;   // referenced artwork (F via OAID; OA = work)
  std::optional<rdf::Iri> artwork_item;
  std::vector<Manifestation> manifs;
  std::vector<ItemNode> items;
  std::map<std::string, std::size_t> role_counters;  // target IRI -> count
  std::set<std::string> preferred_nodes;             // nodes with a preferred act
  std::size_t interp_counter = 0;
  std::size_t entry_identifiers = 0;
  bool warned_expression_fallback = false;

  Ctx(const EntryRecord& rec, const MappingTable& tbl, iri::IriPolicy& pol)
      : r(rec),
        table(tbl),
        policy(pol),
        sid(rec.first("SID") ? text::trim(rec.first("SID")->value) : rec.id),
        entry(rec.kind == RecordKind::F ? pol.fentry(rec.id) : pol.oaentry(rec.id)),
        expression(iri::sub(entry, "expression")) {
    if (const FieldGroup* tit = rec.group("TIT")) {
      for (const GroupRepetition& rep : tit->repetitions) {
        if (const FieldOccurrence* t = rep.first("TITT")) {
          work_title = text::trim(t->value);
          break;
        }
      }
    }
    if (work_title.empty() && rec.first("SGTI"))
      work_title = text::trim(rec.first("SGTI")->value);
  }
};

void warn(Ctx& c, const std::string& code, const std::string& message) {
  c.warnings.push_back({c.r.id, code, message});
}

void add(Ctx& c, const rdf::Iri& s, const rdf::Iri& p, rdf::Term o) {
  c.g.add(rdf::Triple{s, p, std::move(o)});
}

void type_node(Ctx& c, const rdf::Iri& n, const rdf::Iri& cls) {
  add(c, n, T("rdf:type"), cls);
}

void label_it(Ctx& c, const rdf::Iri& n, const std::string& text) {
  add(c, n, T("rdfs:label"), lit_it(text));
}

void label_en(Ctx& c, const rdf::Iri& n, const std::string& text) {
  add(c, n, T("rdfs:label"), lit_en(text));
}

std::string kind_str(const Ctx& c) { return record::to_string(c.r.kind); }

// "fotografia \"T\"" / "fotografia 72486"; mirrored for works of art.
std::string photo_ref(const Ctx& c) {
  if (c.work_title.empty()) return "fotografia " + c.sid;
  return "fotografia \"" + c.work_title + "\"";
}

std::string opera_ref(const Ctx& c) {
  if (c.work_title.empty()) return "opera d'arte " + c.sid;
  return "opera \"" + c.work_title + "\"";
}

// "della fotografia …" / "dell'opera …", for label composition.
std::string della(const Ctx& c) {
  if (c.r.kind == RecordKind::F) return "della " + photo_ref(c);
  if (c.work_title.empty()) return "dell'opera d'arte " + c.sid;
  return "dell'opera \"" + c.work_title + "\"";
}

std::string cap_first(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z')
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

// --- node minting -----------------------------------------------------------

// Vocabulary-backed values share the translated slug directly so synonyms
// converge on one node; everything else goes through the collision pool.
rdf::Iri term_node(Ctx& c, const std::string& raw) {
  std::string value = text::trim(raw);
  const VocabEntry* v = c.table.vocab(value);
  rdf::Iri node = v ? rdf::Iri(c.policy.base() + "term/" + v->slug)
                    : c.policy.slugged(iri::Kind::Term, value);
  type_node(c, node, T("crm:E55_Type"));
  label_it(c, node, value);
  if (v && !v->label_en.empty()) label_en(c, node, v->label_en);
  return node;
}

// Converter-defined classification terms with fixed slugs and both labels.
rdf::Iri fixed_term(Ctx& c, const char* slug, const char* it_label,
                    const char* en_label) {
  rdf::Iri node(c.policy.base() + std::string("term/") + slug);
  type_node(c, node, T("crm:E55_Type"));
  label_it(c, node, it_label);
  label_en(c, node, en_label);
  return node;
}

rdf::Iri agent_node(Ctx& c, const std::string& raw, bool person) {
  std::string name = text::trim(raw);
  rdf::Iri node =
      c.policy.slugged(person ? iri::Kind::Person : iri::Kind::Group, name);
  type_node(c, node, T("foaf:Agent"));
  type_node(c, node, person ? T("crm:E21_Person") : T("crm:E74_Group"));
  label_it(c, node, name);
  return node;
}

bool person_kind(const FieldOccurrence* kind_field, bool default_person) {
  if (!kind_field) return default_person;
  std::string k = text::normalize_key(kind_field->value);
  if (k == "persona" || k == "person") return true;
  if (k == "gruppo" || k == "group" || k == "ente") return false;
  return default_person;
}

rdf::Iri place_node(Ctx& c, const std::string& raw) {
  std::string name = text::trim(raw);
  rdf::Iri node = c.policy.slugged(iri::Kind::Place, name);
  type_node(c, node, T("crm:E53_Place"));
  label_it(c, node, name);
  return node;
}

rdf::Iri event_node(Ctx& c, const std::string& raw) {
  std::string name = text::trim(raw);
  rdf::Iri node = c.policy.slugged(iri::Kind::Event, name);
  type_node(c, node, T("crm:E5_Event"));
  label_it(c, node, name);
  return node;
}

rdf::Iri document_node(Ctx& c, const std::string& raw) {
  std::string name = text::trim(raw);
  rdf::Iri node = c.policy.slugged(iri::Kind::Document, name);
  type_node(c, node, T("crm:E31_Document"));
  label_it(c, node, name);
  return node;
}

// Extracts at most two four-digit years: "1926-1932", "ante 1940",
// "post 1950", "1989", "2012-11-04" (date collapses to its year).
struct YearSpan {
  std::optional<std::string> begin;
  std::optional<std::string> end;
};

YearSpan parse_year_span(const std::string& value) {
  std::vector<std::string> runs;
  std::size_t i = 0;
  while (i < value.size()) {
    if (value[i] >= '0' && value[i] <= '9') {
      std::size_t j = i;
      while (j < value.size() && value[j] >= '0' && value[j] <= '9') ++j;
      if (j - i == 4) runs.push_back(value.substr(i, 4));
      i = j;
    } else {
      ++i;
    }
  }
  std::string key = text::normalize_key(value);
  YearSpan span;
  if (runs.size() == 1) {
    if (key.rfind("ante ", 0) == 0) {
      span.end = runs[0];
    } else if (key.rfind("post ", 0) == 0) {
      span.begin = runs[0];
    } else {
      span.begin = runs[0];
      span.end = runs[0];
    }
  } else if (runs.size() == 2) {
    span.begin = runs[0];
    span.end = runs[1];
  }
  return span;
}

rdf::Iri timespan_node(Ctx& c, const std::string& raw) {
  std::string value = text::trim(raw);
  rdf::Iri node = c.policy.slugged(iri::Kind::Timespan, value);
  type_node(c, node, T("crm:E52_Time-Span"));
  label_it(c, node, value);
  add(c, node, T("crm:P3_has_note"), lit(value));
  YearSpan span = parse_year_span(value);
  if (span.begin)
    add(c, node, T("crm:P82a_begin_of_the_begin"),
        rdf::Literal::typed(*span.begin, terms::xsd_gyear()));
  if (span.end)
    add(c, node, T("crm:P82b_end_of_the_end"),
        rdf::Literal::typed(*span.end, terms::xsd_gyear()));
  return node;
}

// --- entry skeleton ---------------------------------------------------------

void entry_identifier(Ctx& c, const rdf::Iri& owner, std::size_t n,
                      const std::string& value, const char* kind_slug,
                      const char* kind_it, const char* kind_en) {
  rdf::Iri idn = iri::subn(owner, "identifier", n);
  type_node(c, idn, T("crm:E42_Identifier"));
  add(c, owner, T("crm:P1_is_identified_by"), idn);
  add(c, owner, T("crm:P140i_was_attributed_by"), idn);
  add(c, idn, T("crm:P2_has_type"), fixed_term(c, kind_slug, kind_it, kind_en));
  label_it(c, idn, value);
}

rdf::Iri role_in_time(Ctx& c, const rdf::Iri& target, const rdf::Iri& agent,
                      const std::string& agent_name, const rdf::Iri& role,
                      const std::string& role_label,
                      const FieldOccurrence* date) {
  std::size_t n = ++c.role_counters[target.str()];
  rdf::Iri rn = iri::subn(target, "role", n);
  type_node(c, rn, T("pro:RoleInTime"));
  add(c, rn, T("pro:withRole"), role);
  add(c, rn, T("pro:relatesTo"), target);
  add(c, rn, T("pro:isHeldBy"), agent);
  add(c, agent, T("pro:holdsRoleInTime"), rn);
  if (date) add(c, rn, T("tv:atTime"), timespan_node(c, date->value));
  label_it(c, rn, agent_name + " (" + role_label + ")");
  return rn;
}

bool truthy(const FieldOccurrence* f) {
  if (!f) return false;
  std::string v = text::normalize_key(f->value);
  return v == "si" || v == "sì" || v == "yes" || v == "true" || v == "1";
}

rdf::Iri interpretation_act(Ctx& c, const rdf::Iri& attributed,
                            const std::vector<rdf::Iri>& type_terms,
                            const std::vector<const FieldOccurrence*>& criteria,
                            const FieldOccurrence* evidence,
                            const FieldOccurrence* agent, bool preferred) {
  std::size_t n = ++c.interp_counter;
  rdf::Iri act = iri::subn(c.entry, "interpretation", n);
  type_node(c, act, T("hico:InterpretationAct"));
  label_it(c, act, "Atto di interpretazione " + std::to_string(n) +
                       " della scheda " + kind_str(c) + " " + c.r.id);
  add(c, attributed, T("prov:wasGeneratedBy"), act);
  for (const rdf::Iri& t : type_terms) {
    add(c, act, T("hico:hasInterpretationType"), t);
    type_node(c, t, T("hico:InterpretationType"));
  }
  if (preferred) {
    if (c.preferred_nodes.count(attributed.str())) {
      warn(c, "ROLP", "a preferred attribution already exists for " +
                          attributed.str() + "; keeping the first");
    } else {
      c.preferred_nodes.insert(attributed.str());
      rdf::Iri marker = fixed_term(c, "zeri-preferred-attribution",
                                   "attribuzione preferita",
                                   "preferred attribution");
      add(c, act, T("hico:hasInterpretationType"), marker);
      type_node(c, marker, T("hico:InterpretationType"));
    }
  }
  for (const FieldOccurrence* cr : criteria) {
    rdf::Iri node = term_node(c, cr->value);
    type_node(c, node, T("hico:InterpretationCriterion"));
    add(c, act, T("hico:hasInterpretationCriterion"), node);
  }
  add(c, act, T("hico:isExtractedFrom"), c.expression);
  if (agent) {
    rdf::Iri a = agent_node(c, agent->value, true);
    add(c, act, T("prov:wasAssociatedWith"), a);
  }
  if (evidence) {
    add(c, act, T("cito:citesAsEvidence"), document_node(c, evidence->value));
  }
  return act;
}

// Unknown role names become locally minted pro:Role terms.
struct ResolvedRole {
  rdf::Iri iri;
  std::optional<FrbrLevel> target;
};

ResolvedRole resolve_role(Ctx& c, const FieldOccurrence& role_field) {
  std::string name = text::trim(role_field.value);
  const RoleEntry* entry = c.table.role(name);
  if (entry && terms::TermRegistry::instance().knows(entry->curie)) {
    rdf::Iri role = T(entry->curie);
    if (entry->role_class == "artistic")
      type_node(c, role, T("oaentry:ArtisticRole"));
    else if (entry->role_class == "cataloguing")
      type_node(c, role, T("oaentry:CataloguingRole"));
    return {role, entry->target};
  }
  if (entry) {
    warn(c, role_field.code,
         "role curie not in the term registry: " + entry->curie);
  } else {
    warn(c, role_field.code, "unknown role '" + name + "', minting a local term");
  }
  rdf::Iri role = c.policy.slugged(iri::Kind::Term, name);
  type_node(c, role, T("pro:Role"));
  label_it(c, role, name);
  return {role, std::nullopt};
}

// --- level nodes ------------------------------------------------------------

bool has_subject_content(const EntryRecord& r, const MappingTable& table) {
  static const char* kGroups[] = {"TIT", "AUF", "AUT", "ARC", "ROL", "MNF",
                                  "ITM", "MST", "TRC", "SPO", "BIB", "ROF"};
  for (const char* g : kGroups)
    if (r.group(g)) return true;
  for (const FieldOccurrence& f : r.fields) {
    if (f.code == "SID" || f.code == "SGTI" || f.code == "OAID") return true;
    if (const MappingRow* row = table.find(r.kind, f.code))
      if (row->level != FrbrLevel::Entry) return true;
  }
  return false;
}

Manifestation& mint_manifestation(Ctx& c, const std::string& facet_value) {
  std::string value = text::trim(facet_value);
  const VocabEntry* v = c.table.vocab(value);
  std::string slug = v ? v->slug : iri::slugify(value);
  std::size_t dups = 0;
  for (const Manifestation& m : c.manifs)
    if (m.facet == slug || m.facet.rfind(slug + "-", 0) == 0) ++dups;
  if (dups) slug += "-" + std::to_string(dups + 1);
  const rdf::Iri& parent = *c.work;
  Manifestation m{slug, value, iri::sub(parent, slug),
                  slug.rfind("digital", 0) == 0};
  type_node(c, m.iri, m.digital ? T("fabio:DigitalManifestation")
                                : T("fabio:AnalogManifestation"));
  type_node(c, m.iri, T("crm:E22_Man-Made_Object"));
  add(c, m.iri, T("crm:P2_has_type"), term_node(c, value));
  label_it(c, m.iri, cap_first(value) + " " + della(c));
  if (v && !v->label_en.empty()) label_en(c, m.iri, v->label_en);
  if (c.r.kind == RecordKind::F && c.shot)
    add(c, *c.shot, T("frbr:embodiment"), m.iri);
  else
    add(c, *c.work, T("frbr:embodiment"), m.iri);
  c.manifs.push_back(std::move(m));
  return c.manifs.back();
}

Manifestation& default_manifestation(Ctx& c) {
  if (!c.manifs.empty()) return c.manifs.front();
  const FieldOccurrence* ogtd = c.r.first("OGTD");
  return mint_manifestation(c, ogtd ? ogtd->value : "copia");
}

Manifestation* manif_for_facet(Ctx& c, const FieldOccurrence* facet_field) {
  if (facet_field) {
    std::string value = text::trim(facet_field->value);
    const VocabEntry* v = c.table.vocab(value);
    std::string slug = v ? v->slug : iri::slugify(value);
    for (Manifestation& m : c.manifs)
      if (m.facet == slug) return &m;
  }
  return c.manifs.empty() ? nullptr : &c.manifs.front();
}

ItemNode& mint_item(Ctx& c, Manifestation* m) {
  rdf::Iri parent = c.r.kind == RecordKind::OA ? *c.work
                    : m                        ? m->iri
                                               : default_manifestation(c).iri;
  if (c.r.kind == RecordKind::F && !m) m = &c.manifs.front();
  std::string facet = m ? m->facet : "";
  std::size_t siblings = 0;
  for (const ItemNode& it : c.items)
    if (it.facet == facet) ++siblings;
  rdf::Iri node = siblings == 0
                      ? iri::sub(parent, "item")
                      : iri::sub(parent, "item-" + std::to_string(siblings + 1));
  bool digital = m && m->digital;
  type_node(c, node, digital ? T("fabio:DigitalItem") : T("fabio:AnalogItem"));
  type_node(c, node, T("crm:E22_Man-Made_Object"));
  std::string base_label =
      c.r.kind == RecordKind::F
          ? cap_first(m ? m->value_it : "copia") + " della " + photo_ref(c)
          : cap_first(opera_ref(c));
  label_it(c, node, base_label + (siblings == 0 ? " (esemplare)"
                                                : " (esemplare " +
                                                      std::to_string(siblings + 1) +
                                                      ")"));
  if (m) {
    add(c, m->iri, T("frbr:exemplar"), node);
    add(c, node, T("frbr:exemplarOf"), m->iri);
  }
  c.items.push_back(ItemNode{facet, node});
  return c.items.back();
}

ItemNode& default_item(Ctx& c) {
  if (!c.items.empty()) return c.items.front();
  return mint_item(c, c.manifs.empty() ? nullptr : &c.manifs.front());
}

ItemNode* item_for_facet(Ctx& c, const FieldOccurrence* facet_field) {
  if (c.items.empty()) return nullptr;
  if (facet_field) {
    std::string value = text::trim(facet_field->value);
    const VocabEntry* v = c.table.vocab(value);
    std::string slug = v ? v->slug : iri::slugify(value);
    for (ItemNode& it : c.items)
      if (it.facet == slug) return &it;
  }
  return &c.items.front();
}

// --- builders ---------------------------------------------------------------

void build_entry_skeleton(Ctx& c) {
  bool f = c.r.kind == RecordKind::F;
  type_node(c, c.entry, f ? T("fentry:FEntry") : T("oaentry:OAEntry"));
  type_node(c, c.entry, T("fabio:EntityMetadata"));
  type_node(c, c.entry, T("crm:E31_Document"));
  if (!f) type_node(c, c.entry, T("fabio:Work"));
  label_it(c, c.entry, "Scheda " + kind_str(c) + " " + c.r.id);

  type_node(c, c.expression, T("fabio:MetadataDocument"));
  type_node(c, c.expression, T("fabio:Expression"));
  label_it(c, c.expression,
           "Contenuto della scheda " + kind_str(c) + " " + c.r.id);
  add(c, c.entry, T("frbr:realization"), c.expression);
  add(c, c.expression, T("frbr:realizationOf"), c.entry);

  // The record's own number is always the first identifier; catalog codes
  // from the fields follow in record order.
  entry_identifier(c, c.entry, ++c.entry_identifiers, c.r.id,
                   "catalog-entry-number", "numero di scheda",
                   "catalog entry number");
  for (const FieldOccurrence& fo : c.r.fields) {
    if (fo.code == "LIR")
      entry_identifier(c, c.entry, ++c.entry_identifiers, text::trim(fo.value),
                       "catalog-level", "livello di catalogazione",
                       "catalog level");
    else if (fo.code == "NCTR")
      entry_identifier(c, c.entry, ++c.entry_identifiers, text::trim(fo.value),
                       "regional-code", "codice regione", "regional code");
    else if (fo.code == "NCTN")
      entry_identifier(c, c.entry, ++c.entry_identifiers, text::trim(fo.value),
                       "catalog-number", "numero di catalogo", "catalog number");
  }

  // Cross references mint a stub for the referenced entry; the stub triples
  // coincide with the referenced record's own skeleton, so merged corpora
  // deduplicate cleanly.
  for (const FieldOccurrence* ref : c.r.all("REFO")) {
    rdf::Iri other = c.policy.oaentry(text::trim(ref->value));
    add(c, c.entry, T("crm:P67_refers_to"), other);
    type_node(c, other, T("oaentry:OAEntry"));
    type_node(c, other, T("fabio:EntityMetadata"));
    label_it(c, other, "Scheda OA " + text::trim(ref->value));
  }
  for (const FieldOccurrence* ref : c.r.all("REFF")) {
    rdf::Iri other = c.policy.fentry(text::trim(ref->value));
    add(c, c.entry, T("crm:P67_refers_to"), other);
    type_node(c, other, T("fentry:FEntry"));
    type_node(c, other, T("fabio:EntityMetadata"));
    label_it(c, other, "Scheda F " + text::trim(ref->value));
  }

  const FieldGroup* cmp = c.r.group("CMP");
  if (cmp && !cmp->repetitions.empty()) {
    const GroupRepetition& head = cmp->repetitions.front();
    rdf::Iri ec = iri::sub(c.entry, "creation");
    type_node(c, ec, T("crm:E65_Creation"));
    label_it(c, ec, "Compilazione della scheda " + kind_str(c) + " " + c.r.id);
    add(c, c.entry, T("crm:P94i_was_created_by"), ec);
    add(c, c.expression, T("crm:P94i_was_created_by"), ec);
    add(c, ec, T("crm:P94_has_created"), c.entry);
    add(c, ec, T("crm:P94_has_created"), c.expression);
    if (const FieldOccurrence* d = head.first("CMPD"))
      add(c, ec, T("crm:P4_has_time_span"), timespan_node(c, d->value));
    if (const FieldOccurrence* n = head.first("CMPN"))
      add(c, ec, T("crm:P14_carried_out_by"), agent_node(c, n->value, true));

    for (const GroupRepetition& rep : cmp->repetitions) {
      const FieldOccurrence* name = rep.first("CMPN");
      if (!name) continue;
      rdf::Iri agent = agent_node(c, name->value, true);
      FieldOccurrence role_field = rep.first("CMPR")
                                       ? *rep.first("CMPR")
                                       : FieldOccurrence{"CMPR", "catalogatore", 0};
      ResolvedRole role = resolve_role(c, role_field);
      role_in_time(c, c.entry, agent, text::trim(name->value), role.iri,
                   text::trim(role_field.value), rep.first("CMPD"));
    }
  }
}

void creation_block(Ctx& c, const FieldGroup& grp, const std::string& prefix) {
  rdf::Iri cr = iri::sub(*c.work, "creation");
  type_node(c, cr, T("crm:E65_Creation"));
  label_it(c, cr, "Creazione " + della(c));
  add(c, *c.work, T("crm:P94i_was_created_by"), cr);
  add(c, cr, T("crm:P94_has_created"), *c.work);
  if (c.shot) {
    add(c, cr, T("crm:P94_has_created"), *c.shot);
    add(c, *c.shot, T("crm:P94i_was_created_by"), cr);
  }
  for (const GroupRepetition& rep : grp.repetitions) {
    const FieldOccurrence* name = rep.first(prefix + "N");
    const FieldOccurrence* kind = rep.first(prefix + "K");
    if (!name && kind)
      throw ConvertError(ConvertErrorCode::DanglingActor, c.r.id,
                         "[" + grp.code + "] names an agent kind without " +
                             prefix + "N");
    if (name) {
      rdf::Iri agent = agent_node(c, name->value, person_kind(kind, true));
      add(c, cr, T("crm:P14_carried_out_by"), agent);
      if (const FieldOccurrence* school = rep.first(prefix + "S")) {
        rdf::Iri grp_node = agent_node(c, school->value, false);
        add(c, agent, T("crm:P107i_is_current_or_former_member_of"), grp_node);
      }
    }
    if (const FieldOccurrence* pl = rep.first(prefix + "L"))
      add(c, cr, T("crm:P7_took_place_at"), place_node(c, pl->value));
    if (const FieldOccurrence* d = rep.first(prefix + "D"))
      add(c, cr, T("crm:P4_has_time_span"), timespan_node(c, d->value));
    if (const FieldOccurrence* ev = rep.first(prefix + "O"))
      add(c, cr, T("crm:P10_falls_within"), event_node(c, ev->value));
  }
}

void map_work_level(Ctx& c) {
  bool f = c.r.kind == RecordKind::F;
  if (f) {
    c.work = c.policy.photo(c.sid);
    type_node(c, *c.work, T("fentry:Photograph"));
    type_node(c, *c.work, T("crm:E28_Conceptual_Object"));
    label_it(c, *c.work, cap_first(photo_ref(c)));
  } else {
    c.work = c.policy.artwork(c.sid);
    c.artwork = c.work;
    type_node(c, *c.work, T("fabio:ArtisticWork"));
    type_node(c, *c.work, T("crm:E28_Conceptual_Object"));
    label_it(c, *c.work,
             c.work_title.empty() ? "Opera d'arte " + c.sid : c.work_title);
  }

  if (const FieldGroup* tit = c.r.group("TIT")) {
    std::size_t n = 0;
    for (const GroupRepetition& rep : tit->repetitions) {
      const FieldOccurrence* t = rep.first("TITT");
      if (!t) {
        warn(c, "TIT", "title repetition without TITT");
        continue;
      }
      rdf::Iri tn = iri::subn(*c.work, "title", ++n);
      type_node(c, tn, T("crm:E35_Title"));
      add(c, *c.work, T("crm:P102_has_title"), tn);
      label_it(c, tn, text::trim(t->value));
      if (const FieldOccurrence* k = rep.first("TITK"))
        add(c, tn, T("crm:P2_has_type"), term_node(c, k->value));
    }
  }

  if (const FieldGroup* arc = c.r.group("ARC")) {
    std::vector<const FieldOccurrence*> levels;
    for (const GroupRepetition& rep : arc->repetitions)
      for (const FieldOccurrence* l : rep.all("ARCL")) levels.push_back(l);
    rdf::Iri prev = *c.work;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      rdf::Iri node =
          c.policy.slugged(iri::Kind::Collection, text::trim(levels[i]->value));
      if (i + 1 == levels.size()) {
        type_node(c, node, T("fabio:WorkCollection"));
      } else {
        type_node(c, node, T("fabio:Work"));
        type_node(c, node, T("crm:E90_Symbolic_Object"));
      }
      label_it(c, node, text::trim(levels[i]->value));
      add(c, prev, T("crm:P106i_forms_part_of"), node);
      add(c, node, T("crm:P106_is_composed_of"), prev);
      prev = node;
    }
  }

  if (const FieldGroup* bib = c.r.group("BIB")) {
    for (const GroupRepetition& rep : bib->repetitions) {
      const FieldOccurrence* n = rep.first("BIBN");
      if (!n) continue;
      rdf::Iri doc = document_node(c, n->value);
      add(c, *c.work, T("crm:P70i_is_documented_in"), doc);
      if (const FieldOccurrence* k = rep.first("BIBK"))
        add(c, doc, T("crm:P2_has_type"), term_node(c, k->value));
    }
  }

}

void map_expression_level(Ctx& c) {
  if (c.r.kind != RecordKind::F || !c.work) return;
  c.shot = iri::sub(*c.work, "shot");
  type_node(c, *c.shot, T("fentry:Shot"));
  type_node(c, *c.shot, T("fabio:StillImage"));
  label_it(c, *c.shot, "Scatto (immagine) della " + photo_ref(c));
  add(c, *c.work, T("frbr:realization"), *c.shot);
  add(c, *c.shot, T("frbr:realizationOf"), *c.work);
}

// Runs after the expression level so the creation event can also cover the
// shot, which carries the image the authors actually made.
void build_creation(Ctx& c) {
  if (!c.work) return;
  if (c.r.kind == RecordKind::F) {
    if (const FieldGroup* auf = c.r.group("AUF")) creation_block(c, *auf, "AUF");
  } else {
    if (const FieldGroup* aut = c.r.group("AUT")) creation_block(c, *aut, "AUT");
  }
}

// The referenced work of art and its exemplar; labels are a pure function of
// the identifier so the OA record's own conversion merges without conflict.
void build_artwork_reference(Ctx& c) {
  if (c.r.kind != RecordKind::F) return;
  const FieldOccurrence* oaid = c.r.first("OAID");
  if (!oaid) return;
  std::string id = text::trim(oaid->value);
  rdf::Iri aw = c.policy.artwork(id);
  type_node(c, aw, T("fabio:ArtisticWork"));
  type_node(c, aw, T("crm:E28_Conceptual_Object"));
  label_it(c, aw, "Opera d'arte " + id);
  rdf::Iri ai = iri::sub(aw, "item");
  type_node(c, ai, T("fabio:AnalogItem"));
  type_node(c, ai, T("crm:E22_Man-Made_Object"));
  label_it(c, ai, "Opera d'arte " + id + " (esemplare)");
  c.artwork = aw;
  c.artwork_item = ai;
  // The photograph depicts the physical exemplar, not the conceptual work.
  if (c.work) add(c, *c.work, T("frbr:subject"), ai);
  add(c, aw, T("fabio:hasPortrayal"), ai);
}

void map_manifestation_level(Ctx& c) {
  const FieldGroup* mnf = c.r.group("MNF");
  if (mnf) {
    for (const GroupRepetition& rep : mnf->repetitions) {
      const FieldOccurrence* facet = rep.first("MNFT");
      const FieldOccurrence* ogtd = c.r.first("OGTD");
      Manifestation& m = mint_manifestation(
          c, facet ? facet->value : ogtd ? ogtd->value : "copia");
      if (const FieldOccurrence* mat = rep.first("MTC")) {
        rdf::Iri t = term_node(c, mat->value);
        type_node(c, t, T("crm:E57_Material"));
        add(c, m.iri, T("crm:P45_consists_of"), t);
      }
      for (const FieldOccurrence* feat : rep.all("MNFF"))
        add(c, m.iri, T("crm:P56_bears_feature"), term_node(c, feat->value));

      const FieldOccurrence* h = rep.first("MISA");
      const FieldOccurrence* w = rep.first("MISL");
      if (h || w) {
        rdf::Iri meas = iri::sub(m.iri, "measurement");
        type_node(c, meas, T("crm:E16_Measurement"));
        label_it(c, meas, "Misurazione " + della(c));
        add(c, m.iri, T("crm:P39i_was_measured_by"), meas);
        const FieldOccurrence* unit = rep.first("MISU");
        std::string unit_v = unit ? text::trim(unit->value) : "";
        struct Dim {
          const FieldOccurrence* f;
          const char* slug;
          const char* it;
          const char* en;
        };
        for (const Dim& d : {Dim{h, "height", "altezza", "height"},
                             Dim{w, "width", "larghezza", "width"}}) {
          if (!d.f) continue;
          std::string num = text::trim(d.f->value);
          bool ok = !num.empty();
          std::size_t dots = 0;
          for (char ch : num) {
            if (ch == '.') {
              ++dots;
            } else if (ch < '0' || ch > '9') {
              ok = false;
            }
          }
          if (!ok || dots > 1 || num == ".")
            throw ConvertError(ConvertErrorCode::BadDimension, c.r.id,
                               "unparseable dimension value '" + num + "' in " +
                                   d.f->code);
          rdf::Iri dim = c.policy.slugged(
              iri::Kind::Dimension,
              std::string(d.en) + " " + num + unit_v);
          type_node(c, dim, T("crm:E54_Dimension"));
          label_it(c, dim,
                   std::string(d.it) + " " + num +
                       (unit_v.empty() ? "" : " " + unit_v));
          add(c, meas, T("crm:P40_observed_dimension"), dim);
          add(c, dim, T("crm:P2_has_type"), fixed_term(c, d.slug, d.it, d.en));
          add(c, dim, T("crm:P90_has_value"), lit(num));
          if (!unit_v.empty())
            add(c, dim, T("crm:P91_has_unit"), term_node(c, unit_v));
        }
      }
    }
  }
  // A work of art record always exposes its physical exemplar.
  if (c.r.kind == RecordKind::OA) {
    ItemNode& it = default_item(c);
    c.artwork_item = it.iri;
  }
}

void apply_item_fields(Ctx& c, ItemNode& it, const GroupRepetition& rep) {
  if (const FieldOccurrence* parts = rep.first("ITMP"))
    add(c, it.iri, T("crm:P57_has_number_of_parts"), lit(text::trim(parts->value)));
  if (const FieldOccurrence* inv = rep.first("INVN"))
    entry_identifier(c, it.iri, ++it.identifiers, text::trim(inv->value),
                     "inventory-number", "numero di inventario",
                     "inventory number");

  const FieldOccurrence* state_type = rep.first("CDTC");
  const FieldOccurrence* state_note = rep.first("CDTN");
  if (state_type || state_note) {
    rdf::Iri cond = iri::sub(it.iri, "condition");
    type_node(c, cond, T("crm:E14_Condition_Assessment"));
    label_it(c, cond, "Valutazione dello stato di conservazione");
    add(c, it.iri, T("crm:P34i_was_assessed_by"), cond);
    rdf::Iri state = iri::sub(cond, "state");
    type_node(c, state, T("crm:E3_Condition_State"));
    add(c, cond, T("crm:P35_has_identified"), state);
    label_it(c, state,
             state_type ? text::trim(state_type->value) : "stato di conservazione");
    if (state_type)
      add(c, state, T("crm:P2_has_type"), term_node(c, state_type->value));
    if (state_note)
      add(c, state, T("crm:P3_has_note"), lit(text::trim(state_note->value)));
  }

  std::vector<const FieldOccurrence*> places = rep.all("ITML");
  std::set<std::string> seen;
  std::optional<rdf::Iri> prev;
  for (const FieldOccurrence* pf : places) {
    rdf::Iri p = place_node(c, pf->value);
    if (!seen.insert(p.str()).second)
      throw ConvertError(ConvertErrorCode::CyclicPlaceChain, c.r.id,
                         "place chain revisits " + p.str());
    if (prev)
      add(c, *prev, T("crm:P89_falls_within"), p);
    else
      add(c, it.iri, T("crm:P55_has_current_location"), p);
    prev = p;
  }

  if (const FieldOccurrence* keeper_f = rep.first("ITMK")) {
    rdf::Iri keeper = agent_node(c, keeper_f->value,
                                 person_kind(nullptr, false));
    add(c, it.iri, T("crm:P50_has_current_keeper"), keeper);
    if (const FieldOccurrence* res = rep.first("ITKR"))
      add(c, keeper, T("crm:P74_has_current_or_former_residence"),
          place_node(c, res->value));
    if (const FieldOccurrence* contact = rep.first("ITKC"))
      add(c, keeper, T("crm:P76_has_contact_point"),
          lit(text::trim(contact->value)));
  }
  if (const FieldOccurrence* owner_f = rep.first("ITMO")) {
    rdf::Iri owner = agent_node(c, owner_f->value, false);
    add(c, it.iri, T("crm:P52_has_current_owner"), owner);
    if (const FieldOccurrence* mode = rep.first("ITOA")) {
      rdf::Iri acq = iri::subn(it.iri, "acquisition", ++it.acquisitions);
      type_node(c, acq, T("crm:E8_Acquisition"));
      label_it(c, acq, "Acquisizione " + std::to_string(it.acquisitions));
      add(c, owner, T("crm:P22i_acquired_title_through"), acq);
      add(c, acq, T("crm:P2_has_type"), term_node(c, mode->value));
      add(c, it.iri, T("crm:P12i_was_present_at"), acq);
      add(c, acq, T("crm:P12_occurred_in_the_presence_of"), it.iri);
    }
  }
}

void map_item_level(Ctx& c) {
  if (const FieldGroup* itm = c.r.group("ITM")) {
    for (const GroupRepetition& rep : itm->repetitions) {
      ItemNode* target = nullptr;
      if (c.r.kind == RecordKind::OA) {
        // The auto-minted exemplar absorbs the first repetition.
        target = rep.line == itm->repetitions.front().line && !c.items.empty()
                     ? &c.items.front()
                     : &mint_item(c, nullptr);
      } else {
        Manifestation* m = manif_for_facet(c, rep.first("ITMM"));
        if (!m) m = &default_manifestation(c);
        target = &mint_item(c, m);
      }
      apply_item_fields(c, *target, rep);
    }
  }

  if (const FieldGroup* mst = c.r.group("MST")) {
    for (const GroupRepetition& rep : mst->repetitions) {
      const FieldOccurrence* title = rep.first("MSTT");
      if (!title) continue;
      ItemNode& it = default_item(c);
      rdf::Iri ev = event_node(c, title->value);
      rdf::Iri app = iri::sub(ev, "appellation");
      type_node(c, app, T("crm:E41_Appellation"));
      label_it(c, app, text::trim(title->value));
      add(c, ev, T("crm:P1_is_identified_by"), app);
      if (const FieldOccurrence* pl = rep.first("MSTL"))
        add(c, ev, T("crm:P7_took_place_at"), place_node(c, pl->value));
      if (const FieldOccurrence* d = rep.first("MSTD"))
        add(c, ev, T("crm:P4_has_time_span"), timespan_node(c, d->value));
      add(c, it.iri, T("crm:P12i_was_present_at"), ev);
      add(c, ev, T("crm:P12_occurred_in_the_presence_of"), it.iri);
    }
  }

  if (const FieldGroup* trc = c.r.group("TRC")) {
    for (const GroupRepetition& rep : trc->repetitions) {
      ItemNode* it = item_for_facet(c, rep.first("TRCM"));
      if (!it) it = &default_item(c);
      rdf::Iri tr = iri::subn(it->iri, "custody", ++it->custodies);
      type_node(c, tr, T("crm:E10_Transfer_of_Custody"));
      label_it(c, tr, "Trasferimento di custodia " + std::to_string(it->custodies));
      if (const FieldOccurrence* from = rep.first("TRCS"))
        add(c, tr, T("crm:P28_custody_surrendered_by"),
            agent_node(c, from->value, false));
      if (const FieldOccurrence* to = rep.first("TRCR"))
        add(c, tr, T("crm:P29_custody_received_by"),
            agent_node(c, to->value, false));
      add(c, tr, T("crm:P30_transferred_custody_of"), it->iri);
      add(c, it->iri, T("crm:P30i_custody_transferred_through"), tr);
      if (const FieldOccurrence* d = rep.first("TRCD"))
        add(c, tr, T("crm:P4_has_time_span"), timespan_node(c, d->value));
    }
  }

  if (const FieldGroup* spo = c.r.group("SPO")) {
    for (const GroupRepetition& rep : spo->repetitions) {
      ItemNode& it = default_item(c);
      rdf::Iri mv = iri::subn(it.iri, "move", ++it.moves);
      type_node(c, mv, T("crm:E9_Move"));
      label_it(c, mv, "Spostamento " + std::to_string(it.moves));
      if (const FieldOccurrence* to = rep.first("SPOT"))
        add(c, mv, T("crm:P26_moved_to"), place_node(c, to->value));
      if (const FieldOccurrence* from = rep.first("SPOF"))
        add(c, mv, T("crm:P27_moved_from"), place_node(c, from->value));
      if (const FieldOccurrence* d = rep.first("SPOD"))
        add(c, mv, T("crm:P4_has_time_span"), timespan_node(c, d->value));
      add(c, it.iri, T("crm:P12i_was_present_at"), mv);
      add(c, mv, T("crm:P12_occurred_in_the_presence_of"), it.iri);
    }
  }

  if (c.r.kind == RecordKind::F && c.items.size() > 0 && c.artwork_item) {
    for (const ItemNode& it : c.items)
      add(c, it.iri, T("crm:P62_depicts"), *c.artwork_item);
  }
}

void build_roles(Ctx& c) {
  const FieldGroup* rol = c.r.group("ROL");
  if (!rol) return;
  for (const GroupRepetition& rep : rol->repetitions) {
    const FieldOccurrence* name = rep.first("ROLN");
    if (!name)
      throw ConvertError(ConvertErrorCode::DanglingActor, c.r.id,
                         "[ROL] repetition without ROLN");
    const FieldOccurrence* role_f = rep.first("ROLR");
    if (!role_f) {
      warn(c, "ROL", "role repetition without ROLR, skipped");
      continue;
    }
    rdf::Iri agent =
        agent_node(c, name->value, person_kind(rep.first("ROLK"), true));
    ResolvedRole role = resolve_role(c, *role_f);
    FrbrLevel lvl = role.target.value_or(FrbrLevel::Work);
    rdf::Iri target = c.entry;
    switch (lvl) {
      case FrbrLevel::Entry:
        target = c.entry;
        break;
      case FrbrLevel::Work:
        target = c.work ? *c.work : c.entry;
        break;
      case FrbrLevel::Expression:
        if (c.shot) {
          target = *c.shot;
        } else {
          target = c.work ? *c.work : c.entry;
          if (!c.warned_expression_fallback) {
            warn(c, role_f->code,
                 "no expression node for this entry; role attached to the work");
            c.warned_expression_fallback = true;
          }
        }
        break;
      case FrbrLevel::Manifestation: {
        Manifestation* m = manif_for_facet(c, rep.first("ROLM"));
        if (!m && c.r.kind == RecordKind::F) m = &default_manifestation(c);
        if (m) {
          target = m->iri;
        } else {
          target = c.work ? *c.work : c.entry;
          warn(c, role_f->code,
               "no manifestation for this entry; role attached to the work");
        }
        break;
      }
      case FrbrLevel::Item:
        target = default_item(c).iri;
        break;
    }
    rdf::Iri rn = role_in_time(c, target, agent, text::trim(name->value),
                               role.iri, text::trim(role_f->value),
                               rep.first("ROLD"));
    std::vector<const FieldOccurrence*> criteria = rep.all("ROLC");
    const FieldOccurrence* evidence = rep.first("ROLV");
    const FieldOccurrence* act_agent = rep.first("ROLA");
    bool preferred = truthy(rep.first("ROLP"));
    if (!criteria.empty()) {
      rdf::Iri type = fixed_term(c, "role-attribution", "attribuzione di ruolo",
                                 "role attribution");
      interpretation_act(c, rn, {type}, criteria, evidence, act_agent,
                         preferred);
    } else if (evidence || act_agent || preferred) {
      warn(c, "ROL",
           "attribution fields present without ROLC criteria; no "
           "interpretation act recorded");
    }
  }
}

void build_influences(Ctx& c) {
  const FieldGroup* rof = c.r.group("ROF");
  if (!rof || !c.work) return;
  static const std::map<std::string, const char*> kKinds = {
      {"cartone", "oaentry:Cartoon"},
      {"copia", "oaentry:Copy"},
      {"derivazione", "oaentry:Derivation"},
      {"disegno", "oaentry:Drawing"},
  };
  std::size_t n = 0;
  for (const GroupRepetition& rep : rof->repetitions) {
    const FieldOccurrence* kind_f = rep.first("ROFF");
    const FieldOccurrence* former_f = rep.first("ROFW");
    if (!kind_f || !former_f) {
      warn(c, "ROF", "influence repetition without ROFF/ROFW, skipped");
      continue;
    }
    auto it = kKinds.find(text::normalize_key(kind_f->value));
    if (it == kKinds.end())
      throw ConvertError(ConvertErrorCode::UnknownInfluenceKind, c.r.id,
                         "unknown influence kind '" + kind_f->value + "'");
    std::string former_name = text::trim(former_f->value);
    rdf::Iri former = c.policy.artwork(former_name);
    type_node(c, former, T("fabio:ArtisticWork"));
    type_node(c, former, T("crm:E28_Conceptual_Object"));
    label_it(c, former, former_name);
    rdf::Iri inf = iri::subn(*c.work, "influence", ++n);
    type_node(c, inf, T(it->second));
    label_it(c, inf, "Influenza dell'opera \"" + former_name + "\"");
    add(c, inf, T("oaentry:hasFormerWork"), former);
    add(c, inf, T("oaentry:hasConceived"), *c.work);
    add(c, *c.work, T("oaentry:isConveivedByMeansOf"), inf);

    std::vector<const FieldOccurrence*> criteria = rep.all("ROFC");
    const FieldOccurrence* act_agent = rep.first("ROFA");
    bool preferred = truthy(rep.first("ROFP"));
    if (!criteria.empty()) {
      interpretation_act(c, inf, {T("oaentry:influence-between-works-attribution")},
                         criteria, nullptr, act_agent, preferred);
    } else if (act_agent || preferred) {
      warn(c, "ROF",
           "attribution fields present without ROFC criteria; no "
           "interpretation act recorded");
    }
  }
}

void apply_field_table(Ctx& c) {
  for (const FieldOccurrence& fo : c.r.fields) {
    if (fo.code == "TSK" || fo.code == "ID" || fo.code == "SID") continue;
    if (MappingEngine::structural_code(fo.code)) continue;
    const MappingRow* row = c.table.find(c.r.kind, fo.code);
    if (!row) continue;  // unknown codes already warned by check_record
    rdf::Iri node = c.entry;
    switch (row->level) {
      case FrbrLevel::Entry:
        node = c.entry;
        break;
      case FrbrLevel::Work:
        node = c.work ? *c.work : c.entry;
        break;
      case FrbrLevel::Expression:
        if (c.shot) {
          node = *c.shot;
        } else {
          node = c.work ? *c.work : c.entry;
          if (!c.warned_expression_fallback) {
            warn(c, fo.code,
                 "no expression node for this entry; value attached to the work");
            c.warned_expression_fallback = true;
          }
        }
        break;
      case FrbrLevel::Manifestation:
        node = default_manifestation(c).iri;
        break;
      case FrbrLevel::Item:
        node = default_item(c).iri;
        break;
    }
    const rdf::Iri& pred = T(row->predicate_curie);
    switch (row->object_kind) {
      case ObjectKind::Literal:
        add(c, node, pred, lit(fo.value));
        break;
      case ObjectKind::LangLiteralIt: {
        add(c, node, pred, lit_it(fo.value));
        if (const FieldOccurrence* companion = c.r.first(fo.code + "EN"))
          add(c, node, pred, lit_en(companion->value));
        break;
      }
      case ObjectKind::TypedTerm:
      case ObjectKind::SlugIri:
        add(c, node, pred, term_node(c, fo.value));
        break;
    }
  }
}

void emit_describes(Ctx& c) {
  const rdf::Iri& dp = c.r.kind == RecordKind::F ? T("fentry:describes")
                                                 : T("oaentry:describes");
  std::vector<rdf::Iri> targets;
  if (c.r.kind == RecordKind::F) {
    if (c.work) targets.push_back(*c.work);
    for (const ItemNode& it : c.items) targets.push_back(it.iri);
    if (c.artwork) targets.push_back(*c.artwork);
    if (c.artwork_item) targets.push_back(*c.artwork_item);
  } else {
    if (c.work) targets.push_back(*c.work);
    for (const Manifestation& m : c.manifs) targets.push_back(m.iri);
    for (const ItemNode& it : c.items) targets.push_back(it.iri);
  }
  for (const rdf::Iri& t : targets) {
    add(c, c.entry, dp, t);
    add(c, c.entry, T("crm:P70_documents"), t);
  }
}

}  // namespace

bool MappingEngine::structural_code(const std::string& code) {
  static const std::set<std::string> kClaimed = {
      // groups
      "CMP", "TIT", "AUF", "AUT", "ARC", "ROL", "MNF", "ITM", "MST", "TRC",
      "SPO", "BIB", "ROF",
      // simple fields with dedicated builders
      "SID", "SGTI", "OAID", "REFO", "REFF", "LIR", "NCTR", "NCTN",
  };
  return kClaimed.count(code) > 0;
}

ConvertResult MappingEngine::convert(const record::EntryRecord& r) const {
  Ctx c(r, table_, policy_);
  c.warnings = record::check_record(r, table_);

  build_entry_skeleton(c);
  if (has_subject_content(r, table_)) {
    map_work_level(c);
    map_expression_level(c);
    build_creation(c);
    build_artwork_reference(c);
    map_manifestation_level(c);
    map_item_level(c);
    build_roles(c);
    build_influences(c);
  }
  apply_field_table(c);
  emit_describes(c);

  return ConvertResult{std::move(c.g), std::move(c.warnings)};
}

}  // namespace schedalod::mapping
