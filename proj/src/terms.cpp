#include "schedalod/terms.hpp"

namespace schedalod::terms {

namespace {

const char* const kCuries[] = {
    // CIDOC CRM classes
    "crm:E3_Condition_State",
    "crm:E4_Period",
    "crm:E5_Event",
    "crm:E8_Acquisition",
    "crm:E9_Move",
    "crm:E10_Transfer_of_Custody",
    "crm:E14_Condition_Assessment",
    "crm:E16_Measurement",
    "crm:E21_Person",
    "crm:E22_Man-Made_Object",
    "crm:E28_Conceptual_Object",
    "crm:E31_Document",
    "crm:E35_Title",
    "crm:E39_Actor",
    "crm:E41_Appellation",
    "crm:E42_Identifier",
    "crm:E52_Time-Span",
    "crm:E53_Place",
    "crm:E54_Dimension",
    "crm:E55_Type",
    "crm:E57_Material",
    "crm:E65_Creation",
    "crm:E74_Group",
    "crm:E90_Symbolic_Object",
    // CIDOC CRM properties
    "crm:P1_is_identified_by",
    "crm:P2_has_type",
    "crm:P3_has_note",
    "crm:P4_has_time_span",
    "crm:P7_took_place_at",
    "crm:P10_falls_within",
    "crm:P12_occurred_in_the_presence_of",
    "crm:P12i_was_present_at",
    "crm:P14_carried_out_by",
    "crm:P22i_acquired_title_through",
    "crm:P26_moved_to",
    "crm:P27_moved_from",
    "crm:P28_custody_surrendered_by",
    "crm:P29_custody_received_by",
    "crm:P30_transferred_custody_of",
    "crm:P30i_custody_transferred_through",
    "crm:P34i_was_assessed_by",
    "crm:P35_has_identified",
    "crm:P39i_was_measured_by",
    "crm:P40_observed_dimension",
    "crm:P45_consists_of",
    "crm:P50_has_current_keeper",
    "crm:P52_has_current_owner",
    "crm:P55_has_current_location",
    "crm:P56_bears_feature",
    "crm:P57_has_number_of_parts",
    "crm:P62_depicts",
    "crm:P67_refers_to",
    "crm:P70_documents",
    "crm:P70i_is_documented_in",
    "crm:P74_has_current_or_former_residence",
    "crm:P76_has_contact_point",
    "crm:P82a_begin_of_the_begin",
    "crm:P82b_end_of_the_end",
    "crm:P89_falls_within",
    "crm:P90_has_value",
    "crm:P91_has_unit",
    "crm:P94_has_created",
    "crm:P94i_was_created_by",
    "crm:P102_has_title",
    "crm:P106_is_composed_of",
    "crm:P106i_forms_part_of",
    "crm:P107i_is_current_or_former_member_of",
    "crm:P140i_was_attributed_by",
    // photograph entries
    "fentry:FEntry",
    "fentry:Photograph",
    "fentry:Shot",
    "fentry:describes",
    // work-of-art entries
    "oaentry:OAEntry",
    "oaentry:describes",
    "oaentry:hasFormerWork",
    "oaentry:hasConceived",
    "oaentry:isConveivedByMeansOf",
    "oaentry:Cartoon",
    "oaentry:Copy",
    "oaentry:Derivation",
    "oaentry:Drawing",
    "oaentry:ArtisticRole",
    "oaentry:CataloguingRole",
    "oaentry:cataloguer",
    "oaentry:cataloguing-institution",
    "oaentry:cataloguing-supervisor",
    "oaentry:competent-institution",
    "oaentry:antiquarian",
    "oaentry:architect",
    "oaentry:art-dealer",
    "oaentry:influence-between-works-attribution",
    // FaBiO
    "fabio:EntityMetadata",
    "fabio:ArtisticWork",
    "fabio:StillImage",
    "fabio:AnalogManifestation",
    "fabio:DigitalManifestation",
    "fabio:AnalogItem",
    "fabio:DigitalItem",
    "fabio:MetadataDocument",
    "fabio:Work",
    "fabio:WorkCollection",
    "fabio:Expression",
    "fabio:hasPortrayal",
    // FRBR
    "frbr:realization",
    "frbr:realizationOf",
    "frbr:embodiment",
    "frbr:exemplar",
    "frbr:exemplarOf",
    "frbr:subject",
    // PRO / SCoRO
    "pro:RoleInTime",
    "pro:Role",
    "pro:holdsRoleInTime",
    "pro:isHeldBy",
    "pro:withRole",
    "pro:relatesTo",
    "pro:publisher",
    "pro:author",
    "pro:editor",
    "scor:photographer",
    // HiCO
    "hico:InterpretationAct",
    "hico:InterpretationType",
    "hico:InterpretationCriterion",
    "hico:hasInterpretationType",
    "hico:hasInterpretationCriterion",
    "hico:isExtractedFrom",
    // CiTO / PROV / time-indexed value
    "cito:citesAsEvidence",
    "prov:Influence",
    "prov:wasGeneratedBy",
    "prov:wasAssociatedWith",
    "tv:atTime",
    // FOAF / RDF / RDFS / OWL
    "foaf:Agent",
    "foaf:depiction",
    "rdf:type",
    "rdfs:label",
    "rdfs:seeAlso",
    "rdfs:comment",
    "owl:sameAs",
};

}  // namespace

TermRegistry::TermRegistry() : prefixes_(rdf::PrefixMap::defaults()) {
  for (const char* curie : kCuries)
    by_curie_.emplace(curie, prefixes_.expand_curie(curie));
}

const TermRegistry& TermRegistry::instance() {
  static const TermRegistry registry;
  return registry;
}

const rdf::Iri& TermRegistry::get(std::string_view curie) const {
  auto it = by_curie_.find(curie);
  if (it == by_curie_.end()) throw UnknownTerm(std::string(curie));
  return it->second;
}

bool TermRegistry::knows(std::string_view curie) const {
  return by_curie_.find(curie) != by_curie_.end();
}

const rdf::Iri& xsd_gyear() {
  static const rdf::Iri iri("http://www.w3.org/2001/XMLSchema#gYear");
  return iri;
}

}  // namespace schedalod::terms
