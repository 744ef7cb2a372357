#pragma once

// Text format for surgery diagrams (".csd"), JSON export and SVG rendering.
//
//   # comment
//   diagram NAME                      optional header
//   front { L1; L2; R1; R1; }         Morse word
//   label 1 K                         name component 1
//   orient 1 -                        flip the orientation seed of component 1
//   surgery K = +1                    coefficient: INT, INT/INT, +1, -1 or inf
//
//   abstract                          invariant data instead of a front
//   knot A tb=-4 rot=1;
//   knot B tb=-2 rot=-1;
//   lk A B = -2;
//   surgery A = -1
//   framing A = 0                     smooth framing, for framed-link input
//
// Components without a surgery statement get coefficient inf.

#include "csd/realize.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace csd {

struct SourceSpan {
    int line = 0;
    int column = 0;
};

struct SourceDocument {
    ContactSurgeryDiagram diagram;
    std::optional<std::string> name;
    std::vector<SourceSpan> event_spans;          // front mode: one per event
    std::vector<std::optional<Integer>> framings; // one per component
};

/// Throws ParseError (syntax, unknown label, duplicate statement, mixed
/// front and abstract input, invalid front) or MathError("zero-coefficient"),
/// both with a "line L, column C" prefix in the message.
SourceDocument parse_document(const std::string &text);
ContactSurgeryDiagram parse(const std::string &text);

/// Canonical text; parse(print(d)) is semantically equal to d.
std::string print(const ContactSurgeryDiagram &diagram);

/// Same link data, coefficients and orientation; labels are compared only
/// where both sides have one.
bool semantically_equal(const ContactSurgeryDiagram &a, const ContactSurgeryDiagram &b);

/// Framed link read from a document: framings from "framing" statements,
/// hints from the tb/rot data. Throws ValidationError("missing-framing")
/// when a component has no framing.
FramedLink framed_link_from(const SourceDocument &document);

using Json = nlohmann::ordered_json;

Json json_of(const ContactSurgeryDiagram &diagram);
Json json_of(const HomologyGroup &h);
Json json_of(const ChernClassData &c);
Json json_of(const D3Result &d);
Json json_of(const std::vector<Diagnostic> &diagnostics);

/// Pretty-printed JSON, each object wrapped as {"components":..,"lk":..},
/// {"h1":..}, {"c1":..} or {"d3":..}.
std::string to_json(const ContactSurgeryDiagram &diagram);
std::string to_json(const HomologyGroup &h);
std::string to_json(const ChernClassData &c);
std::string to_json(const D3Result &d);

/// Inverse of json_of(diagram): uses the front when present, otherwise the
/// tb/rot/lk data. Throws ParseError on malformed JSON or missing fields.
ContactSurgeryDiagram diagram_from_json(const std::string &text);

/// Reads either format: JSON when the text starts with '{', DSL otherwise.
SourceDocument read_document(const std::string &text);

/// Deterministic schematic SVG of a front diagram with coefficient labels.
/// Throws ValidationError("abstract-diagram") for abstract link data.
std::string render_svg(const ContactSurgeryDiagram &diagram);

} // namespace csd
