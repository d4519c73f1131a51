#pragma once

// JSON and CSV forms of the library's values.
//
//   groupoid  {"objects": [...], "morphisms": [{"label", "source", "target", "inverse"}],
//              "comp": [[i, j, k], ...]}
//   element   {"groupoid_hash": "<16 hex>", "coeffs": [[re, im], ...]}
//   matrix    {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
//   space     {"frames": [{"label", "events": [...]}], "identifications": [["A.a", "B.b"], ...]}
//   cell      {"a": i, "a'": j, "b": k, "b'": l}
//
// Malformed input raises FormatError; structural problems raise the errors of
// the corresponding constructor.

#include <string>

#include "json.hpp"

#include "gpdkit/algebra.hpp"
#include "gpdkit/error.hpp"
#include "gpdkit/groupoid.hpp"
#include "gpdkit/matrix.hpp"
#include "gpdkit/schwinger.hpp"

namespace gpdkit::io {

using Json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

Json groupoid_to_json(const FiniteGroupoid& g);
// Units are recognized as loops m with comp(m, m) = m.
FiniteGroupoid groupoid_from_json(const Json& j);
// FNV-1a 64 of the compact canonical JSON, as 16 lowercase hex digits.
std::string groupoid_hash(const FiniteGroupoid& g);

Json element_to_json(const AlgebraElement& f);
// Throws ParentMismatch when the stored hash does not match `parent`.
AlgebraElement element_from_json(const Json& j, const FiniteGroupoid& parent);

Json matrix_to_json(const MatrixC& m);
MatrixC matrix_from_json(const Json& j);
// One row per line, entries "re+imj" separated by commas.
std::string matrix_to_csv(const MatrixC& m);
// Shortest round-trip decimal form of a double.
std::string format_double(double x);

Json event_space_to_json(const EventSpace& space);
EventSpace event_space_from_json(const Json& j);

Json cell_to_json(const TwoCell& cell);
TwoCell cell_from_json(const Json& j, const EventSpace& space);

}  // namespace gpdkit::io
