#pragma once

#include <json.hpp>

#include "isom4d/catalog.hpp"
#include "isom4d/groupid.hpp"
#include "isom4d/lie_algebra.hpp"
#include "isom4d/stabilizer.hpp"
#include "isom4d/types.hpp"

namespace isom4d {

using json = nlohmann::ordered_json;

/// Scalars serialize as "p/q" with "/q" omitted for integers; matrices as
/// arrays of row arrays of such strings. This format is shared by every
/// report the tools write.
json rational_json(const Rational& r);
Rational rational_from_json(const json& j);

json mat_json(const Mat& m);
Mat mat_from_json(const json& j);

/// {dim, brackets: [{i, j, coeffs: [[k, "p/q"], ...]}, ...]} with 1-based
/// basis indices and only the nonzero i < j brackets listed.
json algebra_json(const LieAlgebra& g);
LieAlgebra algebra_from_json(const json& j);

json family_json(const AutFamily& fam);

json stabilizer_json(const StabilizerResult& st);

json descriptor_json(const IsometryDescriptor& d);

/// All seven algebras plus the matrix-family templates in the expression
/// grammar.
json catalog_json(const SolWeights& weights);

}  // namespace isom4d
