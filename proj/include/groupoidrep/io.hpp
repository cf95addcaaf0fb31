#pragma once

// JSON reading and writing for every object the command line handles.
//
// Matrices are lists of rows, entries [re, im] (a bare number is read as a
// real entry). Groupoids are either written out in full or given by one of
// the compact forms {"pair": n}, {"group": G}, {"bundle": [G, ...]},
// {"action": {"group": G, "points": n, "act": [[h.x]]}},
// {"gauge": {"group": G, "points": n, "act": [[p.h]]}} or
// {"gauge": {"group": G, "base": n}} for the trivial bundle.
// Groups are names (Z<n>, S<n>, D<n>, Q8, products joined by 'x') or
// {"table": [[...]]}.

#include "groupoidrep/bisections.hpp"
#include "groupoidrep/convolution.hpp"
#include "groupoidrep/field.hpp"
#include "groupoidrep/morita.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace groupoidrep {

using json = nlohmann::json;

/// Malformed or incomplete input.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse errors carry the line and column.
json parse_document(const std::string& text, const std::string& origin = "input");
json load_document(const std::string& path);

/// x rounded to 12 significant digits, so dumps print at most that many.
double sig12(double x);

json to_json(const cplx& z);
json to_json(const Matrix& a);
Matrix matrix_from_json(const json& j);
json to_json(const Vector& v);
Vector vector_from_json(const json& j);

FiniteGroup group_from_json(const json& j);
json to_json(const FiniteGroup& h);

struct LoadedGroupoid {
    Groupoid groupoid;
    std::string kind;                          // pair, group, bundle, action, gauge, full
    std::optional<PrincipalBundle> principal;  // set for gauge inputs
};

LoadedGroupoid groupoid_from_json(const json& j);
/// Full form: objects, src, tgt, comp (dense, -1 where undefined), inv, unit.
json to_json(const Groupoid& g);

/// Missing or "counting" gives counting measure; {"weights": [...]} or
/// {"source": [c per object]} otherwise.
HaarSystem haar_from_json(const Groupoid& g, const json* j);
json to_json(const HaarSystem& w);

/// Explicit {"dims", "matrices", "unitary"?} or a builtin
/// {"builtin": "trivial" | "left_regular" | "right_regular" | "conjugation"}.
/// Without an explicit "unitary" flag, unitarity is measured.
Representation rep_from_json(const Groupoid& g, const HaarSystem& w, const json& j);
json to_json(const Representation& rho);

HilbertField field_from_json(const json& j);
json to_json(const HilbertField& f);
Section section_from_json(const json& j);
json to_json(const Section& s);
json to_json(const FieldMorphism& phi);

/// {"positions": [...], "resolution": r} or {"dist": [[...]], "resolution": r}.
SampledSpace space_from_json(const json& j);

Bibundle bibundle_from_json(const Groupoid& left, const Groupoid& right, const json& j);
json to_json(const Bibundle& b);

/// Sparse [{"arrow": id, "re": x, "im": y}].
ConvElement conv_from_json(const Groupoid& g, const json& j);
json to_json(const ConvElement& f);

Bisection bisection_from_json(const json& j);
json to_json(const Bisection& b);

json to_json(const Report& r);
json to_json(const RelationFunction& f);

/// key: value lines, nested keys joined by dots.
std::string to_text(const json& j);

}  // namespace groupoidrep
