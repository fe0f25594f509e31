#pragma once

#include <stdexcept>
#include <string>

namespace quasigeo {

enum class ErrorKind {
    DegenerateInput,        // coincident/collinear input points
    FlatTetrahedron,        // zero volume without allow_flat
    MalformedInput,         // unparseable or inconsistent input document
    VertexNotOnFace,        // (vertex, face) query with vertex opposite the face
    AnchorNotOnCurve,       // side-angle query at a vertex the curve does not visit
    MalformedCurve,         // curve representation violates its own invariants
    NonSimpleCurve,         // operation requires a simple curve
    NonAdjacentFaces,       // development step between faces with no shared edge
    NumericalDegeneracy,    // computation lost meaning within tolerance
    InternalContradiction,  // a proven-impossible branch was reached (tolerance bug)
    IoFailure,              // file output failed
};

const char* error_kind_name(ErrorKind kind);

struct Error : std::runtime_error {
    ErrorKind kind;
    Error(ErrorKind k, const std::string& message)
        : std::runtime_error(message), kind(k) {}
};

}  // namespace quasigeo
