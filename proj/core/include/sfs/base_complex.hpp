#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfs/seifert_data.hpp"

namespace sfs {

using VertexId = int;
using EdgeId = int;
using FaceId = int;

enum class EdgeKind {
    Plain,            // preimage a vertical annulus
    Mobius,           // preimage a vertical Mobius strip (block b-edges)
    Boundary,         // lies in a circle of the B0 boundary
    SingularSurface,  // the c-edges; excluded from the edge family E
};

enum class FaceKind {
    RegularTorus,      // model regular solid torus
    NonRegularTorus,   // contains one isolated singular fiber (alpha, beta)
    SolidKleinBottle,  // the R-cell of a singular-surface block (N x I after cutting)
};

struct Edge {
    EdgeId id = 0;
    EdgeKind kind = EdgeKind::Plain;
    VertexId from = 0, to = 0;
    // True when the preimage lies in the boundary of M: unconsumed Boundary
    // edges and the two Mobius edges of an AnnulusBlock. A Boundary edge
    // consumed as an AnnulusBlock attaching arc has preimage in the interior
    // (the interface annulus), so the flag is false there.
    bool in_manifold_boundary = false;
};

struct FaceSlot {
    EdgeId edge = 0;
    int sign = +1;  // +1: traversed from->to in the boundary word
};

struct Face {
    FaceId id = 0;
    FaceKind kind = FaceKind::RegularTorus;
    int alpha = 0, beta = 0;                   // NonRegularTorus only
    BlockKind block = BlockKind::AnnulusBlock; // SolidKleinBottle only
    std::vector<FaceSlot> boundary;            // cyclic boundary word
};

// Where a given edge appears among face boundary words.
struct SlotRef {
    FaceId face = 0;
    int slot = 0;  // index into face.boundary
};

// The CW structure tau on the base B and the induced block decomposition of
// M: edges not marked SingularSurface form the family E (vertical annuli and
// Mobius strips), faces are the solid-torus / solid-Klein-bottle blocks.
struct BaseComplex {
    int vertex_count = 0;
    std::vector<Edge> edges;
    std::vector<Face> faces;

    const Edge& edge(EdgeId e) const { return edges.at(static_cast<size_t>(e)); }
    const Face& face(FaceId f) const { return faces.at(static_cast<size_t>(f)); }

    bool in_edge_family(EdgeId e) const {
        return edge(e).kind != EdgeKind::SingularSurface;
    }

    // All boundary-word slots carrying edge e, in (face, slot) order.
    std::vector<SlotRef> slots_of_edge(EdgeId e) const;

    // Euler characteristic of the subcomplex without singular-surface edges,
    // R-cells, and vertices incident only to singular-surface edges; this
    // recovers chi(B0).
    int chi_without_blocks() const;

    // Euler characteristic of the full complex (equals chi(B)).
    int chi_full() const;

    bool regular_face_graph_connected() const;
};

// Builds the canonical complex for validated, admissible data: a fan-
// triangulated identification polygon for B0 (letters subdivided so no
// 1-cell is a loop), one interior triangle per isolated fiber, and the
// rectangle / cut-annulus cells of the singular-surface blocks. The
// construction is deterministic.
BaseComplex build_complex(const SeifertData& data);

// For each E-family edge slot of the face, the face on the other side, or
// nullopt when the edge has no second slot (it lies in the boundary of M).
std::vector<std::pair<EdgeId, std::optional<FaceId>>>
block_neighbors(const BaseComplex& complex, FaceId face);

}  // namespace sfs
