#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfs/base_complex.hpp"

namespace sfs {

// One component of the intersection of the surface with an edge preimage
// (vertical annulus or Mobius strip). The tags record isotopy classes:
// HorizontalArc is an essential arc, VerticalCurve an essential closed
// curve (the core of a Mobius-edge preimage when core is set).
enum class ComponentType {
    HorizontalArc,
    VerticalCurve,
    TrivialCircle,
    BoundaryParallelArc,
};

struct EdgeComponent {
    ComponentType type = ComponentType::HorizontalArc;
    bool core = false;  // VerticalCurve on a Mobius edge: the core fiber (an l-curve)
    int side = 0;       // BoundaryParallelArc: boundary fiber it cuts toward (0 = from, 1 = to)
    // Marks the arc as a boundary-compressing witness; removing it from a
    // surface declared essential is a contract violation.
    bool compression_witness = false;
};

struct EdgeSystem {
    std::vector<EdgeComponent> components;  // transversal order, from-side first
};

// One crossing of a piece boundary through an edge component. slot selects
// the face-word occurrence (needed when an edge meets the same face twice);
// entry_end says at which physical end of the strand the boundary cycle
// enters (0 = the from-side of the edge; Mobius edges use the local frame of
// the slot).
struct StrandRef {
    EdgeId edge = 0;
    int component = 0;
    int slot = 0;
    int entry_end = 0;
};

// A boundary cycle of a piece: either a single closed strand (a vertical
// curve or trivial circle) or a cyclic sequence of crossings joined by
// corner passages at vertex fibers.
struct Cycle {
    bool closed = false;
    std::vector<StrandRef> strands;
};

enum class PieceTag {
    Raw,
    HorizontalDisk,
    VerticalAnnulus,
    VerticalMobius,
    OneSidedAnnulus,
    PairOfPants,
    PuncturedNonorientable,
    ExceptionalTorusPiece,
    ExceptionalKleinPiece,
};

std::string to_string(PieceTag tag);

// A component of the surface inside one face block. Tagged pieces carry
// their topology implicitly; Raw pieces carry it explicitly.
struct Piece {
    FaceId face = 0;
    PieceTag tag = PieceTag::Raw;
    int raw_chi = 1;
    bool raw_orientable = true;
    bool raw_two_sided = true;
    int k = 0, q = 0;  // PuncturedNonorientable: boundary is a (2k, q)-curve
    std::vector<Cycle> cycles;
};

int piece_chi(const Piece& p);
bool piece_orientable(const Piece& p);
bool piece_two_sided_in_block(const Piece& p);

// The discrete stand-in for a properly embedded surface: per-edge curve
// systems plus per-block pieces. Gluing is implicit: an edge component
// referenced by two piece crossings is identified along them; components
// referenced once lie in the boundary of M. The model represents the
// surface cut along the vertex fibers, so Euler characteristic bookkeeping
// is sum-of-pieces minus glued arc pairs.
struct CombinatorialSurface {
    std::vector<EdgeSystem> systems;  // indexed by EdgeId
    std::vector<Piece> pieces;

    EdgeSystem& system(EdgeId e) { return systems.at(static_cast<size_t>(e)); }
    const EdgeSystem& system(EdgeId e) const { return systems.at(static_cast<size_t>(e)); }

    static CombinatorialSurface empty(const BaseComplex& complex);
};

struct CompRef {
    int piece = 0, cycle = 0, pos = 0;
};

// (edge, component) -> referencing crossings, in piece order.
std::map<std::pair<EdgeId, int>, std::vector<CompRef>>
build_ref_index(const CombinatorialSurface& surface);

// Structural validity: reference counts (two for interior edges, one on the
// boundary of M), slot legality, no horizontal/vertical mix on an edge,
// piece tag legality for the face kind, PuncturedNonorientable invariants.
// Throws ValidationError on the first violation.
void validate_surface(const CombinatorialSurface& surface, const BaseComplex& complex);

// Total component count over the edge family E.
int complexity(const CombinatorialSurface& surface, const BaseComplex& complex);

// Every edge system purely horizontal arcs or purely vertical curves.
// Minimality is the caller's contract and is not decided here.
bool is_well_embedded(const CombinatorialSurface& surface);

enum class SlopeTag { Horizontal, Vertical };

struct SurfaceInvariants {
    int euler_characteristic = 0;
    bool orientable = true;
    bool two_sided = true;
    int boundary_components = 0;
    std::vector<SlopeTag> boundary_slope_tags;
    int complexity = 0;
};

SurfaceInvariants surface_invariants(const CombinatorialSurface& surface,
                                     const BaseComplex& complex);

// Independent Euler characteristic: builds a polygon schema for every piece
// (boundary cells plus handle/crosscap letters), identifies cells across
// glued strands, and counts vertices, edges and faces of the quotient.
int chi_by_cell_count(const CombinatorialSurface& surface, const BaseComplex& complex);

enum class NormalForm { Horizontal, Vertical, PseudoHorizontal, PseudoVertical, None };

std::string to_string(NormalForm form);

// Tags the surface from its (tagged, non-Raw) pieces: Horizontal/Vertical
// when pure, Pseudo* when exceptional pieces sit only in the faces the
// definitions permit, None otherwise. Throws if a Raw piece is present.
NormalForm classify_normal_form(const CombinatorialSurface& surface,
                                const BaseComplex& complex);

namespace piece_kind {
bool is_horizontal(PieceTag tag);
bool is_vertical(PieceTag tag);
bool is_exceptional(PieceTag tag);
}  // namespace piece_kind

}  // namespace sfs
