#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sfs/surface.hpp"

namespace sfs {

// Signals a configuration that contradicts the caller's claim that the
// surface is essential (boundary-parallel disk, compressing witness).
class NotEssentialError : public std::runtime_error {
public:
    explicit NotEssentialError(const std::string& reason) : std::runtime_error(reason) {}
};

enum class MoveKind {
    RemoveTrivialCircle,
    RemoveBoundaryParallelArc,
    StraightenToVertical,
    StraightenToHorizontal,
    BoundaryCompress,
};

std::string to_string(MoveKind kind);

struct Move {
    MoveKind kind = MoveKind::RemoveTrivialCircle;
    EdgeId edge = 0;
    int component = 0;
    FaceId face = 0;      // BoundaryCompress
    bool retargeted = false;  // Case II boundary re-target was taken
};

struct TraceEntry {
    Move move;
    int complexity_after = 0;
};

// Complexity never increases along a trace and strictly drops at removals.
struct NormalizationTrace {
    std::vector<TraceEntry> entries;
};

// Case I: deletes an innermost trivial circle together with its capping disk
// piece and caps the piece on the other side. On a boundary edge the circle
// certifies a boundary-parallel disk and NotEssentialError is thrown.
CombinatorialSurface remove_trivial_circle(const CombinatorialSurface& surface,
                                           const BaseComplex& complex, EdgeId edge,
                                           int component);

// Case II: retracts the finger across the arc. The arc's far side must be a
// disk cap (interior edges); the host cycle is spliced and, when the two
// cycle neighbours are distinct strands of one edge, they are merged into
// the rerouted component with the far-side pieces band-joined. When the side
// fiber lies in the boundary of M and the arc's edge is interior, the
// removal re-targets to a boundary-parallel arc on a boundary edge at that
// fiber. `performed`, when given, receives the move actually applied.
CombinatorialSurface remove_boundary_parallel_arc(const CombinatorialSurface& surface,
                                                  const BaseComplex& complex, EdgeId edge,
                                                  int component, Move* performed = nullptr);

// Cases III/IV: validates that the edge carries only essential components
// and records the straightening; component tags already denote isotopy
// classes, so the surface value is unchanged.
CombinatorialSurface straighten_edge(const CombinatorialSurface& surface,
                                     const BaseComplex& complex, EdgeId edge);

// Applies removals (trivial circles innermost-first, then boundary-parallel
// arcs outermost-first, edges in index order) and straightens every
// populated edge. The result is well-embedded.
std::pair<CombinatorialSurface, NormalizationTrace>
normalize_surface(const CombinatorialSurface& surface, const BaseComplex& complex);

// Tags every piece of the face into the theorems' vocabulary; throws when
// the boundary data matches no legal filling.
std::vector<Piece> classify_block(const CombinatorialSurface& surface,
                                  const BaseComplex& complex, FaceId face);

// Boundary-compresses the face's once-punctured non-orientable piece down to
// a meridian disk along the given edge. Each compression raises the Euler
// characteristic by one and keeps the boundary connected; the complexity is
// unchanged. Returns the new surface and the number of compressions.
std::pair<CombinatorialSurface, int>
reduce_to_meridian_disks(const CombinatorialSurface& surface, const BaseComplex& complex,
                         FaceId face, EdgeId via_edge);

struct EssentialResult {
    enum class Kind { PseudoHorizontal, PseudoVertical, NotEssential };
    Kind kind = Kind::NotEssential;
    NormalForm form = NormalForm::None;  // the exact tag of the final surface
    CombinatorialSurface surface;
    NormalizationTrace trace;
    std::string reason;  // NotEssential
};

std::string to_string(EssentialResult::Kind kind);

// The main driver: normalize, classify the blocks, reduce stray one-sided
// pieces in regular solid tori toward the anchor face, and report the
// pseudo-horizontal / pseudo-vertical form.
EssentialResult classify_essential(const CombinatorialSurface& surface,
                                   const BaseComplex& complex, const SeifertData& data);

}  // namespace sfs
