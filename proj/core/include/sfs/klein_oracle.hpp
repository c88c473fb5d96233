#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfs/seifert_data.hpp"

namespace sfs {

// Monodromy of the model block D x I / ~: identity and rational rotations
// give fibered solid tori, the reflection across the l1-l2 diameter gives
// the fibered solid Klein bottle.
struct Monodromy {
    enum class Kind { Identity, RationalRotation, Reflection };
    Kind kind = Kind::Reflection;
    int p = 0, q = 1;  // RationalRotation only

    static Monodromy identity() { return {Kind::Identity, 0, 1}; }
    static Monodromy rotation(int p, int q) { return {Kind::RationalRotation, p, q}; }
    static Monodromy reflection() { return {Kind::Reflection, 0, 1}; }
};

// A system of disjoint arcs on the meridian disk: marked points on the
// boundary circle are the tops of the vertical boundary arcs, matched by a
// non-crossing perfect matching. With the l-points present the cyclic order
// is l1, d'_1..d'_k, l2, d''_k..d''_1; without them d'_1..d'_k, d''_k..d''_1.
// The cores l1, l2 are hit at most once, so they are either both marked or
// both absent (a perfect matching needs an even point count).
struct ArcPattern {
    int k = 0;          // number of d-boundary curves
    bool with_l = true; // l1 and l2 marked
    Monodromy monodromy;
    std::vector<std::pair<int, int>> arcs;  // position pairs, lo < hi, sorted

    int point_count() const { return 2 * k + (with_l ? 2 : 0); }
    std::string label(int position) const;

    // Position action of the monodromy on marked points.
    int monodromy_map(int position) const;

    static ArcPattern canonical(int k, Monodromy m = Monodromy::reflection());
    bool is_canonical() const;
};

struct ReconstructionComponent {
    int chi = 0;
    bool orientable = true;
    bool two_sided = true;
    int boundary_components = 0;
    int l1_count = 0, l2_count = 0, d_count = 0;
    // One of: horizontal_disk, mobius, annulus, one_sided_annulus,
    // pair_of_pants, unrecognized (reflection monodromy); generic names
    // otherwise.
    std::string signature;
};

// The surface reconstructed from a pattern by identifying the top arc
// system with its monodromy image on the bottom disk.
struct Reconstruction {
    int chi = 0;
    bool orientable = true;
    bool two_sided = true;
    int boundary_components = 0;
    int s_prime_components = 0;               // disk pieces of the cut surface
    std::vector<std::string> boundary_trace;  // vertical labels along one cut-boundary cycle
    std::vector<ReconstructionComponent> components;
};

struct CompressingWitness {
    int vertical_lo = 0, vertical_hi = 0;  // adjacent marked positions used by the disk
    int arc_lo = 0, arc_hi = 0;            // pattern arc met an odd number of times
    int intersection_count = 0;            // crossings with that arc (certified)
};

struct VerificationReport {
    int k_max = 0;
    int patterns_total = 0;
    std::vector<std::pair<std::string, int>> per_type_counts;  // sorted by name
    int compressible_count = 0;
    std::vector<std::string> anomalies;
};

// Every valid pattern with at most k_max d-curves, each exactly once up to
// the reflection across the l1-l2 diameter, in a deterministic order.
// Non-reflection monodromies only admit patterns without l-points.
std::vector<ArcPattern> enumerate_arc_patterns(int k_max, Monodromy monodromy);

Reconstruction reconstruct_from_pattern(const ArcPattern& pattern);

// For the canonical pattern: no witness when k <= 1; for k >= 2 the disk cut
// off from the boundary annulus by the first two primed verticals, certified
// to cross the l1-d'_1 arc exactly once by cyclic endpoint-order parity.
std::optional<CompressingWitness> find_compressing_curve(const ArcPattern& pattern);

enum class BoundaryCheck { BoundsOneSided, NotBoundary };
enum class NotBoundaryReason { OddFirstCoordinate, KZero, KEqualsQUnresolved };

struct SolidTorusBoundary {
    BoundaryCheck kind = BoundaryCheck::NotBoundary;
    int k = 0;  // BoundsOneSided: p = 2k
    NotBoundaryReason reason = NotBoundaryReason::OddFirstCoordinate;
};

// Frohman's boundary criterion for one-sided incompressible surfaces in a
// solid torus: (p, q) bounds iff p = 2k with k != 0, and the converse is
// known only for k != q, so the k == q case is flagged, not decided.
SolidTorusBoundary solid_torus_boundary_check(int p, int q);

VerificationReport verify_classification(int k_max,
                                         Monodromy monodromy = Monodromy::reflection());

}  // namespace sfs
