#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfs {

// Thrown when input data violates a structural invariant. The message names
// the first violated invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A reduced fraction with exact integer arithmetic, enough for the Euler
// obstruction test (which is an exact comparison with zero).
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    Rational operator+(const Rational& o) const;
    bool is_zero() const { return num == 0; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

enum class BlockKind {
    AnnulusBlock,  // N x I, attached along an arc of a base boundary circle
    TorusBlock,    // N x S1, consumes a full circle of the base boundary
    KleinBlock,    // N x~ S1, likewise
};

struct IsolatedFiber {
    int alpha = 0;  // multiplicity, >= 2
    int beta = 0;   // rotation numerator, gcd(alpha, beta) = 1
    bool operator==(const IsolatedFiber&) const = default;
};

// Finite invariant description of a Seifert fiber space possibly with
// singular surfaces. base_genus/base_orientable describe B0 (the base of the
// part with only isolated singular fibers); boundary_circles counts the
// circles of the base boundary whose preimages remain boundary tori or Klein
// bottles of M. Each TorusBlock/KleinBlock consumes one further circle of
// the B0 boundary; AnnulusBlocks attach along arcs of the counted circles.
struct SeifertData {
    int base_genus = 0;
    bool base_orientable = true;
    int boundary_circles = 0;
    std::vector<IsolatedFiber> isolated_fibers;
    int euler_obstruction = 0;  // integer part b of the unnormalized symbol
    std::vector<BlockKind> singular_surface_blocks;

    bool operator==(const SeifertData&) const = default;

    int count_blocks(BlockKind k) const;
    bool closed() const;  // no free boundary circles and no AnnulusBlocks
};

enum class ExcludedKind { S2xS1, S2xTwistedS1, RP3ConnectedSumRP3 };

// Gate result: Admissible manifolds go on to the surface pipeline; the three
// reducible exceptions and the trivial solid torus / solid Klein bottle
// cases are routed out.
struct ManifoldGate {
    enum class Kind { Admissible, ExcludedReducible, SolidTorus, SolidKleinBottle };
    Kind kind = Kind::Admissible;
    ExcludedKind excluded = ExcludedKind::S2xS1;  // valid when kind == ExcludedReducible

    bool admissible() const { return kind == Kind::Admissible; }
    static ManifoldGate make(Kind k) { return ManifoldGate{k, ExcludedKind::S2xS1}; }
    static ManifoldGate make_excluded(ExcludedKind e) {
        return ManifoldGate{Kind::ExcludedReducible, e};
    }
};

std::string to_string(const ManifoldGate& gate);
std::string to_string(BlockKind k);

// Checks all SeifertData invariants, returning the data unchanged on
// success. Throws ValidationError naming the first violated invariant.
SeifertData validate_seifert_data(const SeifertData& data);

// Recognizes the three reducible exceptions (S2xS1, S2x~S1, RP3#RP3) from a
// small table of normalized presentations, plus the solid torus / solid
// Klein bottle boundary cases. Presentations are normalized first (beta
// reduced mod alpha, integer parts folded into the obstruction).
//
// Table (derivations recorded where not forced by the data):
//  * S2xS1: genus-0 orientable closed base, no blocks, at most two isolated
//    fibers, rational Euler number b + sum(beta/alpha) exactly 0.
//  * S2x~S1: genus-0 orientable base whose single boundary circle is
//    consumed by one TorusBlock, at most one isolated fiber, alpha odd.
//    (pi_1 of the union is Z iff alpha is odd, forcing an S2-bundle; the
//    non-orientable one. Even alpha gives H1 = Z + Z/2, a different,
//    irreducible manifold.)
//  * RP3#RP3: genus-1 non-orientable closed base, no fibers, no blocks,
//    obstruction 0, read in the orientable-total-space class; the schema
//    does not record fiber-orientation monodromy, so this entry is a
//    documented convention.
ManifoldGate is_excluded_manifold(const SeifertData& data);

// True when M is known to contain a horizontal surface: always when a
// singular-surface block is present, always with non-empty boundary, and
// for closed data with isolated fibers only iff the rational Euler
// obstruction b + sum(beta_i/alpha_i) vanishes (exact arithmetic).
bool has_horizontal_surface(const SeifertData& data);

}  // namespace sfs
