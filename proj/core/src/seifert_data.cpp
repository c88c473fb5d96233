#include "sfs/seifert_data.hpp"

#include <algorithm>
#include <numeric>

namespace sfs {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

int SeifertData::count_blocks(BlockKind k) const {
    return static_cast<int>(std::count(singular_surface_blocks.begin(),
                                       singular_surface_blocks.end(), k));
}

bool SeifertData::closed() const {
    return boundary_circles == 0 && count_blocks(BlockKind::AnnulusBlock) == 0;
}

std::string to_string(BlockKind k) {
    switch (k) {
        case BlockKind::AnnulusBlock: return "AnnulusBlock";
        case BlockKind::TorusBlock: return "TorusBlock";
        case BlockKind::KleinBlock: return "KleinBlock";
    }
    return "?";
}

std::string to_string(const ManifoldGate& gate) {
    switch (gate.kind) {
        case ManifoldGate::Kind::Admissible: return "Admissible";
        case ManifoldGate::Kind::SolidTorus: return "SolidTorus";
        case ManifoldGate::Kind::SolidKleinBottle: return "SolidKleinBottle";
        case ManifoldGate::Kind::ExcludedReducible:
            switch (gate.excluded) {
                case ExcludedKind::S2xS1: return "ExcludedReducible(S2xS1)";
                case ExcludedKind::S2xTwistedS1: return "ExcludedReducible(S2x~S1)";
                case ExcludedKind::RP3ConnectedSumRP3: return "ExcludedReducible(RP3#RP3)";
            }
    }
    return "?";
}

SeifertData validate_seifert_data(const SeifertData& data) {
    if (data.base_genus < 0)
        throw ValidationError("base_genus must be non-negative");
    if (!data.base_orientable && data.base_genus < 1)
        throw ValidationError("non-orientable base requires genus >= 1");
    if (data.boundary_circles < 0)
        throw ValidationError("boundary_circles must be non-negative");
    for (const auto& f : data.isolated_fibers) {
        if (f.alpha < 2)
            throw ValidationError("isolated fiber has alpha = " + std::to_string(f.alpha) +
                                  " < 2");
        if (std::gcd(f.alpha, f.beta < 0 ? -f.beta : f.beta) != 1)
            throw ValidationError("gcd(" + std::to_string(f.alpha) + ", " +
                                  std::to_string(f.beta) + ") != 1");
    }
    if (data.count_blocks(BlockKind::AnnulusBlock) > 0 && data.boundary_circles < 1)
        throw ValidationError("N x I block requires base boundary");
    return data;
}

namespace {

Rational euler_number(const SeifertData& d) {
    Rational e(d.euler_obstruction);
    for (const auto& f : d.isolated_fibers) e = e + Rational(f.beta, f.alpha);
    return e;
}

}  // namespace

ManifoldGate is_excluded_manifold(const SeifertData& data) {
    using Kind = ManifoldGate::Kind;
    const int annuli = data.count_blocks(BlockKind::AnnulusBlock);
    const int tori = data.count_blocks(BlockKind::TorusBlock);
    const int kleins = data.count_blocks(BlockKind::KleinBlock);
    const int fibers = static_cast<int>(data.isolated_fibers.size());

    // S2xS1: genus-0 orientable closed, no blocks, <= 2 fibers, e = 0.
    if (data.base_orientable && data.base_genus == 0 && data.boundary_circles == 0 &&
        data.singular_surface_blocks.empty() && fibers <= 2 &&
        euler_number(data).is_zero()) {
        return ManifoldGate::make_excluded(ExcludedKind::S2xS1);
    }

    // S2x~S1: solid torus glued onto N x S1 along the full boundary torus,
    // fiber multiplicity odd (or absent).
    if (data.base_orientable && data.base_genus == 0 && data.boundary_circles == 0 &&
        tori == 1 && annuli == 0 && kleins == 0 && fibers <= 1 &&
        (fibers == 0 || data.isolated_fibers[0].alpha % 2 != 0)) {
        return ManifoldGate::make_excluded(ExcludedKind::S2xTwistedS1);
    }

    // RP3#RP3: RP2 base, no fibers, obstruction 0 (orientable-class reading).
    if (!data.base_orientable && data.base_genus == 1 && data.boundary_circles == 0 &&
        data.singular_surface_blocks.empty() && fibers == 0 &&
        data.euler_obstruction == 0) {
        return ManifoldGate::make_excluded(ExcludedKind::RP3ConnectedSumRP3);
    }

    // Trivial pieces with compressible boundary.
    if (data.base_orientable && data.base_genus == 0 && data.boundary_circles == 1 &&
        fibers == 0 && tori == 0 && kleins == 0) {
        if (annuli == 0) return ManifoldGate::make(Kind::SolidTorus);
        if (annuli == 1) return ManifoldGate::make(Kind::SolidKleinBottle);
    }

    return ManifoldGate::make(Kind::Admissible);
}

bool has_horizontal_surface(const SeifertData& data) {
    if (!data.singular_surface_blocks.empty()) return true;
    if (data.boundary_circles >= 1) return true;
    return euler_number(data).is_zero();
}

}  // namespace sfs
