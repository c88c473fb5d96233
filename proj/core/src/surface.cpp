#include "sfs/surface.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace sfs {

std::string to_string(PieceTag tag) {
    switch (tag) {
        case PieceTag::Raw: return "Raw";
        case PieceTag::HorizontalDisk: return "HorizontalDisk";
        case PieceTag::VerticalAnnulus: return "VerticalAnnulus";
        case PieceTag::VerticalMobius: return "VerticalMobius";
        case PieceTag::OneSidedAnnulus: return "OneSidedAnnulus";
        case PieceTag::PairOfPants: return "PairOfPants";
        case PieceTag::PuncturedNonorientable: return "PuncturedNonorientable";
        case PieceTag::ExceptionalTorusPiece: return "ExceptionalTorusPiece";
        case PieceTag::ExceptionalKleinPiece: return "ExceptionalKleinPiece";
    }
    return "?";
}

std::string to_string(NormalForm form) {
    switch (form) {
        case NormalForm::Horizontal: return "Horizontal";
        case NormalForm::Vertical: return "Vertical";
        case NormalForm::PseudoHorizontal: return "PseudoHorizontal";
        case NormalForm::PseudoVertical: return "PseudoVertical";
        case NormalForm::None: return "None";
    }
    return "?";
}

int piece_chi(const Piece& p) {
    switch (p.tag) {
        case PieceTag::Raw: return p.raw_chi;
        case PieceTag::HorizontalDisk: return 1;
        case PieceTag::VerticalAnnulus:
        case PieceTag::VerticalMobius:
        case PieceTag::OneSidedAnnulus: return 0;
        case PieceTag::PairOfPants: return -1;
        case PieceTag::PuncturedNonorientable: return 1 - p.k;
        case PieceTag::ExceptionalTorusPiece:
        case PieceTag::ExceptionalKleinPiece: return -1;
    }
    return 0;
}

bool piece_orientable(const Piece& p) {
    switch (p.tag) {
        case PieceTag::Raw: return p.raw_orientable;
        case PieceTag::VerticalMobius:
        case PieceTag::PuncturedNonorientable:
        case PieceTag::ExceptionalKleinPiece: return false;
        default: return true;
    }
}

bool piece_two_sided_in_block(const Piece& p) {
    switch (p.tag) {
        case PieceTag::Raw: return p.raw_two_sided;
        case PieceTag::OneSidedAnnulus:
        case PieceTag::PairOfPants:
        case PieceTag::PuncturedNonorientable:
        case PieceTag::ExceptionalTorusPiece:
        case PieceTag::ExceptionalKleinPiece: return false;
        default: return true;
    }
}

namespace piece_kind {
bool is_horizontal(PieceTag tag) { return tag == PieceTag::HorizontalDisk; }
bool is_vertical(PieceTag tag) {
    return tag == PieceTag::VerticalAnnulus || tag == PieceTag::VerticalMobius ||
           tag == PieceTag::OneSidedAnnulus;
}
bool is_exceptional(PieceTag tag) {
    return tag == PieceTag::PairOfPants || tag == PieceTag::PuncturedNonorientable ||
           tag == PieceTag::ExceptionalTorusPiece || tag == PieceTag::ExceptionalKleinPiece;
}
}  // namespace piece_kind

CombinatorialSurface CombinatorialSurface::empty(const BaseComplex& complex) {
    CombinatorialSurface s;
    s.systems.resize(complex.edges.size());
    return s;
}

std::map<std::pair<EdgeId, int>, std::vector<CompRef>>
build_ref_index(const CombinatorialSurface& surface) {
    std::map<std::pair<EdgeId, int>, std::vector<CompRef>> index;
    for (size_t pi = 0; pi < surface.pieces.size(); ++pi) {
        const Piece& p = surface.pieces[pi];
        for (size_t ci = 0; ci < p.cycles.size(); ++ci) {
            const Cycle& c = p.cycles[ci];
            for (size_t si = 0; si < c.strands.size(); ++si) {
                const StrandRef& r = c.strands[si];
                index[{r.edge, r.component}].push_back(
                    {static_cast<int>(pi), static_cast<int>(ci), static_cast<int>(si)});
            }
        }
    }
    return index;
}

namespace {

bool is_closed_type(ComponentType t) {
    return t == ComponentType::VerticalCurve || t == ComponentType::TrivialCircle;
}

// The b-edge of a KleinBlock R-cell carries the reflection; crossing it
// reverses fiber orientation and the endpoint order.
bool is_klein_b_edge(const BaseComplex& cx, EdgeId e) {
    if (cx.edge(e).kind != EdgeKind::Mobius) return false;
    for (const Face& f : cx.faces)
        if (f.kind == FaceKind::SolidKleinBottle && f.block == BlockKind::KleinBlock)
            for (const FaceSlot& s : f.boundary)
                if (s.edge == e) return true;
    return false;
}

struct SignedUnionFind {
    std::vector<int> parent, sign;
    explicit SignedUnionFind(size_t n) : parent(n), sign(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::pair<int, int> find(int x) {
        if (parent[static_cast<size_t>(x)] == x) return {x, 1};
        auto [r, s] = find(parent[static_cast<size_t>(x)]);
        parent[static_cast<size_t>(x)] = r;
        sign[static_cast<size_t>(x)] *= s;
        return {r, sign[static_cast<size_t>(x)]};
    }
    // false when the relation contradicts the existing one
    bool merge(int a, int b, int rel) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) return sa * sb == rel;
        parent[static_cast<size_t>(ra)] = rb;
        sign[static_cast<size_t>(ra)] = sa * sb * rel;
        return true;
    }
};

int word_sign(const BaseComplex& cx, const CombinatorialSurface& s, const CompRef& r,
              EdgeId e) {
    const Piece& p = s.pieces[static_cast<size_t>(r.piece)];
    const StrandRef& inst =
        p.cycles[static_cast<size_t>(r.cycle)].strands[static_cast<size_t>(r.pos)];
    const Face& f = cx.face(p.face);
    (void)e;
    return f.boundary[static_cast<size_t>(inst.slot)].sign;
}

// Physical endpoint of a strand instance: its local entry end, reflected
// when the instance sits on the non-reference slot of a KleinBlock b-edge.
struct Frames {
    const BaseComplex& cx;
    const CombinatorialSurface& s;
    std::set<EdgeId> klein_b;

    Frames(const BaseComplex& cx_, const CombinatorialSurface& s_) : cx(cx_), s(s_) {
        for (const Edge& e : cx.edges)
            if (is_klein_b_edge(cx, e.id)) klein_b.insert(e.id);
    }

    bool swapped(const StrandRef& inst, FaceId face) const {
        if (!klein_b.count(inst.edge)) return false;
        auto slots = cx.slots_of_edge(inst.edge);
        return !(slots.front().face == face && slots.front().slot == inst.slot);
    }

    int physical_entry(const StrandRef& inst, FaceId face) const {
        return swapped(inst, face) ? 1 - inst.entry_end : inst.entry_end;
    }
};

}  // namespace

void validate_surface(const CombinatorialSurface& surface, const BaseComplex& complex) {
    if (surface.systems.size() != complex.edges.size())
        throw ValidationError("surface edge systems do not match the complex");

    for (const Edge& e : complex.edges) {
        const EdgeSystem& sys = surface.system(e.id);
        if (e.kind == EdgeKind::SingularSurface && !sys.components.empty())
            throw ValidationError("components on a singular-surface edge");
        bool has_h = false, has_v = false;
        for (const EdgeComponent& c : sys.components) {
            if (c.type == ComponentType::HorizontalArc) has_h = true;
            if (c.type == ComponentType::VerticalCurve) has_v = true;
            if (c.core && e.kind != EdgeKind::Mobius)
                throw ValidationError("core curve on a non-Mobius edge");
            if (c.side != 0 && c.side != 1)
                throw ValidationError("boundary-parallel arc side out of range");
        }
        if (has_h && has_v)
            throw ValidationError("edge " + std::to_string(e.id) +
                                  " mixes horizontal arcs and vertical curves");
    }

    for (const Piece& p : surface.pieces) {
        if (p.face < 0 || p.face >= static_cast<FaceId>(complex.faces.size()))
            throw ValidationError("piece on unknown face");
        const Face& f = complex.face(p.face);
        switch (p.tag) {
            case PieceTag::VerticalMobius:
            case PieceTag::OneSidedAnnulus:
            case PieceTag::PairOfPants:
                if (f.kind != FaceKind::SolidKleinBottle)
                    throw ValidationError(to_string(p.tag) + " outside a solid Klein bottle face");
                break;
            case PieceTag::ExceptionalTorusPiece:
                if (f.kind != FaceKind::SolidKleinBottle || f.block != BlockKind::TorusBlock)
                    throw ValidationError("ExceptionalTorusPiece outside an N x S1 block");
                break;
            case PieceTag::ExceptionalKleinPiece:
                if (f.kind != FaceKind::SolidKleinBottle || f.block != BlockKind::KleinBlock)
                    throw ValidationError("ExceptionalKleinPiece outside an N x~ S1 block");
                break;
            case PieceTag::PuncturedNonorientable:
                if (f.kind == FaceKind::SolidKleinBottle)
                    throw ValidationError("PuncturedNonorientable inside a block face");
                if (p.k < 1) throw ValidationError("PuncturedNonorientable requires k >= 1");
                if (std::gcd(2 * p.k, p.q < 0 ? -p.q : p.q) != 1)
                    throw ValidationError("PuncturedNonorientable requires gcd(2k, q) = 1");
                break;
            case PieceTag::Raw: {
                int b = static_cast<int>(p.cycles.size());
                int defect = 2 - p.raw_chi - b;
                if (p.raw_orientable && (defect < 0 || defect % 2 != 0))
                    throw ValidationError("raw piece has no orientable genus");
                if (!p.raw_orientable && defect < 1)
                    throw ValidationError("raw piece has no non-orientable genus");
                break;
            }
            default: break;
        }
        for (const Cycle& c : p.cycles) {
            if (c.closed) {
                if (c.strands.size() != 1)
                    throw ValidationError("closed cycle must hold exactly one strand");
            } else if (c.strands.empty()) {
                throw ValidationError("empty boundary cycle");
            }
            for (const StrandRef& r : c.strands) {
                if (r.edge < 0 || r.edge >= static_cast<EdgeId>(complex.edges.size()))
                    throw ValidationError("strand on unknown edge");
                const EdgeSystem& sys = surface.system(r.edge);
                if (r.component < 0 ||
                    r.component >= static_cast<int>(sys.components.size()))
                    throw ValidationError("strand references missing component");
                const EdgeComponent& comp = sys.components[static_cast<size_t>(r.component)];
                if (c.closed != is_closed_type(comp.type))
                    throw ValidationError("cycle/component closedness mismatch");
                if (r.slot < 0 || r.slot >= static_cast<int>(f.boundary.size()))
                    throw ValidationError("strand slot out of range");
                if (f.boundary[static_cast<size_t>(r.slot)].edge != r.edge)
                    throw ValidationError("strand slot does not carry its edge");
                if (r.entry_end != 0 && r.entry_end != 1)
                    throw ValidationError("strand entry end out of range");
            }
        }
    }

    auto index = build_ref_index(surface);
    for (const Edge& e : complex.edges) {
        if (e.kind == EdgeKind::SingularSurface) continue;
        const EdgeSystem& sys = surface.system(e.id);
        for (int ci = 0; ci < static_cast<int>(sys.components.size()); ++ci) {
            auto it = index.find({e.id, ci});
            int refs = it == index.end() ? 0 : static_cast<int>(it->second.size());
            int expect = e.in_manifold_boundary ? 1 : 2;
            if (refs != expect)
                throw ValidationError("edge " + std::to_string(e.id) + " component " +
                                      std::to_string(ci) + " has " + std::to_string(refs) +
                                      " references, expected " + std::to_string(expect));
        }
    }
}

int complexity(const CombinatorialSurface& surface, const BaseComplex& complex) {
    int total = 0;
    for (const Edge& e : complex.edges)
        if (e.kind != EdgeKind::SingularSurface)
            total += static_cast<int>(surface.system(e.id).components.size());
    return total;
}

bool is_well_embedded(const CombinatorialSurface& surface) {
    for (const EdgeSystem& sys : surface.systems) {
        for (const EdgeComponent& c : sys.components) {
            if (c.type == ComponentType::TrivialCircle ||
                c.type == ComponentType::BoundaryParallelArc)
                return false;
        }
        bool has_h = false, has_v = false;
        for (const EdgeComponent& c : sys.components) {
            if (c.type == ComponentType::HorizontalArc) has_h = true;
            if (c.type == ComponentType::VerticalCurve) has_v = true;
        }
        if (has_h && has_v) return false;
    }
    return true;
}

SurfaceInvariants surface_invariants(const CombinatorialSurface& surface,
                                     const BaseComplex& complex) {
    validate_surface(surface, complex);
    SurfaceInvariants out;
    out.complexity = complexity(surface, complex);

    auto index = build_ref_index(surface);
    Frames frames(complex, surface);

    // chi: piece sum minus glued arc pairs (closed-curve gluings are free).
    int chi = 0;
    for (const Piece& p : surface.pieces) chi += piece_chi(p);
    for (const auto& [key, refs] : index) {
        if (refs.size() != 2) continue;
        const EdgeComponent& comp =
            surface.system(key.first).components[static_cast<size_t>(key.second)];
        if (!is_closed_type(comp.type)) chi -= 1;
    }
    out.euler_characteristic = chi;

    // Orientability and sidedness by sign transport over the gluing graph.
    bool orientable = true, two_sided = true;
    for (const Piece& p : surface.pieces) {
        orientable = orientable && piece_orientable(p);
        two_sided = two_sided && piece_two_sided_in_block(p);
    }
    SignedUnionFind orient(surface.pieces.size()), sided(surface.pieces.size());
    for (const auto& [key, refs] : index) {
        if (refs.size() != 2) continue;
        const EdgeComponent& comp =
            surface.system(key.first).components[static_cast<size_t>(key.second)];
        bool kb = frames.klein_b.count(key.first) > 0;
        int w1 = word_sign(complex, surface, refs[0], key.first);
        int w2 = word_sign(complex, surface, refs[1], key.first);
        int orient_sign, normal_sign;
        if (comp.type == ComponentType::VerticalCurve) {
            orient_sign = kb ? -1 : +1;
            normal_sign = -w1 * w2;
        } else if (comp.type == ComponentType::TrivialCircle) {
            orient_sign = +1;
            normal_sign = +1;
        } else {
            orient_sign = -w1 * w2 * (kb ? -1 : +1);
            normal_sign = +1;
        }
        if (!orient.merge(refs[0].piece, refs[1].piece, orient_sign)) orientable = false;
        if (!sided.merge(refs[0].piece, refs[1].piece, normal_sign)) two_sided = false;
    }
    out.orientable = orientable;
    out.two_sided = two_sided;

    // Boundary components: trace through the unglued strands.
    struct InstKey {
        int piece, cycle, pos;
        auto operator<=>(const InstKey&) const = default;
    };
    auto inst_of = [&](const CompRef& r) { return InstKey{r.piece, r.cycle, r.pos}; };
    auto strand_at = [&](const InstKey& k) -> const StrandRef& {
        return surface.pieces[static_cast<size_t>(k.piece)]
            .cycles[static_cast<size_t>(k.cycle)]
            .strands[static_cast<size_t>(k.pos)];
    };
    auto face_of = [&](const InstKey& k) {
        return surface.pieces[static_cast<size_t>(k.piece)].face;
    };
    auto glued_partner = [&](const InstKey& k) -> std::optional<InstKey> {
        const StrandRef& r = strand_at(k);
        const auto& refs = index.at({r.edge, r.component});
        if (refs.size() != 2) return std::nullopt;
        for (const CompRef& cand : refs) {
            InstKey ck = inst_of(cand);
            if (!(ck == k)) return ck;
        }
        return std::nullopt;
    };
    auto physical_entry = [&](const InstKey& k) {
        return frames.physical_entry(strand_at(k), face_of(k));
    };
    // Crossing the corner attached to the given physical end.
    auto corner_step = [&](InstKey k, int end) -> std::pair<InstKey, int> {
        const Cycle& cyc = surface.pieces[static_cast<size_t>(k.piece)]
                               .cycles[static_cast<size_t>(k.cycle)];
        int m = static_cast<int>(cyc.strands.size());
        if (end == physical_entry(k)) {
            InstKey j{k.piece, k.cycle, (k.pos - 1 + m) % m};
            return {j, 1 - physical_entry(j)};  // arrive at its exit
        }
        InstKey j{k.piece, k.cycle, (k.pos + 1) % m};
        return {j, physical_entry(j)};
    };

    std::set<InstKey> visited;
    int boundary = 0;
    for (const auto& [key, refs] : index) {
        if (refs.size() != 1) continue;
        const EdgeComponent& comp =
            surface.system(key.first).components[static_cast<size_t>(key.second)];
        InstKey start = inst_of(refs[0]);
        if (visited.count(start)) continue;
        if (is_closed_type(comp.type)) {
            visited.insert(start);
            ++boundary;
            out.boundary_slope_tags.push_back(SlopeTag::Vertical);
            continue;
        }
        // Walk an arc-type boundary component.
        visited.insert(start);
        ++boundary;
        out.boundary_slope_tags.push_back(SlopeTag::Horizontal);
        InstKey cur = start;
        int end = 1 - physical_entry(start);
        int guard = 0;
        const int limit = 8 * static_cast<int>(surface.pieces.size() + index.size() + 4);
        while (guard++ < limit) {
            auto [next, e2] = corner_step(cur, end);
            InstKey j = next;
            int ej = e2;
            while (auto partner = glued_partner(j)) {
                InstKey pk = *partner;
                // Physical ends agree across the gluing.
                auto [n2, e3] = corner_step(pk, ej);
                j = n2;
                ej = e3;
            }
            if (j == start && ej == physical_entry(start)) break;
            visited.insert(j);
            cur = j;
            end = 1 - ej;
        }
    }
    out.boundary_components = boundary;
    return out;
}

int chi_by_cell_count(const CombinatorialSurface& surface, const BaseComplex& complex) {
    Frames frames(complex, surface);

    // Cell table: strands first (shared across pieces), then per-piece cells.
    std::map<std::pair<EdgeId, int>, int> strand_cell;
    int cells = 0;
    std::vector<bool> cell_is_loop;
    auto new_cell = [&](bool loop) {
        cell_is_loop.push_back(loop);
        return cells++;
    };
    for (EdgeId e = 0; e < static_cast<EdgeId>(surface.systems.size()); ++e) {
        const EdgeSystem& sys = surface.system(e);
        for (int ci = 0; ci < static_cast<int>(sys.components.size()); ++ci)
            strand_cell[{e, ci}] =
                new_cell(is_closed_type(sys.components[static_cast<size_t>(ci)].type));
    }

    struct Letter {
        int cell;
        int sign;  // +1 runs end0 -> end1
    };
    std::vector<std::vector<Letter>> words;
    std::vector<bool> empty_word_sphere;

    for (const Piece& p : surface.pieces) {
        std::vector<Letter> word;
        bool first = true;
        std::vector<int> connectors;
        for (const Cycle& cyc : p.cycles) {
            int t = -1;
            if (!first) {
                t = new_cell(false);
                word.push_back({t, +1});
            }
            if (cyc.closed) {
                word.push_back({strand_cell.at({cyc.strands[0].edge, cyc.strands[0].component}),
                                +1});
            } else {
                for (const StrandRef& r : cyc.strands) {
                    int phys = frames.physical_entry(r, p.face);
                    word.push_back({strand_cell.at({r.edge, r.component}),
                                    phys == 0 ? +1 : -1});
                    word.push_back({new_cell(false), +1});  // corner
                }
            }
            if (!first) word.push_back({t, -1});
            first = false;
        }
        // Handle / crosscap letters from the tag topology.
        int b = static_cast<int>(p.cycles.size());
        int chi = piece_chi(p);
        bool orientable = piece_orientable(p);
        int defect = 2 - chi - b;
        if (orientable) {
            int g = defect / 2;
            for (int i = 0; i < g; ++i) {
                int x = new_cell(false), y = new_cell(false);
                word.push_back({x, +1});
                word.push_back({y, +1});
                word.push_back({x, -1});
                word.push_back({y, -1});
            }
        } else {
            for (int i = 0; i < defect; ++i) {
                int z = new_cell(false);
                word.push_back({z, +1});
                word.push_back({z, +1});
            }
        }
        empty_word_sphere.push_back(word.empty());
        words.push_back(std::move(word));
    }

    // Vertex classes: union-find over cell end slots.
    std::vector<int> parent(static_cast<size_t>(2 * cells));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };
    auto head_slot = [&](const Letter& l) {
        if (cell_is_loop[static_cast<size_t>(l.cell)]) return 2 * l.cell;
        return l.sign > 0 ? 2 * l.cell : 2 * l.cell + 1;
    };
    auto tail_slot = [&](const Letter& l) {
        if (cell_is_loop[static_cast<size_t>(l.cell)]) return 2 * l.cell;
        return l.sign > 0 ? 2 * l.cell + 1 : 2 * l.cell;
    };
    std::set<int> used_slots;
    for (const auto& word : words) {
        int n = static_cast<int>(word.size());
        for (int i = 0; i < n; ++i) {
            const Letter& a = word[static_cast<size_t>(i)];
            const Letter& b = word[static_cast<size_t>((i + 1) % n)];
            unite(tail_slot(a), head_slot(b));
            used_slots.insert(head_slot(a));
            used_slots.insert(tail_slot(a));
        }
    }

    std::set<int> classes;
    for (int s : used_slots) classes.insert(find(s));
    std::set<int> used_cells;
    for (const auto& word : words)
        for (const Letter& l : word) used_cells.insert(l.cell);

    int v = static_cast<int>(classes.size());
    int e = static_cast<int>(used_cells.size());
    int f = static_cast<int>(surface.pieces.size());
    // Pieces with empty words are spheres: one extra vertex each.
    for (bool sphere : empty_word_sphere)
        if (sphere) ++v;
    return v - e + f;
}

NormalForm classify_normal_form(const CombinatorialSurface& surface,
                                const BaseComplex& complex) {
    for (const Piece& p : surface.pieces)
        if (p.tag == PieceTag::Raw)
            throw ValidationError("classify_normal_form: raw piece present");

    bool any_horizontal = false, any_vertical = false, any_exceptional = false;
    for (const Piece& p : surface.pieces) {
        if (piece_kind::is_horizontal(p.tag)) any_horizontal = true;
        if (piece_kind::is_vertical(p.tag)) any_vertical = true;
        if (piece_kind::is_exceptional(p.tag)) any_exceptional = true;
    }
    if (!any_exceptional) {
        if (!any_vertical) return NormalForm::Horizontal;  // includes the empty surface
        if (!any_horizontal) return NormalForm::Vertical;
        return NormalForm::None;
    }

    auto exceptional_boundary_vertical = [&](const Piece& p) {
        for (const Cycle& c : p.cycles)
            if (!c.closed) return false;
        return true;
    };

    // At most one exceptional piece per face.
    std::map<FaceId, int> exceptional_per_face;
    for (const Piece& p : surface.pieces)
        if (piece_kind::is_exceptional(p.tag))
            if (++exceptional_per_face[p.face] > 1) return NormalForm::None;

    if (any_horizontal && any_vertical) return NormalForm::None;
    if (!any_horizontal && !any_vertical) {
        // Exceptional pieces only: their boundary class decides the form.
        bool all_vert = true, all_horiz = true;
        for (const Piece& p : surface.pieces) {
            if (exceptional_boundary_vertical(p)) all_horiz = false;
            else all_vert = false;
        }
        if (all_vert) any_vertical = true;
        else if (all_horiz) any_horizontal = true;
        else return NormalForm::None;
    }

    if (!any_vertical) {
        // Pseudo-horizontal: exceptional pieces only at isolated fibers, with
        // horizontal boundary.
        for (const Piece& p : surface.pieces) {
            if (!piece_kind::is_exceptional(p.tag)) continue;
            if (p.tag != PieceTag::PuncturedNonorientable) return NormalForm::None;
            if (complex.face(p.face).kind != FaceKind::NonRegularTorus)
                return NormalForm::None;
            if (exceptional_boundary_vertical(p)) return NormalForm::None;
        }
        return NormalForm::PseudoHorizontal;
    }
    if (!any_horizontal) {
        // Pseudo-vertical: vertical-boundary exceptional pieces at isolated
        // fibers and in the singular-surface blocks.
        for (const Piece& p : surface.pieces) {
            if (!piece_kind::is_exceptional(p.tag)) continue;
            if (!exceptional_boundary_vertical(p)) return NormalForm::None;
            const Face& f = complex.face(p.face);
            switch (p.tag) {
                case PieceTag::PuncturedNonorientable:
                    if (f.kind != FaceKind::NonRegularTorus) return NormalForm::None;
                    break;
                case PieceTag::PairOfPants:
                    if (f.kind != FaceKind::SolidKleinBottle ||
                        f.block != BlockKind::AnnulusBlock)
                        return NormalForm::None;
                    break;
                case PieceTag::ExceptionalTorusPiece:
                case PieceTag::ExceptionalKleinPiece:
                    break;  // face legality enforced by validate_surface
                default:
                    return NormalForm::None;
            }
        }
        return NormalForm::PseudoVertical;
    }
    return NormalForm::None;
}

}  // namespace sfs
