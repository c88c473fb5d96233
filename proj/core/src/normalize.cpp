#include "sfs/normalize.hpp"

#include "sfs/klein_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <optional>
#include <set>

namespace sfs {

std::string to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::RemoveTrivialCircle: return "RemoveTrivialCircle";
        case MoveKind::RemoveBoundaryParallelArc: return "RemoveBoundaryParallelArc";
        case MoveKind::StraightenToVertical: return "StraightenToVertical";
        case MoveKind::StraightenToHorizontal: return "StraightenToHorizontal";
        case MoveKind::BoundaryCompress: return "BoundaryCompress";
    }
    return "?";
}

std::string to_string(EssentialResult::Kind kind) {
    switch (kind) {
        case EssentialResult::Kind::PseudoHorizontal: return "PseudoHorizontal";
        case EssentialResult::Kind::PseudoVertical: return "PseudoVertical";
        case EssentialResult::Kind::NotEssential: return "NotEssential";
    }
    return "?";
}

namespace {

void erase_component(CombinatorialSurface& s, EdgeId e, int i) {
    auto& comps = s.system(e).components;
    comps.erase(comps.begin() + i);
    for (Piece& p : s.pieces)
        for (Cycle& c : p.cycles)
            for (StrandRef& r : c.strands)
                if (r.edge == e && r.component > i) --r.component;
}

bool is_cap_for(const Piece& p, EdgeId e, int comp) {
    if (piece_chi(p) != 1 || p.cycles.size() != 1) return false;
    const Cycle& c = p.cycles[0];
    return c.strands.size() == 1 && c.strands[0].edge == e &&
           c.strands[0].component == comp;
}

void raw_ify(Piece& p, int chi_delta) {
    int chi = piece_chi(p) + chi_delta;
    bool orientable = piece_orientable(p);
    bool two_sided = piece_two_sided_in_block(p);
    p.tag = PieceTag::Raw;
    p.raw_chi = chi;
    p.raw_orientable = orientable;
    p.raw_two_sided = two_sided;
}

bool vertex_on_manifold_boundary(const BaseComplex& cx, VertexId v) {
    for (const Edge& e : cx.edges)
        if (e.in_manifold_boundary && (e.from == v || e.to == v)) return true;
    return false;
}

// Merge the strands c1, c2 of edge e into a single rerouted component,
// fusing the adjacent host instances at (host_piece, host_cycle, h1, h2) and
// the far-side instances (band join when they sit on separate cycles).
// merge_side is the fiber side the retraction slid across.
void merge_strands(CombinatorialSurface& s, const BaseComplex& cx, EdgeId e, int c1,
                   int c2, int host_piece, int host_cycle, int h1, int h2,
                   int merge_side) {
    auto& comps = s.system(e).components;
    EdgeComponent a = comps[static_cast<size_t>(c1)];
    EdgeComponent b = comps[static_cast<size_t>(c2)];
    auto essential = [](const EdgeComponent& c) {
        return c.type == ComponentType::HorizontalArc;
    };

    EdgeComponent merged;
    if (essential(a) != essential(b)) {
        merged.type = ComponentType::HorizontalArc;
    } else if (essential(a) && essential(b)) {
        merged.type = ComponentType::BoundaryParallelArc;
        merged.side = cx.edge(e).kind == EdgeKind::Mobius ? 0 : 1 - merge_side;
    } else {
        merged.type = ComponentType::BoundaryParallelArc;
        merged.side = merge_side;
    }
    comps[static_cast<size_t>(c1)] = merged;

    // Fuse the host instances: h2 follows h1 cyclically.
    {
        Piece& hp = s.pieces[static_cast<size_t>(host_piece)];
        Cycle& hc = hp.cycles[static_cast<size_t>(host_cycle)];
        StrandRef keep = hc.strands[static_cast<size_t>(h1)];
        keep.component = c1;
        hc.strands[static_cast<size_t>(h1)] = keep;
        hc.strands.erase(hc.strands.begin() + h2);
    }

    // Far-side instances of the two strands, if glued.
    auto index = build_ref_index(s);
    auto far_ref = [&](int comp, int skip_piece, int skip_cycle,
                       int skip_pos) -> std::optional<CompRef> {
        auto it = index.find({e, comp});
        if (it == index.end()) return std::nullopt;
        for (const CompRef& r : it->second)
            if (!(r.piece == skip_piece && r.cycle == skip_cycle && r.pos == skip_pos))
                return r;
        return std::nullopt;
    };
    int fused_pos = h2 < h1 ? h1 - 1 : h1;
    auto r1 = far_ref(c1, host_piece, host_cycle, fused_pos);
    auto r2 = far_ref(c2, -1, -1, -1);
    if (r1.has_value() != r2.has_value())
        throw ValidationError("inconsistent gluing while merging strands");

    if (r1 && r2) {
        if (r1->piece == r2->piece && r1->cycle == r2->cycle) {
            Piece& rp = s.pieces[static_cast<size_t>(r1->piece)];
            Cycle& rc = rp.cycles[static_cast<size_t>(r1->cycle)];
            int m = static_cast<int>(rc.strands.size());
            int p1 = r1->pos, p2 = r2->pos;
            if ((p1 + 1) % m == p2 || (p2 + 1) % m == p1) {
                // Adjacent: plain fusion, the piece is unchanged.
                int first = (p1 + 1) % m == p2 ? p1 : p2;
                int second = (first + 1) % m;
                StrandRef keep = rc.strands[static_cast<size_t>(first == p1 ? p1 : p2)];
                keep.component = c1;
                rc.strands[static_cast<size_t>(first)] = keep;
                rc.strands.erase(rc.strands.begin() + second);
            } else {
                // Band inside one cycle: the cycle splits in two.
                std::vector<StrandRef> ca, cb;
                StrandRef keep = rc.strands[static_cast<size_t>(p1)];
                keep.component = c1;
                ca.push_back(keep);
                for (int t = (p2 + 1) % m; t != p1; t = (t + 1) % m)
                    ca.push_back(rc.strands[static_cast<size_t>(t)]);
                for (int t = (p1 + 1) % m; t != p2; t = (t + 1) % m)
                    cb.push_back(rc.strands[static_cast<size_t>(t)]);
                rc.strands = ca;
                raw_ify(rp, -1);
                if (!cb.empty()) rp.cycles.push_back(Cycle{false, cb});
                // An empty residue would mean the band closes a cycle with no
                // strands, which the model cannot carry.
                if (cb.empty())
                    throw ValidationError("strand merge left an empty boundary cycle");
            }
        } else if (r1->piece == r2->piece) {
            // Band joining two cycles of one piece.
            Piece& rp = s.pieces[static_cast<size_t>(r1->piece)];
            Cycle& ca = rp.cycles[static_cast<size_t>(r1->cycle)];
            Cycle cb = rp.cycles[static_cast<size_t>(r2->cycle)];
            std::vector<StrandRef> joined;
            StrandRef keep = ca.strands[static_cast<size_t>(r1->pos)];
            keep.component = c1;
            joined.push_back(keep);
            int mb = static_cast<int>(cb.strands.size());
            for (int t = (r2->pos + 1) % mb, cnt = 0; cnt < mb - 1; t = (t + 1) % mb, ++cnt)
                joined.push_back(cb.strands[static_cast<size_t>(t)]);
            int ma = static_cast<int>(ca.strands.size());
            for (int t = (r1->pos + 1) % ma, cnt = 0; cnt < ma - 1; t = (t + 1) % ma, ++cnt)
                joined.push_back(ca.strands[static_cast<size_t>(t)]);
            ca.strands = joined;
            rp.cycles.erase(rp.cycles.begin() + r2->cycle);
            raw_ify(rp, -1);
        } else {
            // Band joining two pieces of the far-side face.
            Piece& pa = s.pieces[static_cast<size_t>(r1->piece)];
            Piece& pb = s.pieces[static_cast<size_t>(r2->piece)];
            if (pa.face != pb.face)
                throw ValidationError("strand merge across distinct faces");
            Piece merged_piece;
            merged_piece.face = pa.face;
            merged_piece.tag = PieceTag::Raw;
            merged_piece.raw_chi = piece_chi(pa) + piece_chi(pb) - 1;
            merged_piece.raw_orientable = piece_orientable(pa) && piece_orientable(pb);
            merged_piece.raw_two_sided =
                piece_two_sided_in_block(pa) && piece_two_sided_in_block(pb);
            Cycle& ca = pa.cycles[static_cast<size_t>(r1->cycle)];
            Cycle& cb = pb.cycles[static_cast<size_t>(r2->cycle)];
            std::vector<StrandRef> joined;
            StrandRef keep = ca.strands[static_cast<size_t>(r1->pos)];
            keep.component = c1;
            joined.push_back(keep);
            int mb = static_cast<int>(cb.strands.size());
            for (int t = (r2->pos + 1) % mb, cnt = 0; cnt < mb - 1; t = (t + 1) % mb, ++cnt)
                joined.push_back(cb.strands[static_cast<size_t>(t)]);
            int ma = static_cast<int>(ca.strands.size());
            for (int t = (r1->pos + 1) % ma, cnt = 0; cnt < ma - 1; t = (t + 1) % ma, ++cnt)
                joined.push_back(ca.strands[static_cast<size_t>(t)]);
            merged_piece.cycles.push_back(Cycle{false, joined});
            for (int ci = 0; ci < static_cast<int>(pa.cycles.size()); ++ci)
                if (ci != r1->cycle) merged_piece.cycles.push_back(pa.cycles[static_cast<size_t>(ci)]);
            for (int ci = 0; ci < static_cast<int>(pb.cycles.size()); ++ci)
                if (ci != r2->cycle) merged_piece.cycles.push_back(pb.cycles[static_cast<size_t>(ci)]);
            int hi = std::max(r1->piece, r2->piece), lo = std::min(r1->piece, r2->piece);
            s.pieces.erase(s.pieces.begin() + hi);
            s.pieces.erase(s.pieces.begin() + lo);
            s.pieces.push_back(std::move(merged_piece));
        }
    }

    erase_component(s, e, c2);
}

}  // namespace

CombinatorialSurface remove_trivial_circle(const CombinatorialSurface& surface,
                                           const BaseComplex& complex, EdgeId edge,
                                           int component) {
    const EdgeSystem& sys = surface.system(edge);
    if (component < 0 || component >= static_cast<int>(sys.components.size()))
        throw ValidationError("component index out of range");
    if (sys.components[static_cast<size_t>(component)].type != ComponentType::TrivialCircle)
        throw ValidationError("component is not a trivial circle");
    if (complex.edge(edge).in_manifold_boundary)
        throw NotEssentialError(
            "trivial circle on a boundary edge bounds a boundary-parallel disk");

    CombinatorialSurface s = surface;
    auto index = build_ref_index(s);
    const auto& refs = index.at({edge, component});
    if (refs.size() != 2) throw ValidationError("trivial circle is not glued on both sides");

    int cap = -1, other = -1;
    bool cap0 = is_cap_for(s.pieces[static_cast<size_t>(refs[0].piece)], edge, component);
    bool cap1 = is_cap_for(s.pieces[static_cast<size_t>(refs[1].piece)], edge, component);
    if (cap0 && cap1) throw NotEssentialError("trivial circle bounds a sphere component");
    if (cap0) { cap = refs[0].piece; other = refs[1].piece; }
    else if (cap1) { cap = refs[1].piece; other = refs[0].piece; }
    else throw ValidationError("no capping disk available for the trivial circle");

    // Cap the surviving piece: drop the circle cycle and raise chi.
    Piece& op = s.pieces[static_cast<size_t>(other)];
    const CompRef& oref = refs[0].piece == other ? refs[0] : refs[1];
    raw_ify(op, +1);
    op.cycles.erase(op.cycles.begin() + oref.cycle);

    s.pieces.erase(s.pieces.begin() + cap);
    erase_component(s, edge, component);
    return s;
}

CombinatorialSurface remove_boundary_parallel_arc(const CombinatorialSurface& surface,
                                                  const BaseComplex& complex, EdgeId edge,
                                                  int component, Move* performed) {
    const EdgeSystem& sys = surface.system(edge);
    if (component < 0 || component >= static_cast<int>(sys.components.size()))
        throw ValidationError("component index out of range");
    const EdgeComponent& comp = sys.components[static_cast<size_t>(component)];
    if (comp.type != ComponentType::BoundaryParallelArc)
        throw ValidationError("component is not a boundary-parallel arc");
    if (comp.compression_witness)
        throw ValidationError(
            "arc is a boundary-compressing witness; contract violation for an essential surface");

    const Edge& e = complex.edge(edge);
    VertexId v = comp.side == 0 ? e.from : e.to;

    if (!e.in_manifold_boundary && vertex_on_manifold_boundary(complex, v)) {
        // Case II boundary sub-case: re-target to a boundary edge at the fiber.
        for (const Edge& e2 : complex.edges) {
            if (!e2.in_manifold_boundary) continue;
            if (e2.from != v && e2.to != v) continue;
            const EdgeSystem& sys2 = surface.system(e2.id);
            for (int i2 = 0; i2 < static_cast<int>(sys2.components.size()); ++i2) {
                const EdgeComponent& c2 = sys2.components[static_cast<size_t>(i2)];
                if (c2.type != ComponentType::BoundaryParallelArc) continue;
                VertexId v2 = c2.side == 0 ? e2.from : e2.to;
                if (v2 != v) continue;
                CombinatorialSurface out =
                    remove_boundary_parallel_arc(surface, complex, e2.id, i2, nullptr);
                if (performed) {
                    performed->kind = MoveKind::RemoveBoundaryParallelArc;
                    performed->edge = e2.id;
                    performed->component = i2;
                    performed->retargeted = true;
                }
                return out;
            }
        }
        throw ValidationError("no valid re-target for the boundary sub-case");
    }

    CombinatorialSurface s = surface;
    auto index = build_ref_index(s);
    const auto& refs = index.at({edge, component});

    int host_piece = -1;
    if (e.in_manifold_boundary) {
        if (refs.size() != 1)
            throw ValidationError("boundary arc glued on both sides");
        host_piece = refs[0].piece;
    } else {
        if (refs.size() != 2) throw ValidationError("interior arc not glued on both sides");
        bool cap0 = is_cap_for(s.pieces[static_cast<size_t>(refs[0].piece)], edge, component);
        bool cap1 = is_cap_for(s.pieces[static_cast<size_t>(refs[1].piece)], edge, component);
        if (cap0 && cap1)
            throw ValidationError("arc glued between two caps; degenerate configuration");
        if (!cap0 && !cap1)
            throw ValidationError("arc is not in tongue position (no disk cap across it)");
        host_piece = cap0 ? refs[1].piece : refs[0].piece;
    }

    const CompRef& href = refs[0].piece == host_piece ? refs[0] : refs.back();
    Piece& hp = s.pieces[static_cast<size_t>(host_piece)];
    Cycle& hc = hp.cycles[static_cast<size_t>(href.cycle)];
    int m = static_cast<int>(hc.strands.size());
    if (m == 1)
        throw ValidationError("arc is the entire boundary of its piece");

    int a1 = (href.pos - 1 + m) % m, a2 = (href.pos + 1) % m;
    StrandRef n1 = hc.strands[static_cast<size_t>(a1)];
    StrandRef n2 = hc.strands[static_cast<size_t>(a2)];
    bool can_merge = a1 != a2 && n1.edge == n2.edge && n1.component != n2.component &&
                     !hc.closed;
    {
        // Merging only applies to arc-type neighbours.
        auto type_of = [&](const StrandRef& r) {
            return s.system(r.edge).components[static_cast<size_t>(r.component)].type;
        };
        if (can_merge) {
            ComponentType t1 = type_of(n1), t2 = type_of(n2);
            auto arcish = [](ComponentType t) {
                return t == ComponentType::HorizontalArc ||
                       t == ComponentType::BoundaryParallelArc;
            };
            can_merge = arcish(t1) && arcish(t2);
        }
    }

    hc.strands.erase(hc.strands.begin() + href.pos);
    int h1 = a1 > href.pos ? a1 - 1 : a1;
    int h2 = a2 > href.pos ? a2 - 1 : a2;

    // Drop the cap before merging so piece indices referenced afterwards are
    // recomputed from a fresh index.
    int cap_piece = -1;
    if (!e.in_manifold_boundary) {
        for (const CompRef& r : refs)
            if (r.piece != host_piece) cap_piece = r.piece;
        if (cap_piece == host_piece)
            throw ValidationError("degenerate arc configuration");
        s.pieces.erase(s.pieces.begin() + cap_piece);
        if (cap_piece < host_piece) --host_piece;
    }
    erase_component(s, edge, component);

    if (can_merge) {
        EdgeId me = n1.edge;
        int c1 = n1.component, c2 = n2.component;
        if (me == edge) {
            // The neighbours sat on the move's own edge; their indices moved
            // with the component removal.
            if (c1 > component) --c1;
            if (c2 > component) --c2;
        }
        // Host positions survive the cap/piece removals; recompute h1/h2
        // relative to the spliced cycle.
        int mm = static_cast<int>(
            s.pieces[static_cast<size_t>(host_piece)].cycles[static_cast<size_t>(href.cycle)].strands.size());
        if (h1 >= mm || h2 >= mm)
            throw ValidationError("internal: spliced cycle indices out of range");
        // The fiber the retraction crossed.
        int merge_side;
        {
            const Edge& me_edge = complex.edge(me);
            if (me_edge.kind == EdgeKind::Mobius) merge_side = 0;
            else if (me_edge.from == v) merge_side = 0;
            else if (me_edge.to == v) merge_side = 1;
            else throw ValidationError("merge neighbours do not meet the arc's fiber");
        }
        merge_strands(s, complex, me, c1, c2, host_piece, href.cycle, h1, h2, merge_side);
    }

    if (performed) {
        performed->kind = MoveKind::RemoveBoundaryParallelArc;
        performed->edge = edge;
        performed->component = component;
        performed->retargeted = false;
    }
    return s;
}

CombinatorialSurface straighten_edge(const CombinatorialSurface& surface,
                                     const BaseComplex& complex, EdgeId edge) {
    (void)complex;
    bool has_h = false, has_v = false;
    for (const EdgeComponent& c : surface.system(edge).components) {
        if (c.type == ComponentType::TrivialCircle ||
            c.type == ComponentType::BoundaryParallelArc)
            throw ValidationError("straighten requires an edge free of trivial and parallel parts");
        if (c.type == ComponentType::HorizontalArc) has_h = true;
        if (c.type == ComponentType::VerticalCurve) has_v = true;
    }
    if (has_h && has_v)
        throw ValidationError("edge mixes arcs and essential closed curves");
    return surface;
}

std::pair<CombinatorialSurface, NormalizationTrace>
normalize_surface(const CombinatorialSurface& surface, const BaseComplex& complex) {
    validate_surface(surface, complex);
    CombinatorialSurface s = surface;
    NormalizationTrace trace;
    int xi = complexity(s, complex);

    auto find_circle = [&]() -> std::optional<std::pair<EdgeId, int>> {
        for (EdgeId e = 0; e < static_cast<EdgeId>(s.systems.size()); ++e)
            for (int i = 0; i < static_cast<int>(s.system(e).components.size()); ++i)
                if (s.system(e).components[static_cast<size_t>(i)].type ==
                    ComponentType::TrivialCircle)
                    return std::make_pair(e, i);
        return std::nullopt;
    };
    auto find_arc = [&]() -> std::optional<std::pair<EdgeId, int>> {
        for (EdgeId e = 0; e < static_cast<EdgeId>(s.systems.size()); ++e) {
            const auto& comps = s.system(e).components;
            // outermost first: lowest index on side 0, else highest on side 1
            for (int i = 0; i < static_cast<int>(comps.size()); ++i)
                if (comps[static_cast<size_t>(i)].type == ComponentType::BoundaryParallelArc &&
                    comps[static_cast<size_t>(i)].side == 0)
                    return std::make_pair(e, i);
            for (int i = static_cast<int>(comps.size()) - 1; i >= 0; --i)
                if (comps[static_cast<size_t>(i)].type == ComponentType::BoundaryParallelArc)
                    return std::make_pair(e, i);
        }
        return std::nullopt;
    };

    while (auto c = find_circle()) {
        s = remove_trivial_circle(s, complex, c->first, c->second);
        int after = complexity(s, complex);
        if (after >= xi) throw ValidationError("internal: removal did not reduce complexity");
        xi = after;
        trace.entries.push_back({Move{MoveKind::RemoveTrivialCircle, c->first, c->second,
                                      0, false},
                                 xi});
    }
    while (auto a = find_arc()) {
        Move performed;
        s = remove_boundary_parallel_arc(s, complex, a->first, a->second, &performed);
        int after = complexity(s, complex);
        if (after >= xi) throw ValidationError("internal: removal did not reduce complexity");
        xi = after;
        trace.entries.push_back({performed, xi});
    }
    for (EdgeId e = 0; e < static_cast<EdgeId>(s.systems.size()); ++e) {
        if (s.system(e).components.empty()) continue;
        s = straighten_edge(s, complex, e);
        bool vertical = s.system(e).components[0].type == ComponentType::VerticalCurve;
        trace.entries.push_back({Move{vertical ? MoveKind::StraightenToVertical
                                               : MoveKind::StraightenToHorizontal,
                                      e, 0, 0, false},
                                 xi});
    }
    return {std::move(s), std::move(trace)};
}

namespace {

struct CycleShape {
    int closed_core = 0;     // closed cycles on Mobius-edge cores
    int closed_plain = 0;    // other closed cycles
    int crossing = 0;        // open cycles
    std::set<std::pair<EdgeId, int>> core_refs;
};

CycleShape shape_of(const CombinatorialSurface& s, const Piece& p) {
    CycleShape sh;
    for (const Cycle& c : p.cycles) {
        if (!c.closed) {
            ++sh.crossing;
            continue;
        }
        const StrandRef& r = c.strands[0];
        const EdgeComponent& comp =
            s.system(r.edge).components[static_cast<size_t>(r.component)];
        if (comp.core) {
            ++sh.closed_core;
            sh.core_refs.insert({r.edge, r.component});
        } else {
            ++sh.closed_plain;
        }
    }
    return sh;
}

Piece tag_block_piece(const CombinatorialSurface& s, const BaseComplex& cx,
                      const Face& f, const Piece& p) {
    Piece out = p;
    const CycleShape sh = shape_of(s, p);
    const int chi = piece_chi(p);
    const int total_closed = sh.closed_core + sh.closed_plain;

    if (p.tag != PieceTag::Raw) return out;  // claimed tags validated by the caller

    if (sh.crossing > 0 && total_closed > 0)
        throw ValidationError("piece mixes crossing and closed boundary; no legal filling");

    if (sh.crossing > 0) {
        if (chi == 1 && sh.crossing == 1) {
            out.tag = PieceTag::HorizontalDisk;
            return out;
        }
        if (f.kind == FaceKind::SolidKleinBottle)
            throw ValidationError("non-disk horizontal piece in a block face");
        if (sh.crossing == 1 && chi < 1 && !piece_orientable(p)) {
            out.tag = PieceTag::PuncturedNonorientable;
            out.k = 1 - chi;
            out.q = 2 * out.k + 1;  // default coprime longitude count
            return out;
        }
        throw ValidationError("horizontal boundary admits no legal filling");
    }

    if (total_closed == 0)
        throw ValidationError("closed piece inside a block is compressible; no legal filling");

    if (f.kind != FaceKind::SolidKleinBottle) {
        if (total_closed == 2 && chi == 0 && sh.closed_core == 0) {
            out.tag = PieceTag::VerticalAnnulus;
            return out;
        }
        if (total_closed == 1 && chi < 1 && !piece_orientable(p)) {
            // One-sided piece with a single fiber boundary (even-multiplicity
            // singular fiber face).
            out.tag = PieceTag::PuncturedNonorientable;
            out.k = 1 - chi;
            out.q = 2 * out.k + 1;
            return out;
        }
        throw ValidationError("vertical boundary admits no legal filling in a solid torus");
    }

    // Solid Klein bottle faces (block R-cells).
    if (total_closed == 1 && sh.closed_plain == 1 && chi == 0 && !piece_orientable(p)) {
        out.tag = PieceTag::VerticalMobius;
        return out;
    }
    if (total_closed == 2 && sh.closed_plain == 2 && chi == 0) {
        out.tag = PieceTag::VerticalAnnulus;
        return out;
    }
    if (total_closed == 2 && sh.closed_core == 2 && chi == 0) {
        // Two core boundaries: l1 + l2 in an N x I block, or the two sides of
        // the cut along N x t0.
        if (f.block == BlockKind::AnnulusBlock && sh.core_refs.size() == 2) {
            out.tag = PieceTag::OneSidedAnnulus;
            return out;
        }
        if (f.block != BlockKind::AnnulusBlock && sh.core_refs.size() == 1) {
            out.tag = PieceTag::VerticalAnnulus;  // cut piece of a vertical torus/Klein bottle
            return out;
        }
        throw ValidationError("core boundary pair admits no legal filling");
    }
    if (total_closed == 3 && sh.closed_core == 2 && sh.closed_plain == 1 && chi == -1) {
        if (f.block == BlockKind::AnnulusBlock && sh.core_refs.size() == 2) {
            out.tag = PieceTag::PairOfPants;
            return out;
        }
        if (f.block == BlockKind::TorusBlock && sh.core_refs.size() == 1) {
            out.tag = PieceTag::ExceptionalTorusPiece;
            return out;
        }
        if (f.block == BlockKind::KleinBlock && sh.core_refs.size() == 1) {
            out.tag = PieceTag::ExceptionalKleinPiece;
            return out;
        }
    }
    (void)cx;
    throw ValidationError("vertical boundary admits no legal filling in the block");
}

}  // namespace

std::vector<Piece> classify_block(const CombinatorialSurface& surface,
                                  const BaseComplex& complex, FaceId face) {
    if (face < 0 || face >= static_cast<FaceId>(complex.faces.size()))
        throw ValidationError("unknown face id " + std::to_string(face));
    if (!is_well_embedded(surface))
        throw ValidationError("classify_block requires a well-embedded surface");
    const Face& f = complex.face(face);

    std::vector<Piece> out;
    bool any_horizontal = false, any_vertical = false;
    int nonorientable_pieces = 0;
    for (const Piece& p : surface.pieces) {
        if (p.face != face) continue;
        Piece tagged = tag_block_piece(surface, complex, f, p);
        if (tagged.tag == PieceTag::HorizontalDisk) any_horizontal = true;
        else any_vertical = true;
        if (!piece_orientable(tagged)) ++nonorientable_pieces;
        if (tagged.tag == PieceTag::PuncturedNonorientable) {
            auto check = solid_torus_boundary_check(2 * tagged.k, tagged.q);
            if (check.kind == BoundaryCheck::NotBoundary &&
                check.reason != NotBoundaryReason::KEqualsQUnresolved)
                throw ValidationError(
                    "claimed one-sided piece has no admissible (2k, q) boundary");
        }
        out.push_back(std::move(tagged));
    }
    if (any_horizontal && any_vertical)
        throw ValidationError("face mixes horizontal and vertical pieces; no legal filling");
    if (nonorientable_pieces > 1 && f.kind != FaceKind::SolidKleinBottle)
        throw ValidationError("two one-sided pieces in one solid torus must intersect");
    return out;
}

std::pair<CombinatorialSurface, int>
reduce_to_meridian_disks(const CombinatorialSurface& surface, const BaseComplex& complex,
                         FaceId face, EdgeId via_edge) {
    const Face& f = complex.face(face);
    if (f.kind != FaceKind::RegularTorus)
        throw ValidationError("reduction requires a regular solid torus face");
    bool via_ok = false;
    for (const FaceSlot& s : f.boundary)
        if (s.edge == via_edge) via_ok = true;
    if (!via_ok) throw ValidationError("via edge does not bound the face");

    CombinatorialSurface s = surface;
    int target = -1;
    for (int pi = 0; pi < static_cast<int>(s.pieces.size()); ++pi) {
        const Piece& p = s.pieces[static_cast<size_t>(pi)];
        if (p.face == face && p.tag == PieceTag::PuncturedNonorientable) target = pi;
    }
    if (target < 0) throw ValidationError("nothing to reduce");

    Piece& p = s.pieces[static_cast<size_t>(target)];
    if (p.cycles.size() != 1 || p.cycles[0].closed)
        throw ValidationError("reduction requires a connected horizontal boundary");

    int compressions = 0;
    int chi = piece_chi(p);
    while (chi < 1) {
        // One boundary compression: chi rises by one, the boundary stays a
        // single curve and the piece stays connected.
        ++compressions;
        ++chi;
        if (chi < 1) {
            p.k = 1 - chi;
            p.q = 2 * p.k + 1;
        } else {
            p.tag = PieceTag::HorizontalDisk;
            p.k = p.q = 0;
        }
    }
    return {std::move(s), compressions};
}

EssentialResult classify_essential(const CombinatorialSurface& surface,
                                   const BaseComplex& complex, const SeifertData& data) {
    if (!is_excluded_manifold(data).admissible())
        throw ValidationError("manifold is gated out; no classification");
    EssentialResult result;
    if (data.isolated_fibers.empty() && data.singular_surface_blocks.empty()) {
        result.kind = EssentialResult::Kind::NotEssential;
        result.reason = "no singular fiber -- out of scope";
        return result;
    }

    CombinatorialSurface s;
    try {
        auto [normalized, trace] = normalize_surface(surface, complex);
        s = std::move(normalized);
        result.trace = std::move(trace);
    } catch (const NotEssentialError& err) {
        result.kind = EssentialResult::Kind::NotEssential;
        result.reason = err.what();
        return result;
    }

    // Tag every block.
    CombinatorialSurface tagged = s;
    {
        std::vector<Piece> pieces;
        for (FaceId f = 0; f < static_cast<FaceId>(complex.faces.size()); ++f)
            for (Piece& p : classify_block(s, complex, f)) pieces.push_back(std::move(p));
        tagged.pieces = std::move(pieces);
    }

    bool any_horizontal = false, any_vertical = false;
    for (const Piece& p : tagged.pieces) {
        if (piece_kind::is_horizontal(p.tag)) any_horizontal = true;
        if (piece_kind::is_vertical(p.tag)) any_vertical = true;
    }
    if (any_horizontal && any_vertical) {
        result.kind = EssentialResult::Kind::NotEssential;
        result.reason = "mixed horizontal and vertical parts";
        return result;
    }

    if (!any_vertical) {
        // Case II: reduce stray one-sided pieces in regular tori toward the
        // anchor face.
        FaceId anchor = -1;
        for (const Face& f : complex.faces)
            if (f.kind == FaceKind::NonRegularTorus) { anchor = f.id; break; }
        if (anchor < 0) {
            for (const Face& f : complex.faces) {
                if (f.kind != FaceKind::RegularTorus) continue;
                for (const auto& [e, other] : block_neighbors(complex, f.id)) {
                    (void)e;
                    if (other && complex.face(*other).kind == FaceKind::SolidKleinBottle) {
                        anchor = f.id;
                        break;
                    }
                }
                if (anchor >= 0) break;
            }
        }
        for (FaceId f = 0; f < static_cast<FaceId>(complex.faces.size()); ++f) {
            if (f == anchor) continue;
            if (complex.face(f).kind != FaceKind::RegularTorus) continue;
            bool has_nonorientable = false;
            for (const Piece& p : tagged.pieces)
                if (p.face == f && p.tag == PieceTag::PuncturedNonorientable)
                    has_nonorientable = true;
            if (!has_nonorientable) continue;
            auto neighbors = block_neighbors(complex, f);
            if (neighbors.empty())
                throw ValidationError("isolated face cannot be reduced");
            EdgeId via = neighbors.front().first;
            auto [reduced, count] = reduce_to_meridian_disks(tagged, complex, f, via);
            tagged = std::move(reduced);
            for (int i = 0; i < count; ++i)
                result.trace.entries.push_back(
                    {Move{MoveKind::BoundaryCompress, via, 0, f, false},
                     complexity(tagged, complex)});
        }
    }

    NormalForm form = classify_normal_form(tagged, complex);
    result.surface = std::move(tagged);
    result.form = form;
    switch (form) {
        case NormalForm::Horizontal:
        case NormalForm::PseudoHorizontal:
            result.kind = EssentialResult::Kind::PseudoHorizontal;
            break;
        case NormalForm::Vertical:
        case NormalForm::PseudoVertical:
            result.kind = EssentialResult::Kind::PseudoVertical;
            break;
        case NormalForm::None:
            result.kind = EssentialResult::Kind::NotEssential;
            result.reason = "no pseudo-horizontal or pseudo-vertical form";
            break;
    }
    return result;
}

}  // namespace sfs
