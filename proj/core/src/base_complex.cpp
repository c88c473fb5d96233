#include "sfs/base_complex.hpp"

#include <algorithm>
#include <set>

namespace sfs {

std::vector<SlotRef> BaseComplex::slots_of_edge(EdgeId e) const {
    std::vector<SlotRef> out;
    for (const Face& f : faces)
        for (int s = 0; s < static_cast<int>(f.boundary.size()); ++s)
            if (f.boundary[static_cast<size_t>(s)].edge == e) out.push_back({f.id, s});
    return out;
}

int BaseComplex::chi_without_blocks() const {
    int e_count = 0, f_count = 0;
    std::vector<bool> vertex_killed(static_cast<size_t>(vertex_count), false);
    std::vector<bool> vertex_seen(static_cast<size_t>(vertex_count), false);
    for (const Edge& e : edges) {
        vertex_seen[static_cast<size_t>(e.from)] = true;
        vertex_seen[static_cast<size_t>(e.to)] = true;
    }
    // A vertex dies with the singular-surface edges when nothing else touches it.
    for (int v = 0; v < vertex_count; ++v) {
        bool only_singular = vertex_seen[static_cast<size_t>(v)];
        for (const Edge& e : edges) {
            if ((e.from == v || e.to == v) && e.kind != EdgeKind::SingularSurface)
                only_singular = false;
        }
        vertex_killed[static_cast<size_t>(v)] = only_singular;
    }
    int v_count = 0;
    for (int v = 0; v < vertex_count; ++v)
        if (!vertex_killed[static_cast<size_t>(v)]) ++v_count;
    for (const Edge& e : edges)
        if (e.kind != EdgeKind::SingularSurface) ++e_count;
    for (const Face& f : faces)
        if (f.kind != FaceKind::SolidKleinBottle) ++f_count;
    return v_count - e_count + f_count;
}

int BaseComplex::chi_full() const {
    return vertex_count - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
}

bool BaseComplex::regular_face_graph_connected() const {
    std::vector<FaceId> regular;
    for (const Face& f : faces)
        if (f.kind == FaceKind::RegularTorus) regular.push_back(f.id);
    if (regular.empty()) return true;
    std::set<FaceId> seen{regular.front()};
    std::vector<FaceId> stack{regular.front()};
    while (!stack.empty()) {
        FaceId f = stack.back();
        stack.pop_back();
        for (const auto& [edge, other] : block_neighbors(*this, f)) {
            (void)edge;
            if (other && face(*other).kind == FaceKind::RegularTorus &&
                !seen.count(*other)) {
                seen.insert(*other);
                stack.push_back(*other);
            }
        }
    }
    return seen.size() == regular.size();
}

namespace {

struct Builder {
    BaseComplex cx;

    VertexId vertex() { return cx.vertex_count++; }

    EdgeId edge(EdgeKind kind, VertexId from, VertexId to, bool in_mb) {
        EdgeId id = static_cast<EdgeId>(cx.edges.size());
        cx.edges.push_back(Edge{id, kind, from, to, in_mb});
        return id;
    }

    FaceId face(FaceKind kind, std::vector<FaceSlot> boundary) {
        FaceId id = static_cast<FaceId>(cx.faces.size());
        Face f;
        f.id = id;
        f.kind = kind;
        f.boundary = std::move(boundary);
        cx.faces.push_back(std::move(f));
        return id;
    }
};

}  // namespace

BaseComplex build_complex(const SeifertData& data) {
    validate_seifert_data(data);

    Builder b;
    const int annuli = data.count_blocks(BlockKind::AnnulusBlock);
    const int consumed =
        data.count_blocks(BlockKind::TorusBlock) + data.count_blocks(BlockKind::KleinBlock);

    // Identification-polygon word for B0. Every letter is a non-loop edge.
    std::vector<FaceSlot> word;
    const VertexId v0 = b.vertex();

    if (data.base_orientable) {
        for (int i = 0; i < data.base_genus; ++i) {
            VertexId va = b.vertex(), vb = b.vertex();
            EdgeId a1 = b.edge(EdgeKind::Plain, v0, va, false);
            EdgeId a2 = b.edge(EdgeKind::Plain, va, v0, false);
            EdgeId b1 = b.edge(EdgeKind::Plain, v0, vb, false);
            EdgeId b2 = b.edge(EdgeKind::Plain, vb, v0, false);
            for (FaceSlot s : {FaceSlot{a1, 1}, FaceSlot{a2, 1}, FaceSlot{b1, 1},
                               FaceSlot{b2, 1}, FaceSlot{a2, -1}, FaceSlot{a1, -1},
                               FaceSlot{b2, -1}, FaceSlot{b1, -1}})
                word.push_back(s);
        }
    } else {
        for (int i = 0; i < data.base_genus; ++i) {
            VertexId va = b.vertex();
            EdgeId a1 = b.edge(EdgeKind::Plain, v0, va, false);
            EdgeId a2 = b.edge(EdgeKind::Plain, va, v0, false);
            for (FaceSlot s :
                 {FaceSlot{a1, 1}, FaceSlot{a2, 1}, FaceSlot{a1, 1}, FaceSlot{a2, 1}})
                word.push_back(s);
        }
    }

    // Boundary circles of B0: first the free ones (circle 0 hosts all
    // AnnulusBlock arcs), then one consumed circle per Torus/Klein block.
    struct Ring {
        std::vector<VertexId> w;
        std::vector<EdgeId> h;
    };
    std::vector<Ring> free_rings, consumed_rings;
    auto add_ring = [&](int segments, bool in_mb) {
        Ring r;
        for (int s = 0; s < segments; ++s) r.w.push_back(b.vertex());
        for (int s = 0; s < segments; ++s)
            r.h.push_back(b.edge(EdgeKind::Boundary, r.w[static_cast<size_t>(s)],
                                 r.w[static_cast<size_t>((s + 1) % segments)], in_mb));
        EdgeId spoke = b.edge(EdgeKind::Plain, v0, r.w[0], false);
        word.push_back({spoke, 1});
        for (EdgeId h : r.h) word.push_back({h, 1});
        word.push_back({spoke, -1});
        return r;
    };
    for (int j = 0; j < data.boundary_circles; ++j) {
        int segments = (j == 0 && annuli > 0) ? annuli + 1 : 2;
        free_rings.push_back(add_ring(segments, true));
    }
    for (int j = 0; j < consumed; ++j) consumed_rings.push_back(add_ring(2, false));

    // Isolated fibers: an interior triangle per fiber, joined by a spoke.
    struct FiberCell {
        std::vector<EdgeId> t;
    };
    std::vector<FiberCell> fiber_cells;
    for (size_t i = 0; i < data.isolated_fibers.size(); ++i) {
        VertexId u0 = b.vertex(), u1 = b.vertex(), u2 = b.vertex();
        FiberCell cell;
        cell.t = {b.edge(EdgeKind::Plain, u0, u1, false),
                  b.edge(EdgeKind::Plain, u1, u2, false),
                  b.edge(EdgeKind::Plain, u2, u0, false)};
        EdgeId spoke = b.edge(EdgeKind::Plain, v0, u0, false);
        word.push_back({spoke, 1});
        for (EdgeId t : cell.t) word.push_back({t, 1});
        word.push_back({spoke, -1});
        fiber_cells.push_back(cell);
    }

    if (word.empty()) {
        // Closed sphere with nothing attached: two triangles.
        VertexId x = b.vertex(), y = b.vertex(), z = b.vertex();
        EdgeId e1 = b.edge(EdgeKind::Plain, x, y, false);
        EdgeId e2 = b.edge(EdgeKind::Plain, y, z, false);
        EdgeId e3 = b.edge(EdgeKind::Plain, z, x, false);
        b.face(FaceKind::RegularTorus, {{e1, 1}, {e2, 1}, {e3, 1}});
        b.face(FaceKind::RegularTorus, {{e3, -1}, {e2, -1}, {e1, -1}});
    } else {
        // Fan-triangulate the polygon around a center vertex.
        VertexId c = b.vertex();
        const int len = static_cast<int>(word.size());
        std::vector<EdgeId> spokes;
        VertexId cursor = v0;
        for (int t = 0; t < len; ++t) {
            spokes.push_back(b.edge(EdgeKind::Plain, c, cursor, false));
            const FaceSlot& s = word[static_cast<size_t>(t)];
            const Edge& e = b.cx.edge(s.edge);
            cursor = s.sign > 0 ? e.to : e.from;
        }
        for (int t = 0; t < len; ++t)
            b.face(FaceKind::RegularTorus,
                   {{spokes[static_cast<size_t>(t)], 1}, word[static_cast<size_t>(t)],
                    {spokes[static_cast<size_t>((t + 1) % len)], -1}});
    }

    for (size_t i = 0; i < fiber_cells.size(); ++i) {
        FaceId f = b.face(FaceKind::NonRegularTorus,
                          {{fiber_cells[i].t[0], 1},
                           {fiber_cells[i].t[1], 1},
                           {fiber_cells[i].t[2], 1}});
        b.cx.faces[static_cast<size_t>(f)].alpha = data.isolated_fibers[i].alpha;
        b.cx.faces[static_cast<size_t>(f)].beta = data.isolated_fibers[i].beta;
    }

    // AnnulusBlock rectangles on circle 0 of the free boundary.
    for (int k = 0; k < annuli; ++k) {
        const Ring& ring = free_rings.front();
        EdgeId a = ring.h[static_cast<size_t>(k)];
        b.cx.edges[static_cast<size_t>(a)].in_manifold_boundary = false;  // consumed
        VertexId x1 = b.vertex(), x2 = b.vertex();
        EdgeId b1 = b.edge(EdgeKind::Mobius, ring.w[static_cast<size_t>(k)], x1, true);
        EdgeId b2 = b.edge(EdgeKind::Mobius,
                           ring.w[static_cast<size_t>((k + 1) % ring.w.size())], x2, true);
        EdgeId ce = b.edge(EdgeKind::SingularSurface, x1, x2, false);
        FaceId f = b.face(FaceKind::SolidKleinBottle,
                          {{a, 1}, {b2, 1}, {ce, -1}, {b1, -1}});
        b.cx.faces[static_cast<size_t>(f)].block = BlockKind::AnnulusBlock;
    }

    // Torus/Klein block annuli on the consumed circles.
    int consumed_idx = 0;
    for (BlockKind kind : data.singular_surface_blocks) {
        if (kind == BlockKind::AnnulusBlock) continue;
        const Ring& ring = consumed_rings[static_cast<size_t>(consumed_idx++)];
        VertexId y0 = b.vertex(), y1 = b.vertex();
        EdgeId be = b.edge(EdgeKind::Mobius, ring.w[0], y0, false);
        EdgeId c0 = b.edge(EdgeKind::SingularSurface, y0, y1, false);
        EdgeId c1 = b.edge(EdgeKind::SingularSurface, y1, y0, false);
        FaceId f = b.face(FaceKind::SolidKleinBottle,
                          {{be, 1}, {c0, 1}, {c1, 1}, {be, -1},
                           {ring.h[1], -1}, {ring.h[0], -1}});
        b.cx.faces[static_cast<size_t>(f)].block = kind;
    }

    return std::move(b.cx);
}

std::vector<std::pair<EdgeId, std::optional<FaceId>>>
block_neighbors(const BaseComplex& complex, FaceId face) {
    if (face < 0 || face >= static_cast<FaceId>(complex.faces.size()))
        throw ValidationError("unknown face id " + std::to_string(face));
    std::vector<std::pair<EdgeId, std::optional<FaceId>>> out;
    const Face& f = complex.face(face);
    for (int s = 0; s < static_cast<int>(f.boundary.size()); ++s) {
        EdgeId e = f.boundary[static_cast<size_t>(s)].edge;
        if (!complex.in_edge_family(e)) continue;
        auto slots = complex.slots_of_edge(e);
        std::optional<FaceId> other;
        for (const SlotRef& ref : slots) {
            if (ref.face == face && ref.slot == s) continue;
            other = ref.face;
        }
        out.emplace_back(e, other);
    }
    return out;
}

}  // namespace sfs
