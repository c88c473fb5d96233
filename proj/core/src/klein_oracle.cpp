#include "sfs/klein_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sfs {

namespace {

// Union-find with a +-1 relation to the class representative. merge()
// returns false when the constraint contradicts an existing relation.
struct SignedUnionFind {
    std::vector<int> parent;
    std::vector<int> sign;  // sign relative to parent

    explicit SignedUnionFind(int n) : parent(static_cast<size_t>(n)), sign(static_cast<size_t>(n), 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::pair<int, int> find(int x) {
        if (parent[static_cast<size_t>(x)] == x) return {x, 1};
        auto [root, s] = find(parent[static_cast<size_t>(x)]);
        parent[static_cast<size_t>(x)] = root;
        sign[static_cast<size_t>(x)] *= s;
        return {root, sign[static_cast<size_t>(x)]};
    }

    bool merge(int a, int b, int rel) {
        auto [ra, sa] = find(a);
        auto [rb, sb] = find(b);
        if (ra == rb) return sa * sb == rel;
        parent[static_cast<size_t>(ra)] = rb;
        sign[static_cast<size_t>(ra)] = sa * sb * rel;
        return true;
    }
};

}  // namespace

std::string ArcPattern::label(int position) const {
    const int n = point_count();
    if (position < 0 || position >= n) throw ValidationError("marked point out of range");
    if (with_l) {
        if (position == 0) return "l1";
        if (position == k + 1) return "l2";
        if (position <= k) return "d'" + std::to_string(position);
        return "d''" + std::to_string(2 * k + 2 - position);
    }
    if (position < k) return "d'" + std::to_string(position + 1);
    return "d''" + std::to_string(2 * k - position);
}

int ArcPattern::monodromy_map(int position) const {
    const int n = point_count();
    switch (monodromy.kind) {
        case Monodromy::Kind::Identity:
            return position;
        case Monodromy::Kind::Reflection:
            return with_l ? (n - position) % n : n - 1 - position;
        case Monodromy::Kind::RationalRotation: {
            if (monodromy.q == 0) throw ValidationError("rotation monodromy with q = 0");
            long long shift = static_cast<long long>(n) * monodromy.p;
            if (shift % monodromy.q != 0)
                throw ValidationError("rotation p/q does not permute the marked points");
            long long s = shift / monodromy.q;
            long long r = (position + s) % n;
            if (r < 0) r += n;
            return static_cast<int>(r);
        }
    }
    return position;
}

ArcPattern ArcPattern::canonical(int k, Monodromy m) {
    ArcPattern p;
    p.k = k;
    p.with_l = true;
    p.monodromy = m;
    if (k == 0) {
        p.arcs = {{0, 1}};
        return p;
    }
    p.arcs.push_back({0, 1});                       // l1 - d'_1
    for (int i = 1; i < k; ++i) p.arcs.push_back({i + 1, 2 * k + 2 - i});  // d'_{i+1} - d''_i
    p.arcs.push_back({k + 1, k + 2});               // l2 - d''_k
    std::sort(p.arcs.begin(), p.arcs.end());
    return p;
}

bool ArcPattern::is_canonical() const {
    if (!with_l) return false;
    ArcPattern ref = canonical(k, monodromy);
    if (arcs == ref.arcs) return true;
    // Up to the diameter reflection.
    const int n = point_count();
    std::vector<std::pair<int, int>> mirrored;
    for (auto [a, b] : arcs) {
        int ma = (n - a) % n, mb = (n - b) % n;
        mirrored.push_back({std::min(ma, mb), std::max(ma, mb)});
    }
    std::sort(mirrored.begin(), mirrored.end());
    return mirrored == ref.arcs;
}

namespace {

// All non-crossing perfect matchings of the interval [lo, hi].
std::vector<std::vector<std::pair<int, int>>> noncrossing_matchings(int lo, int hi) {
    if (lo > hi) return {{}};
    std::vector<std::vector<std::pair<int, int>>> out;
    for (int j = lo + 1; j <= hi; j += 2) {
        for (const auto& inner : noncrossing_matchings(lo + 1, j - 1)) {
            for (const auto& outer : noncrossing_matchings(j + 1, hi)) {
                std::vector<std::pair<int, int>> m;
                m.reserve(inner.size() + outer.size() + 1);
                m.push_back({lo, j});
                m.insert(m.end(), inner.begin(), inner.end());
                m.insert(m.end(), outer.begin(), outer.end());
                out.push_back(std::move(m));
            }
        }
    }
    return out;
}

}  // namespace

std::vector<ArcPattern> enumerate_arc_patterns(int k_max, Monodromy monodromy) {
    if (k_max < 0) throw ValidationError("k_max must be non-negative");
    std::vector<ArcPattern> out;
    const bool reflection = monodromy.kind == Monodromy::Kind::Reflection;
    for (int k = 0; k <= k_max; ++k) {
        for (bool with_l : {false, true}) {
            if (with_l && !reflection) continue;  // cores exist only in the Klein bottle
            const int n = 2 * k + (with_l ? 2 : 0);
            if (n == 0) continue;

            ArcPattern proto;
            proto.k = k;
            proto.with_l = with_l;
            proto.monodromy = monodromy;

            for (auto& m : noncrossing_matchings(0, n - 1)) {
                std::vector<std::pair<int, int>> arcs = m;
                std::sort(arcs.begin(), arcs.end());
                // Dedup across the diameter reflection: keep the lexicographic
                // representative.
                std::vector<std::pair<int, int>> mirrored;
                for (auto [a, b] : arcs) {
                    int ma = with_l ? (n - a) % n : n - 1 - a;
                    int mb = with_l ? (n - b) % n : n - 1 - b;
                    mirrored.push_back({std::min(ma, mb), std::max(ma, mb)});
                }
                std::sort(mirrored.begin(), mirrored.end());
                if (mirrored < arcs) continue;
                ArcPattern p = proto;
                p.arcs = arcs;
                out.push_back(std::move(p));
            }
        }
    }
    return out;
}

namespace {

// Node ids: tops 0..n-1, bottoms n..2n-1.
struct BoundaryGraph {
    int n = 0;
    // per node: the incident vertical edge is implicit (node % n); the
    // incident arc edge:
    std::vector<int> arc_at_node;      // arc index at each node
    std::vector<bool> arc_is_upper;    // true: U-arc (top), false: L-arc
    std::vector<std::pair<int, int>> u_ends;  // top positions
    std::vector<std::pair<int, int>> l_ends;  // bottom positions (monodromy image)
};

BoundaryGraph make_graph(const ArcPattern& p) {
    BoundaryGraph g;
    g.n = p.point_count();
    g.arc_at_node.assign(static_cast<size_t>(2 * g.n), -1);
    g.arc_is_upper.assign(static_cast<size_t>(2 * g.n), false);
    for (size_t j = 0; j < p.arcs.size(); ++j) {
        auto [x, y] = p.arcs[j];
        g.u_ends.push_back({x, y});
        int mx = p.monodromy_map(x), my = p.monodromy_map(y);
        g.l_ends.push_back({mx, my});
        g.arc_at_node[static_cast<size_t>(x)] = static_cast<int>(j);
        g.arc_at_node[static_cast<size_t>(y)] = static_cast<int>(j);
        g.arc_is_upper[static_cast<size_t>(x)] = true;
        g.arc_is_upper[static_cast<size_t>(y)] = true;
        g.arc_at_node[static_cast<size_t>(g.n + mx)] = static_cast<int>(j);
        g.arc_at_node[static_cast<size_t>(g.n + my)] = static_cast<int>(j);
    }
    return g;
}

struct CycleData {
    std::vector<int> piece_of_node;       // node -> piece index
    int piece_count = 0;
    // For each arc: traversal sign within its piece walk. +1 when the walk
    // runs the arc from its .first end to its .second end.
    std::vector<int> u_dir, l_dir;
    std::vector<int> u_piece, l_piece;
};

// Walk the degree-2 boundary graph. Every node has one vertical and one arc
// edge; cycles alternate them.
CycleData trace_cycles(const BoundaryGraph& g) {
    CycleData cd;
    const int nodes = 2 * g.n;
    cd.piece_of_node.assign(static_cast<size_t>(nodes), -1);
    cd.u_dir.assign(g.u_ends.size(), 0);
    cd.l_dir.assign(g.u_ends.size(), 0);
    cd.u_piece.assign(g.u_ends.size(), -1);
    cd.l_piece.assign(g.u_ends.size(), -1);

    auto other_arc_end = [&](int node) {
        int j = g.arc_at_node[static_cast<size_t>(node)];
        if (node < g.n) {
            auto [x, y] = g.u_ends[static_cast<size_t>(j)];
            return node == x ? y : x;
        }
        auto [x, y] = g.l_ends[static_cast<size_t>(j)];
        int pos = node - g.n;
        return g.n + (pos == x ? y : x);
    };

    for (int start = 0; start < nodes; ++start) {
        if (cd.piece_of_node[static_cast<size_t>(start)] != -1) continue;
        int piece = cd.piece_count++;
        int node = start;
        bool via_vertical = true;  // next edge to take is the arc edge
        do {
            cd.piece_of_node[static_cast<size_t>(node)] = piece;
            if (via_vertical) {
                int j = g.arc_at_node[static_cast<size_t>(node)];
                bool upper = node < g.n;
                int to = other_arc_end(node);
                if (upper) {
                    cd.u_piece[static_cast<size_t>(j)] = piece;
                    cd.u_dir[static_cast<size_t>(j)] =
                        (node == g.u_ends[static_cast<size_t>(j)].first) ? +1 : -1;
                } else {
                    cd.l_piece[static_cast<size_t>(j)] = piece;
                    cd.l_dir[static_cast<size_t>(j)] =
                        (node - g.n == g.l_ends[static_cast<size_t>(j)].first) ? +1 : -1;
                }
                node = to;
            } else {
                node = node < g.n ? node + g.n : node - g.n;  // vertical edge
            }
            via_vertical = !via_vertical;
        } while (node != start || !via_vertical);
    }
    return cd;
}

std::string component_signature(const ReconstructionComponent& c, bool reflection) {
    if (!reflection) {
        if (c.chi == 0 && c.orientable) return "annulus";
        if (c.chi == 0 && !c.orientable) return "mobius";
        return "other(chi=" + std::to_string(c.chi) + ",b=" +
               std::to_string(c.boundary_components) + ")";
    }
    if (c.chi == 0 && !c.orientable && c.d_count == 1 && c.l1_count == 0 && c.l2_count == 0)
        return "mobius";
    if (c.chi == 0 && c.orientable && c.two_sided && c.d_count == 2 && c.l1_count == 0 &&
        c.l2_count == 0)
        return "annulus";
    if (c.chi == 0 && c.orientable && !c.two_sided && c.l1_count == 1 && c.l2_count == 1 &&
        c.d_count == 0)
        return "one_sided_annulus";
    if (c.chi == -1 && c.orientable && !c.two_sided && c.l1_count == 1 && c.l2_count == 1 &&
        c.d_count == 1)
        return "pair_of_pants";
    return "unrecognized";
}

}  // namespace

Reconstruction reconstruct_from_pattern(const ArcPattern& pattern) {
    const int n = pattern.point_count();
    if (n == 0) throw ValidationError("empty pattern");
    if (static_cast<int>(pattern.arcs.size()) * 2 != n)
        throw ValidationError("pattern matching is not perfect");
    if (pattern.with_l && pattern.monodromy.kind != Monodromy::Kind::Reflection)
        throw ValidationError("l-marked patterns require reflection monodromy");

    BoundaryGraph g = make_graph(pattern);
    CycleData cd = trace_cycles(g);
    const int arcs = static_cast<int>(pattern.arcs.size());
    const bool reflection = pattern.monodromy.kind == Monodromy::Kind::Reflection;

    // Gluing signs. Identification runs U (first->second) onto L
    // (m(first)->m(second)); equal in-walk directions mean a crosscap.
    SignedUnionFind orient(cd.piece_count), sided(cd.piece_count);
    std::vector<bool> piece_nonorientable(static_cast<size_t>(cd.piece_count), false);
    std::vector<bool> piece_one_sided(static_cast<size_t>(cd.piece_count), false);
    SignedUnionFind comp(cd.piece_count);  // component connectivity (signs unused)
    for (int j = 0; j < arcs; ++j) {
        int pu = cd.u_piece[static_cast<size_t>(j)], pl = cd.l_piece[static_cast<size_t>(j)];
        int or_sign = (cd.u_dir[static_cast<size_t>(j)] == cd.l_dir[static_cast<size_t>(j)]) ? -1 : +1;
        int normal_sign = or_sign * (reflection ? -1 : +1);
        comp.merge(pu, pl, 1);
        if (!orient.merge(pu, pl, or_sign)) piece_nonorientable[static_cast<size_t>(pu)] = true;
        if (!sided.merge(pu, pl, normal_sign)) piece_one_sided[static_cast<size_t>(pu)] = true;
    }

    // Group pieces into surface components.
    std::map<int, int> comp_index;
    std::vector<std::vector<int>> comp_pieces;
    for (int p = 0; p < cd.piece_count; ++p) {
        int root = comp.find(p).first;
        auto [it, fresh] = comp_index.try_emplace(root, static_cast<int>(comp_pieces.size()));
        if (fresh) comp_pieces.emplace_back();
        comp_pieces[static_cast<size_t>(it->second)].push_back(p);
    }
    auto comp_of_piece = [&](int p) { return comp_index.at(comp.find(p).first); };

    // Orientability flags live on component roots after failed merges.
    std::vector<bool> comp_nonorientable(comp_pieces.size(), false);
    std::vector<bool> comp_one_sided(comp_pieces.size(), false);
    for (int p = 0; p < cd.piece_count; ++p) {
        if (piece_nonorientable[static_cast<size_t>(p)])
            comp_nonorientable[static_cast<size_t>(comp_of_piece(p))] = true;
        if (piece_one_sided[static_cast<size_t>(p)])
            comp_one_sided[static_cast<size_t>(comp_of_piece(p))] = true;
    }

    // Cell counts. Quotient vertices: top(x) ~ bottom(m(x)), one per marked
    // point. Edges: n verticals + one cell per glued arc pair. Faces: pieces.
    std::vector<int> comp_v(comp_pieces.size(), 0), comp_e(comp_pieces.size(), 0),
        comp_f(comp_pieces.size(), 0);
    for (int x = 0; x < n; ++x)
        comp_v[static_cast<size_t>(comp_of_piece(cd.piece_of_node[static_cast<size_t>(x)]))]++;
    for (int x = 0; x < n; ++x)  // verticals follow the piece of their top end
        comp_e[static_cast<size_t>(comp_of_piece(cd.piece_of_node[static_cast<size_t>(x)]))]++;
    for (int j = 0; j < arcs; ++j)
        comp_e[static_cast<size_t>(comp_of_piece(cd.u_piece[static_cast<size_t>(j)]))]++;
    for (int p = 0; p < cd.piece_count; ++p) comp_f[static_cast<size_t>(comp_of_piece(p))]++;

    // Boundary curves of the reconstructed surface: orbits of the monodromy
    // on marked points (verticals chain through the endpoint identifications).
    std::vector<ReconstructionComponent> comps(comp_pieces.size());
    std::vector<bool> seen(static_cast<size_t>(n), false);
    int total_boundary = 0;
    for (int x = 0; x < n; ++x) {
        if (seen[static_cast<size_t>(x)]) continue;
        bool has_l1 = false, has_l2 = false;
        int y = x;
        do {
            seen[static_cast<size_t>(y)] = true;
            if (pattern.with_l && y == 0) has_l1 = true;
            if (pattern.with_l && y == pattern.k + 1) has_l2 = true;
            y = pattern.monodromy_map(y);
        } while (y != x);
        int c = comp_of_piece(cd.piece_of_node[static_cast<size_t>(x)]);
        auto& rc = comps[static_cast<size_t>(c)];
        if (has_l1) rc.l1_count++;
        else if (has_l2) rc.l2_count++;
        else rc.d_count++;
        rc.boundary_components++;
        total_boundary++;
    }

    Reconstruction rec;
    rec.s_prime_components = cd.piece_count;
    rec.boundary_components = total_boundary;
    rec.chi = 0;
    rec.orientable = true;
    rec.two_sided = true;
    for (size_t c = 0; c < comps.size(); ++c) {
        comps[c].chi = comp_v[c] - comp_e[c] + comp_f[c];
        comps[c].orientable = !comp_nonorientable[c];
        comps[c].two_sided = !comp_one_sided[c];
        comps[c].signature = component_signature(comps[c], reflection);
        rec.chi += comps[c].chi;
        rec.orientable = rec.orientable && comps[c].orientable;
        rec.two_sided = rec.two_sided && comps[c].two_sided;
    }
    rec.components = std::move(comps);

    // Boundary trace of the cut surface, starting up the l1 vertical (or the
    // first vertical without l-points).
    {
        const int start = 0;  // l1 when present, else the first d-vertical
        std::vector<std::string> trace;
        trace.push_back(pattern.label(start));
        int guard = 0;
        int current = start;
        bool at_top = true;  // arrived at top(start) via its vertical
        while (guard++ < 8 * n) {
            // take the arc edge from (current, at_top)
            int j = g.arc_at_node[static_cast<size_t>(at_top ? current : g.n + current)];
            int next_pos;
            if (at_top) {
                auto [x, y] = g.u_ends[static_cast<size_t>(j)];
                next_pos = current == x ? y : x;
            } else {
                auto [x, y] = g.l_ends[static_cast<size_t>(j)];
                next_pos = current == x ? y : x;
            }
            // traverse the vertical at next_pos
            if (next_pos == start && !at_top) break;  // about to close at the start
            trace.push_back(pattern.label(next_pos));
            current = next_pos;
            at_top = !at_top;
            if (current == start && at_top) {
                trace.pop_back();  // closed without re-listing the start
                break;
            }
        }
        rec.boundary_trace = std::move(trace);
    }

    return rec;
}

namespace {

// Crossing count of the candidate boundary disk with the image of arc j in
// the reconstructed surface, by cyclic endpoint-order parity. The candidate
// uses the adjacent verticals (lo, hi) and the two direct boundary arcs
// between them.
int crossings_with_arc(const ArcPattern& p, int lo, int hi, int j) {
    const int n = p.point_count();
    auto [x, y] = p.arcs[static_cast<size_t>(j)];
    int mx = p.monodromy_map(x), my = p.monodromy_map(y);

    int count = 0;
    for (int z : {x, y, mx, my})
        if (z == lo || z == hi) ++count;

    // Doubled coordinates: marked point i at 2i; the pushed-in endpoints of
    // the direct arc between lo and hi at 2lo+1 and 2hi-1.
    auto side = [&](int doubled, int a, int b) {
        // true when `doubled` lies in the open arc from 2a to 2b (positive direction)
        int start = 2 * a, end = 2 * b;
        int span = (end - start + 2 * n) % (2 * n);
        int off = (doubled - start + 2 * n) % (2 * n);
        return off > 0 && off < span;
    };
    auto beta_parity = [&](int a, int b) {
        int pa = (2 * lo + 1) % (2 * n), pb = (2 * hi - 1 + 2 * n) % (2 * n);
        return side(pa, a, b) != side(pb, a, b) ? 1 : 0;
    };
    count += beta_parity(x, y);    // top arc vs the U-chord
    count += beta_parity(mx, my);  // bottom arc vs the L-chord
    return count;
}

}  // namespace

std::optional<CompressingWitness> find_compressing_curve(const ArcPattern& pattern) {
    if (!pattern.is_canonical())
        throw ValidationError("find_compressing_curve expects the canonical pattern");
    if (pattern.k <= 1) return std::nullopt;

    // Work on the true canonical orientation; mirror the result back if the
    // pattern is the reflected representative.
    ArcPattern canon = ArcPattern::canonical(pattern.k, pattern.monodromy);
    const bool mirrored = !(pattern.arcs == canon.arcs);
    const int n = pattern.point_count();

    int lo = 1, hi = 2;  // d'_1, d'_2
    // The certified arc is l1-d'_1, i.e. (0, 1).
    int target = -1;
    for (size_t j = 0; j < canon.arcs.size(); ++j)
        if (canon.arcs[j] == std::make_pair(0, 1)) target = static_cast<int>(j);
    int count = crossings_with_arc(canon, lo, hi, target);

    CompressingWitness w;
    w.vertical_lo = mirrored ? (n - hi) % n : lo;
    w.vertical_hi = mirrored ? (n - lo) % n : hi;
    auto [ax, ay] = canon.arcs[static_cast<size_t>(target)];
    if (mirrored) {
        int ma = (n - ax) % n, mb = (n - ay) % n;
        ax = std::min(ma, mb);
        ay = std::max(ma, mb);
    }
    w.arc_lo = ax;
    w.arc_hi = ay;
    w.intersection_count = count;
    return w;
}

SolidTorusBoundary solid_torus_boundary_check(int p, int q) {
    auto abs = [](int v) { return v < 0 ? -v : v; };
    if (p == 0) {
        if (abs(q) != 1) throw ValidationError("degenerate (0, q) requires q = +-1");
        return {BoundaryCheck::NotBoundary, 0, NotBoundaryReason::KZero};
    }
    if (std::gcd(abs(p), abs(q)) != 1)
        throw ValidationError("gcd(" + std::to_string(p) + ", " + std::to_string(q) + ") != 1");
    if (p % 2 != 0)
        return {BoundaryCheck::NotBoundary, 0, NotBoundaryReason::OddFirstCoordinate};
    int k = p / 2;
    if (k == q)
        return {BoundaryCheck::NotBoundary, k, NotBoundaryReason::KEqualsQUnresolved};
    return {BoundaryCheck::BoundsOneSided, k, NotBoundaryReason::OddFirstCoordinate};
}

VerificationReport verify_classification(int k_max, Monodromy monodromy) {
    VerificationReport report;
    report.k_max = k_max;
    std::map<std::string, int> counts;
    const bool reflection = monodromy.kind == Monodromy::Kind::Reflection;

    for (const ArcPattern& p : enumerate_arc_patterns(k_max, monodromy)) {
        ++report.patterns_total;
        Reconstruction rec = reconstruct_from_pattern(p);
        bool all_recognized = true;
        for (const auto& c : rec.components)
            if (c.signature == "unrecognized") all_recognized = false;

        if (all_recognized) {
            for (const auto& c : rec.components) counts[c.signature]++;
            continue;
        }
        if (!reflection) {
            // No compressibility theory wired up for the solid-torus
            // monodromies; report the signature as-is.
            for (const auto& c : rec.components) counts[c.signature]++;
            continue;
        }

        // Search for a compressing witness: any adjacent pair of d-verticals
        // whose boundary disk crosses some pattern arc an odd number of times.
        const int n = p.point_count();
        bool found = false;
        for (int a = 0; a < n && !found; ++a) {
            int b = (a + 1) % n;
            if (p.with_l && (a == 0 || b == 0 || a == p.k + 1 || b == p.k + 1)) continue;
            for (size_t j = 0; j < p.arcs.size() && !found; ++j) {
                if (crossings_with_arc(p, a, b, static_cast<int>(j)) % 2 == 1) found = true;
            }
        }
        if (found) {
            ++report.compressible_count;
        } else {
            std::string desc = "pattern k=" + std::to_string(p.k) + " arcs{";
            for (auto [a, b] : p.arcs)
                desc += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            desc += "} unrecognized without witness";
            report.anomalies.push_back(desc);
        }
    }

    for (const auto& [name, c] : counts) report.per_type_counts.push_back({name, c});
    return report;
}

}  // namespace sfs
