#include "hl/dp.hpp"

#include "hl/graphs.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>

namespace hl {

namespace {

using dp::Key;
using dp::Table;

constexpr Key low_mask(int n) {
    return n >= 64 ? ~Key{0} : (Key{1} << n) - 1;
}

struct ComplexIndex {
    std::vector<Simplex> d_list, d1_list;
    std::unordered_map<Simplex, int, SimplexHash> d_ix, d1_ix;
    std::vector<std::vector<int>> faces; // per (d+1)-simplex: sorted d-simplex ids
    std::vector<double> weight;          // per d-simplex
    std::vector<char> in_v;              // per d-simplex
    std::vector<int> coface_count;       // per d-simplex
};

ComplexIndex build_index(const SimplicialComplex& K, const Chain& v, int d) {
    ComplexIndex ix;
    ix.d_list = K.simplices_of_dim(d);
    ix.d1_list = K.simplices_of_dim(d + 1);
    for (std::size_t i = 0; i < ix.d_list.size(); ++i)
        ix.d_ix.emplace(ix.d_list[i], static_cast<int>(i));
    for (std::size_t i = 0; i < ix.d1_list.size(); ++i)
        ix.d1_ix.emplace(ix.d1_list[i], static_cast<int>(i));

    ix.weight.resize(ix.d_list.size());
    for (std::size_t i = 0; i < ix.d_list.size(); ++i)
        ix.weight[i] = K.weight(ix.d_list[i]);

    ix.coface_count.assign(ix.d_list.size(), 0);
    ix.faces.resize(ix.d1_list.size());
    for (std::size_t c = 0; c < ix.d1_list.size(); ++c) {
        for (const Simplex& f : ix.d1_list[c].facets()) {
            auto it = ix.d_ix.find(f);
            if (it == ix.d_ix.end())
                throw std::invalid_argument("solve: complex is not face-closed");
            ix.faces[c].push_back(it->second);
            ++ix.coface_count[it->second];
        }
        std::sort(ix.faces[c].begin(), ix.faces[c].end());
    }

    ix.in_v.assign(ix.d_list.size(), 0);
    for (const Simplex& s : v.simplices()) {
        auto it = ix.d_ix.find(s);
        if (it == ix.d_ix.end())
            throw std::invalid_argument("solve: input cycle not supported on the complex");
        ix.in_v[it->second] = 1;
    }
    return ix;
}

// bag-local bit layout: Q bits for (d+1)-simplices, then P bits for d-simplices
struct Layout {
    std::vector<int> q_ids, p_ids; // ascending
    int q_count() const { return static_cast<int>(q_ids.size()); }
    int p_count() const { return static_cast<int>(p_ids.size()); }
    int bits() const { return q_count() + p_count(); }
    Key q_mask() const { return low_mask(q_count()); }
    Key p_mask() const { return low_mask(bits()) ^ q_mask(); }

    int q_bit(int id) const {
        auto it = std::lower_bound(q_ids.begin(), q_ids.end(), id);
        return (it != q_ids.end() && *it == id) ? static_cast<int>(it - q_ids.begin()) : -1;
    }
    int p_bit(int id) const {
        auto it = std::lower_bound(p_ids.begin(), p_ids.end(), id);
        return (it != p_ids.end() && *it == id)
                   ? q_count() + static_cast<int>(it - p_ids.begin())
                   : -1;
    }
};

dp::Remap build_remap(const Layout& child, const Layout& parent) {
    dp::Remap m(child.bits(), -1);
    for (int i = 0; i < child.q_count(); ++i)
        m[i] = parent.q_bit(child.q_ids[i]);
    for (int i = 0; i < child.p_count(); ++i)
        m[child.q_count() + i] = parent.p_bit(child.p_ids[i]);
    return m;
}

enum class Algo { conn, hasse };

Layout make_layout(const ComplexIndex& ix, const std::vector<Simplex>& bag, int d, Algo algo) {
    Layout L;
    for (const Simplex& s : bag) {
        if (s.dim() == d + 1) {
            auto it = ix.d1_ix.find(s);
            if (it == ix.d1_ix.end())
                throw std::invalid_argument("solve: bag simplex not in the complex: " +
                                            s.to_string());
            L.q_ids.push_back(it->second);
        } else if (algo == Algo::hasse && s.dim() == d) {
            auto it = ix.d_ix.find(s);
            if (it == ix.d_ix.end())
                throw std::invalid_argument("solve: bag simplex not in the complex: " +
                                            s.to_string());
            L.p_ids.push_back(it->second);
        } else {
            throw std::invalid_argument("solve: bag simplex has unexpected dimension: " +
                                        s.to_string());
        }
    }
    std::sort(L.q_ids.begin(), L.q_ids.end());
    std::sort(L.p_ids.begin(), L.p_ids.end());
    if (algo == Algo::conn) {
        // d-scope is the closure of the bag
        for (int q : L.q_ids)
            L.p_ids.insert(L.p_ids.end(), ix.faces[q].begin(), ix.faces[q].end());
        std::sort(L.p_ids.begin(), L.p_ids.end());
        L.p_ids.erase(std::unique(L.p_ids.begin(), L.p_ids.end()), L.p_ids.end());
    }
    if (L.bits() > 64)
        throw std::length_error("solve: bag scope exceeds the 64-bit key budget");
    return L;
}

struct TimeGuard {
    std::chrono::steady_clock::time_point deadline;
    bool enabled = false;
    bool expired() const {
        return enabled && std::chrono::steady_clock::now() > deadline;
    }
    static bool abort_hook(void* self) {
        return static_cast<const TimeGuard*>(self)->expired();
    }
};

// set HL_TRACE_DP=1 to stream per-node sweep statistics to stderr
bool trace_enabled() {
    static const bool on = [] {
        const char* e = std::getenv("HL_TRACE_DP");
        return e && *e && *e != '0';
    }();
    return on;
}

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::leaf: return "leaf";
    case NodeKind::introduce: return "intro";
    case NodeKind::forget: return "forget";
    case NodeKind::join: return "join";
    }
    return "?";
}

// TableT selects the memory model: dp::Table keeps backpointers for the
// witness walk, dp::LeanTable holds costs only and lets child tables be
// released as soon as their parent is computed
template <class TableT>
SolveResult run_solve_impl(const SimplicialComplex& K, const Chain& v, int d,
                           const NiceTreeDecomposition& ntd, const SolveOptions& opts,
                           Algo algo) {
    constexpr bool kWitness = std::is_same_v<TableT, Table>;
    const auto t0 = std::chrono::steady_clock::now();
    if (d < 0)
        throw std::invalid_argument("solve: dimension must be non-negative");
    if (!is_cycle(v))
        throw std::invalid_argument("solve: input chain is not a cycle");
    if (v.dim() >= 0 && v.dim() != d)
        throw std::invalid_argument("solve: input cycle has the wrong dimension");

    SolveResult res;
    res.stats.nodes = ntd.node_count();
    res.stats.width = ntd.width();

    if (opts.validate) {
        TdValidation nv = validate_nice(ntd);
        if (!nv.ok)
            throw std::invalid_argument("solve: invalid nice decomposition: " +
                                        nv.violations.front());
        const DerivedGraph g = (algo == Algo::conn) ? connectivity_graph(K, d + 1)
                                                    : hasse_level(K, d + 1);
        TreeDecomposition flat;
        flat.bags.reserve(ntd.node_count());
        for (const auto& nd : ntd.nodes)
            flat.bags.push_back(nd.bag);
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i)
            if (ntd.nodes[i].parent >= 0)
                flat.edges.emplace_back(ntd.nodes[i].parent, static_cast<int>(i));
        TdValidation tv = validate_td(g, flat);
        if (!tv.ok)
            throw std::invalid_argument("solve: decomposition invalid for the derived graph: " +
                                        tv.violations.front());
    }

    const ComplexIndex ix = build_index(K, v, d);

    TimeGuard guard;
    if (opts.time_limit_s > 0) {
        guard.enabled = true;
        guard.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double>(opts.time_limit_s));
    }
    auto finish = [&](SolveStatus st) {
        res.status = st;
        res.cost = std::numeric_limits<double>::quiet_NaN();
        res.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        return res;
    };

    std::vector<Layout> layouts(ntd.node_count());
    std::vector<TableT> tables(ntd.node_count());
    const std::vector<int> order = ntd.post_order();
    std::size_t live_entries = 0;
    // nodes absorbed by a fused join+forget step; their layouts are still
    // computed (parents read them) but their tables never materialize
    std::vector<char> fused(ntd.node_count(), 0);

    for (const int t : order) {
        const auto& nd = ntd.nodes[t];
        layouts[t] = make_layout(ix, nd.bag, d, algo);
        const Layout& Lt = layouts[t];
        if (fused[t])
            continue;
        int store = t; // fused joins store their result at the chain's top

        // children count against the cap until the parent is done, even when
        // a lean join hands them over for early release
        std::size_t child_live = 0;
        if (nd.kind != NodeKind::leaf) {
            child_live += tables[nd.left].size();
            if (nd.kind == NodeKind::join)
                child_live += tables[nd.right].size();
        }

        // lean output tables get the remaining cap as an in-flight budget;
        // released counts entries the step frees before its output peaks
        auto budgeted = [&](std::size_t released) {
            TableT out;
            if constexpr (!kWitness) {
                if (opts.mem_cap_entries)
                    out.set_budget(opts.mem_cap_entries - (live_entries - released));
            } else {
                (void)released;
            }
            return out;
        };

        try {
            switch (nd.kind) {
            case NodeKind::leaf: {
                dp::upsert(tables[t], Key{0}, 0.0, 0, 0);
                break;
            }
            case NodeKind::introduce: {
                const Layout& Ls = layouts[nd.left];
                if (nd.vertex.dim() == d + 1) {
                    const int sid = ix.d1_ix.at(nd.vertex);
                    if (algo == Algo::conn) {
                        dp::ConnIntroduceCtx ctx;
                        ctx.remap = build_remap(Ls, Lt);
                        ctx.sigma_bit = Key{1} << Lt.q_bit(sid);
                        for (int f : ix.faces[sid])
                            if (Ls.p_bit(f) >= 0)
                                ctx.bd_old_bits |= Key{1} << Lt.p_bit(f);
                        for (int f : Lt.p_ids) {
                            if (Ls.p_bit(f) >= 0)
                                continue; // already scoped below
                            const bool inv = ix.in_v[f];
                            const bool inbd = std::binary_search(ix.faces[sid].begin(),
                                                                 ix.faces[sid].end(), f);
                            if (inv)
                                ctx.forced_skip |= Key{1} << Lt.p_bit(f);
                            if (inv != inbd)
                                ctx.forced_take |= Key{1} << Lt.p_bit(f);
                        }
                        tables[t] = dp::conn_introduce(tables[nd.left], ctx, budgeted(0));
                    } else {
                        dp::HasseIntroduceCofaceCtx ctx;
                        ctx.remap = build_remap(Ls, Lt);
                        ctx.sigma_bit = Key{1} << Lt.q_bit(sid);
                        for (int f : ix.faces[sid])
                            if (Lt.p_bit(f) >= 0)
                                ctx.bd_bits |= Key{1} << Lt.p_bit(f);
                        tables[t] = dp::hasse_introduce_coface(tables[nd.left], ctx, budgeted(0));
                    }
                } else {
                    // introducing a d-simplex only happens on the Hasse graph
                    const int rid = ix.d_ix.at(nd.vertex);
                    dp::HasseIntroduceFaceCtx ctx;
                    ctx.remap = build_remap(Ls, Lt);
                    ctx.rho_bit = Key{1} << Lt.p_bit(rid);
                    ctx.rho_in_v = ix.in_v[rid];
                    for (int i = 0; i < Lt.q_count(); ++i)
                        if (std::binary_search(ix.faces[Lt.q_ids[i]].begin(),
                                               ix.faces[Lt.q_ids[i]].end(), rid))
                            ctx.coface_qmask |= Key{1} << i;
                    tables[t] = dp::hasse_introduce_face(tables[nd.left], ctx, budgeted(0));
                }
                break;
            }
            case NodeKind::forget: {
                const Layout& Ls = layouts[nd.left];
                if (nd.vertex.dim() == d + 1) {
                    if (algo == Algo::conn) {
                        dp::ConnForgetCtx ctx;
                        ctx.remap = build_remap(Ls, Lt);
                        for (int i = 0; i < Ls.p_count(); ++i)
                            if (Lt.p_bit(Ls.p_ids[i]) < 0)
                                ctx.paid.emplace_back(Key{1} << (Ls.q_count() + i),
                                                      ix.weight[Ls.p_ids[i]]);
                        tables[t] = dp::conn_forget(tables[nd.left], ctx, budgeted(0));
                    } else {
                        dp::HasseForgetCofaceCtx ctx;
                        ctx.remap = build_remap(Ls, Lt);
                        tables[t] = dp::hasse_forget_coface(tables[nd.left], ctx, budgeted(0));
                    }
                } else {
                    const int rid = ix.d_ix.at(nd.vertex);
                    dp::HasseForgetFaceCtx ctx;
                    ctx.remap = build_remap(Ls, Lt);
                    ctx.rho_bit_child = Key{1} << Ls.p_bit(rid);
                    ctx.rho_weight = ix.weight[rid];
                    tables[t] = dp::hasse_forget_face(tables[nd.left], ctx, budgeted(0));
                }
                break;
            }
            case NodeKind::join: {
                dp::JoinCtx ctx;
                ctx.q_mask = Lt.q_mask();
                ctx.p_mask = Lt.p_mask();
                for (int i = 0; i < Lt.p_count(); ++i)
                    if (ix.in_v[Lt.p_ids[i]])
                        ctx.v_bits |= Key{1} << (Lt.q_count() + i);
                ctx.q_boundary.resize(Lt.q_count(), 0);
                for (int i = 0; i < Lt.q_count(); ++i)
                    for (int f : ix.faces[Lt.q_ids[i]])
                        if (Lt.p_bit(f) >= 0)
                            ctx.q_boundary[i] |= Key{1} << Lt.p_bit(f);
                ctx.abort = &TimeGuard::abort_hook;
                ctx.abort_arg = &guard;
                if constexpr (kWitness) {
                    tables[t] = dp::join_step(tables[nd.left], tables[nd.right], ctx,
                                              budgeted(0));
                } else {
                    // cost-only: absorb the forget chain sitting above the
                    // join, streaming each combined entry straight to its
                    // post-forget key; the raw join product (the largest
                    // table of the whole sweep by far) is never held
                    int top = t;
                    while (ntd.nodes[top].parent >= 0 &&
                           ntd.nodes[ntd.nodes[top].parent].kind == NodeKind::forget)
                        top = ntd.nodes[top].parent;
                    if (top == t) {
                        // children are bucketed then dropped inside, so their
                        // entries no longer count against the output's budget
                        tables[t] = dp::join_step_release(tables[nd.left], tables[nd.right],
                                                          ctx, budgeted(child_live));
                    } else {
                        layouts[top] = make_layout(ix, ntd.nodes[top].bag, d, algo);
                        const Layout& Lf = layouts[top];
                        dp::ConnForgetCtx fold; // same pay-and-drop shape for both algos
                        fold.remap = build_remap(Lt, Lf);
                        for (int i = 0; i < Lt.p_count(); ++i)
                            if (Lf.p_bit(Lt.p_ids[i]) < 0)
                                fold.paid.emplace_back(Key{1} << (Lt.q_count() + i),
                                                       ix.weight[Lt.p_ids[i]]);
                        for (int n = ntd.nodes[t].parent; n >= 0; n = ntd.nodes[n].parent) {
                            fused[n] = 1;
                            if (n == top)
                                break;
                        }
                        store = top;
                        tables[top] = dp::join_fold_release(tables[nd.left], tables[nd.right],
                                                            ctx, fold, budgeted(child_live));
                    }
                }
                break;
            }
            }
        } catch (const dp::JoinAborted&) {
            return finish(SolveStatus::timeout);
        } catch (const dp::TableOverflow&) {
            if (trace_enabled())
                std::fprintf(stderr,
                             "[dp] OVERFLOW node=%d kind=%s bag=%zu q=%d p=%d live=%zu\n", t,
                             kind_name(nd.kind), nd.bag.size(), Lt.q_count(), Lt.p_count(),
                             live_entries);
            return finish(SolveStatus::memory_cap);
        }

        dp::finalize(tables[store]);

        if (trace_enabled())
            std::fprintf(stderr, "[dp] node=%d kind=%s%s bag=%zu q=%d p=%d size=%zu live=%zu\n",
                         t, kind_name(nd.kind), store == t ? "" : "+fold", nd.bag.size(),
                         Lt.q_count(), Lt.p_count(), tables[store].size(),
                         live_entries + tables[store].size());

        // witnessed runs keep child tables alive for the backpointer walk;
        // cost-only runs release them as soon as the parent is computed
        res.stats.peak_node_entries =
            std::max(res.stats.peak_node_entries, tables[store].size());
        res.stats.total_entries += tables[store].size();
        live_entries += tables[store].size();
        if constexpr (!kWitness) {
            if (nd.kind != NodeKind::leaf) {
                live_entries -= child_live;
                tables[nd.left] = TableT{};
                if (nd.kind == NodeKind::join)
                    tables[nd.right] = TableT{};
            }
        }
        if (opts.mem_cap_entries && live_entries > opts.mem_cap_entries)
            return finish(SolveStatus::memory_cap);
        if (guard.expired())
            return finish(SolveStatus::timeout);
    }

    const TableT& root_table = tables[ntd.root];

    if constexpr (!kWitness) {
        const double* root_cost = root_table.find_cost(Key{0});
        if (!root_cost)
            return finish(SolveStatus::infeasible);
        // no backpointer walk: take the accumulated value at the root and add
        // the d-simplices the connectivity sweep never scopes (no coface at
        // all); the Hasse sweep visits every d-simplex, so nothing is missing
        double total = *root_cost;
        if (algo == Algo::conn)
            for (std::size_t i = 0; i < ix.d_list.size(); ++i)
                if (ix.coface_count[i] == 0 && ix.in_v[i])
                    total += ix.weight[i];
        res.cost = total;
        res.cycle = Chain(d);
        res.chain = Chain(d + 1);
        res.status = SolveStatus::ok;
        res.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        return res;
    } else {
        if (opts.debug)
            opts.debug->tables = tables;

        auto root_it = root_table.find(Key{0});
        if (root_it == root_table.end())
            return finish(SolveStatus::infeasible);

        // walk the backpointers; W is read off at forget nodes of (d+1)-simplices
        std::vector<char> in_w(ix.d1_list.size(), 0);
        std::vector<std::pair<int, Key>> stack{{ntd.root, Key{0}}};
        while (!stack.empty()) {
            auto [t, key] = stack.back();
            stack.pop_back();
            const auto& nd = ntd.nodes[t];
            const dp::Entry& e = tables[t].at(key);
            switch (nd.kind) {
            case NodeKind::leaf:
                break;
            case NodeKind::introduce:
                stack.emplace_back(nd.left, e.from_left);
                break;
            case NodeKind::forget: {
                if (nd.vertex.dim() == d + 1) {
                    const int sid = ix.d1_ix.at(nd.vertex);
                    const int qb = layouts[nd.left].q_bit(sid);
                    if ((e.from_left >> qb) & 1u)
                        in_w[sid] = 1;
                }
                stack.emplace_back(nd.left, e.from_left);
                break;
            }
            case NodeKind::join:
                stack.emplace_back(nd.left, e.from_left);
                stack.emplace_back(nd.right, e.from_right);
                break;
            }
        }

        std::vector<Simplex> w_elems;
        for (std::size_t i = 0; i < in_w.size(); ++i)
            if (in_w[i])
                w_elems.push_back(ix.d1_list[i]);
        res.chain = Chain(d + 1, std::move(w_elems));
        res.cycle = chain_add(v, boundary(res.chain));
        res.cost = cost(K, res.cycle); // canonical-order accumulation
        res.status = SolveStatus::ok;
        res.stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        return res;
    }
}

SolveResult run_solve(const SimplicialComplex& K, const Chain& v, int d,
                      const NiceTreeDecomposition& ntd, const SolveOptions& opts, Algo algo) {
    return opts.witness ? run_solve_impl<Table>(K, v, d, ntd, opts, algo)
                        : run_solve_impl<dp::LeanTable>(K, v, d, ntd, opts, algo);
}

} // namespace

SolveResult solve_conn(const SimplicialComplex& K, const Chain& v, int d,
                       const NiceTreeDecomposition& ntd, const SolveOptions& opts) {
    return run_solve(K, v, d, ntd, opts, Algo::conn);
}

SolveResult solve_hasse(const SimplicialComplex& K, const Chain& v, int d,
                        const NiceTreeDecomposition& ntd, const SolveOptions& opts) {
    return run_solve(K, v, d, ntd, opts, Algo::hasse);
}

} // namespace hl
