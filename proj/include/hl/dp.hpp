#pragma once

#include "hl/complex.hpp"
#include "hl/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hl {
namespace dp {

// A DP table maps a packed (Q, P) key to the cheapest known cost. Keys pack
// the bag-local characteristic vectors: Q bits (selected (d+1)-simplices)
// first, then P bits (d-simplices of the partial solution), both indexed in
// canonical simplex order. Absent keys mean infeasible (cost +inf).
using Key = std::uint64_t;

struct Entry {
    double cost = 0.0;
    Key from_left = 0;  // child key (unary nodes, join left)
    Key from_right = 0; // join right child key
};

// full table: keeps backpointers so the optimal chain can be walked back
// after the bottom-up pass
using Table = std::unordered_map<Key, Entry>;

// keep the cheaper entry; on exact cost ties the lexicographically smaller
// (from_left, from_right) wins, so table contents never depend on insertion order
inline void upsert(Table& t, Key key, double cost, Key from_left, Key from_right) {
    auto [it, fresh] = t.try_emplace(key, Entry{cost, from_left, from_right});
    if (fresh)
        return;
    Entry& e = it->second;
    if (cost < e.cost || (cost == e.cost && std::pair(from_left, from_right) <
                                                std::pair(e.from_left, e.from_right)))
        e = Entry{cost, from_left, from_right};
}

// thrown by LeanTable::add when the entry budget set via set_budget is
// exceeded even after folding duplicates; the solver reports memory_cap
struct TableOverflow {};

// cost-only table for witness-free runs: raw (key, cost) pairs, duplicate
// keys folded to the cheapest cost by sorted compaction when the buffer
// fills and once per finished node. 16 bytes per entry and no per-entry
// allocation, so tables with tens of millions of entries stay affordable.
class LeanTable {
public:
    void reserve(std::size_t n) {
        if (budget_ < n)
            n = budget_ + 1;
        items_.reserve(n);
    }
    std::size_t size() const { return items_.size(); }

    // cap on unique entries, enforced while the table is being filled so a
    // single oversized node cannot exhaust memory before being noticed
    void set_budget(std::size_t b) {
        budget_ = b;
        if (budget_ < threshold_)
            threshold_ = budget_ + 1;
    }

    void add(Key key, double cost) {
        if (items_.size() == items_.capacity() && items_.size() >= min_threshold) {
            // folding duplicates in place is cheaper than a reallocation
            compact();
            if (items_.size() > budget_)
                throw TableOverflow{};
            if (items_.size() == items_.capacity()) {
                // all unique: grow in controlled steps so a budgeted table
                // never commits memory past its cap (vector doubling would
                // transiently hold twice the budget during the copy)
                std::size_t want = items_.capacity() * 2;
                if (budget_ != std::numeric_limits<std::size_t>::max() &&
                    want > budget_ + 1)
                    want = budget_ + 1;
                items_.reserve(want);
            }
        }
        items_.emplace_back(key, cost);
        if (items_.size() >= threshold_) {
            compact();
            if (items_.size() > budget_)
                throw TableOverflow{};
        }
    }

    // release the slack left behind by in-flight growth; finished tables only
    // pay for the entries they keep
    void shrink() { items_.shrink_to_fit(); }

    // sort by (key, cost) and keep the first entry per key, i.e. the cheapest;
    // ties are byte-identical pairs, so the result is insertion-order independent
    void compact() {
        std::sort(items_.begin(), items_.end());
        auto out = items_.begin();
        for (auto it = items_.begin(); it != items_.end();) {
            auto next = it + 1;
            while (next != items_.end() && next->first == it->first)
                ++next;
            *out++ = *it;
            it = next;
        }
        items_.erase(out, items_.end());
        threshold_ = std::max(min_threshold, items_.size() * 2);
        if (budget_ < threshold_) // never let the raw buffer pass the budget unchecked
            threshold_ = budget_ + 1;
    }

    // valid only after compact(); run_solve compacts every node on completion
    const std::vector<std::pair<Key, double>>& items() const { return items_; }

    const double* find_cost(Key key) const {
        auto it = std::lower_bound(items_.begin(), items_.end(), key,
                                   [](const std::pair<Key, double>& a, Key k) {
                                       return a.first < k;
                                   });
        return (it != items_.end() && it->first == key) ? &it->second : nullptr;
    }

private:
    static constexpr std::size_t min_threshold = std::size_t{1} << 20;
    std::vector<std::pair<Key, double>> items_;
    std::size_t threshold_ = min_threshold;
    std::size_t budget_ = std::numeric_limits<std::size_t>::max();
};

inline void upsert(LeanTable& t, Key key, double cost, Key, Key) { t.add(key, cost); }

// uniform (key, cost) traversal for the transition steps below; lean tables
// must be compacted first
template <class Fn>
void for_each_entry(const Table& t, Fn&& fn) {
    for (const auto& [k, e] : t)
        fn(k, e.cost);
}
template <class Fn>
void for_each_entry(const LeanTable& t, Fn&& fn) {
    for (const auto& [k, c] : t.items())
        fn(k, c);
}

// called once per finished node; full tables need nothing
inline void finalize(Table&) {}
inline void finalize(LeanTable& t) {
    t.compact();
    t.shrink();
}

// child-bit -> parent-bit translation; -1 drops the bit
using Remap = std::vector<int>;
inline Key remap_key(Key k, const Remap& m) {
    Key out = 0;
    while (k) {
        const int b = std::countr_zero(k);
        k &= k - 1;
        if (m[b] >= 0)
            out |= Key{1} << m[b];
    }
    return out;
}

// ---- transition steps, one per nice-node shape ----
// Each step consumes a child table and produces the parent table; contexts
// carry parent-space bit masks precomputed from the bag layouts.

struct ConnIntroduceCtx {
    Remap remap;          // child scope -> parent scope
    Key sigma_bit = 0;    // Q bit of the introduced (d+1)-simplex
    Key bd_old_bits = 0;  // ∂σ restricted to the child's d-scope
    Key forced_skip = 0;  // V on the newly scoped d-simplices (σ unused)
    Key forced_take = 0;  // V △ ∂σ on the newly scoped d-simplices (σ used)
};

template <class T>
T conn_introduce(const T& child, const ConnIntroduceCtx& ctx, T out = T{}) {
    out.reserve(child.size() * 2);
    for_each_entry(child, [&](Key k, double c) {
        const Key pk = remap_key(k, ctx.remap);
        // σ stays out of W: U must match V on the d-simplices entering scope
        upsert(out, pk | ctx.forced_skip, c, k, 0);
        // σ joins W: U flips by ∂σ
        upsert(out, (pk ^ ctx.bd_old_bits) | ctx.sigma_bit | ctx.forced_take, c, k, 0);
    });
    return out;
}

struct ConnForgetCtx {
    Remap remap; // drops σ's Q bit and the d-simplices leaving scope
    std::vector<std::pair<Key, double>> paid; // (child-space bit, weight) leaving scope
};

template <class T>
T conn_forget(const T& child, const ConnForgetCtx& ctx, T out = T{}) {
    out.reserve(child.size());
    for_each_entry(child, [&](Key k, double c) {
        double extra = 0.0;
        for (const auto& [bit, w] : ctx.paid)
            if (k & bit)
                extra += w;
        upsert(out, remap_key(k, ctx.remap), c + extra, k, 0);
    });
    return out;
}

struct HasseIntroduceCofaceCtx {
    Remap remap;
    Key sigma_bit = 0;
    Key bd_bits = 0; // ∂σ restricted to the bag's d-simplices
};

template <class T>
T hasse_introduce_coface(const T& child, const HasseIntroduceCofaceCtx& ctx, T out = T{}) {
    out.reserve(child.size() * 2);
    for_each_entry(child, [&](Key k, double c) {
        const Key pk = remap_key(k, ctx.remap);
        upsert(out, pk, c, k, 0);
        upsert(out, (pk ^ ctx.bd_bits) | ctx.sigma_bit, c, k, 0);
    });
    return out;
}

struct HasseIntroduceFaceCtx {
    Remap remap;
    Key rho_bit = 0;
    bool rho_in_v = false;
    Key coface_qmask = 0; // bag (d+1)-simplices having ρ as a facet
};

template <class T>
T hasse_introduce_face(const T& child, const HasseIntroduceFaceCtx& ctx, T out = T{}) {
    out.reserve(child.size());
    for_each_entry(child, [&](Key k, double c) {
        const Key pk = remap_key(k, ctx.remap);
        // ρ must lie in U exactly when it lies in ∂(Q) △ V; the other branch is infeasible
        const bool take = (std::popcount(pk & ctx.coface_qmask) & 1) != ctx.rho_in_v;
        upsert(out, take ? (pk | ctx.rho_bit) : pk, c, k, 0);
    });
    return out;
}

struct HasseForgetFaceCtx {
    Remap remap;            // drops ρ's P bit
    Key rho_bit_child = 0;  // ρ in the child's key space
    double rho_weight = 0.0;
};

template <class T>
T hasse_forget_face(const T& child, const HasseForgetFaceCtx& ctx, T out = T{}) {
    out.reserve(child.size());
    for_each_entry(child, [&](Key k, double c) {
        const double extra = (k & ctx.rho_bit_child) ? ctx.rho_weight : 0.0;
        upsert(out, remap_key(k, ctx.remap), c + extra, k, 0);
    });
    return out;
}

struct HasseForgetCofaceCtx {
    Remap remap; // drops σ's Q bit
};

template <class T>
T hasse_forget_coface(const T& child, const HasseForgetCofaceCtx& ctx, T out = T{}) {
    out.reserve(child.size());
    for_each_entry(child, [&](Key k, double c) {
        upsert(out, remap_key(k, ctx.remap), c, k, 0);
    });
    return out;
}

// thrown by join_step when its abort hook fires (e.g. a time limit)
struct JoinAborted {};

// shared by both algorithms: combine children with identical bags
struct JoinCtx {
    Key q_mask = 0;
    Key p_mask = 0;
    Key v_bits = 0;              // V restricted to the d-scope
    std::vector<Key> q_boundary; // per Q bit: ∂σ restricted to the d-scope
    bool (*abort)(void*) = nullptr; // polled periodically; true stops the join
    void* abort_arg = nullptr;
};

using JoinBuckets = std::unordered_map<Key, std::vector<std::pair<Key, double>>>;

// exact number of (left, right) pairs a join will emit: an upper bound on the
// output's unique entries, so reserving it up front (clamped by the table's
// budget) means a budgeted join never reallocates mid-stream
inline std::size_t join_pair_count(const JoinBuckets& lb, const JoinBuckets& rb) {
    std::size_t pairs = 0;
    for (const auto& [q, lv] : lb) {
        auto it = rb.find(q);
        if (it != rb.end())
            pairs += lv.size() * it->second.size();
    }
    return pairs;
}

// cap the up-front reservation for tables without a budget (the budget clamp
// in LeanTable::reserve handles budgeted ones); 2^28 entries = 4 GiB
inline constexpr std::size_t kJoinReserveCap = std::size_t{1} << 28;

// fold != nullptr streams every combined entry through a composed forget
// chain (pay the bits leaving scope, then remap) before it is stored, so the
// pre-forget join table never materializes; cost-only runs use this to keep
// the biggest intermediate of the whole sweep off the heap
template <class T>
T join_emit(const JoinBuckets& lb, const JoinBuckets& rb, std::size_t size_hint,
            const JoinCtx& ctx, T out, const ConnForgetCtx* fold = nullptr) {
    out.reserve(size_hint);
    std::uint64_t tick = 0;
    for (const auto& [q, lv] : lb) {
        auto it = rb.find(q);
        if (it == rb.end())
            continue;
        Key bdq = 0;
        for (Key qq = q; qq;) {
            const int b = std::countr_zero(qq);
            qq &= qq - 1;
            bdq ^= ctx.q_boundary[b];
        }
        const Key base = q | ((bdq ^ ctx.v_bits) & ctx.p_mask);
        for (const auto& [kl, cl] : lv)
            for (const auto& [kr, cr] : it->second) {
                Key k = base ^ ((kl ^ kr) & ctx.p_mask);
                double c = cl + cr;
                if (fold) {
                    for (const auto& [bit, w] : fold->paid)
                        if (k & bit)
                            c += w;
                    k = remap_key(k, fold->remap);
                }
                upsert(out, k, c, kl, kr);
                if (((++tick & 0xFFFF) == 0) && ctx.abort && ctx.abort(ctx.abort_arg))
                    throw JoinAborted{};
            }
    }
    return out;
}

template <class T>
T join_step(const T& left, const T& right, const JoinCtx& ctx, T out = T{}) {
    JoinBuckets lb, rb;
    for_each_entry(left, [&](Key k, double c) { lb[k & ctx.q_mask].emplace_back(k, c); });
    for_each_entry(right, [&](Key k, double c) { rb[k & ctx.q_mask].emplace_back(k, c); });
    return join_emit<T>(lb, rb, std::max(left.size(), right.size()), ctx, std::move(out));
}

// same combine, but each child is released right after it is bucketed, which
// halves the transient footprint of big joins; used by cost-only runs
template <class T>
T join_step_release(T& left, T& right, const JoinCtx& ctx, T out = T{}) {
    JoinBuckets lb, rb;
    for_each_entry(left, [&](Key k, double c) { lb[k & ctx.q_mask].emplace_back(k, c); });
    left = T{};
    for_each_entry(right, [&](Key k, double c) { rb[k & ctx.q_mask].emplace_back(k, c); });
    right = T{};
    const std::size_t hint = std::min(join_pair_count(lb, rb), kJoinReserveCap);
    return join_emit<T>(lb, rb, hint, ctx, std::move(out));
}

// combine and immediately apply the forget chain sitting above the join; the
// fold context carries the composed remap and the weights of everything the
// chain pays, expressed in the join's own key space
template <class T>
T join_fold_release(T& left, T& right, const JoinCtx& ctx, const ConnForgetCtx& fold,
                    T out = T{}) {
    JoinBuckets lb, rb;
    for_each_entry(left, [&](Key k, double c) { lb[k & ctx.q_mask].emplace_back(k, c); });
    left = T{};
    for_each_entry(right, [&](Key k, double c) { rb[k & ctx.q_mask].emplace_back(k, c); });
    right = T{};
    const std::size_t hint = std::min(join_pair_count(lb, rb), kJoinReserveCap);
    return join_emit<T>(lb, rb, hint, ctx, std::move(out), &fold);
}

} // namespace dp

enum class SolveStatus { ok, timeout, memory_cap, infeasible };

// per-node DP tables, copied out after the bottom-up pass when requested;
// filled only when the witness option is on (cost-only runs drop tables early)
struct SolveDebug {
    std::vector<dp::Table> tables; // indexed by nice-node id
};

struct SolveOptions {
    double time_limit_s = 0.0;          // 0 = unlimited
    std::uint64_t mem_cap_entries = 0;  // entries held at once across tables, 0 = unlimited
    bool validate = true;               // validate the decomposition before solving
    bool witness = true;                // false: release child tables as the sweep
                                        // advances and report the cost only (cycle
                                        // and chain stay empty); cuts peak memory
                                        // to the live frontier of the sweep
    SolveDebug* debug = nullptr;        // optional table capture for inspection
};

struct SolveStats {
    std::int64_t wall_ms = 0;
    std::size_t peak_node_entries = 0;  // largest single DP table
    std::uint64_t total_entries = 0;    // sum over all node tables
    std::size_t nodes = 0;
    int width = -1;
};

struct SolveResult {
    SolveStatus status = SolveStatus::ok;
    double cost = 0.0; // NaN unless status == ok
    Chain cycle;       // U: the optimal homologous cycle (empty for cost-only runs)
    Chain chain;       // W: a (d+1)-chain with U = V △ ∂W (empty for cost-only runs)
    SolveStats stats;
};

// Dynamic program over a nice decomposition of Con_{d+1}(K). Table keys track
// (W ∩ bag, U ∩ closure(bag)); weights are paid when a d-simplex leaves the
// closure scope, plus a final fix-up for d-simplices with no coface at all.
SolveResult solve_conn(const SimplicialComplex& K, const Chain& v, int d,
                       const NiceTreeDecomposition& ntd, const SolveOptions& opts = {});

// Dynamic program over a nice decomposition of Hasse_{d+1}(K). Table keys
// track (W ∩ bag, U ∩ bag); weights are paid when a d-simplex is forgotten.
SolveResult solve_hasse(const SimplicialComplex& K, const Chain& v, int d,
                        const NiceTreeDecomposition& ntd, const SolveOptions& opts = {});

} // namespace hl
