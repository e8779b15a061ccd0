#pragma once

#include "hl/complex.hpp"
#include "hl/dp.hpp"
#include "hl/treewidth.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hl::testsupport {

// Exhaustive per-node reference for the solver DP tables, built directly from
// the table semantics instead of per-node transitions:
//
//   an entry (Q, P) -> c exists at node t iff some W, drawn from the
//   (d+1)-simplices seen in bags of t's subtree, satisfies
//     * W restricted to the bag equals Q,
//     * for every in-scope d-simplex rho: P's rho bit is [rho in V] xor
//       (parity of rho's cofaces inside W),
//   and c is the minimum over such W of the weight of (V xor boundary W)
//   restricted to the d-simplices that have already left scope below t.
//
// Scope follows the solver's layout rule: for the Hasse program the d-scope is
// the bag's own d-simplices; for the connectivity program it is the closure of
// the bag. Key packing matches the solver: Q bits first (ascending canonical
// id), then P bits. Exponential in the subtree size -- small inputs only.
inline std::vector<dp::Table> reference_tables(const SimplicialComplex& K, const Chain& v,
                                               int d, const NiceTreeDecomposition& ntd,
                                               bool hasse) {
    std::vector<Simplex> d_list, d1_list;
    for (const auto& [s, w] : K.simplices()) {
        if (s.dim() == d)
            d_list.push_back(s);
        else if (s.dim() == d + 1)
            d1_list.push_back(s);
    }
    auto index_of = [](const std::vector<Simplex>& list, const Simplex& s) {
        auto it = std::lower_bound(list.begin(), list.end(), s);
        if (it == list.end() || *it != s)
            return -1;
        return static_cast<int>(it - list.begin());
    };

    std::vector<std::vector<int>> faces(d1_list.size());
    for (std::size_t c = 0; c < d1_list.size(); ++c) {
        for (const Simplex& f : d1_list[c].facets()) {
            const int fi = index_of(d_list, f);
            if (fi < 0)
                throw std::invalid_argument("reference_tables: complex not face-closed");
            faces[c].push_back(fi);
        }
        std::sort(faces[c].begin(), faces[c].end());
    }
    std::vector<char> in_v(d_list.size(), 0);
    for (const Simplex& s : v.simplices())
        in_v[index_of(d_list, s)] = 1;

    const std::size_t n = ntd.node_count();
    std::vector<std::vector<int>> q_ids(n), p_ids(n), all_q(n), all_p(n);
    std::vector<dp::Table> tables(n);

    auto merge_into = [](std::vector<int>& dst, const std::vector<int>& src) {
        std::vector<int> out;
        std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(out));
        dst = std::move(out);
    };

    for (const int t : ntd.post_order()) {
        const auto& nd = ntd.nodes[t];
        for (const Simplex& s : nd.bag) {
            if (s.dim() == d + 1)
                q_ids[t].push_back(index_of(d1_list, s));
            else if (hasse && s.dim() == d)
                p_ids[t].push_back(index_of(d_list, s));
            else
                throw std::invalid_argument("reference_tables: unexpected bag dimension");
        }
        std::sort(q_ids[t].begin(), q_ids[t].end());
        std::sort(p_ids[t].begin(), p_ids[t].end());
        if (!hasse) {
            for (int q : q_ids[t])
                p_ids[t].insert(p_ids[t].end(), faces[q].begin(), faces[q].end());
            std::sort(p_ids[t].begin(), p_ids[t].end());
            p_ids[t].erase(std::unique(p_ids[t].begin(), p_ids[t].end()), p_ids[t].end());
        }

        all_q[t] = q_ids[t];
        all_p[t] = p_ids[t];
        if (nd.left >= 0) {
            merge_into(all_q[t], all_q[nd.left]);
            merge_into(all_p[t], all_p[nd.left]);
        }
        if (nd.right >= 0) {
            merge_into(all_q[t], all_q[nd.right]);
            merge_into(all_p[t], all_p[nd.right]);
        }

        std::vector<int> paid;
        std::set_difference(all_p[t].begin(), all_p[t].end(), p_ids[t].begin(), p_ids[t].end(),
                            std::back_inserter(paid));

        const int nq = static_cast<int>(q_ids[t].size());
        const auto& pool = all_q[t];
        if (pool.size() > 20)
            throw std::length_error("reference_tables: subtree too large to enumerate");

        dp::Table& table = tables[t];
        for (std::uint64_t w_bits = 0; w_bits < (std::uint64_t{1} << pool.size()); ++w_bits) {
            std::vector<char> in_w(d1_list.size(), 0);
            for (std::size_t b = 0; b < pool.size(); ++b)
                if ((w_bits >> b) & 1u)
                    in_w[pool[b]] = 1;

            auto u_has = [&](int rho) {
                int parity = in_v[rho];
                for (std::size_t c = 0; c < d1_list.size(); ++c)
                    if (in_w[c] && std::binary_search(faces[c].begin(), faces[c].end(), rho))
                        parity ^= 1;
                return parity != 0;
            };

            dp::Key key = 0;
            for (int b = 0; b < nq; ++b)
                if (in_w[q_ids[t][b]])
                    key |= dp::Key{1} << b;
            for (std::size_t b = 0; b < p_ids[t].size(); ++b)
                if (u_has(p_ids[t][b]))
                    key |= dp::Key{1} << (nq + b);

            double cost = 0.0;
            for (int rho : paid)
                if (u_has(rho))
                    cost += K.weight(d_list[rho]);

            auto [it, fresh] = table.try_emplace(key, dp::Entry{cost, 0, 0});
            if (!fresh && cost < it->second.cost)
                it->second.cost = cost;
        }
    }
    return tables;
}

// compares key sets and costs; backpointers are ignored
inline std::string diff_tables(const dp::Table& got, const dp::Table& want) {
    for (const auto& [k, e] : want) {
        auto it = got.find(k);
        if (it == got.end())
            return "missing key " + std::to_string(k);
        if (it->second.cost != e.cost)
            return "key " + std::to_string(k) + ": cost " + std::to_string(it->second.cost) +
                   " != " + std::to_string(e.cost);
    }
    for (const auto& [k, e] : got)
        if (!want.count(k))
            return "extra key " + std::to_string(k);
    return "";
}

} // namespace hl::testsupport
