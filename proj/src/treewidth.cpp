#include "hl/treewidth.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hl {

int width(const TreeDecomposition& td) {
    std::size_t m = 0;
    for (const auto& b : td.bags)
        m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

namespace {

bool bag_contains(const std::vector<Simplex>& bag, const Simplex& s) {
    return std::binary_search(bag.begin(), bag.end(), s);
}

// adjacency over tree nodes
std::vector<std::vector<int>> tree_adjacency(std::size_t n,
                                             const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

} // namespace

TdValidation validate_td(const DerivedGraph& g, const TreeDecomposition& td) {
    TdValidation res;
    auto fail = [&res](std::string msg) {
        res.ok = false;
        res.violations.push_back(std::move(msg));
    };

    const std::size_t n = td.node_count();
    for (auto [a, b] : td.edges)
        if (a < 0 || b < 0 || a >= static_cast<int>(n) || b >= static_cast<int>(n) || a == b) {
            fail("tree: edge endpoint out of range");
            return res;
        }
    for (const auto& bag : td.bags) {
        if (!std::is_sorted(bag.begin(), bag.end()) ||
            std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            fail("bags: bag not sorted/unique");
        for (const Simplex& s : bag)
            if (g.vertex_index(s) < 0)
                fail("bags: element is not a graph vertex: " + s.to_string());
    }

    // tree shape: |E| = n-1 and connected (the empty tree is fine)
    if (n > 0) {
        if (td.edges.size() != n - 1) {
            fail("tree: node/edge count mismatch");
        } else {
            auto adj = tree_adjacency(n, td.edges);
            std::vector<char> seen(n, 0);
            std::deque<int> q{0};
            seen[0] = 1;
            std::size_t cnt = 1;
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                for (int w : adj[u])
                    if (!seen[w]) {
                        seen[w] = 1;
                        ++cnt;
                        q.push_back(w);
                    }
            }
            if (cnt != n)
                fail("tree: nodes are not connected");
        }
    }

    // which nodes contain each graph vertex
    std::vector<std::vector<int>> holders(g.vertex_count());
    for (std::size_t i = 0; i < n; ++i)
        for (const Simplex& s : td.bags[i]) {
            int vi = g.vertex_index(s);
            if (vi >= 0)
                holders[vi].push_back(static_cast<int>(i));
        }

    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (holders[v].empty())
            fail("vertex_coverage: " + g.vertices[v].to_string() + " is in no bag");

    for (auto [a, b] : g.edges) {
        bool covered = false;
        // holders are sorted by construction; intersect
        const auto &ha = holders[a], &hb = holders[b];
        for (std::size_t i = 0, j = 0; i < ha.size() && j < hb.size();) {
            if (ha[i] == hb[j]) {
                covered = true;
                break;
            }
            ha[i] < hb[j] ? ++i : ++j;
        }
        if (!covered)
            fail("edge_coverage: {" + g.vertices[a].to_string() + "," +
                 g.vertices[b].to_string() + "} in no bag");
    }

    if (res.ok && n > 0) {
        auto adj = tree_adjacency(n, td.edges);
        std::vector<int> mark(n, -1);
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            if (holders[v].size() <= 1)
                continue;
            for (int h : holders[v])
                mark[h] = static_cast<int>(v);
            std::deque<int> q{holders[v][0]};
            std::size_t cnt = 1;
            mark[holders[v][0]] = -2; // visited
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                for (int w : adj[u])
                    if (mark[w] == static_cast<int>(v)) {
                        mark[w] = -2;
                        ++cnt;
                        q.push_back(w);
                    }
            }
            if (cnt != holders[v].size())
                fail("connectivity: bags holding " + g.vertices[v].to_string() +
                     " do not form a subtree");
        }
    }
    return res;
}

TreeDecomposition heuristic_td(const DerivedGraph& g, Heuristic h) {
    const std::size_t n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0)
        return td;

    std::vector<std::set<int>> adj(n);
    for (auto [a, b] : g.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }

    auto fill_count = [&adj](int v) {
        long long missing = 0;
        for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
            for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                if (!adj[*it].count(*jt))
                    ++missing;
        return missing;
    };
    auto key_of = [&](int v) {
        return h == Heuristic::min_degree ? static_cast<long long>(adj[v].size())
                                          : fill_count(v);
    };

    std::vector<long long> key(n);
    std::set<std::pair<long long, int>> pq; // (key, vertex): min key, then canonical vertex
    for (std::size_t v = 0; v < n; ++v) {
        key[v] = key_of(static_cast<int>(v));
        pq.emplace(key[v], static_cast<int>(v));
    }

    std::vector<int> pos(n, -1);
    std::vector<std::vector<int>> bags(n);
    for (std::size_t step = 0; step < n; ++step) {
        const int v = pq.begin()->second;
        pq.erase(pq.begin());
        pos[v] = static_cast<int>(step);

        std::vector<int> nb(adj[v].begin(), adj[v].end());
        bags[step] = nb;
        bags[step].push_back(v);
        std::sort(bags[step].begin(), bags[step].end());

        for (int u : nb)
            adj[u].erase(v);
        adj[v].clear();

        std::vector<std::pair<int, int>> added;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (adj[nb[i]].insert(nb[j]).second) {
                    adj[nb[j]].insert(nb[i]);
                    added.emplace_back(nb[i], nb[j]);
                }

        std::set<int> dirty(nb.begin(), nb.end());
        if (h == Heuristic::min_fill)
            for (auto [a, b] : added) {
                dirty.insert(adj[a].begin(), adj[a].end());
                dirty.insert(adj[b].begin(), adj[b].end());
            }
        for (int u : dirty) {
            if (pos[u] >= 0)
                continue;
            pq.erase({key[u], u});
            key[u] = key_of(u);
            pq.emplace(key[u], u);
        }
    }

    // clique-tree edges: each node links to the bag of its earliest-eliminated
    // other member; members-free nodes are component roots, chained afterwards
    td.bags.resize(n);
    std::vector<int> roots;
    for (std::size_t i = 0; i < n; ++i) {
        for (int u : bags[i])
            td.bags[i].push_back(g.vertices[u]);
        std::sort(td.bags[i].begin(), td.bags[i].end());

        int best = -1;
        for (int u : bags[i])
            if (pos[u] > static_cast<int>(i) && (best < 0 || pos[u] < best))
                best = pos[u];
        if (best >= 0)
            td.edges.emplace_back(static_cast<int>(i), best);
        else
            roots.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.edges.emplace_back(roots[i - 1], roots[i]);
    std::sort(td.edges.begin(), td.edges.end());
    return td;
}

TreeDecomposition best_td(const DerivedGraph& g) {
    TreeDecomposition a = heuristic_td(g, Heuristic::min_degree);
    TreeDecomposition b = heuristic_td(g, Heuristic::min_fill);
    return width(b) < width(a) ? b : a;
}

namespace {

// one elimination run with uniformly random tie-breaking among the vertices
// of minimal score; alternating the score function across rounds explores
// both heuristics' neighborhoods
TreeDecomposition random_elimination_td(const DerivedGraph& g, std::uint64_t seed,
                                        bool min_fill) {
    const std::size_t n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0)
        return td;

    std::mt19937_64 rng(seed);
    std::vector<std::set<int>> adj(n);
    for (auto [a, b] : g.edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }

    std::vector<int> pos(n, -1);
    std::vector<std::vector<int>> bags(n);
    std::vector<int> ties;
    for (std::size_t step = 0; step < n; ++step) {
        long long best_score = -1;
        ties.clear();
        for (std::size_t v = 0; v < n; ++v) {
            if (pos[v] >= 0)
                continue;
            long long score = 0;
            if (min_fill) {
                for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
                    for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
                        if (!adj[*it].count(*jt))
                            ++score;
            } else {
                score = static_cast<long long>(adj[v].size());
            }
            if (best_score < 0 || score < best_score) {
                best_score = score;
                ties.assign(1, static_cast<int>(v));
            } else if (score == best_score) {
                ties.push_back(static_cast<int>(v));
            }
        }
        const int v = ties[rng() % ties.size()];
        pos[v] = static_cast<int>(step);

        std::vector<int> nb(adj[v].begin(), adj[v].end());
        bags[step] = nb;
        bags[step].push_back(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (int u : nb)
            adj[u].erase(v);
        adj[v].clear();
    }

    td.bags.resize(n);
    std::vector<int> roots;
    for (std::size_t i = 0; i < n; ++i) {
        for (int u : bags[i])
            td.bags[i].push_back(g.vertices[u]);
        std::sort(td.bags[i].begin(), td.bags[i].end());

        int attach = -1; // earliest-eliminated later neighbor
        for (int u : bags[i])
            if (pos[u] > static_cast<int>(i) && (attach < 0 || pos[u] < attach))
                attach = pos[u];
        if (attach >= 0)
            td.edges.emplace_back(static_cast<int>(i), attach);
        else
            roots.push_back(static_cast<int>(i));
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.edges.emplace_back(roots[i - 1], roots[i]);
    std::sort(td.edges.begin(), td.edges.end());
    return td;
}

} // namespace

TreeDecomposition best_td_randomized(const DerivedGraph& g, int rounds,
                                     std::uint64_t seed) {
    TreeDecomposition best = best_td(g);
    for (int r = 0; r < rounds; ++r) {
        TreeDecomposition td = random_elimination_td(g, seed + std::uint64_t(r), r % 2 != 0);
        if (width(td) < width(best))
            best = td;
    }
    return best;
}

int NiceTreeDecomposition::width() const {
    std::size_t m = 0;
    for (const auto& nd : nodes)
        m = std::max(m, nd.bag.size());
    return static_cast<int>(m) - 1;
}

std::vector<int> NiceTreeDecomposition::post_order() const {
    std::vector<int> out;
    if (root < 0)
        return out;
    // reverse preorder (parent before children, right before left) reversed
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        out.push_back(t);
        if (nodes[t].left >= 0)
            stack.push_back(nodes[t].left);
        if (nodes[t].right >= 0)
            stack.push_back(nodes[t].right);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

struct NiceBuilder {
    std::vector<NiceTreeDecomposition::Node> nodes;

    int add(NodeKind kind, std::vector<Simplex> bag, int left, int right, Simplex vertex) {
        NiceTreeDecomposition::Node nd;
        nd.kind = kind;
        nd.bag = std::move(bag);
        nd.left = left;
        nd.right = right;
        nd.vertex = std::move(vertex);
        const int id = static_cast<int>(nodes.size());
        if (left >= 0)
            nodes[left].parent = id;
        if (right >= 0)
            nodes[right].parent = id;
        nodes.push_back(std::move(nd));
        return id;
    }

    // extend `from` (bag = src) to bag = dst by forgetting src\dst then
    // introducing dst\src, one vertex at a time in canonical order
    int chain_to(int from, const std::vector<Simplex>& src, const std::vector<Simplex>& dst) {
        std::vector<Simplex> cur = src;
        int top = from;
        std::vector<Simplex> drop, gain;
        std::set_difference(src.begin(), src.end(), dst.begin(), dst.end(),
                            std::back_inserter(drop));
        std::set_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                            std::back_inserter(gain));
        for (const Simplex& s : drop) {
            cur.erase(std::find(cur.begin(), cur.end(), s));
            top = add(NodeKind::forget, cur, top, -1, s);
        }
        for (const Simplex& s : gain) {
            cur.insert(std::upper_bound(cur.begin(), cur.end(), s), s);
            top = add(NodeKind::introduce, cur, top, -1, s);
        }
        return top;
    }
};

} // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root) {
    NiceBuilder b;
    NiceTreeDecomposition out;

    if (td.node_count() == 0) {
        b.add(NodeKind::leaf, {}, -1, -1, Simplex{});
        out.nodes = std::move(b.nodes);
        out.root = 0;
        return out;
    }
    const int n = static_cast<int>(td.node_count());
    root = std::clamp(root, 0, n - 1);

    auto adj = tree_adjacency(td.node_count(), td.edges);
    for (auto& a : adj)
        std::sort(a.begin(), a.end());

    // root the tree: parents + children via BFS
    std::vector<int> parent(n, -2), order;
    parent[root] = -1;
    std::deque<int> q{root};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        order.push_back(u);
        for (int w : adj[u])
            if (parent[w] == -2) {
                parent[w] = u;
                q.push_back(w);
            }
    }
    if (order.size() != td.node_count())
        throw std::invalid_argument("make_nice: decomposition nodes do not form a tree");

    std::vector<std::vector<int>> children(n);
    for (int u : order)
        if (parent[u] >= 0)
            children[parent[u]].push_back(u);

    std::vector<int> desc(n, 1);
    for (std::size_t i = order.size(); i-- > 0;) {
        int u = order[i];
        for (int c : children[u])
            desc[u] += desc[c];
    }
    for (int u = 0; u < n; ++u)
        std::sort(children[u].begin(), children[u].end(), [&desc](int a, int b) {
            return desc[a] != desc[b] ? desc[a] > desc[b] : a < b;
        });

    // bottom-up: top[t] is the nice node with bag == td.bags[t]
    std::vector<int> top(n, -1);
    for (std::size_t i = order.size(); i-- > 0;) {
        const int t = order[i];
        const auto& bag = td.bags[t];
        if (children[t].empty()) {
            int leaf = b.add(NodeKind::leaf, {}, -1, -1, Simplex{});
            top[t] = b.chain_to(leaf, {}, bag);
        } else {
            std::vector<int> tops;
            for (int c : children[t])
                tops.push_back(b.chain_to(top[c], td.bags[c], bag));
            int cur = tops.back();
            for (std::size_t k = tops.size() - 1; k-- > 0;)
                cur = b.add(NodeKind::join, bag, tops[k], cur, Simplex{});
            top[t] = cur;
        }
    }

    out.root = b.chain_to(top[root], td.bags[root], {});
    out.nodes = std::move(b.nodes);
    return out;
}

TdValidation validate_nice(const NiceTreeDecomposition& ntd) {
    TdValidation res;
    auto fail = [&res](std::string msg) {
        res.ok = false;
        res.violations.push_back(std::move(msg));
    };
    const int n = static_cast<int>(ntd.nodes.size());
    if (ntd.root < 0 || ntd.root >= n) {
        fail("nice: root out of range");
        return res;
    }
    if (!ntd.nodes[ntd.root].bag.empty())
        fail("nice: root bag not empty");
    if (ntd.nodes[ntd.root].parent != -1)
        fail("nice: root has a parent");

    std::vector<int> seen(n, 0);
    std::vector<int> stack{ntd.root};
    int cnt = 0;
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        if (t < 0 || t >= n || seen[t]) {
            fail("nice: node links do not form a tree");
            return res;
        }
        seen[t] = 1;
        ++cnt;
        const auto& nd = ntd.nodes[t];
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end()) ||
            std::adjacent_find(nd.bag.begin(), nd.bag.end()) != nd.bag.end())
            fail("nice: bag not sorted/unique");
        switch (nd.kind) {
        case NodeKind::leaf:
            if (nd.left != -1 || nd.right != -1)
                fail("nice: leaf with children");
            if (!nd.bag.empty())
                fail("nice: leaf bag not empty");
            break;
        case NodeKind::introduce:
        case NodeKind::forget: {
            if (nd.left < 0 || nd.right != -1) {
                fail("nice: unary node must have exactly one child");
                break;
            }
            stack.push_back(nd.left);
            const auto& cb = ntd.nodes[nd.left].bag;
            std::vector<Simplex> expect = cb;
            if (nd.kind == NodeKind::introduce) {
                if (bag_contains(cb, nd.vertex))
                    fail("nice: introduced vertex already in child bag");
                expect.insert(std::upper_bound(expect.begin(), expect.end(), nd.vertex),
                              nd.vertex);
            } else {
                auto it = std::find(expect.begin(), expect.end(), nd.vertex);
                if (it == expect.end()) {
                    fail("nice: forgotten vertex not in child bag");
                    break;
                }
                expect.erase(it);
            }
            if (expect != nd.bag)
                fail("nice: bag does not match child bag ± vertex");
            break;
        }
        case NodeKind::join:
            if (nd.left < 0 || nd.right < 0) {
                fail("nice: join must have two children");
                break;
            }
            stack.push_back(nd.left);
            stack.push_back(nd.right);
            if (ntd.nodes[nd.left].bag != nd.bag || ntd.nodes[nd.right].bag != nd.bag)
                fail("nice: join children bags differ from the join bag");
            break;
        }
        for (int c : {nd.left, nd.right})
            if (c >= 0 && ntd.nodes[c].parent != t)
                fail("nice: child parent link broken");
    }
    if (cnt != n)
        fail("nice: unreachable nodes present");
    return res;
}

TreeDecomposition hasse_td_from_conn_td(const SimplicialComplex& K, int d,
                                        const TreeDecomposition& conn_td) {
    TreeDecomposition out = conn_td;

    // index: which nodes' bags contain a given d-simplex
    std::map<Simplex, std::vector<int>> holders;
    for (std::size_t i = 0; i < conn_td.bags.size(); ++i)
        for (const Simplex& s : conn_td.bags[i])
            holders[s].push_back(static_cast<int>(i));

    std::map<Simplex, std::vector<Simplex>> cofaces_of;
    for (const auto& [s, w] : K.simplices())
        if (s.dim() == d)
            for (const Simplex& f : s.facets())
                cofaces_of[f].push_back(s);

    int prev_fresh = -1;
    for (const Simplex& rho : K.simplices_of_dim(d - 1)) {
        const std::vector<Simplex>& cofaces = cofaces_of[rho];
        int host = -1;
        if (!cofaces.empty()) {
            // cofaces of rho form a clique in Con_d, hence share a bag
            auto it = holders.find(cofaces[0]);
            if (it != holders.end())
                for (int cand : it->second) {
                    bool all = true;
                    for (const Simplex& c : cofaces)
                        if (!bag_contains(out.bags[cand], c)) {
                            all = false;
                            break;
                        }
                    if (all) {
                        host = cand;
                        break;
                    }
                }
            if (host < 0)
                throw std::invalid_argument(
                    "hasse_td_from_conn_td: no bag holds all cofaces of " + rho.to_string() +
                    " (decomposition invalid for Con_" + std::to_string(d) + ")");
            std::vector<Simplex> bag = out.bags[host];
            bag.insert(std::upper_bound(bag.begin(), bag.end(), rho), rho);
            const int fresh = static_cast<int>(out.bags.size());
            out.bags.push_back(std::move(bag));
            out.edges.emplace_back(host, fresh);
        } else {
            // no coface: rho is isolated in Hasse_d; a singleton bag anywhere works
            const int fresh = static_cast<int>(out.bags.size());
            out.bags.push_back({rho});
            if (!conn_td.bags.empty())
                out.edges.emplace_back(0, fresh);
            else if (prev_fresh >= 0)
                out.edges.emplace_back(prev_fresh, fresh);
            prev_fresh = fresh;
        }
    }
    return out;
}

TreeDecomposition suspend_td(const TreeDecomposition& td, GraphKind kind,
                             int v_plus, int v_minus) {
    TreeDecomposition out;
    out.edges = td.edges;
    out.bags.reserve(td.bags.size());
    for (const auto& bag : td.bags) {
        std::vector<Simplex> nb;
        nb.reserve(2 * bag.size());
        for (const Simplex& s : bag) {
            nb.push_back(s.with_vertex(v_plus));
            nb.push_back(s.with_vertex(v_minus));
        }
        std::sort(nb.begin(), nb.end());
        out.bags.push_back(std::move(nb));
    }

    if (kind == GraphKind::hasse_level) {
        // the upper-level simplices of the input graph stay vertices of the
        // suspended Hasse graph, adjacent to both of their cone extensions
        int lo = INT32_MAX, hi = -1;
        for (const auto& bag : td.bags)
            for (const Simplex& s : bag) {
                lo = std::min(lo, s.dim());
                hi = std::max(hi, s.dim());
            }
        if (hi >= 0 && hi != lo) {
            if (hi - lo != 1)
                throw std::invalid_argument("suspend_td: bags span more than two levels");
            std::map<Simplex, int> host; // first node whose bag held the simplex
            for (std::size_t i = 0; i < td.bags.size(); ++i)
                for (const Simplex& s : td.bags[i])
                    if (s.dim() == hi)
                        host.emplace(s, static_cast<int>(i));
            for (const auto& [s, at] : host) {
                std::vector<Simplex> bag{s, s.with_vertex(v_plus), s.with_vertex(v_minus)};
                std::sort(bag.begin(), bag.end());
                const int fresh = static_cast<int>(out.bags.size());
                out.bags.push_back(std::move(bag));
                out.edges.emplace_back(at, fresh);
            }
        }
    }
    return out;
}

void write_pace_td(const TreeDecomposition& td, const DerivedGraph& g,
                   std::ostream& td_out, std::ostream& map_out) {
    std::size_t maxbag = 0;
    for (const auto& b : td.bags)
        maxbag = std::max(maxbag, b.size());
    td_out << "s td " << td.bags.size() << ' ' << maxbag << ' ' << g.vertex_count() << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        td_out << "b " << (i + 1);
        for (const Simplex& s : td.bags[i]) {
            int vi = g.vertex_index(s);
            if (vi < 0)
                throw std::invalid_argument("write_pace_td: bag element not a graph vertex");
            td_out << ' ' << (vi + 1);
        }
        td_out << '\n';
    }
    for (auto [a, b] : td.edges)
        td_out << (a + 1) << ' ' << (b + 1) << '\n';

    nlohmann::json j;
    j["format_version"] = 1;
    auto& verts = j["vertices"] = nlohmann::json::array();
    for (const Simplex& s : g.vertices)
        verts.push_back(s.vertices());
    map_out << j.dump(2) << '\n';
}

TreeDecomposition read_pace_td(std::istream& td_in, std::istream& map_in) {
    nlohmann::json j = nlohmann::json::parse(map_in);
    std::vector<Simplex> verts;
    for (const auto& arr : j.at("vertices"))
        verts.emplace_back(arr.get<std::vector<int>>());

    TreeDecomposition td;
    std::string line;
    bool have_header = false;
    while (std::getline(td_in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, tdword;
            std::size_t nbags = 0, maxbag = 0, nverts = 0;
            ls >> s >> tdword >> nbags >> maxbag >> nverts;
            if (tdword != "td")
                throw std::invalid_argument("read_pace_td: not a td header");
            td.bags.assign(nbags, {});
            have_header = true;
        } else if (line[0] == 'b') {
            if (!have_header)
                throw std::invalid_argument("read_pace_td: bag before header");
            char bch;
            std::size_t id;
            ls >> bch >> id;
            if (id < 1 || id > td.bags.size())
                throw std::invalid_argument("read_pace_td: bag id out of range");
            std::size_t v;
            while (ls >> v) {
                if (v < 1 || v > verts.size())
                    throw std::invalid_argument("read_pace_td: vertex id out of range");
                td.bags[id - 1].push_back(verts[v - 1]);
            }
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            if (!have_header)
                throw std::invalid_argument("read_pace_td: edge before header");
            std::size_t a, b;
            if (ls >> a >> b) {
                if (a < 1 || b < 1 || a > td.bags.size() || b > td.bags.size())
                    throw std::invalid_argument("read_pace_td: edge id out of range");
                td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
            }
        }
    }
    if (!have_header)
        throw std::invalid_argument("read_pace_td: missing header");
    return td;
}

} // namespace hl
