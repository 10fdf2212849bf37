#pragma once

// Matching-based (1/log n)-approximation for round-oblivious instances. The
// heart is an exact maximum-weight matching on general graphs (primal-dual
// blossom algorithm, O(n^3)); the approximation seeds every matched pair as a
// first-round game in its favorable order.

#include <deque>
#include <utility>
#include <vector>

#include "bracketopt/solvers_exact.hpp"

namespace bracketopt {

/// Complete undirected graph on 1..n with w({i,j}) = max(v(i,j), v(j,i)).
struct WeightedPairGraph {
    Player n = 0;
    std::vector<Value> weights;  // indexed by pair_index

    static std::size_t pair_index(Player i, Player j, Player n) {
        if (i > j) std::swap(i, j);
        const std::size_t a = static_cast<std::size_t>(i - 1);
        const std::size_t b = static_cast<std::size_t>(j - 1);
        return a * static_cast<std::size_t>(n) - a * (a + 1) / 2 + (b - a - 1);
    }

    explicit WeightedPairGraph(Player players)
        : n(players),
          weights(static_cast<std::size_t>(players) * (players - 1) / 2, 0) {}

    static WeightedPairGraph from_instance(const Instance& instance) {
        const ValueKind kind = instance.values.kind();
        if (kind != ValueKind::RoundOblivious && kind != ValueKind::Popularity)
            throw KindError("pair graph requires a round-oblivious or popularity instance");
        instance.validate();
        WeightedPairGraph graph(instance.n);
        for (Player i = 1; i <= instance.n; ++i)
            for (Player j = i + 1; j <= instance.n; ++j)
                graph.set(i, j,
                          std::max(instance.values.game_value(i, j, 1),
                                   instance.values.game_value(j, i, 1)));
        return graph;
    }

    Value weight(Player i, Player j) const { return weights[pair_index(i, j, n)]; }
    void set(Player i, Player j, Value w) { weights[pair_index(i, j, n)] = w; }
};

struct Matching {
    std::vector<std::pair<Player, Player>> pairs;  // (i, j) with i < j, sorted
    Value weight = 0;
};

namespace detail {

// Primal-dual maximum-weight matching over the positive-weight edges of a
// dense graph. Vertices are 1..n; ids above n are blossoms. Dual variables
// stay integral because edge deltas are computed against doubled weights.
class MaxWeightMatcher {
public:
    explicit MaxWeightMatcher(int n) : n_(n), size_(n * 3 / 2 + 2) {
        graph_.assign(size_, std::vector<Edge>(size_));
        for (int u = 0; u < size_; ++u)
            for (int v = 0; v < size_; ++v) graph_[u][v] = Edge{u, v, 0};
        label_.assign(size_, 0);
        match_.assign(size_, 0);
        slack_.assign(size_, 0);
        surface_.assign(size_, 0);
        parent_.assign(size_, 0);
        side_.assign(size_, -1);
        visit_.assign(size_, 0);
        flower_.assign(size_, {});
        flower_from_.assign(size_, std::vector<int>(n + 1, 0));
    }

    void add_edge(int u, int v, Value w) {
        if (w <= 0) return;  // nonpositive edges never help a maximum matching
        if (w > (Value{1} << 40))
            throw ValidationError("matching weights above 2^40 are not supported");
        graph_[u][v].w = graph_[v][u].w = w;
    }

    /// match(u) = partner or 0.
    std::vector<int> solve() {
        node_count_ = n_;
        Value w_max = 0;
        for (int u = 1; u <= n_; ++u) {
            surface_[u] = u;
            flower_[u].clear();
            for (int v = 1; v <= n_; ++v) {
                flower_from_[u][v] = (u == v) ? u : 0;
                w_max = std::max(w_max, graph_[u][v].w);
            }
        }
        for (int u = 1; u <= n_; ++u) label_[u] = w_max;
        while (grow_matching()) {
        }
        return std::vector<int>(match_.begin() + 1, match_.begin() + n_ + 1);
    }

private:
    struct Edge {
        int u = 0, v = 0;
        Value w = 0;
    };

    Value delta(const Edge& e) const { return label_[e.u] + label_[e.v] - e.w * 2; }

    void update_slack(int u, int x) {
        if (!slack_[x] || delta(edge_to(u, x)) < delta(edge_to(slack_[x], x))) slack_[x] = u;
    }

    const Edge& edge_to(int u, int x) const { return graph_[u][x]; }

    void recompute_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (graph_[u][x].w > 0 && surface_[u] != x && side_[surface_[u]] == 0)
                update_slack(u, x);
    }

    void queue_push(int x) {
        if (x <= n_)
            queue_.push_back(x);
        else
            for (int i : flower_[x]) queue_push(i);
    }

    void set_surface(int x, int b) {
        surface_[x] = b;
        if (x > n_)
            for (int i : flower_[x]) set_surface(i, b);
    }

    int petal_rank(int b, int xr) {
        int pr = static_cast<int>(
            std::find(flower_[b].begin(), flower_[b].end(), xr) - flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = graph_[u][v].v;
        if (u <= n_) return;
        const Edge e = graph_[u][v];
        const int xr = flower_from_[u][e.u];
        const int pr = petal_rank(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            const int xnv = surface_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, surface_[parent_[xnv]]);
            u = surface_[parent_[xnv]];
            v = xnv;
        }
    }

    int lowest_common_ancestor(int u, int v) {
        for (++visit_stamp_; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (visit_[u] == visit_stamp_) return u;
            visit_[u] = visit_stamp_;
            u = surface_[match_[u]];
            if (u) u = surface_[parent_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= node_count_ && surface_[b]) ++b;
        if (b > node_count_) ++node_count_;
        label_[b] = 0;
        side_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = surface_[parent_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = surface_[match_[x]]);
            queue_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = surface_[parent_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = surface_[match_[x]]);
            queue_push(y);
        }
        set_surface(b, b);
        for (int x = 1; x <= node_count_; ++x) graph_[b][x].w = graph_[x][b].w = 0;
        for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
        for (int xs : flower_[b]) {
            for (int x = 1; x <= node_count_; ++x)
                if (graph_[b][x].w == 0 || delta(graph_[xs][x]) < delta(graph_[b][x])) {
                    graph_[b][x] = graph_[xs][x];
                    graph_[x][b] = graph_[x][xs];
                }
            for (int x = 1; x <= n_; ++x)
                if (flower_from_[xs][x]) flower_from_[b][x] = xs;
        }
        recompute_slack(b);
    }

    void expand_blossom(int b) {
        for (int i : flower_[b]) set_surface(i, i);
        const int xr = flower_from_[b][graph_[b][parent_[b]].u];
        const int pr = petal_rank(b, xr);
        for (int i = 0; i < pr; i += 2) {
            const int xs = flower_[b][i];
            const int xns = flower_[b][i + 1];
            parent_[xs] = graph_[xns][xs].u;
            side_[xs] = 1;
            side_[xns] = 0;
            slack_[xs] = 0;
            recompute_slack(xns);
            queue_push(xns);
        }
        side_[xr] = 1;
        parent_[xr] = parent_[b];
        for (int i = pr + 1; i < static_cast<int>(flower_[b].size()); ++i) {
            const int xs = flower_[b][i];
            side_[xs] = -1;
            recompute_slack(xs);
        }
        surface_[b] = 0;
    }

    bool on_found_edge(const Edge& e) {
        const int u = surface_[e.u];
        const int v = surface_[e.v];
        if (side_[v] == -1) {
            parent_[v] = e.u;
            side_[v] = 1;
            const int nu = surface_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            side_[nu] = 0;
            queue_push(nu);
        } else if (side_[v] == 0) {
            const int lca = lowest_common_ancestor(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    bool grow_matching() {
        std::fill(side_.begin(), side_.end(), -1);
        std::fill(slack_.begin(), slack_.end(), 0);
        queue_.clear();
        for (int x = 1; x <= node_count_; ++x)
            if (surface_[x] == x && !match_[x]) {
                parent_[x] = 0;
                side_[x] = 0;
                queue_push(x);
            }
        if (queue_.empty()) return false;
        for (;;) {
            while (!queue_.empty()) {
                const int u = queue_.front();
                queue_.pop_front();
                if (side_[surface_[u]] == 1) continue;
                for (int v = 1; v <= n_; ++v)
                    if (graph_[u][v].w > 0 && surface_[u] != surface_[v]) {
                        if (delta(graph_[u][v]) == 0) {
                            if (on_found_edge(graph_[u][v])) return true;
                        } else {
                            update_slack(u, surface_[v]);
                        }
                    }
            }
            Value d = std::numeric_limits<Value>::max();
            for (int b = n_ + 1; b <= node_count_; ++b)
                if (surface_[b] == b && side_[b] == 1) d = std::min(d, label_[b] / 2);
            for (int x = 1; x <= node_count_; ++x)
                if (surface_[x] == x && slack_[x]) {
                    if (side_[x] == -1)
                        d = std::min(d, delta(edge_to(slack_[x], x)));
                    else if (side_[x] == 0)
                        d = std::min(d, delta(edge_to(slack_[x], x)) / 2);
                }
            for (int u = 1; u <= n_; ++u) {
                if (side_[surface_[u]] == 0) {
                    if (label_[u] <= d) return false;  // growing further cannot gain weight
                    label_[u] -= d;
                } else if (side_[surface_[u]] == 1) {
                    label_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= node_count_; ++b)
                if (surface_[b] == b) {
                    if (side_[b] == 0)
                        label_[b] += d * 2;
                    else if (side_[b] == 1)
                        label_[b] -= d * 2;
                }
            queue_.clear();
            for (int x = 1; x <= node_count_; ++x)
                if (surface_[x] == x && slack_[x] && surface_[slack_[x]] != x &&
                    delta(edge_to(slack_[x], x)) == 0)
                    if (on_found_edge(edge_to(slack_[x], x))) return true;
            for (int b = n_ + 1; b <= node_count_; ++b)
                if (surface_[b] == b && side_[b] == 1 && label_[b] == 0) expand_blossom(b);
        }
    }

    int n_;
    int size_;
    int node_count_ = 0;
    int visit_stamp_ = 0;
    std::vector<std::vector<Edge>> graph_;
    std::vector<Value> label_;
    std::vector<int> match_, slack_, surface_, parent_, side_, visit_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flower_from_;
    std::deque<int> queue_;
};

}  // namespace detail

/// Exact maximum-weight matching; edges of nonpositive weight are omitted
/// from the result without loss.
inline Matching max_weight_matching(const WeightedPairGraph& graph) {
    detail::MaxWeightMatcher matcher(graph.n);
    for (Player i = 1; i <= graph.n; ++i)
        for (Player j = i + 1; j <= graph.n; ++j) matcher.add_edge(i, j, graph.weight(i, j));
    auto mate = matcher.solve();
    Matching out;
    for (Player i = 1; i <= graph.n; ++i) {
        const Player j = static_cast<Player>(mate[i - 1]);
        if (j > i && graph.weight(i, j) > 0) {
            out.pairs.emplace_back(i, j);
            out.weight = checked_add(out.weight, graph.weight(i, j));
        }
    }
    return out;
}

/// Matching-based approximation: seed the l-th matched pair into positions
/// 2l-1, 2l with the order that realizes the pair's maximum value, fill the
/// remaining positions with the unmatched players in ascending id, and score
/// the resulting seeding. For nonnegative values this is a 1/log2(n)
/// approximation of the optimum.
inline SolveResult approx_matching(const Instance& instance) {
    auto graph = WeightedPairGraph::from_instance(instance);
    auto matching = max_weight_matching(graph);
    std::vector<bool> placed(static_cast<std::size_t>(instance.n) + 1, false);
    Seeding seeding;
    for (auto [i, j] : matching.pairs) {
        if (instance.values.game_value(i, j, 1) >= instance.values.game_value(j, i, 1)) {
            seeding.order.push_back(i);
            seeding.order.push_back(j);
        } else {
            seeding.order.push_back(j);
            seeding.order.push_back(i);
        }
        placed[i] = placed[j] = true;
    }
    for (Player p = 1; p <= instance.n; ++p)
        if (!placed[p]) seeding.order.push_back(p);
    SolveResult result{Algorithm::ApproxMatching, evaluate(instance, seeding).total, seeding};
    return result;
}

/// Family on which the approximation bound is tight: one player one notch
/// below the champion is worth `scale` against everyone and `scale + 1`
/// against the champion; every other game is worthless. The approximation
/// banks the single best edge while the optimum replays the star player
/// every round.
inline Instance make_tight_instance(Player n, Value scale) {
    if (!is_power_of_two(n) || n < 4)
        throw ValidationError("tight instance needs a power-of-two n >= 4");
    if (scale < 2) throw ValidationError("tight instance needs scale >= 2");
    Instance inst;
    inst.n = n;
    inst.values = GameValueFunction(ValueKind::RoundOblivious);
    for (Player j = 1; j <= n - 2; ++j) {
        inst.values.set_round_oblivious(n - 1, j, scale);
        inst.values.set_round_oblivious(j, n - 1, scale);
    }
    inst.values.set_round_oblivious(n - 1, n, scale + 1);
    inst.values.set_round_oblivious(n, n - 1, scale + 1);
    inst.validate();
    return inst;
}

}  // namespace bracketopt
