#include "permascale/pattern.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace permascale {

SupportMask SupportMask::of(const NonnegMatrix& a) {
    SupportMask s;
    s.n = a.rows();
    if (!a.square()) throw DimensionError("support mask requires a square matrix");
    s.mask.resize(s.n * s.n);
    for (std::size_t k = 0; k < s.mask.size(); ++k) s.mask[k] = a.data()[k] != 0.0;
    return s;
}

namespace {

constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

struct HopcroftKarp {
    std::size_t n;
    const SupportMask& g;
    std::vector<std::size_t> match_row; // row -> col
    std::vector<std::size_t> match_col; // col -> row
    std::vector<std::size_t> dist;

    explicit HopcroftKarp(const SupportMask& support)
        : n(support.n), g(support), match_row(n, kUnmatched), match_col(n, kUnmatched), dist(n) {}

    bool bfs() {
        std::queue<std::size_t> q;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (match_row[i] == kUnmatched) {
                dist[i] = 0;
                q.push(i);
            } else {
                dist[i] = kUnmatched;
            }
        }
        while (!q.empty()) {
            std::size_t i = q.front();
            q.pop();
            for (std::size_t j = 0; j < n; ++j) {
                if (!g.at(i, j)) continue;
                std::size_t r = match_col[j];
                if (r == kUnmatched) {
                    found = true;
                } else if (dist[r] == kUnmatched) {
                    dist[r] = dist[i] + 1;
                    q.push(r);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!g.at(i, j)) continue;
            std::size_t r = match_col[j];
            if (r == kUnmatched || (dist[r] == dist[i] + 1 && dfs(r))) {
                match_row[i] = j;
                match_col[j] = i;
                return true;
            }
        }
        dist[i] = kUnmatched;
        return false;
    }

    std::size_t run() {
        std::size_t size = 0;
        while (bfs())
            for (std::size_t i = 0; i < n; ++i)
                if (match_row[i] == kUnmatched && dfs(i)) ++size;
        return size;
    }
};

// Strongly connected components (Tarjan, iterative) of the digraph on rows
// where i -> match_col_row(j) for every support edge (i,j) off the matching.
std::vector<std::size_t> matching_digraph_scc(const SupportMask& g,
                                              const std::vector<std::size_t>& match_row,
                                              const std::vector<std::size_t>& match_col) {
    const std::size_t n = g.n;
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.at(i, j) && match_row[i] != j) adj[i].push_back(match_col[j]);

    std::vector<std::size_t> comp(n, kUnmatched), low(n), idx(n, kUnmatched), stack;
    std::vector<char> on_stack(n, 0);
    std::size_t counter = 0, ncomp = 0;

    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (idx[root] != kUnmatched) continue;
        std::vector<Frame> frames{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge < adj[f.v].size()) {
                std::size_t w = adj[f.v][f.edge++];
                if (idx[w] == kUnmatched) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                std::size_t v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == idx[v]) {
                    for (;;) {
                        std::size_t w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
            }
        }
    }
    return comp;
}

} // namespace

std::optional<std::vector<std::size_t>> max_bipartite_matching(const SupportMask& support) {
    HopcroftKarp hk(support);
    if (hk.run() != support.n) return std::nullopt;
    return hk.match_row;
}

std::pair<NonnegMatrix, PatternReport> pi_projection(const NonnegMatrix& a) {
    if (!a.square()) throw DimensionError("pi_projection requires a square matrix");
    const std::size_t n = a.rows();
    PatternReport report;
    report.pi_support.assign(n * n, 0);
    if (n == 0) {
        report.has_positive_diagonal = true;
        report.in_pn = true;
        return {a, report};
    }

    SupportMask support = SupportMask::of(a);
    HopcroftKarp hk(support);
    if (hk.run() != n) {
        report.has_positive_diagonal = false;
        report.in_pn = false;
        return {NonnegMatrix(n, n), report};
    }
    report.has_positive_diagonal = true;

    auto comp = matching_digraph_scc(support, hk.match_row, hk.match_col);
    NonnegMatrix pi(n, n);
    bool same_support = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!support.at(i, j)) continue;
            // An edge lies on some perfect matching iff it is matched or lies
            // on an alternating cycle, i.e. rows i and match_col[j] share a SCC.
            bool on_diag = hk.match_row[i] == j || comp[i] == comp[hk.match_col[j]];
            if (on_diag) {
                pi.set(i, j, a(i, j));
                report.pi_support[i * n + j] = 1;
            } else {
                same_support = false;
            }
        }
    }
    report.in_pn = same_support;

    // Fully indecomposable components: SCCs of the matching digraph, ordered
    // by smallest row index.
    std::vector<std::size_t> first_row;
    std::vector<Block> blocks;
    std::size_t ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    blocks.resize(ncomp);
    for (std::size_t i = 0; i < n; ++i) {
        blocks[comp[i]].rows.push_back(i);
        blocks[comp[i]].cols.push_back(hk.match_row[i]);
    }
    for (auto& b : blocks) {
        std::sort(b.rows.begin(), b.rows.end());
        std::sort(b.cols.begin(), b.cols.end());
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& x, const Block& y) { return x.rows.front() < y.rows.front(); });
    report.blocks = std::move(blocks);
    return {pi, report};
}

PatternReport decompose_fully_indecomposable(const NonnegMatrix& a) {
    auto [pi, report] = pi_projection(a);
    (void)pi;
    if (!report.has_positive_diagonal) report.blocks.clear();
    return report;
}

std::optional<FkWitness> frobenius_konig_witness(const NonnegMatrix& a) {
    if (!a.square()) throw DimensionError("frobenius_konig_witness requires a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return std::nullopt;
    SupportMask support = SupportMask::of(a);
    HopcroftKarp hk(support);
    std::size_t size = hk.run();
    if (size == n) return std::nullopt;

    // Koenig: Z = vertices reachable from unmatched rows by alternating paths.
    std::vector<char> row_z(n, 0), col_z(n, 0);
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < n; ++i)
        if (hk.match_row[i] == kUnmatched) {
            row_z[i] = 1;
            q.push(i);
        }
    while (!q.empty()) {
        std::size_t i = q.front();
        q.pop();
        for (std::size_t j = 0; j < n; ++j) {
            if (!support.at(i, j) || col_z[j]) continue;
            col_z[j] = 1;
            std::size_t r = hk.match_col[j];
            if (r != kUnmatched && !row_z[r]) {
                row_z[r] = 1;
                q.push(r);
            }
        }
    }
    FkWitness w;
    for (std::size_t i = 0; i < n; ++i)
        if (row_z[i]) w.rows.push_back(i);
    for (std::size_t j = 0; j < n; ++j)
        if (!col_z[j]) w.cols.push_back(j);
    // |rows| + |cols| = 2n - cover = 2n - size >= n+1; trim the excess while
    // keeping both sides nonempty.
    std::size_t excess = w.rows.size() + w.cols.size() - (n + 1);
    while (excess > 0 && w.rows.size() > 1) {
        w.rows.pop_back();
        --excess;
    }
    while (excess > 0 && w.cols.size() > 1) {
        w.cols.pop_back();
        --excess;
    }
    return w;
}

} // namespace permascale
