#include "rubyeval/edit_distance.hpp"

#include <algorithm>

namespace rubyeval {

long long levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t m = a.size(), n = b.size();
    std::vector<long long> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = static_cast<long long>(j);
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = static_cast<long long>(i);
        for (std::size_t j = 1; j <= n; ++j) {
            long long sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

namespace {

// flattened postorder view of one subtree
struct PostorderTree {
    std::vector<NodeKind> kind;
    std::vector<std::string> value;
    std::vector<int> lml;  // leftmost leaf descendant, postorder index
    std::vector<int> keyroots;

    int size() const { return static_cast<int>(kind.size()); }
};

int flatten(const SyntaxTree& t, int node, PostorderTree& out) {
    const SyntaxNode& n = t.at(node);
    int first_leaf = -1;
    for (int c : n.children) {
        int leaf = flatten(t, c, out);
        if (first_leaf < 0) first_leaf = leaf;
    }
    int my_index = out.size();
    if (first_leaf < 0) first_leaf = my_index;
    out.kind.push_back(n.kind);
    out.value.push_back(n.value);
    out.lml.push_back(first_leaf);
    return first_leaf;
}

PostorderTree postorder(const SyntaxTree& t, int root) {
    PostorderTree out;
    flatten(t, root, out);
    // keyroots: nodes with no later node sharing their leftmost leaf
    std::vector<bool> seen(out.kind.size(), false);
    for (int i = out.size() - 1; i >= 0; --i) {
        if (!seen[static_cast<std::size_t>(out.lml[static_cast<std::size_t>(i)])]) {
            out.keyroots.push_back(i);
            seen[static_cast<std::size_t>(out.lml[static_cast<std::size_t>(i)])] = true;
        }
    }
    std::sort(out.keyroots.begin(), out.keyroots.end());
    return out;
}

long long rename_cost(const PostorderTree& a, int i, const PostorderTree& b, int j) {
    if (a.kind[static_cast<std::size_t>(i)] != b.kind[static_cast<std::size_t>(j)]) return 2;
    return a.value[static_cast<std::size_t>(i)] == b.value[static_cast<std::size_t>(j)] ? 0 : 1;
}

long long zhang_shasha(const PostorderTree& a, const PostorderTree& b) {
    int m = a.size(), n = b.size();
    std::vector<std::vector<long long>> td(static_cast<std::size_t>(m),
                                           std::vector<long long>(static_cast<std::size_t>(n), 0));
    std::vector<std::vector<long long>> fd(static_cast<std::size_t>(m) + 1,
                                           std::vector<long long>(static_cast<std::size_t>(n) + 1, 0));

    for (int x : a.keyroots) {
        for (int y : b.keyroots) {
            int i0 = a.lml[static_cast<std::size_t>(x)];
            int j0 = b.lml[static_cast<std::size_t>(y)];
            // fd indices are offset by the forest origin; slot 0 = empty forest
            fd[0][0] = 0;
            for (int i = i0; i <= x; ++i) fd[static_cast<std::size_t>(i - i0 + 1)][0] =
                fd[static_cast<std::size_t>(i - i0)][0] + 1;
            for (int j = j0; j <= y; ++j) fd[0][static_cast<std::size_t>(j - j0 + 1)] =
                fd[0][static_cast<std::size_t>(j - j0)] + 1;
            for (int i = i0; i <= x; ++i) {
                for (int j = j0; j <= y; ++j) {
                    std::size_t ii = static_cast<std::size_t>(i - i0 + 1);
                    std::size_t jj = static_cast<std::size_t>(j - j0 + 1);
                    long long del = fd[ii - 1][jj] + 1;
                    long long ins = fd[ii][jj - 1] + 1;
                    if (a.lml[static_cast<std::size_t>(i)] == i0 &&
                        b.lml[static_cast<std::size_t>(j)] == j0) {
                        long long rep = fd[ii - 1][jj - 1] + rename_cost(a, i, b, j);
                        fd[ii][jj] = std::min({del, ins, rep});
                        td[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = fd[ii][jj];
                    } else {
                        std::size_t pi = static_cast<std::size_t>(
                            a.lml[static_cast<std::size_t>(i)] - i0);
                        std::size_t pj = static_cast<std::size_t>(
                            b.lml[static_cast<std::size_t>(j)] - j0);
                        long long link =
                            fd[pi][pj] +
                            td[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                        fd[ii][jj] = std::min({del, ins, link});
                    }
                }
            }
        }
    }
    return td[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n - 1)];
}

int subtree_size(const SyntaxTree& t, int node) {
    int s = 1;
    for (int c : t.at(node).children) s += subtree_size(t, c);
    return s;
}

// greedy top-down matching; a valid edit script cost, so an upper bound
long long greedy_cost(const SyntaxTree& ta, int na, const SyntaxTree& tb, int nb) {
    const SyntaxNode& a = ta.at(na);
    const SyntaxNode& b = tb.at(nb);
    if (a.kind != b.kind) return subtree_size(ta, na) + subtree_size(tb, nb);
    long long cost = a.value == b.value ? 0 : 1;
    std::size_t common = std::min(a.children.size(), b.children.size());
    for (std::size_t i = 0; i < common; ++i)
        cost += greedy_cost(ta, a.children[i], tb, b.children[i]);
    for (std::size_t i = common; i < a.children.size(); ++i)
        cost += subtree_size(ta, a.children[i]);
    for (std::size_t i = common; i < b.children.size(); ++i)
        cost += subtree_size(tb, b.children[i]);
    return cost;
}

}  // namespace

TedResult tree_edit_distance(const SyntaxTree& ta, int root_a, const SyntaxTree& tb, int root_b,
                             int exact_node_limit) {
    TedResult r;
    if (subtree_size(ta, root_a) > exact_node_limit ||
        subtree_size(tb, root_b) > exact_node_limit) {
        r.cost = greedy_cost(ta, root_a, tb, root_b);
        r.approximate = true;
        return r;
    }
    PostorderTree a = postorder(ta, root_a);
    PostorderTree b = postorder(tb, root_b);
    r.cost = zhang_shasha(a, b);
    return r;
}

}  // namespace rubyeval
