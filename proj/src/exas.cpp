#include "rubyeval/exas.hpp"

#include <sstream>
#include <stdexcept>

namespace rubyeval {

std::string Feature::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) os << '-';
        os << labels[i];
    }
    if (variant == Variant::PqNode) os << '-' << p << '-' << q;
    return os.str();
}

long long FeatureVector::total_mass() const {
    long long m = 0;
    for (const auto& [f, c] : counts) m += c;
    return m;
}

namespace {

void walk_paths(const DependenceGraph& g, const std::vector<std::vector<int>>& adj,
                std::vector<int>& path, std::vector<bool>& on_path, int max_len,
                FeatureVector& out) {
    Feature f;
    f.variant = Feature::Variant::NPath;
    for (int id : path) f.labels.push_back(g.nodes[static_cast<std::size_t>(id)].label);
    out.counts[f] += 1;

    if (static_cast<int>(path.size()) == max_len) return;
    for (int next : adj[static_cast<std::size_t>(path.back())]) {
        if (on_path[static_cast<std::size_t>(next)]) continue;  // simple paths only
        on_path[static_cast<std::size_t>(next)] = true;
        path.push_back(next);
        walk_paths(g, adj, path, on_path, max_len, out);
        path.pop_back();
        on_path[static_cast<std::size_t>(next)] = false;
    }
}

}  // namespace

FeatureVector extract_features(const DependenceGraph& g, int max_path_length) {
    FeatureVector out;
    std::size_t n = g.nodes.size();
    std::vector<std::vector<int>> adj(n);
    std::vector<int> in_deg(n, 0), out_deg(n, 0);
    for (const auto& e : g.edges) {
        ++out_deg[static_cast<std::size_t>(e.from)];
        ++in_deg[static_cast<std::size_t>(e.to)];
        // paths never enter or leave the entry node
        if (g.nodes[static_cast<std::size_t>(e.from)].kind != PdgNodeKind::Entry &&
            g.nodes[static_cast<std::size_t>(e.to)].kind != PdgNodeKind::Entry)
            adj[static_cast<std::size_t>(e.from)].push_back(e.to);
    }

    std::vector<bool> on_path(n, false);
    for (const auto& node : g.nodes) {
        if (node.kind == PdgNodeKind::Entry) continue;

        std::vector<int> path = {node.id};
        on_path[static_cast<std::size_t>(node.id)] = true;
        walk_paths(g, adj, path, on_path, max_path_length, out);
        on_path[static_cast<std::size_t>(node.id)] = false;

        Feature pq;
        pq.variant = Feature::Variant::PqNode;
        pq.labels = {node.label};
        pq.p = in_deg[static_cast<std::size_t>(node.id)];
        pq.q = out_deg[static_cast<std::size_t>(node.id)];
        out.counts[pq] += 1;
    }
    return out;
}

VectorDistance vector_distance(const FeatureVector& v1, const FeatureVector& v2) {
    if (v1.empty() && v2.empty())
        throw std::invalid_argument("vector_distance: both vectors are empty");
    VectorDistance d;
    auto it1 = v1.counts.begin();
    auto it2 = v2.counts.begin();
    while (it1 != v1.counts.end() || it2 != v2.counts.end()) {
        long long c1 = 0, c2 = 0;
        if (it2 == v2.counts.end() || (it1 != v1.counts.end() && it1->first < it2->first)) {
            c1 = it1->second;
            ++it1;
        } else if (it1 == v1.counts.end() || it2->first < it1->first) {
            c2 = it2->second;
            ++it2;
        } else {
            c1 = it1->second;
            c2 = it2->second;
            ++it1;
            ++it2;
        }
        d.distance += c1 > c2 ? c1 - c2 : c2 - c1;
        d.mass += c1 + c2;
    }
    return d;
}

}  // namespace rubyeval
