#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "rubyeval/pdg.hpp"

namespace rubyeval {

/// Structural feature of a graph: either a directed label path of n nodes
/// (1 <= n <= max_path_length) or a (p,q)-node pairing a label with its
/// in/out degree.
struct Feature {
    enum class Variant { NPath, PqNode };
    Variant variant = Variant::NPath;
    std::vector<std::string> labels;  // n labels for a path, 1 for a pq-node
    int p = 0;                        // in-degree, pq only
    int q = 0;                        // out-degree, pq only

    auto operator<=>(const Feature&) const = default;

    std::string to_string() const;
};

/// Sparse occurrence-count vector; absent features count 0.
struct FeatureVector {
    std::map<Feature, int> counts;

    long long total_mass() const;
    bool empty() const { return counts.empty(); }
};

/// Counts every simple directed label path of 1..max_path_length nodes and
/// every (label, in-degree, out-degree) triple. The entry node is excluded
/// from paths (plumbing, not program structure); degrees count all incident
/// edges. Deterministic.
FeatureVector extract_features(const DependenceGraph& g, int max_path_length = 3);

struct VectorDistance {
    long long distance = 0;  // 1-norm
    long long mass = 0;      // sum of both vectors' entries

    double similarity() const { return 1.0 - static_cast<double>(distance) / static_cast<double>(mass); }
};

/// 1-norm distance over the union feature index.
/// Throws std::invalid_argument when both vectors are empty (the
/// normalization is undefined).
VectorDistance vector_distance(const FeatureVector& v1, const FeatureVector& v2);

}  // namespace rubyeval
