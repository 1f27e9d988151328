#ifndef KCA_MATCHING_HPP
#define KCA_MATCHING_HPP

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kca/graph.hpp"

namespace kca {

// Partial injective pairing between two vertex universes ("left" ids drawn
// from one graph, "right" ids from another). Pairs are kept sorted by left
// id; that order also indexes the vertices of the aligned intersection.
class Matching {
public:
    Matching() = default;
    // Validates injectivity on both sides and nonnegative ids.
    explicit Matching(std::vector<std::pair<int, int>> pairs);

    int size() const { return static_cast<int>(pairs_.size()); }
    bool empty() const { return pairs_.empty(); }
    std::span<const std::pair<int, int>> pairs() const { return pairs_; }
    const std::pair<int, int>& pair(int i) const { return pairs_[i]; }

    bool contains(int a, int b) const;
    std::optional<int> image_of(int a) const;     // left -> right
    std::optional<int> preimage_of(int b) const;  // right -> left
    // Index of the pair with left id a, in sorted-pair order.
    std::optional<int> index_of_left(int a) const;

    std::vector<int> support_left() const;   // sorted
    std::vector<int> support_right() const;  // sorted

    // Covers {0..n-1} exactly on both sides.
    bool is_bijection(int n) const;

    bool operator==(const Matching& o) const { return pairs_ == o.pairs_; }
    bool operator<(const Matching& o) const { return pairs_ < o.pairs_; }

private:
    std::vector<std::pair<int, int>> pairs_;
    std::unordered_map<int, int> fwd_, rev_;
};

// Pairs of m1 that are also pairs of m2.
Matching matching_intersection(const Matching& m1, const Matching& m2);
// Pairs of m1 that are not pairs of m2.
Matching matching_difference(const Matching& m1, const Matching& m2);
// Union; throws ConfigError when the union is not a matching.
Matching matching_union(const Matching& m1, const Matching& m2);

// One lifted pair: an unordered left-universe pair and the unordered
// right-universe pair it is carried to. Both stored as (lo, hi).
struct LiftedPair {
    std::pair<int, int> a;
    std::pair<int, int> b;
    bool operator==(const LiftedPair& o) const { return a == o.a && b == o.b; }
    bool operator<(const LiftedPair& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
};

// All C(|m|, 2) lifted pairs of a matching, sorted by left pair.
std::vector<LiftedPair> lift(const Matching& m);

// Intersection graph of ga and gb aligned by m: vertex i is m.pair(i),
// edge {i, j} present iff both constituent edges are.
Graph aligned_intersection(const Graph& ga, const Graph& gb, const Matching& m);

}  // namespace kca

#endif
