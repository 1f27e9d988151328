#include "kca/matching.hpp"

#include <algorithm>
#include <string>

#include "kca/error.hpp"

namespace kca {

Matching::Matching(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    fwd_.reserve(pairs_.size());
    rev_.reserve(pairs_.size());
    for (auto [a, b] : pairs_) {
        require_config(a >= 0 && b >= 0, "matching: ids must be nonnegative");
        require_config(fwd_.emplace(a, b).second,
                       "matching: left id " + std::to_string(a) + " paired twice");
        require_config(rev_.emplace(b, a).second,
                       "matching: right id " + std::to_string(b) + " paired twice");
    }
}

bool Matching::contains(int a, int b) const {
    auto it = fwd_.find(a);
    return it != fwd_.end() && it->second == b;
}

std::optional<int> Matching::image_of(int a) const {
    auto it = fwd_.find(a);
    if (it == fwd_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Matching::preimage_of(int b) const {
    auto it = rev_.find(b);
    if (it == rev_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> Matching::index_of_left(int a) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair<int, int>{a, -1});
    if (it == pairs_.end() || it->first != a) return std::nullopt;
    return static_cast<int>(it - pairs_.begin());
}

std::vector<int> Matching::support_left() const {
    std::vector<int> s;
    s.reserve(pairs_.size());
    for (auto [a, b] : pairs_) s.push_back(a);
    return s;  // pairs_ sorted by left id
}

std::vector<int> Matching::support_right() const {
    std::vector<int> s;
    s.reserve(pairs_.size());
    for (auto [a, b] : pairs_) s.push_back(b);
    std::sort(s.begin(), s.end());
    return s;
}

bool Matching::is_bijection(int n) const {
    if (size() != n) return false;
    for (int i = 0; i < n; ++i)
        if (pairs_[i].first != i || pairs_[i].second < 0 || pairs_[i].second >= n)
            return false;
    return true;
}

Matching matching_intersection(const Matching& m1, const Matching& m2) {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : m1.pairs())
        if (m2.contains(a, b)) out.emplace_back(a, b);
    return Matching(std::move(out));
}

Matching matching_difference(const Matching& m1, const Matching& m2) {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : m1.pairs())
        if (!m2.contains(a, b)) out.emplace_back(a, b);
    return Matching(std::move(out));
}

Matching matching_union(const Matching& m1, const Matching& m2) {
    std::vector<std::pair<int, int>> out(m1.pairs().begin(), m1.pairs().end());
    for (auto [a, b] : m2.pairs())
        if (!m1.contains(a, b)) out.emplace_back(a, b);
    return Matching(std::move(out));  // ctor rejects conflicting pairs
}

std::vector<LiftedPair> lift(const Matching& m) {
    std::vector<LiftedPair> out;
    const int s = m.size();
    out.reserve(static_cast<std::size_t>(s) * (s - 1) / 2);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j) {
            auto [a1, b1] = m.pair(i);
            auto [a2, b2] = m.pair(j);
            LiftedPair lp;
            lp.a = {a1, a2};  // pairs sorted by left id, so a1 < a2
            lp.b = {std::min(b1, b2), std::max(b1, b2)};
            out.push_back(lp);
        }
    std::sort(out.begin(), out.end());
    return out;
}

Graph aligned_intersection(const Graph& ga, const Graph& gb, const Matching& m) {
    for (auto [a, b] : m.pairs()) {
        require_config(a < ga.num_vertices(),
                       "aligned_intersection: left id out of range");
        require_config(b < gb.num_vertices(),
                       "aligned_intersection: right id out of range");
    }
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : ga.edges()) {
        auto i = m.index_of_left(u);
        auto j = m.index_of_left(v);
        if (!i || !j) continue;
        if (gb.has_edge(m.pair(*i).second, m.pair(*j).second))
            edges.emplace_back(std::min(*i, *j), std::max(*i, *j));
    }
    return Graph(m.size(), std::move(edges));
}

}  // namespace kca
