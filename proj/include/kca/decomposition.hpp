#ifndef KCA_DECOMPOSITION_HPP
#define KCA_DECOMPOSITION_HPP

#include <array>
#include <cstdint>
#include <map>

#include "kca/matching.hpp"

namespace kca {

// Component census of the union multigraph of lift(mu) and lift(mu_star),
// split by region. A left-universe pair lies in region i when exactly 2-i of
// its endpoints are matched identically by mu and mu_star; both lifts carry
// region-i left pairs to region-i right pairs, so every component lives in
// one region.
//
// Components are alternating paths and even cycles: each left or right pair
// has exactly one lift(mu_star) edge and at most one lift(mu) edge, so path
// ends are always lift(mu_star) edges. paths[i][l] counts region-i paths of
// length 2l+1 (l >= 1 lift(mu) edges); cycles[i][l] counts cycles of length
// 2l. Single-edge paths (l = 0) are tallied in p0_paths; they carry no
// lift(mu) edge and contribute factor 1 to every generating function.
//
// Structural facts validated by decompose():
//   cycles[0] is exactly C(|mu inter mu_star|, 2) cycles of length 2,
//   paths[0] is empty, region 1 has no 2-cycles,
//   cycles[2][1] <= d/2,
//   sum_l l*(paths[1][l]+cycles[1][l]) = d*(n'-d),
//   sum_l l*(paths[2][l]+cycles[2][l]) = C(d,2).
struct DecompositionStats {
    int n = 0;        // ambient universe size (|mu_star|)
    int n_prime = 0;  // |mu|
    int d = 0;        // |mu \ mu_star|
    int n_common = 0; // |mu inter mu_star|
    long long p0_paths = 0;
    std::array<std::map<int, long long>, 3> paths;
    std::array<std::map<int, long long>, 3> cycles;

    long long path_count(int region, int l) const;
    long long cycle_count(int region, int l) const;
    // sum_l l * (paths[region][l] + cycles[region][l])
    long long weighted_sum(int region) const;
};

// mu_star must be a bijection on [n]; mu any matching over the same
// universes. O(n^2) time and memory (one slot per unordered pair).
DecompositionStats decompose(const Matching& mu, const Matching& mu_star);

}  // namespace kca

#endif
