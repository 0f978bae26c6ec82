#pragma once

#include <functional>

#include "rpde/path_lift.hpp"

namespace rpde {

// Exact partition supremum sup_pi (sum |A_{u,v}|^p)^{1/p} for an arbitrary
// two-index magnitude |A_{i,j}|, by the O(n^2) dynamic program
//   V(i) = max_{j<i} V(j) + |A_{j,i}|^p.
double two_index_p_variation(const std::function<double(std::size_t, std::size_t)>& magnitude,
                             std::size_t n_points, double p);

// p-variation of a sampled path (Euclidean increment norms).
double p_variation(const std::vector<Vec>& samples, double p);

// q-variation of a lift's second level, blocks reconstructed by Chen
// (entrywise max norm); q is typically p/2.
double two_index_p_variation(const TwoIndexMap& map, double q);
double level2_p_variation(const PathLift& lift, double q);

// omega(s,t) = ||X||^p_{p-var;[s,t]}; returns the largest superadditivity
// violation omega(s,r) + omega(r,t) - omega(s,t) over all grid triples
// (<= 0 up to roundoff for a genuine control).
double control_superadditivity_defect(const std::vector<Vec>& samples, double p);

}  // namespace rpde
