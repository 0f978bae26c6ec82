#include "rpde/path_lift.hpp"

#include <cmath>
#include <stdexcept>

#include "rpde/rng.hpp"

namespace rpde {

void PathLift::validate() const {
    grid.validate();
    if (dim < 1) throw std::invalid_argument("PathLift: dimension must be positive");
    if (level1.size() != grid.size() || level2.size() != grid.size())
        throw std::invalid_argument("PathLift: level sizes must match the grid");
    if (level1[0].lpNorm<Eigen::Infinity>() != 0.0 || level2[0].lpNorm<Eigen::Infinity>() != 0.0)
        throw std::invalid_argument("PathLift: levels must vanish at t_0");
    for (const auto& v : level1)
        if (v.size() != dim || !v.allFinite())
            throw std::invalid_argument("PathLift: malformed level-1 entry");
    for (const auto& m : level2)
        if (m.rows() != dim || m.cols() != dim || !m.allFinite())
            throw std::invalid_argument("PathLift: malformed level-2 entry");
}

PathLift PathLift::zero(const TimeGrid& grid, int dim, double p) {
    PathLift l;
    l.dim = dim;
    l.grid = grid;
    l.pvar_exponent = p;
    l.geometric = true;
    l.level1.assign(grid.size(), Vec::Zero(dim));
    l.level2.assign(grid.size(), Mat::Zero(dim, dim));
    return l;
}

PathLift PathLift::from_samples(const TimeGrid& grid, const std::vector<Vec>& samples, double p) {
    if (samples.size() != grid.size())
        throw std::invalid_argument("PathLift::from_samples: sample count must match grid");
    const int d = static_cast<int>(samples.front().size());
    PathLift l = zero(grid, d, p);
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        Vec delta = samples[k + 1] - samples[k];
        // Chen accumulation with the exact one-interval integral 1/2 delta (x) delta.
        l.level2[k + 1] = l.level2[k] + 0.5 * delta * delta.transpose() +
                          l.level1[k] * delta.transpose();
        l.level1[k + 1] = l.level1[k] + delta;
    }
    return l;
}

TwoIndexMap::TwoIndexMap(std::size_t n_points, int r, int c) : n(n_points), rows(r), cols(c) {
    blocks.assign(n * n, Mat::Zero(r, c));
}

Mat& TwoIndexMap::at(std::size_t i, std::size_t j) {
    if (j < i || j >= n) throw std::out_of_range("TwoIndexMap: bad index pair");
    return blocks[i * n + j];
}

const Mat& TwoIndexMap::at(std::size_t i, std::size_t j) const {
    if (j < i || j >= n) throw std::out_of_range("TwoIndexMap: bad index pair");
    return blocks[i * n + j];
}

TwoIndexMap TwoIndexMap::level2_of(const PathLift& lift) {
    const std::size_t n = lift.points();
    TwoIndexMap m(n, lift.dim, lift.dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.at(i, j) = lift.inc2(i, j);
    return m;
}

namespace {

template <typename Level2Fn, typename Level1Fn>
double chen_defect_impl(std::size_t n, Level1Fn inc1, Level2Fn inc2,
                        const TripleSampling& sampling) {
    if (n < 2) throw std::invalid_argument("chen_defect: empty grid");
    double worst = 0.0;
    auto eval = [&](std::size_t s, std::size_t r, std::size_t t) {
        Mat defect = inc2(s, t) - inc2(s, r) - inc2(r, t) - inc1(s, r) * inc1(r, t).transpose();
        double v = defect.template lpNorm<Eigen::Infinity>();
        if (v > worst) worst = v;
    };
    if (n <= sampling.exhaustive_cutoff) {
        for (std::size_t s = 0; s + 2 < n; ++s)
            for (std::size_t r = s + 1; r + 1 < n; ++r)
                for (std::size_t t = r + 1; t < n; ++t) eval(s, r, t);
    } else {
        Rng rng(sampling.seed, 0x6368656eull);  // dedicated triple-sampling stream
        for (std::size_t k = 0; k < sampling.samples; ++k) {
            std::size_t s = rng.next_u64() % (n - 2);
            std::size_t r = s + 1 + rng.next_u64() % (n - s - 2);
            std::size_t t = r + 1 + rng.next_u64() % (n - r - 1);
            eval(s, r, t);
        }
    }
    return worst;
}

}  // namespace

double chen_defect(const PathLift& lift, const TripleSampling& sampling) {
    lift.validate();
    return chen_defect_impl(
        lift.points(), [&](std::size_t i, std::size_t j) { return lift.inc1(i, j); },
        [&](std::size_t i, std::size_t j) { return lift.inc2(i, j); }, sampling);
}

double chen_defect(const std::vector<Vec>& level1_anchored, const TwoIndexMap& level2,
                   const TripleSampling& sampling) {
    if (level1_anchored.size() != level2.n)
        throw std::invalid_argument("chen_defect: level sizes disagree");
    return chen_defect_impl(
        level2.n,
        [&](std::size_t i, std::size_t j) -> Vec { return level1_anchored[j] - level1_anchored[i]; },
        [&](std::size_t i, std::size_t j) -> Mat { return level2.at(i, j); }, sampling);
}

double geometricity_defect(const PathLift& lift) {
    lift.validate();
    const std::size_t n = lift.points();
    double worst = 0.0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s; t < n; ++t) {
            Vec x = lift.inc1(s, t);
            Mat xx = lift.inc2(s, t);
            Mat defect = 0.5 * (xx + xx.transpose()) - 0.5 * x * x.transpose();
            worst = std::max(worst, defect.lpNorm<Eigen::Infinity>());
        }
    return worst;
}

PathLift dilate(const PathLift& lift, double eps) {
    PathLift out = lift;
    for (auto& v : out.level1) v *= eps;
    for (auto& m : out.level2) m *= eps * eps;
    return out;
}

PathLift ito_corrected(const PathLift& lift) {
    PathLift out = lift;
    out.geometric = false;
    for (std::size_t i = 0; i < out.points(); ++i)
        out.level2[i] -= 0.5 * out.grid.points[i] * Mat::Identity(out.dim, out.dim);
    return out;
}

}  // namespace rpde
