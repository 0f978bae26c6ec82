#include "rpde/young.hpp"

#include <stdexcept>

namespace rpde {

CrossMap CrossMap::zero(const TimeGrid& grid, int da, int db) {
    CrossMap m;
    m.grid = grid;
    m.a0.assign(grid.size(), Vec::Zero(da));
    m.b0.assign(grid.size(), Vec::Zero(db));
    m.anchor.assign(grid.size(), Mat::Zero(da, db));
    return m;
}

CrossMap young_cross(const TimeGrid& grid, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != grid.size() || b.size() != grid.size())
        throw std::invalid_argument("young_cross: paths must live on the same grid");
    CrossMap m;
    m.grid = grid;
    m.a0.resize(grid.size());
    m.b0.resize(grid.size());
    m.anchor.resize(grid.size());
    m.a0[0] = a[0] - a[0];  // anchored increments A_{0,t_i}
    m.b0[0] = b[0] - b[0];
    m.anchor[0] = Mat::Zero(a[0].size(), b[0].size());
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        m.a0[k + 1] = a[k + 1] - a[0];
        m.b0[k + 1] = b[k + 1] - b[0];
        Vec db = b[k + 1] - b[k];
        m.anchor[k + 1] = m.anchor[k] + 0.5 * (m.a0[k] + m.a0[k + 1]) * db.transpose();
    }
    return m;
}

CrossMap young_cross(const PathLift& a, const PathLift& b) {
    if (a.points() != b.points())
        throw std::invalid_argument("young_cross: lifts must live on the same grid");
    return young_cross(a.grid, a.level1, b.level1);
}

PathLift sum_lifts(const PathLift& x, const PathLift& y, const CrossMap& xy, const CrossMap& yx) {
    if (x.dim != y.dim) throw std::invalid_argument("sum_lifts: dimension mismatch");
    if (x.points() != y.points() || xy.points() != x.points() || yx.points() != x.points())
        throw std::invalid_argument("sum_lifts: grid mismatch");
    PathLift z = x;
    for (std::size_t i = 0; i < z.points(); ++i) {
        z.level1[i] += y.level1[i];
        z.level2[i] += y.level2[i] + xy.anchor[i] + yx.anchor[i];
    }
    z.geometric = x.geometric && y.geometric;
    return z;
}

Increment increment(const PathLift& x, const PathLift& y, const CrossMap& xy, const CrossMap& yx,
                    double eps) {
    if (x.dim != y.dim) throw std::invalid_argument("increment: dimension mismatch");
    if (x.points() != y.points()) throw std::invalid_argument("increment: grid mismatch");
    return Increment{&y, &xy, &yx, eps};
}

PathLift joint_lift_young(const PathLift& v, const std::vector<Vec>& h, double /*q_of_h*/) {
    if (h.size() != v.points()) throw std::invalid_argument("joint_lift_young: grid mismatch");
    const int d = v.dim;
    const int dh = static_cast<int>(h.front().size());
    CrossMap vh = young_cross(v.grid, v.level1, h);
    CrossMap hv = young_cross(v.grid, h, v.level1);
    CrossMap hh = young_cross(v.grid, h, h);

    PathLift z = PathLift::zero(v.grid, d + dh, v.pvar_exponent);
    z.geometric = v.geometric;
    for (std::size_t i = 0; i < z.points(); ++i) {
        z.level1[i].head(d) = v.level1[i];
        z.level1[i].tail(dh) = h[i] - h[0];
        z.level2[i].topLeftCorner(d, d) = v.level2[i];
        z.level2[i].topRightCorner(d, dh) = vh.anchor[i];
        z.level2[i].bottomLeftCorner(dh, d) = hv.anchor[i];
        z.level2[i].bottomRightCorner(dh, dh) = hh.anchor[i];
    }
    return z;
}

}  // namespace rpde
