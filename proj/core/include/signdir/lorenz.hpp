#pragma once

#include <vector>

namespace signdir {

struct LorenzPoint {
    double f = 0.0;  // cumulative fraction of categories, i / N
    double l = 0.0;  // cumulative probability share through category i

    friend bool operator==(const LorenzPoint&, const LorenzPoint&) = default;
};

// Points (F_i, L_i) for i = 1..N over categories sorted by ascending
// probability. The origin is implicit; the last point is exactly (1, 1).
struct LorenzCurve {
    std::vector<LorenzPoint> points;
};

}  // namespace signdir
