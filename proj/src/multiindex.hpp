#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "series.hpp"

namespace cmnf {

// All exponent vectors of length nvars with given total degree, lexicographically sorted.
inline std::vector<Expo> multiindices_of_degree(int nvars, int deg) {
    std::vector<Expo> out;
    if (nvars == 0) {
        if (deg == 0) out.push_back({});
        return out;
    }
    Expo cur(nvars, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == nvars - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[pos] = e;
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, deg);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Expo> multiindices_up_to_degree(int nvars, int deg) {
    std::vector<Expo> out;
    for (int k = 0; k <= deg; ++k) {
        auto v = multiindices_of_degree(nvars, k);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace cmnf
