#include "gxtsp/local_search.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gxtsp {

namespace {

void check_config(const LocalSearchConfig& cfg) {
    if (cfg.max_passes && *cfg.max_passes < 1) {
        throw std::invalid_argument("LocalSearchConfig: max_passes must be >= 1");
    }
}

} // namespace

Tour two_opt(const Tour& tour, const Instance& inst, const LocalSearchConfig& cfg) {
    check_config(cfg);
    const int n = tour.size();
    if (n < 4) {
        return tour; // every reconnection reproduces the same cycle
    }
    std::vector<int> order = tour.order();
    std::int64_t length = tour.length();

    int passes = 0;
    bool improved = true;
    while (improved && (!cfg.max_passes || passes < *cfg.max_passes)) {
        improved = false;
        ++passes;
        for (int i = 0; i + 1 < n; ++i) {
            const int a = order[static_cast<std::size_t>(i)];
            int b = order[static_cast<std::size_t>(i + 1)];
            std::int64_t d_ab = inst.distance_unchecked(a, b);
            // (0, n-1) would cut two edges sharing order[0]; reversing the
            // whole remainder only flips orientation, so skip it.
            const int j_end = (i == 0) ? n - 1 : n;
            for (int j = i + 1; j < j_end; ++j) {
                const int c = order[static_cast<std::size_t>(j)];
                const int d = order[static_cast<std::size_t>((j + 1) % n)];
                const std::int64_t delta = inst.distance_unchecked(a, c) +
                                           inst.distance_unchecked(b, d) - d_ab -
                                           inst.distance_unchecked(c, d);
                if (delta < 0) {
                    std::reverse(order.begin() + i + 1, order.begin() + j + 1);
                    length += delta;
                    improved = true;
                    b = order[static_cast<std::size_t>(i + 1)];
                    d_ab = inst.distance_unchecked(a, b);
                }
            }
        }
    }
    return Tour::with_length(std::move(order), length);
}

Tour three_opt(const Tour& tour, const Instance& inst, const LocalSearchConfig& cfg) {
    check_config(cfg);
    const int n = tour.size();
    if (n < 4) {
        return tour;
    }
    std::vector<int> order = tour.order();
    std::int64_t length = tour.length();

    // Cutting edges (a,b), (c,d), (e,f) leaves segments A = order[i+1..j]
    // (ends b..c) and B = order[j+1..k] (ends d..e). The seven
    // reconnections and their deltas:
    //   1  A reversed                 d(a,c)+d(b,d)               -d(a,b)-d(c,d)
    //   2  B reversed                 d(c,e)+d(d,f)               -d(c,d)-d(e,f)
    //   3  A and B reversed           d(a,c)+d(b,e)+d(d,f)        -all three
    //   4  A+B reversed as one block  d(a,e)+d(b,f)               -d(a,b)-d(e,f)
    //   5  B before A                 d(a,d)+d(e,b)+d(c,f)        -all three
    //   6  B before reversed A        d(a,d)+d(e,c)+d(b,f)        -all three
    //   7  reversed B before A        d(a,e)+d(d,b)+d(c,f)        -all three
    // All moves stay inside positions i+1..k, so order[0] never moves.
    int passes = 0;
    bool improved = true;
    while (improved && (!cfg.max_passes || passes < *cfg.max_passes)) {
        improved = false;
        ++passes;
        for (int i = 0; i + 2 < n; ++i) {
            const int a = order[static_cast<std::size_t>(i)];
            const int b = order[static_cast<std::size_t>(i + 1)];
            const std::int64_t d_ab = inst.distance_unchecked(a, b);
            bool moved = false;
            for (int j = i + 1; j + 1 < n && !moved; ++j) {
                const int c = order[static_cast<std::size_t>(j)];
                const int d = order[static_cast<std::size_t>(j + 1)];
                const std::int64_t d_cd = inst.distance_unchecked(c, d);
                const std::int64_t d_ac = inst.distance_unchecked(a, c);
                const std::int64_t d_ad = inst.distance_unchecked(a, d);
                const std::int64_t d_bd = inst.distance_unchecked(b, d);
                const std::int64_t delta1 = d_ac + d_bd - d_ab - d_cd;
                for (int k = j + 1; k < n; ++k) {
                    const int e = order[static_cast<std::size_t>(k)];
                    const int f = order[static_cast<std::size_t>((k + 1) % n)];
                    const std::int64_t d_ef = inst.distance_unchecked(e, f);
                    const std::int64_t d_ce = inst.distance_unchecked(c, e);
                    const std::int64_t d_df = inst.distance_unchecked(d, f);
                    const std::int64_t d_ae = inst.distance_unchecked(a, e);
                    const std::int64_t d_bf = inst.distance_unchecked(b, f);
                    const std::int64_t d_be = inst.distance_unchecked(b, e);
                    const std::int64_t d_cf = inst.distance_unchecked(c, f);
                    const std::int64_t removed = d_ab + d_cd + d_ef;

                    std::int64_t best_delta = delta1;
                    int best_case = 1;
                    const auto consider = [&](std::int64_t delta, int which) {
                        if (delta < best_delta) {
                            best_delta = delta;
                            best_case = which;
                        }
                    };
                    consider(d_ce + d_df - d_cd - d_ef, 2);
                    consider(d_ac + d_be + d_df - removed, 3);
                    consider(d_ae + d_bf - d_ab - d_ef, 4);
                    consider(d_ad + d_be + d_cf - removed, 5);
                    consider(d_ad + d_ce + d_bf - removed, 6);
                    consider(d_ae + d_bd + d_cf - removed, 7);
                    if (best_delta >= 0) {
                        continue;
                    }

                    const auto seg = order.begin();
                    switch (best_case) {
                    case 1: std::reverse(seg + i + 1, seg + j + 1); break;
                    case 2: std::reverse(seg + j + 1, seg + k + 1); break;
                    case 3:
                        std::reverse(seg + i + 1, seg + j + 1);
                        std::reverse(seg + j + 1, seg + k + 1);
                        break;
                    case 4: std::reverse(seg + i + 1, seg + k + 1); break;
                    case 5: std::rotate(seg + i + 1, seg + j + 1, seg + k + 1); break;
                    case 6:
                        std::reverse(seg + i + 1, seg + j + 1);
                        std::rotate(seg + i + 1, seg + j + 1, seg + k + 1);
                        break;
                    case 7:
                        std::reverse(seg + j + 1, seg + k + 1);
                        std::rotate(seg + i + 1, seg + j + 1, seg + k + 1);
                        break;
                    }
                    length += best_delta;
                    improved = true;
                    moved = true;
                    break; // positions past i are reshuffled; resume at i+1
                }
            }
        }
    }
    return Tour::with_length(std::move(order), length);
}

Tour improve(const Tour& tour, const Instance& inst, const LocalSearchConfig& cfg) {
    check_config(cfg);
    Tour out = tour;
    if (cfg.two_opt_enabled) {
        out = two_opt(out, inst, cfg);
    }
    if (cfg.three_opt_enabled) {
        out = three_opt(out, inst, cfg);
    }
    return out;
}

} // namespace gxtsp
