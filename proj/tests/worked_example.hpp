#pragma once

// The 5-subproblem / 10-solution preference matrices used throughout the
// matching and selection tests (0-based indices).

#include "moead/matching.hpp"

namespace testutil {

inline moead::PreferenceProfile worked_example_profile() {
    moead::PreferenceProfile pr;
    pr.n_left = 5;
    pr.n_right = 10;
    pr.left_lists = {
        {0, 1, 2, 3, 4, 5, 6, 7, 9, 8},
        {0, 2, 1, 3, 4, 5, 6, 7, 9, 8},
        {0, 2, 1, 3, 5, 4, 6, 9, 7, 8},
        {9, 0, 2, 1, 3, 8, 5, 4, 6, 7},
        {9, 0, 2, 1, 3, 8, 5, 4, 6, 7},
    };
    pr.right_lists = {
        {0, 1, 2, 3, 4},
        {0, 1, 2, 3, 4},
        {0, 1, 2, 3, 4},
        {1, 0, 2, 3, 4},
        {1, 0, 2, 3, 4},
        {1, 2, 0, 3, 4},
        {2, 1, 3, 0, 4},
        {2, 3, 1, 4, 0},
        {3, 2, 4, 1, 0},
        {4, 3, 2, 1, 0},
    };
    pr.right_lengths = {5, 5, 5, 5, 5, 5, 5, 5, 5, 5};
    return pr;
}

}  // namespace testutil
