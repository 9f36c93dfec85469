#pragma once

#include <stdexcept>

namespace grasp {

/// Two-finger parallel-jaw gripper geometry, meters.
struct GripperModel {
    double max_aperture = 0.08;     // d: max opening between fingers
    double finger_width = 0.01;     // w
    double finger_thickness = 0.02; // e: band width of the handle search
    double finger_length = 0.06;    // h
    double min_grasp_depth = 0.03;  // l: depth the fingers must cover
    double min_clearance = 0.015;   // g: free gap required beside the patch

    void validate() const {
        if (max_aperture <= 0 || finger_width <= 0 || finger_thickness <= 0 ||
            finger_length <= 0 || min_grasp_depth <= 0 || min_clearance <= 0)
            throw std::invalid_argument("gripper: all parameters must be > 0");
        if (min_clearance <= finger_width)
            throw std::invalid_argument("gripper: clearance g must exceed finger width w");
        if (min_grasp_depth > finger_length)
            throw std::invalid_argument("gripper: grasp depth l must not exceed finger length h");
    }
};

}  // namespace grasp
