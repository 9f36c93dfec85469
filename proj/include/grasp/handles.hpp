#pragma once

#include <cstdint>
#include <vector>

#include "grasp/frames.hpp"
#include "grasp/gripper.hpp"
#include "grasp/kdtree.hpp"
#include "grasp/segmentation.hpp"

namespace grasp {

/// A validated 6-DOF grasp handle. The gripper approaches along -n with its
/// closing plane along f; the patch is the supported surface band.
struct GraspHandle {
    std::uint32_t segment_label = 0;
    Vec3 position = Vec3::Zero();       // patch centroid
    Vec3 search_center = Vec3::Zero();  // candidate band center on the segment
    SegmentFrame frame;                 // axes at the patch
    Vec3 angles_xyz = Vec3::Zero();     // extrinsic X-Y-Z orientation
    double patch_extent_f = 0;          // meters, < gripper aperture d
    double depth = 0;                   // band depth used along -n
    std::vector<std::uint32_t> patch;   // cloud indices of the patch points
};

/// Four-step 1-D handle search per segment: gather all cloud points within
/// d/2 of the candidate center, project to the segment frame, clip to the
/// finger band |a| <= e/2 and depth band [n_top - l, n_top], then scan the
/// f-sorted points for a run containing f = 0 whose internal gaps are < g
/// and which has clearance >= g beyond both ends (an observed inter-point
/// gap, or free space before the d/2 search boundary). Candidates step by e
/// along the major axis from the centroid outward; every valid candidate
/// emits one handle.
std::vector<GraspHandle> find_handles(const Segmentation& seg,
                                      const PointCloud& cloud,
                                      const NeighborIndex& idx,
                                      const std::vector<SegmentFrame>& frames,
                                      const std::vector<std::uint32_t>& frame_labels,
                                      const GripperModel& gripper);

/// Convenience overload: builds frames for all segments (skipping degenerate
/// ones) and runs the search.
std::vector<GraspHandle> find_handles(const Segmentation& seg,
                                      const PointCloud& cloud,
                                      const NeighborIndex& idx,
                                      const GripperModel& gripper);

}  // namespace grasp
