#pragma once

#include "hear/hierarchy.hpp"
#include "hear/image.hpp"
#include "hear/scanner.hpp"

#include <memory>
#include <string>

namespace hear {

/// Dual-modal input for one violation: textual slice plus the padded crop.
struct GroundedContext {
  SemanticSlice slice;
  Rect crop_rect;
  std::shared_ptr<const Image> crop_image;
  std::string screen_id;
  std::string violation_id;
};

/// Locates the violation's element, slices around it and crops the
/// screenshot. `screenshot` dimensions must equal the profile's screen.
GroundedContext ground_violation(const ViewNode& root, const Image& screenshot,
                                 const RawViolation& violation, const DisplayProfile& profile);

}  // namespace hear
