#include "hear/context.hpp"

#include "hear/error.hpp"

#include <fmt/format.h>

namespace hear {

GroundedContext ground_violation(const ViewNode& root, const Image& screenshot,
                                 const RawViolation& violation, const DisplayProfile& profile) {
  if (screenshot.width() != profile.screen_width_px ||
      screenshot.height() != profile.screen_height_px) {
    throw Error(ErrorCode::ImageDecodeError,
                fmt::format("screenshot is {}x{}, display profile says {}x{}", screenshot.width(),
                            screenshot.height(), profile.screen_width_px,
                            profile.screen_height_px));
  }
  const ViewNode& target = locate_target(root, violation.bounds);

  GroundedContext ctx;
  ctx.slice = build_slice(root, target);
  ctx.crop_rect = compute_crop(violation.bounds, profile);
  ctx.crop_image = std::make_shared<const Image>(crop_screenshot(screenshot, ctx.crop_rect));
  ctx.screen_id = violation.screen_id;
  ctx.violation_id = violation.id;
  return ctx;
}

}  // namespace hear
