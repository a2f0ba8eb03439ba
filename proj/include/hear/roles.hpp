#pragma once

// Class -> UI-role table shared by narrative generation and the audit.
//
//   class suffix                     roles
//   *Button (incl. ImageButton)      button (+ icon, image for ImageButton)
//   *ImageView / *Image              image, icon
//   *EditText / *TextField           text field
//   *CheckBox / *Switch / *Radio*    checkbox
//   *TextView / *Text                label
//   any clickable node               + button, link

#include "hear/hierarchy.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace hear {

inline constexpr std::array<std::string_view, 7> kRoleVocabulary = {
    "button", "icon", "image", "text field", "checkbox", "link", "label"};

/// Roles a report may legitimately attribute to `node`, most specific first.
std::vector<std::string_view> allowed_roles(const ViewNode& node);

/// First allowed role, or "element" when the node has none.
std::string_view primary_role(const ViewNode& node);

}  // namespace hear
