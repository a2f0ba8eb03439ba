#include "hear/roles.hpp"

#include <algorithm>

namespace hear {

namespace {

std::string_view simple_name(std::string_view class_name) {
  const auto dot = class_name.rfind('.');
  return dot == std::string_view::npos ? class_name : class_name.substr(dot + 1);
}

void add(std::vector<std::string_view>& roles, std::string_view role) {
  if (std::find(roles.begin(), roles.end(), role) == roles.end()) roles.push_back(role);
}

}  // namespace

std::vector<std::string_view> allowed_roles(const ViewNode& node) {
  const std::string_view name = simple_name(node.class_name);
  std::vector<std::string_view> roles;

  if (name.ends_with("Button") && !name.ends_with("RadioButton") &&
      !name.ends_with("ToggleButton")) {
    add(roles, "button");
    if (name.find("Image") != std::string_view::npos) {
      add(roles, "icon");
      add(roles, "image");
    }
  } else if (name.ends_with("ImageView") || name.ends_with("Image")) {
    add(roles, "image");
    add(roles, "icon");
  } else if (name.ends_with("EditText") || name.ends_with("TextField") ||
             name.ends_with("TextInputEditText")) {
    add(roles, "text field");
  } else if (name.ends_with("CheckBox") || name.ends_with("Switch") ||
             name.ends_with("SwitchCompat") || name.ends_with("RadioButton") ||
             name.ends_with("ToggleButton") || name.ends_with("CheckedTextView")) {
    add(roles, "checkbox");
  } else if (name.ends_with("TextView") || name.ends_with("Text")) {
    add(roles, "label");
  }

  if (node.clickable) {
    add(roles, "button");
    add(roles, "link");
  }
  return roles;
}

std::string_view primary_role(const ViewNode& node) {
  const auto roles = allowed_roles(node);
  return roles.empty() ? std::string_view("element") : roles.front();
}

}  // namespace hear
