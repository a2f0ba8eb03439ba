#pragma once

// View-hierarchy reconstruction: uiautomator dump parsing, target lookup,
// the localized semantic slice and the padded screenshot crop.

#include "hear/geometry.hpp"
#include "hear/scanner.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hear {

struct ViewNode {
  std::string class_name;
  std::optional<std::string> resource_id;
  std::optional<std::string> text;
  std::optional<std::string> content_description;
  bool clickable = false;
  Rect bounds;
  /// Set when the node draws outside its parent's bounds.
  bool overflowing = false;
  std::vector<ViewNode> children;
};

struct HierarchyStats {
  std::size_t nodes = 0;
  /// Zero-area or off-screen (negative) nodes dropped with their subtrees.
  std::size_t pruned = 0;
};

/// Parses a uiautomator `window_dump` XML document and returns its single
/// root node. Throws MalformedHierarchy.
ViewNode parse_view_hierarchy(std::string_view xml, HierarchyStats* stats = nullptr);

/// Exact-bounds match first (pre-order), otherwise the smallest node that
/// contains `bounds`, ties broken by pre-order. Throws TargetNotFound.
const ViewNode& locate_target(const ViewNode& root, const Rect& bounds);

/// True when locate_target would return a node whose bounds equal `bounds`.
bool has_exact_match(const ViewNode& root, const Rect& bounds);

struct SemanticSlice {
  /// Detached copies; `children` of these copies are cleared.
  ViewNode target;
  std::vector<ViewNode> children;
  std::vector<std::string> neighbor_texts;
  std::vector<std::string> ancestor_ids;
  std::string serialized;
};

/// `target` must be a reference into `root`'s tree (as returned by
/// locate_target). Throws PreconditionViolation otherwise.
SemanticSlice build_slice(const ViewNode& root, const ViewNode& target);

/// One-line canonical rendering of a node, without indentation.
std::string render_node_line(const ViewNode& node);

/// 20% per-side padding (half-away-from-zero), clamped to the screen.
Rect compute_crop(const Rect& bounds, const DisplayProfile& profile);

}  // namespace hear
