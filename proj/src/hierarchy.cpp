#include "hear/hierarchy.hpp"

#include "hear/error.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include <fmt/format.h>

namespace hear {

namespace pt = boost::property_tree;

namespace {

std::optional<std::string> non_empty(const pt::ptree& attrs, const char* key) {
  auto v = attrs.get_optional<std::string>(key);
  if (!v || v->empty()) return std::nullopt;
  return *v;
}

struct Builder {
  HierarchyStats stats;

  // Returns nullopt when the node is pruned.
  std::optional<ViewNode> build(const pt::ptree& element, const ViewNode* parent) {
    const auto attrs = element.get_child_optional("<xmlattr>");
    const boost::optional<std::string> bounds_text =
        attrs ? attrs->get_optional<std::string>("bounds") : boost::none;
    if (!bounds_text) {
      throw Error(ErrorCode::MalformedHierarchy, "node without bounds attribute");
    }
    Rect bounds;
    try {
      bounds = parse_bounds_unchecked(*bounds_text);
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedHierarchy, e.what());
    }
    const bool negative = bounds.left < 0 || bounds.top < 0;
    const bool degenerate = bounds.left >= bounds.right || bounds.top >= bounds.bottom;
    if (negative || degenerate) {
      if (parent == nullptr) {
        throw Error(ErrorCode::MalformedHierarchy,
                    fmt::format("root bounds {} are not a valid rect", *bounds_text));
      }
      ++stats.pruned;
      return std::nullopt;
    }

    ViewNode node;
    node.bounds = bounds;
    node.class_name = attrs->get<std::string>("class", "");
    node.resource_id = non_empty(*attrs, "resource-id");
    node.text = non_empty(*attrs, "text");
    node.content_description = non_empty(*attrs, "content-desc");
    node.clickable = attrs->get<std::string>("clickable", "false") == "true";
    node.overflowing = parent != nullptr && !parent->bounds.contains(bounds);
    ++stats.nodes;

    for (const auto& [tag, child] : element) {
      if (tag != "node") continue;
      if (auto built = build(child, &node)) node.children.push_back(std::move(*built));
    }
    return node;
  }
};

std::vector<const pt::ptree*> elements_named(const pt::ptree& tree, const char* name) {
  std::vector<const pt::ptree*> out;
  for (const auto& [tag, child] : tree) {
    if (tag == name) out.push_back(&child);
  }
  return out;
}

std::size_t element_count(const pt::ptree& tree) {
  return static_cast<std::size_t>(std::count_if(tree.begin(), tree.end(), [](const auto& kv) {
    return !kv.first.empty() && kv.first.front() != '<';
  }));
}

void pre_order(const ViewNode& node, const std::function<void(const ViewNode&)>& visit) {
  visit(node);
  for (const auto& child : node.children) pre_order(child, visit);
}

// Path of nodes from root to target (inclusive), found by address.
bool find_path(const ViewNode& node, const ViewNode* target, std::vector<const ViewNode*>& path) {
  path.push_back(&node);
  if (&node == target) return true;
  for (const auto& child : node.children) {
    if (find_path(child, target, path)) return true;
  }
  path.pop_back();
  return false;
}

ViewNode detached(const ViewNode& node) {
  ViewNode copy = node;
  copy.children.clear();
  return copy;
}

void collect_texts(const ViewNode& node, std::vector<std::string>& out) {
  pre_order(node, [&](const ViewNode& n) {
    if (n.text) out.push_back(*n.text);
    if (n.content_description) out.push_back(*n.content_description);
  });
}

}  // namespace

ViewNode parse_view_hierarchy(std::string_view xml, HierarchyStats* stats) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::MalformedHierarchy, e.what());
  }

  if (element_count(doc) != 1) {
    throw Error(ErrorCode::MalformedHierarchy, "document must have exactly one top-level element");
  }
  const pt::ptree* root_element = nullptr;
  if (auto hierarchy = doc.get_child_optional("hierarchy")) {
    const auto roots = elements_named(*hierarchy, "node");
    if (roots.size() != 1) {
      throw Error(ErrorCode::MalformedHierarchy,
                  fmt::format("expected one root node, found {}", roots.size()));
    }
    root_element = roots.front();
  } else if (auto node = doc.get_child_optional("node")) {
    root_element = &*node;
  } else {
    throw Error(ErrorCode::MalformedHierarchy, "top-level element must be <hierarchy> or <node>");
  }

  Builder builder;
  ViewNode root = *builder.build(*root_element, nullptr);
  if (stats) *stats = builder.stats;
  return root;
}

const ViewNode& locate_target(const ViewNode& root, const Rect& bounds) {
  const ViewNode* exact = nullptr;
  const ViewNode* smallest = nullptr;
  pre_order(root, [&](const ViewNode& n) {
    if (exact == nullptr && n.bounds == bounds) exact = &n;
    if (n.bounds.contains(bounds) && (smallest == nullptr || n.bounds.area() < smallest->bounds.area())) {
      smallest = &n;
    }
  });
  if (exact) return *exact;
  if (smallest) return *smallest;
  throw Error(ErrorCode::TargetNotFound, fmt::format("no node contains {}", format_bounds(bounds)));
}

bool has_exact_match(const ViewNode& root, const Rect& bounds) {
  bool found = false;
  pre_order(root, [&](const ViewNode& n) { found = found || n.bounds == bounds; });
  return found;
}

std::string render_node_line(const ViewNode& node) {
  std::string line = node.class_name.empty() ? "node" : node.class_name;
  if (node.resource_id) line += fmt::format(" [{}]", *node.resource_id);
  if (node.text) line += fmt::format(" text=\"{}\"", *node.text);
  if (node.content_description) line += fmt::format(" desc=\"{}\"", *node.content_description);
  line += fmt::format(" clickable={} bounds={}", node.clickable, format_bounds(node.bounds));
  if (node.overflowing) line += " overflowing";
  return line;
}

SemanticSlice build_slice(const ViewNode& root, const ViewNode& target) {
  std::vector<const ViewNode*> path;
  if (!find_path(root, &target, path)) {
    throw Error(ErrorCode::PreconditionViolation, "target is not part of the hierarchy");
  }

  SemanticSlice slice;
  slice.target = detached(target);
  for (const auto& child : target.children) slice.children.push_back(detached(child));

  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i]->resource_id) slice.ancestor_ids.push_back(*path[i]->resource_id);
  }
  if (path.size() >= 2) {
    const ViewNode* parent = path[path.size() - 2];
    for (const auto& sibling : parent->children) {
      if (&sibling != &target) collect_texts(sibling, slice.neighbor_texts);
    }
  }

  std::string out;
  out += fmt::format("ancestor_ids: {}\n",
                     slice.ancestor_ids.empty() ? "(none)" : fmt::format("{}", fmt::join(slice.ancestor_ids, " > ")));
  out += render_node_line(slice.target) + "\n";
  for (const auto& child : slice.children) out += "  " + render_node_line(child) + "\n";
  if (slice.neighbor_texts.empty()) {
    out += "neighbor_texts: (none)\n";
  } else {
    out += "neighbor_texts:\n";
    for (const auto& t : slice.neighbor_texts) out += fmt::format("  \"{}\"\n", t);
  }
  slice.serialized = std::move(out);
  return slice;
}

Rect compute_crop(const Rect& bounds, const DisplayProfile& profile) {
  // round(0.2 * extent) half-away-from-zero, in integers: floor((2e + 5) / 10).
  const int pad_x = (2 * bounds.width() + 5) / 10;
  const int pad_y = (2 * bounds.height() + 5) / 10;
  return Rect{
      std::max(0, bounds.left - pad_x),
      std::max(0, bounds.top - pad_y),
      std::min(profile.screen_width_px, bounds.right + pad_x),
      std::min(profile.screen_height_px, bounds.bottom + pad_y),
  };
}

}  // namespace hear
