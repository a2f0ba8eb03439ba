#include "hear/context.hpp"
#include "hear/error.hpp"
#include "hear/hierarchy.hpp"
#include "hear/image.hpp"
#include "hear/roles.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

using namespace hear;
using hear::testing::fixture_dir;
using hear::testing::slurp;

namespace {

ViewNode follow_tree() { return parse_view_hierarchy(slurp(fixture_dir() / "follow_button/hierarchy.xml")); }

void walk(const ViewNode& n, const std::function<void(const ViewNode&)>& fn) {
  fn(n);
  for (const auto& c : n.children) walk(c, fn);
}

std::string xml_node(const std::string& bounds, const std::string& inner = "",
                     const std::string& text = "") {
  const std::string head = "<node class=\"android.view.View\" text=\"" + text + "\" bounds=\"" + bounds + "\"";
  return inner.empty() ? head + "/>" : head + ">" + inner + "</node>";
}

}  // namespace

TEST(Hierarchy, SingleNode) {
  const auto root = parse_view_hierarchy("<hierarchy>" + xml_node("[0,0][1080,2400]") + "</hierarchy>");
  EXPECT_TRUE(root.children.empty());
  EXPECT_EQ(root.bounds, (Rect{0, 0, 1080, 2400}));
}

TEST(Hierarchy, ThreeLevelsWithContainment) {
  HierarchyStats stats;
  const auto root = parse_view_hierarchy(
      xml_node("[0,0][100,100]", xml_node("[10,10][90,90]", xml_node("[20,20][30,30]"))), &stats);
  EXPECT_EQ(stats.nodes, 3u);
  ASSERT_EQ(root.children.size(), 1u);
  ASSERT_EQ(root.children[0].children.size(), 1u);
  EXPECT_TRUE(root.bounds.contains(root.children[0].bounds));
  EXPECT_TRUE(root.children[0].bounds.contains(root.children[0].children[0].bounds));
  EXPECT_FALSE(root.children[0].children[0].overflowing);
}

TEST(Hierarchy, MissingBoundsIsMalformed) {
  try {
    parse_view_hierarchy("<hierarchy><node class=\"x\"/></hierarchy>");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedHierarchy);
  }
}

TEST(Hierarchy, PrunesZeroAreaSubtreesAndFlagsOverflow) {
  HierarchyStats stats;
  const auto root = parse_view_hierarchy(
      xml_node("[0,0][100,100]",
               xml_node("[5,5][5,5]", xml_node("[5,5][6,6]")) + xml_node("[50,50][150,80]")),
      &stats);
  EXPECT_EQ(stats.pruned, 1u);
  ASSERT_EQ(root.children.size(), 1u);
  EXPECT_TRUE(root.children[0].overflowing);
}

TEST(Hierarchy, FollowFixtureAttributes) {
  const auto root = follow_tree();
  const auto& follow = locate_target(root, {571, 1952, 795, 2064});
  EXPECT_EQ(follow.text, "Follow");
  EXPECT_TRUE(follow.clickable);
  EXPECT_EQ(follow.resource_id, "com.example.social:id/follow_button");
  EXPECT_FALSE(follow.content_description.has_value());
}

TEST(LocateTarget, ExactAndContainment) {
  const auto root = follow_tree();
  EXPECT_EQ(locate_target(root, {571, 1952, 795, 2064}).text, "Follow");
  // Strictly inside the Follow button only.
  EXPECT_EQ(locate_target(root, {600, 1960, 700, 2000}).text, "Follow");
  // Inside the row but not inside any leaf.
  EXPECT_EQ(locate_target(root, {0, 1901, 30, 1910}).resource_id, "com.example.social:id/profile_row");
  try {
    locate_target(root, {0, 0, 1081, 10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TargetNotFound);
  }
}

TEST(LocateTarget, ExactMatchTotalityOnSyntheticScreens) {
  for (int i = 0; i < 6; ++i) {
    const auto screen = hear::testing::make_screen(i, 6);
    const auto root = parse_view_hierarchy(screen.hierarchy_xml);
    std::map<std::string, int> counts;
    walk(root, [&](const ViewNode& n) { counts[format_bounds(n.bounds)]++; });
    walk(root, [&](const ViewNode& n) {
      if (counts[format_bounds(n.bounds)] == 1) {
        ASSERT_EQ(&locate_target(root, n.bounds), &n);
      }
    });
  }
}

TEST(Slice, FollowButton) {
  const auto root = follow_tree();
  const auto slice = build_slice(root, locate_target(root, {571, 1952, 795, 2064}));
  EXPECT_TRUE(slice.children.empty());
  EXPECT_EQ(slice.neighbor_texts, (std::vector<std::string>{"Profile photo", "user_name"}));
  EXPECT_EQ(slice.ancestor_ids, (std::vector<std::string>{"com.example.social:id/profile_row"}));
  EXPECT_NE(slice.serialized.find("text=\"Follow\""), std::string::npos);
  EXPECT_NE(slice.serialized.find("\"user_name\""), std::string::npos);
}

TEST(Slice, RootHasNoAncestorsOrNeighbours) {
  const auto root = follow_tree();
  const auto slice = build_slice(root, root);
  EXPECT_TRUE(slice.ancestor_ids.empty());
  EXPECT_TRUE(slice.neighbor_texts.empty());
  EXPECT_EQ(slice.children.size(), 1u);
}

TEST(Slice, ChildTextsAppearVerbatim) {
  const auto root = parse_view_hierarchy(
      xml_node("[0,0][100,100]", xml_node("[0,0][10,10]", "", "Alpha one") +
                                     xml_node("[10,0][20,10]", "", "B & b") +
                                     xml_node("[20,0][30,10]", "", "C")));
  const auto slice = build_slice(root, root);
  for (const auto* s : {"Alpha one", "B & b", "C"}) {
    EXPECT_NE(slice.serialized.find(s), std::string::npos) << s;
  }
}

TEST(Slice, SerializedQuotesComeFromTheDocument) {
  const std::string xml = slurp(fixture_dir() / "follow_button/hierarchy.xml");
  const auto root = parse_view_hierarchy(xml);
  walk(root, [&](const ViewNode& n) {
    const auto slice = build_slice(root, n);
    std::size_t pos = 0;
    while ((pos = slice.serialized.find('"', pos)) != std::string::npos) {
      const auto end = slice.serialized.find('"', pos + 1);
      ASSERT_NE(end, std::string::npos);
      const auto quoted = slice.serialized.substr(pos + 1, end - pos - 1);
      EXPECT_NE(xml.find(quoted), std::string::npos) << quoted;
      pos = end + 1;
    }
  });
}

TEST(Crop, ReferenceRectAndClamps) {
  const DisplayProfile screen;
  EXPECT_EQ(compute_crop({571, 1952, 795, 2064}, screen), (Rect{526, 1930, 840, 2086}));
  EXPECT_EQ(compute_crop({0, 0, 100, 100}, screen), (Rect{0, 0, 120, 120}));
  EXPECT_EQ(compute_crop({0, 0, 1080, 2400}, screen), (Rect{0, 0, 1080, 2400}));
  EXPECT_EQ(compute_crop({980, 2300, 1080, 2400}, screen), (Rect{960, 2280, 1080, 2400}));
}

TEST(Crop, ContainsBoundsAndIsMonotoneInScreenSize) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(0, 900);
  for (int i = 0; i < 2000; ++i) {
    const int l = d(rng), t = d(rng);
    const Rect b{l, t, l + 1 + d(rng) % 180, t + 1 + d(rng) % 180};
    const DisplayProfile small{2.0, 1080, 1100};
    const DisplayProfile large{2.0, 1440, 2400};
    const Rect c1 = compute_crop(b, small);
    const Rect c2 = compute_crop(b, large);
    ASSERT_TRUE(c1.contains(b));
    ASSERT_TRUE(c2.contains(c1));
  }
}

TEST(Image, CropDimensionsAndIdentity) {
  Image img(1080, 2400);
  img.fill({571, 1952, 795, 2064}, 30, 100, 220);
  const auto crop = crop_screenshot(img, {526, 1930, 840, 2086});
  EXPECT_EQ(crop.width(), 314);
  EXPECT_EQ(crop.height(), 156);
  EXPECT_EQ(crop.pixel(45, 22)[2], 220);
  EXPECT_EQ(crop.pixel(0, 0)[2], 0);
  EXPECT_EQ(crop_screenshot(img, {0, 0, 1080, 2400}), img);
  try {
    crop_screenshot(img, {0, 0, 1081, 10});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CropOutOfBounds);
  }
}

TEST(Image, PngRoundTrip) {
  Image img(37, 21);
  img.fill({3, 4, 20, 10}, 1, 2, 3);
  const auto bytes = encode_png(img);
  EXPECT_EQ(decode_png(bytes), img);
  EXPECT_EQ(encode_png(img), bytes);
  const std::vector<std::uint8_t> junk{1, 2, 3};
  EXPECT_THROW(decode_png(junk), Error);
}

TEST(Ground, FollowFixture) {
  const auto root = follow_tree();
  const Image shot = read_png(fixture_dir() / "follow_button/screenshot.png");
  RawViolation v;
  v.id = "abc";
  v.screen_id = "social_profile";
  v.category = TouchTargetSize{};
  v.bounds = {571, 1952, 795, 2064};
  const auto ctx = ground_violation(root, shot, v, DisplayProfile{});
  EXPECT_EQ(ctx.crop_rect, (Rect{526, 1930, 840, 2086}));
  EXPECT_EQ(ctx.crop_image->width(), 314);
  EXPECT_EQ(ctx.slice.target.text, "Follow");
  EXPECT_EQ(ctx.violation_id, "abc");
  EXPECT_THROW(ground_violation(root, shot, v, DisplayProfile{2.0, 720, 1280}), Error);
}

TEST(Roles, ClassTable) {
  ViewNode n;
  n.class_name = "android.widget.Button";
  EXPECT_EQ(primary_role(n), "button");
  n.class_name = "android.widget.ImageView";
  auto roles = allowed_roles(n);
  EXPECT_EQ(std::count(roles.begin(), roles.end(), "button"), 0);
  EXPECT_EQ(primary_role(n), "image");
  n.clickable = true;
  roles = allowed_roles(n);
  EXPECT_EQ(std::count(roles.begin(), roles.end(), "button"), 1);
  n.class_name = "android.widget.FrameLayout";
  n.clickable = false;
  EXPECT_TRUE(allowed_roles(n).empty());
  EXPECT_EQ(primary_role(n), "element");
  n.class_name = "android.widget.EditText";
  EXPECT_EQ(primary_role(n), "text field");
}
