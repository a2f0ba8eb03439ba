#include "fixtures.hpp"

#include "hear/cli.hpp"
#include "hear/error.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace hear::testing {

using json = nlohmann::json;

fs::path fixture_dir() { return HEAR_TEST_FIXTURES; }
fs::path data_dir() { return HEAR_TEST_DATA; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PersonaRegistry bundled_registry() { return load_registry(slurp(data_dir() / "personas.json")); }
LegalKb bundled_kb() { return load_legal_kb(slurp(data_dir() / "legal_kb.json")); }

FollowCase follow_case() {
  FollowCase fc;
  const fs::path dir = fixture_dir() / "follow_button";
  const auto doc = parse_scanner_document(slurp(dir / "scan.json"));
  fc.violation = doc.violations.at(0);
  fc.root = parse_view_hierarchy(slurp(dir / "hierarchy.xml"));
  fc.context = ground_violation(fc.root, read_png(dir / "screenshot.png"), fc.violation, doc.profile);
  fc.persona = *bundled_registry().find("Ichiro");
  fc.kb = bundled_kb();
  fc.clauses = retrieve_clauses(fc.kb.clauses, "JP", map_category_to_criteria(fc.violation.category));
  return fc;
}

fs::path scratch_dir(const std::string& name) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       fmt::format("hear-test-{}-{}-{}", name, ::getpid(), counter++);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

namespace {

constexpr int kWidth = 1080;
constexpr int kHeight = 2400;
constexpr int kFirstRow = 300;
constexpr int kRowPitch = 240;
constexpr int kRowHeight = 220;
constexpr int kMaxRows = (kHeight - kFirstRow) / kRowPitch;

std::string node_xml(const std::string& cls, const std::string& rid, const std::string& text,
                     const std::string& desc, bool clickable, const Rect& r,
                     const std::string& children = {}) {
  const std::string attrs = fmt::format(
      R"(text="{}" resource-id="{}" class="{}" package="com.example.synth" content-desc="{}" clickable="{}" bounds="{}")",
      text, rid, cls, desc, clickable ? "true" : "false", format_bounds(r));
  if (children.empty()) return fmt::format("<node {} />\n", attrs);
  return fmt::format("<node {}>\n{}</node>\n", attrs, children);
}

std::string rid(const std::string& name) { return "com.example.synth:id/" + name; }

}  // namespace

SyntheticScreen make_screen(int index, int violations, int other) {
  if (violations + other > kMaxRows) throw std::invalid_argument("too many rows for one screen");
  SyntheticScreen s;
  s.screen_id = fmt::format("synth_{:02}", index);
  s.screenshot = Image(kWidth, kHeight);
  s.screenshot.fill({0, 0, kWidth, kHeight}, 250, 250, 250);

  json records = json::array();
  std::string rows;
  for (int row = 0; row < violations + other; ++row) {
    const int y = kFirstRow + row * kRowPitch;
    const Rect row_rect{0, y, kWidth, y + kRowHeight};
    s.screenshot.fill(row_rect, 240, 240, 245);
    const std::string tag = fmt::format("{}-{}", index, row);
    std::string children;
    json record;

    const int kind = row >= violations ? 3 : (index * 7 + row) % 3;
    if (kind == 0) {
      const int h = 100 + (row % 3) * 4;
      const Rect caption{40, y + 60, 500, y + 160};
      const Rect button{560, y + 60, 560 + 220, y + 60 + h};
      children += node_xml("android.widget.TextView", rid("caption_" + std::to_string(row)),
                           "Caption " + tag, "", false, caption);
      children += node_xml("android.widget.Button", rid("action_" + std::to_string(row)),
                           "Action " + tag, "", true, button);
      s.screenshot.fill(button, 30, 100, 220);
      record = {{"type", "Touch target"},
                {"bounds", format_bounds(button)},
                {"description",
                 fmt::format("Consider making this clickable item larger. This item's height is "
                             "{}dp. Consider making the height of this touch target 48dp or "
                             "larger.",
                             std::lround(h / 2.625))}};
    } else if (kind == 1) {
      const Rect image{40, y + 30, 200, y + 190};
      const Rect headline{240, y + 70, 900, y + 150};
      children += node_xml("android.widget.ImageView", rid("banner_" + std::to_string(row)), "",
                           "", false, image);
      children += node_xml("android.widget.TextView", rid("headline_" + std::to_string(row)),
                           "Headline " + tag, "", false, headline);
      s.screenshot.fill(image, 160, 170, 190);
      record = {{"type", "Item label"},
                {"bounds", format_bounds(image)},
                {"description", "This item may not have a label readable by screen readers."}};
    } else if (kind == 2) {
      const Rect price{40, y + 70, 600, y + 150};
      children += node_xml("android.widget.TextView", rid("price_" + std::to_string(row)),
                           "Price " + tag, "", false, price);
      s.screenshot.fill(price, 255, 255, 255);
      record = {{"type", "Text contrast"},
                {"bounds", format_bounds(price)},
                {"fg_color", "#AAAAAA"},
                {"bg_color", "#FFFFFF"},
                {"description",
                 "The item's text contrast ratio is 2.32. This ratio is based on an estimated "
                 "foreground color of #AAAAAA and an estimated background color of #FFFFFF. "
                 "Consider increasing this item's text contrast ratio to 4.50 or greater."}};
    } else {
      const Rect note{40, y + 70, 600, y + 150};
      children += node_xml("android.widget.TextView", rid("note_" + std::to_string(row)),
                           "Note " + tag, "", false, note);
      record = {{"type", "Text scaling"},
                {"bounds", format_bounds(note)},
                {"description", "Text size is specified in px and will not scale."}};
    }
    rows += node_xml("android.widget.LinearLayout", rid("row_" + std::to_string(row)), "", "",
                     false, row_rect, children);
    records.push_back(std::move(record));
  }

  s.hierarchy_xml =
      "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n<hierarchy rotation=\"0\">\n" +
      node_xml("android.widget.FrameLayout", "", "", "", false, {0, 0, kWidth, kHeight}, rows) +
      "</hierarchy>\n";
  s.scan_json = json{{"screen_id", s.screen_id},
                     {"display", {{"density", 2.625}, {"width_px", kWidth}, {"height_px", kHeight}}},
                     {"violations", records}}
                    .dump(2);
  return s;
}

FixtureSet write_fixture_set(const fs::path& dir, int screens, int violations_per_screen,
                             int other_total) {
  FixtureSet set;
  fs::create_directories(dir);
  json manifest{{"screens", json::array()}};
  for (int i = 0; i < screens; ++i) {
    const int other = i < other_total ? 1 : 0;
    SyntheticScreen s = make_screen(i, violations_per_screen, other);
    const fs::path base = dir / s.screen_id;
    std::ofstream(base.string() + ".json") << s.scan_json;
    std::ofstream(base.string() + ".xml") << s.hierarchy_xml;
    write_png(base.string() + ".png", s.screenshot);
    manifest["screens"].push_back({{"scan", s.screen_id + ".json"},
                                   {"hierarchy", s.screen_id + ".xml"},
                                   {"screenshot", s.screen_id + ".png"}});
    set.hierarchies[s.screen_id] = parse_view_hierarchy(s.hierarchy_xml);
    set.violations += violations_per_screen + other;
  }
  set.manifest = dir / "manifest.json";
  std::ofstream(set.manifest) << manifest.dump(2);
  return set;
}

int generate_into(const fs::path& manifest, const fs::path& out_dir,
                  const std::vector<std::string>& extra_args) {
  std::vector<std::string> args{"hear",       "-q",    "generate", "--manifest",
                                manifest.string(), "--out", out_dir.string()};
  args.insert(args.end(), extra_args.begin(), extra_args.end());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::vector<HearReport> load_reports(const fs::path& out_dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(out_dir)) {
    if (e.path().filename().string().ends_with(".report.json")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<HearReport> out;
  for (const auto& f : files) out.push_back(report_from_json(json::parse(slurp(f))));
  return out;
}

std::string_view to_string(Mutation m) {
  switch (m) {
    case Mutation::PhantomQuote: return "phantom-quote";
    case Mutation::ShiftBounds: return "shift-bounds";
    case Mutation::RelabelImage: return "relabel-image";
  }
  return "?";
}

Mutation mutation_for(const HearReport& report, std::size_t index) {
  if (std::holds_alternative<ContentLabeling>(report.violation.category)) {
    return Mutation::RelabelImage;
  }
  return index % 2 == 0 ? Mutation::PhantomQuote : Mutation::ShiftBounds;
}

HearReport mutate(HearReport report, Mutation m, std::size_t index) {
  std::string& text = report.layers[0].text;
  switch (m) {
    case Mutation::PhantomQuote:
      text += fmt::format(" Next to it the screen shows \"Phantom offer {}\".", index);
      break;
    case Mutation::ShiftBounds:
      report.violation.bounds = kEmptyRegion;
      break;
    case Mutation::RelabelImage: {
      const auto pos = text.find("an image");
      if (pos == std::string::npos) throw std::logic_error("no image attribution to relabel");
      text.replace(pos, 8, "a button");
      break;
    }
  }
  return report;
}

}  // namespace hear::testing
