#include "hear/cli.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using namespace hear;
using hear::testing::fixture_dir;
using hear::testing::scratch_dir;
using hear::testing::slurp;
using json = nlohmann::json;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), {"hear", "-q"});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> follow_args(const std::filesystem::path& out, const std::string& scan = "scan.json") {
  const auto dir = fixture_dir() / "follow_button";
  return {"generate",     "--scan",       (dir / scan).string(),
          "--hierarchy",  (dir / "hierarchy.xml").string(),
          "--screenshot", (dir / "screenshot.png").string(),
          "--out",        out.string()};
}

std::size_t count_suffix(const std::filesystem::path& dir, const std::string& suffix) {
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().filename().string().ends_with(suffix)) ++n;
  }
  return n;
}

}  // namespace

TEST(Generate, FollowBundle) {
  const auto out = scratch_dir("cli-follow");
  EXPECT_EQ(run(follow_args(out)), cli::kExitOk);
  EXPECT_EQ(count_suffix(out, ".md"), 1u);
  EXPECT_EQ(count_suffix(out, "_crop.png"), 1u);
  const auto index = json::parse(slurp(out / "index.json"));
  EXPECT_EQ(index["reports"].size(), 1u);
  EXPECT_TRUE(json::parse(slurp(out / "skipped.json")).empty());
}

TEST(Generate, LenientScanProducesSameNarrative) {
  const auto a = scratch_dir("cli-json");
  const auto b = scratch_dir("cli-text");
  auto args_a = follow_args(a);
  auto args_b = follow_args(b, "scan.txt");
  for (auto* args : {&args_a, &args_b}) {
    args->insert(args->end(), {"--persona-policy", "named:Ichiro", "--screen-id", "social_profile"});
  }
  ASSERT_EQ(run(args_a), 0);
  ASSERT_EQ(run(args_b), 0);
  const auto ra = hear::testing::load_reports(a).at(0);
  const auto rb = hear::testing::load_reports(b).at(0);
  EXPECT_EQ(ra.layers[0].text, rb.layers[0].text);
  EXPECT_EQ(ra.violation.id, rb.violation.id);
}

TEST(Generate, UnknownJurisdictionIsKbGap) {
  const auto out = scratch_dir("cli-xx");
  auto args = follow_args(out);
  args.insert(args.end(), {"--jurisdiction", "XX"});
  EXPECT_EQ(run(args), cli::kExitKbGap);
  EXPECT_EQ(count_suffix(out, ".md"), 0u);
}

TEST(Generate, InputErrors) {
  const auto out = scratch_dir("cli-bad");
  auto args = follow_args(out);
  args[2] = "/nonexistent/scan.json";
  EXPECT_EQ(run(args), cli::kExitInput);
  EXPECT_EQ(run({"generate", "--out", out.string()}), cli::kExitInput);
  EXPECT_EQ(run({"frobnicate"}), cli::kExitInput);
  auto bad_personas = follow_args(out);
  bad_personas.insert(bad_personas.end(), {"--personas", (fixture_dir() / "follow_button/scan.json").string()});
  EXPECT_EQ(run(bad_personas), cli::kExitInput);
}

TEST(Generate, LiveProviderWithoutCredential) {
  const auto out = scratch_dir("cli-live");
  auto args = follow_args(out);
  args.insert(args.end(), {"--provider", "live", "--api-key-env", "HEAR_TEST_SURELY_UNSET"});
  EXPECT_EQ(run(args), cli::kExitProvider);
}

TEST(Generate, ConfigFileAndFlagPrecedence) {
  const auto out = scratch_dir("cli-config");
  const auto cfg = out / "hear.toml";
  std::ofstream(cfg) << "[generate]\njurisdiction = \"EU\"\npersona-policy = \"first\"\n";
  auto args = follow_args(out / "r1");
  args.insert(args.begin(), {"--config", cfg.string()});
  ASSERT_EQ(run(args), 0);
  EXPECT_EQ(hear::testing::load_reports(out / "r1").at(0).jurisdiction, "EU");

  auto flagged = follow_args(out / "r2");
  flagged.insert(flagged.begin(), {"--config", cfg.string()});
  flagged.insert(flagged.end(), {"--jurisdiction", "US"});
  ASSERT_EQ(run(flagged), 0);
  EXPECT_EQ(hear::testing::load_reports(out / "r2").at(0).jurisdiction, "US");
}

TEST(Audit, WorksheetAnnotationsAndErrors) {
  const auto out = scratch_dir("cli-audit");
  ASSERT_EQ(run(follow_args(out)), 0);
  const auto hierarchy = (fixture_dir() / "follow_button/hierarchy.xml").string();
  ASSERT_EQ(run({"audit", "--reports", out.string(), "--hierarchy", hierarchy}), 0);
  auto sheet = json::parse(slurp(out / "audit_worksheet.json"));
  ASSERT_EQ(sheet.size(), 1u);
  EXPECT_EQ(sheet[0]["functional_logic"]["result"], "pending");
  const std::string id = sheet[0]["violation_id"];

  EXPECT_EQ(run({"audit", "--reports", out.string(), "--annotate", id, "pass", "--by", "kim"}), 0);
  EXPECT_EQ(run({"audit", "--reports", out.string(), "--annotate", id, "fail", "--by", "kim"}),
            cli::kExitInput);
  // Re-running the automated checks keeps the annotation.
  ASSERT_EQ(run({"audit", "--reports", out.string(), "--hierarchy", hierarchy}), 0);
  sheet = json::parse(slurp(out / "audit_worksheet.json"));
  EXPECT_EQ(sheet[0]["functional_logic"]["result"], "pass");
  EXPECT_EQ(sheet[0]["functional_logic"]["annotator"], "kim");

  EXPECT_EQ(run({"audit", "--reports", (out / "missing").string(), "--hierarchy", hierarchy}),
            cli::kExitInput);
}

TEST(Audit, MutatedReportIsAFindingNotAnError) {
  const auto out = scratch_dir("cli-audit-mut");
  ASSERT_EQ(run(follow_args(out)), 0);
  for (const auto& e : std::filesystem::directory_iterator(out)) {
    if (!e.path().filename().string().ends_with(".report.json")) continue;
    auto j = json::parse(slurp(e.path()));
    auto r = report_from_json(j);
    r.layers[0].text += " It reads \"Unfollow\".";
    std::ofstream(e.path()) << report_to_json(r).dump();
  }
  const auto hierarchy = (fixture_dir() / "follow_button/hierarchy.xml").string();
  EXPECT_EQ(run({"audit", "--reports", out.string(), "--hierarchy", hierarchy}), 0);
  const auto summary = json::parse(slurp(out / "audit_summary.json"));
  EXPECT_EQ(summary["textual_fidelity_failures"], 1);
}

TEST(Listing, PersonasAndKb) {
  std::ostringstream os;
  EXPECT_EQ(cli::run_personas_list(hear::testing::data_dir() / "personas.json", os), 0);
  EXPECT_NE(os.str().find("Ichiro"), std::string::npos);
  EXPECT_NE(os.str().find("TouchTargetSize"), std::string::npos);

  const auto dir = scratch_dir("cli-kb");
  std::ofstream(dir / "empty.json") << "";
  std::ostringstream kb;
  EXPECT_EQ(cli::run_kb_list(dir / "empty.json", kb), 0);
  std::ofstream(dir / "bad.json") << "{\"personas\": 3}";
  std::ostringstream bad;
  EXPECT_EQ(cli::run_personas_list(dir / "bad.json", bad), cli::kExitInput);
  EXPECT_EQ(run({"kb", "list", "--data", (dir / "nope.json").string()}), cli::kExitInput);
}
