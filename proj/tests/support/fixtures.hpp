#pragma once

// Synthetic screens and report batches shared by the unit and acceptance tests.

#include "hear/hierarchy.hpp"
#include "hear/image.hpp"
#include "hear/legal.hpp"
#include "hear/persona.hpp"
#include "hear/context.hpp"
#include "hear/report.hpp"
#include "hear/scanner.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hear::testing {

namespace fs = std::filesystem;

fs::path fixture_dir();
fs::path data_dir();
std::string slurp(const fs::path& path);

PersonaRegistry bundled_registry();
LegalKb bundled_kb();

/// The Follow-button screen, grounded, with Ichiro and the JP clauses.
struct FollowCase {
  RawViolation violation;
  ViewNode root;
  GroundedContext context;
  Persona persona;
  std::vector<LegalClause> clauses;
  LegalKb kb;
};

FollowCase follow_case();

/// Fresh empty directory under the system temp dir.
fs::path scratch_dir(const std::string& name);

/// Region of every synthetic screen covered only by the root layout.
inline constexpr Rect kEmptyRegion{40, 40, 200, 140};

struct SyntheticScreen {
  std::string screen_id;
  std::string scan_json;
  std::string hierarchy_xml;
  Image screenshot;
};

/// Rows cycle through touch-target, content-labeling and contrast findings;
/// `other` extra rows carry a finding no persona can match.
SyntheticScreen make_screen(int index, int violations, int other = 0);

struct FixtureSet {
  fs::path manifest;
  std::map<std::string, ViewNode> hierarchies;
  std::size_t violations = 0;
};

/// Writes `screens` synthetic screens and a manifest into `dir`. The first
/// `other_total` screens get one Other-category finding each.
FixtureSet write_fixture_set(const fs::path& dir, int screens, int violations_per_screen,
                             int other_total = 0);

/// Runs the generate command in-process with the mock provider.
int generate_into(const fs::path& manifest, const fs::path& out_dir,
                  const std::vector<std::string>& extra_args = {});

std::vector<HearReport> load_reports(const fs::path& out_dir);

enum class Mutation { PhantomQuote, ShiftBounds, RelabelImage };

std::string_view to_string(Mutation m);

/// RelabelImage for reports on image targets, otherwise alternates the others.
Mutation mutation_for(const HearReport& report, std::size_t index);
HearReport mutate(HearReport report, Mutation m, std::size_t index);

}  // namespace hear::testing
