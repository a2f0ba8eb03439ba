#pragma once

#include "hear/persona.hpp"
#include "hear/provider.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hear::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitProvider = 3;
inline constexpr int kExitKbGap = 4;

/// One screen: scanner output, its view hierarchy and screenshot.
struct ScreenInput {
  fs::path scan_path;
  fs::path hierarchy_path;
  fs::path screenshot_path;
  /// Screen id for line-oriented scans; defaults to the scan file's stem.
  std::string screen_id;
};

struct RunConfig {
  std::vector<ScreenInput> screens;
  fs::path out_dir;
  std::optional<std::string> jurisdiction;
  SelectionPolicy persona_policy = DeterministicPolicy{};
  ProviderKind provider = ProviderKind::Mock;
  ProviderConfig provider_config;
  std::optional<double> density;
  int jobs = 4;
  fs::path personas_path;
  fs::path kb_path;
  bool keep_prompts = false;
  /// Test hooks.
  std::function<std::string()> clock;
  Sleeper sleep;
};

struct GenerateOutcome {
  int exit_code = kExitOk;
  std::size_t reports = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::vector<std::string> errors;
};

/// Directory holding the bundled personas.json and legal_kb.json.
fs::path default_data_dir();

/// Reads a manifest (`{"screens": [{scan, hierarchy, screenshot}]}` or a bare
/// array), resolving paths relative to the manifest. Throws SchemaError.
std::vector<ScreenInput> load_manifest(const fs::path& manifest);

GenerateOutcome run_generate(const RunConfig& cfg);

struct AuditConfig {
  fs::path reports_dir;
  /// "path" (any screen) or "screen_id=path".
  std::vector<std::string> hierarchies;
  std::optional<std::string> annotate_id;
  std::optional<std::string> annotate_decision;
  std::string annotator;
};

int run_audit(const AuditConfig& cfg, std::ostream& out);

int run_personas_list(const fs::path& data, std::ostream& out);
int run_kb_list(const fs::path& data, std::ostream& out);

/// Entry point shared by the `hear` binary and the integration tests.
int run(int argc, const char* const* argv);

}  // namespace hear::cli
