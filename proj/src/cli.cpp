#include "hear/cli.hpp"

#include "hear/audit.hpp"
#include "hear/context.hpp"
#include "hear/error.hpp"
#include "hear/hierarchy.hpp"
#include "hear/legal.hpp"
#include "hear/report.hpp"
#include "hear/scanner.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#ifndef HEAR_DEFAULT_DATA_DIR
#define HEAR_DEFAULT_DATA_DIR "data"
#endif

namespace hear::cli {

using json = nlohmann::json;

namespace {

std::shared_ptr<spdlog::logger> logger() {
  static auto log = [] {
    auto l = spdlog::stderr_color_mt("hear");
    l->set_pattern("[%Y-%m-%dT%H:%M:%S] [%l] %v");
    return l;
  }();
  return log;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write {}", path.string()));
}

bool looks_like_json(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string_view::npos && text[pos] == '{';
}

// Everything needed to generate one report, resolved before any model call.
struct Job {
  RawViolation violation;
  GroundedContext context;
  Persona persona;
  std::vector<LegalClause> clauses;
  std::string jurisdiction;
};

struct Skipped {
  std::string violation_id;
  std::string screen_id;
  std::string category;
  std::string reason;
};

struct Failure {
  std::string violation_id;
  std::string screen_id;
  std::string error;
  int exit_code;
};

json index_entry(const HearReport& r) {
  return json{{"violation_id", r.violation.id},
              {"screen_id", r.violation.screen_id},
              {"category", category_name(r.violation.category)},
              {"bounds", format_bounds(r.violation.bounds)},
              {"persona", r.persona.name},
              {"jurisdiction", r.jurisdiction},
              {"markdown", r.violation.id + ".md"},
              {"report", r.violation.id + ".report.json"},
              {"crop", r.crop_file}};
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += (i + 1 == row.size()) ? row[i] : pad(row[i], widths[i]) + "  ";
    }
    out << line << '\n';
  }
}

std::map<std::string, ViewNode> load_hierarchies(const std::vector<std::string>& specs) {
  std::map<std::string, ViewNode> out;
  for (const auto& spec : specs) {
    std::string key = "*";
    std::string path = spec;
    if (const auto eq = spec.find('='); eq != std::string::npos && !fs::exists(spec)) {
      key = spec.substr(0, eq);
      path = spec.substr(eq + 1);
    }
    out[key] = parse_view_hierarchy(read_text(path));
  }
  return out;
}

}  // namespace

fs::path default_data_dir() {
  if (const char* env = std::getenv("HEAR_DATA_DIR"); env && *env) return env;
  return HEAR_DEFAULT_DATA_DIR;
}

std::vector<ScreenInput> load_manifest(const fs::path& manifest) {
  json doc;
  try {
    doc = json::parse(read_text(manifest));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, fmt::format("manifest: {}", e.what()));
  }
  const json& screens = doc.is_array() ? doc : doc.value("screens", json::array());
  if (!screens.is_array() || screens.empty()) {
    throw Error(ErrorCode::SchemaError, "manifest lists no screens");
  }
  const fs::path base = manifest.parent_path();
  std::vector<ScreenInput> out;
  for (std::size_t i = 0; i < screens.size(); ++i) {
    const auto& s = screens[i];
    try {
      ScreenInput in;
      in.scan_path = base / s.at("scan").get<std::string>();
      in.hierarchy_path = base / s.at("hierarchy").get<std::string>();
      in.screenshot_path = base / s.at("screenshot").get<std::string>();
      in.screen_id = s.value("screen_id", std::string{});
      out.push_back(std::move(in));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SchemaError, fmt::format("manifest: {}", e.what()), i);
    }
  }
  return out;
}

GenerateOutcome run_generate(const RunConfig& cfg) {
  auto log = logger();
  GenerateOutcome outcome;
  auto input_error = [&](const std::string& message) {
    log->error("{}", message);
    outcome.exit_code = kExitInput;
    outcome.errors.push_back(message);
    return outcome;
  };

  if (cfg.screens.empty()) return input_error("no input screens");
  for (const auto& s : cfg.screens) {
    for (const auto* p : {&s.scan_path, &s.hierarchy_path, &s.screenshot_path}) {
      std::ifstream probe(*p);
      if (!probe) return input_error(fmt::format("cannot read {}", p->string()));
    }
  }
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec || !fs::is_directory(cfg.out_dir)) {
    return input_error(fmt::format("cannot create output directory {}", cfg.out_dir.string()));
  }

  PersonaRegistry registry;
  LegalKb kb;
  std::vector<Job> jobs;
  std::vector<Skipped> skipped;
  std::vector<Failure> failures;
  std::size_t total = 0;

  try {
    registry = load_registry(read_text(cfg.personas_path));
    kb = load_legal_kb(read_text(cfg.kb_path));

    IngestOptions ingest;
    ingest.density_override = cfg.density;
    for (const auto& screen : cfg.screens) {
      const std::string scan_text = read_text(screen.scan_path);
      const ViewNode root = parse_view_hierarchy(read_text(screen.hierarchy_path));
      const Image screenshot = read_png(screen.screenshot_path);

      ScannerDocument doc;
      if (looks_like_json(scan_text)) {
        doc = parse_scanner_document(scan_text, ingest);
      } else {
        DisplayProfile profile;
        profile.density = kDefaultDensity;
        profile.screen_width_px = screenshot.width();
        profile.screen_height_px = screenshot.height();
        const std::string id =
            screen.screen_id.empty() ? screen.scan_path.stem().string() : screen.screen_id;
        doc = parse_lenient_scanner(scan_text, profile, id, ingest);
      }
      log->info("screen={} violations={}", doc.screen_id, doc.violations.size());
      total += doc.violations.size();

      for (const auto& v : doc.violations) {
        if (!is_matchable(v.category)) {
          skipped.push_back({v.id, v.screen_id, category_name(v.category),
                             "category is not persona-matchable"});
          log->info("violation={} skipped category={}", v.id, category_name(v.category));
          continue;
        }
        Job job;
        job.violation = v;
        job.context = ground_violation(root, screenshot, v, doc.profile);
        job.persona = select_persona(match_personas(registry, v.category), v.id, cfg.persona_policy);
        job.jurisdiction = resolve_jurisdiction(cfg.jurisdiction, job.persona.loc);
        try {
          job.clauses =
              retrieve_clauses(kb.clauses, job.jurisdiction, map_category_to_criteria(v.category));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoApplicableClause) throw;
          log->error("violation={} {}", v.id, e.what());
          failures.push_back({v.id, v.screen_id, e.what(), kExitKbGap});
          continue;
        }
        jobs.push_back(std::move(job));
      }
    }
  } catch (const Error& e) {
    return input_error(e.what());
  }

  std::unique_ptr<ModelProvider> provider;
  if (!jobs.empty()) {
    try {
      provider = make_provider(cfg.provider, cfg.provider_config);
    } catch (const Error& e) {
      log->error("{}", e.what());
      outcome.exit_code = kExitProvider;
      outcome.errors.push_back(e.what());
      return outcome;
    }
  }

  GenerateOptions options;
  options.known_instruments = kb.instruments();
  options.criterion_titles = kb.criterion_titles;
  options.clock = cfg.clock;
  options.sleep = cfg.sleep;

  std::vector<std::optional<HearReport>> results(jobs.size());
  std::mutex failures_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      GenerateOptions local = options;
      local.jurisdiction = job.jurisdiction;
      try {
        HearReport report = generate_report(job.violation, job.context, job.persona, job.clauses,
                                            cfg.provider_config, *provider, local);
        const fs::path stem = cfg.out_dir / job.violation.id;
        write_png(cfg.out_dir / report.crop_file, *job.context.crop_image);
        write_text(fs::path(stem.string() + ".md"), report.assembled_markdown);
        write_text(fs::path(stem.string() + ".report.json"), report_to_json(report).dump(2) + "\n");
        if (cfg.keep_prompts) {
          write_text(fs::path(stem.string() + ".prompts.json"),
                     prompts_to_json(report.prompts).dump(2) + "\n");
        }
        log->info("violation={} persona={} report written", job.violation.id, job.persona.name);
        results[i] = std::move(report);
      } catch (const Error& e) {
        log->error("violation={} {}", job.violation.id, e.what());
        const int code = e.code() == ErrorCode::IoError ? kExitInput : kExitProvider;
        std::lock_guard lock(failures_mutex);
        failures.push_back({job.violation.id, job.violation.screen_id, e.what(), code});
      }
    }
  };
  {
    const int n = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(jobs.size())));
    std::vector<std::jthread> pool;
    for (int t = 0; t < n && !jobs.empty(); ++t) pool.emplace_back(worker);
  }

  std::vector<const HearReport*> done;
  for (const auto& r : results) {
    if (r) done.push_back(&*r);
  }
  std::sort(done.begin(), done.end(),
            [](const auto* a, const auto* b) { return a->violation.id < b->violation.id; });
  std::sort(failures.begin(), failures.end(),
            [](const auto& a, const auto& b) { return a.violation_id < b.violation_id; });

  json skipped_json = json::array();
  for (const auto& s : skipped) {
    skipped_json.push_back(json{{"violation_id", s.violation_id},
                                {"screen_id", s.screen_id},
                                {"category", s.category},
                                {"reason", s.reason}});
  }
  json index{{"reports", json::array()}, {"failed", json::array()}};
  for (const auto* r : done) index["reports"].push_back(index_entry(*r));
  for (const auto& f : failures) {
    index["failed"].push_back(
        json{{"violation_id", f.violation_id}, {"screen_id", f.screen_id}, {"error", f.error}});
  }
  index["skipped"] = skipped.size();
  index["total_violations"] = total;
  try {
    write_text(cfg.out_dir / "skipped.json", skipped_json.dump(2) + "\n");
    write_text(cfg.out_dir / "index.json", index.dump(2) + "\n");
  } catch (const Error& e) {
    return input_error(e.what());
  }

  outcome.reports = done.size();
  outcome.skipped = skipped.size();
  outcome.failed = failures.size();
  for (const auto& f : failures) outcome.errors.push_back(f.error);
  const bool kb_gap = std::any_of(failures.begin(), failures.end(),
                                  [](const auto& f) { return f.exit_code == kExitKbGap; });
  const bool io = std::any_of(failures.begin(), failures.end(),
                              [](const auto& f) { return f.exit_code == kExitInput; });
  if (io) outcome.exit_code = kExitInput;
  else if (kb_gap) outcome.exit_code = kExitKbGap;
  else if (!failures.empty()) outcome.exit_code = kExitProvider;
  log->info("reports={} skipped={} failed={} exit={}", outcome.reports, outcome.skipped,
            outcome.failed, outcome.exit_code);
  return outcome;
}

int run_audit(const AuditConfig& cfg, std::ostream& out) {
  auto log = logger();
  if (!fs::is_directory(cfg.reports_dir)) {
    log->error("reports directory {} does not exist", cfg.reports_dir.string());
    return kExitInput;
  }
  const fs::path worksheet_path = cfg.reports_dir / "audit_worksheet.json";

  try {
    if (cfg.annotate_id) {
      if (!fs::exists(worksheet_path)) {
        log->error("no worksheet at {}; run `hear audit` first", worksheet_path.string());
        return kExitInput;
      }
      json sheet = json::parse(read_text(worksheet_path));
      const Outcome decision = outcome_from_string(cfg.annotate_decision.value_or(""));
      bool found = false;
      std::vector<AuditVerdict> verdicts;
      for (auto& record : sheet) {
        AuditVerdict v = verdict_from_json(record);
        if (v.violation_id == *cfg.annotate_id) {
          v = record_functional_logic(v, decision, cfg.annotator);
          record = verdict_to_json(v);
          found = true;
        }
        verdicts.push_back(std::move(v));
      }
      if (!found) {
        log->error("violation {} is not in the worksheet", *cfg.annotate_id);
        return kExitInput;
      }
      write_text(worksheet_path, sheet.dump(2) + "\n");
      write_text(cfg.reports_dir / "audit_summary.json",
                 summary_to_json(summarize(verdicts)).dump(2) + "\n");
      out << fmt::format("{}: functional_logic={} by {}\n", *cfg.annotate_id,
                         to_string(decision), cfg.annotator);
      return kExitOk;
    }

    if (cfg.hierarchies.empty()) {
      log->error("--hierarchy is required");
      return kExitInput;
    }
    const auto hierarchies = load_hierarchies(cfg.hierarchies);

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cfg.reports_dir)) {
      const auto name = entry.path().filename().string();
      if (name.ends_with(".report.json")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<HearReport> reports;
    for (const auto& f : files) reports.push_back(report_from_json(json::parse(read_text(f))));

    AuditBatch batch = audit_batch(reports, hierarchies);

    // Keep annotations from an earlier worksheet.
    if (fs::exists(worksheet_path)) {
      std::map<std::string, AuditVerdict> previous;
      for (const auto& record : json::parse(read_text(worksheet_path))) {
        auto v = verdict_from_json(record);
        previous.emplace(v.violation_id, v);
      }
      for (auto& v : batch.verdicts) {
        auto it = previous.find(v.violation_id);
        if (it != previous.end() && it->second.functional_logic != Outcome::Pending) {
          v.functional_logic = it->second.functional_logic;
          v.annotator = it->second.annotator;
          v.recompute();
        }
      }
      batch.summary = summarize(batch.verdicts);
    }

    json sheet = json::array();
    for (const auto& v : batch.verdicts) sheet.push_back(verdict_to_json(v));
    write_text(worksheet_path, sheet.dump(2) + "\n");
    write_text(cfg.reports_dir / "audit_summary.json", summary_to_json(batch.summary).dump(2) + "\n");

    const auto& s = batch.summary;
    out << fmt::format(
        "reports: {}\nvisual_grounding failures: {}\ntextual_fidelity failures: {}\n"
        "functional_logic pending/pass/fail: {}/{}/{}\nhallucinations: {}\n",
        s.reports, s.visual_grounding_failures, s.textual_fidelity_failures, s.functional_pending,
        s.functional_pass, s.functional_fail, s.hallucinations);
    for (const auto& v : batch.verdicts) {
      if (v.visual_grounding.outcome == Outcome::Fail) {
        out << fmt::format("  {} visual_grounding: {}\n", v.violation_id, v.visual_grounding.evidence);
      }
      if (v.textual_fidelity.outcome == Outcome::Fail) {
        out << fmt::format("  {} textual_fidelity: {}\n", v.violation_id,
                           fmt::join(v.textual_fidelity.offending_quotes, " | "));
      }
    }
    return kExitOk;
  } catch (const Error& e) {
    log->error("{}", e.what());
    return kExitInput;
  } catch (const json::exception& e) {
    log->error("{}", e.what());
    return kExitInput;
  }
}

int run_personas_list(const fs::path& data, std::ostream& out) {
  PersonaRegistry registry;
  try {
    registry = load_registry(read_text(data));
  } catch (const Error& e) {
    logger()->error("{}", e.what());
    return kExitInput;
  }
  std::vector<std::vector<std::string>> rows{{"NAME", "AGE", "LOC", "CONDITION", "WCAG"}};
  for (const auto& p : registry.entries) {
    rows.push_back({p.name, std::to_string(p.age), p.loc, p.condition,
                    fmt::format("{}", fmt::join(p.wcag_criteria, ","))});
  }
  print_table(out, rows);

  out << "\nCoverage (category x persona):\n";
  std::vector<std::vector<std::string>> matrix;
  std::vector<std::string> header{"CATEGORY"};
  for (const auto& p : registry.entries) header.push_back(p.name);
  header.push_back("COUNT");
  matrix.push_back(header);
  for (const auto& [category, names] : registry.mapping) {
    std::vector<std::string> row{category};
    for (const auto& p : registry.entries) {
      row.push_back(std::find(names.begin(), names.end(), p.name) != names.end() ? "x" : ".");
    }
    row.push_back(std::to_string(names.size()));
    matrix.push_back(std::move(row));
  }
  print_table(out, matrix);
  return kExitOk;
}

int run_kb_list(const fs::path& data, std::ostream& out) {
  LegalKb kb;
  try {
    kb = load_legal_kb(read_text(data));
  } catch (const Error& e) {
    logger()->error("{}", e.what());
    return kExitInput;
  }
  std::vector<std::vector<std::string>> rows{{"JUR", "INSTRUMENT", "CLAUSE", "WCAG"}};
  for (const auto& c : kb.clauses) {
    rows.push_back({c.jurisdiction, c.instrument, c.clause_id,
                    fmt::format("{}", fmt::join(c.wcag_criteria, ","))});
  }
  print_table(out, rows);

  std::set<std::string> jurisdictions;
  std::set<std::string> criteria;
  for (const auto& c : kb.clauses) {
    jurisdictions.insert(c.jurisdiction);
    criteria.insert(c.wcag_criteria.begin(), c.wcag_criteria.end());
  }
  out << "\nCoverage (jurisdiction x criterion, clause counts):\n";
  std::vector<std::vector<std::string>> matrix;
  std::vector<std::string> header{"JUR"};
  header.insert(header.end(), criteria.begin(), criteria.end());
  matrix.push_back(header);
  for (const auto& j : jurisdictions) {
    std::vector<std::string> row{j};
    for (const auto& id : criteria) {
      const auto n = std::count_if(kb.clauses.begin(), kb.clauses.end(), [&](const auto& c) {
        return c.jurisdiction == j &&
               std::find(c.wcag_criteria.begin(), c.wcag_criteria.end(), id) != c.wcag_criteria.end();
      });
      row.push_back(std::to_string(n));
    }
    matrix.push_back(std::move(row));
  }
  print_table(out, matrix);
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"hear: persona-driven, legally grounded accessibility bug reports"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML config file");
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress logging");

  const fs::path data_dir = default_data_dir();

  // generate
  auto* gen = app.add_subcommand("generate", "Generate narrative reports for a scan");
  std::string scan, hierarchy, screenshot, manifest, out_dir, screen_id;
  std::string jurisdiction, provider = "mock", policy = "deterministic";
  std::optional<double> density;
  int jobs = 4;
  bool keep_prompts = false;
  std::string personas_path = (data_dir / "personas.json").string();
  std::string kb_path = (data_dir / "legal_kb.json").string();
  ProviderConfig pc;
  double timeout_s = 60.0;
  gen->add_option("--scan", scan, "Scanner output (JSON or line-oriented text)");
  gen->add_option("--hierarchy", hierarchy, "uiautomator XML dump");
  gen->add_option("--screenshot", screenshot, "Screenshot PNG");
  gen->add_option("--manifest", manifest, "JSON manifest listing (scan, hierarchy, screenshot) triples");
  gen->add_option("--screen-id", screen_id, "Screen id for line-oriented scans");
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_option("--jurisdiction", jurisdiction, "Jurisdiction code; overrides persona location");
  gen->add_option("--provider", provider, "mock or live")->check(CLI::IsMember({"mock", "live"}));
  gen->add_option("--persona-policy", policy, "deterministic | first | named:NAME");
  gen->add_option("--density", density, "Pixels per dp; overrides the scan document");
  gen->add_option("--jobs", jobs, "Concurrent reports in flight")->check(CLI::PositiveNumber);
  gen->add_option("--personas", personas_path, "Persona registry JSON");
  gen->add_option("--kb", kb_path, "Legal knowledge base JSON");
  gen->add_flag("--keep-prompts", keep_prompts, "Write <id>.prompts.json next to each report");
  gen->add_option("--endpoint", pc.endpoint, "Chat-completion endpoint URL");
  gen->add_option("--model", pc.model_name, "Model name");
  gen->add_option("--temperature", pc.temperature, "Sampling temperature");
  gen->add_option("--max-retries", pc.max_retries, "Retries per layer")->check(CLI::NonNegativeNumber);
  gen->add_option("--timeout", timeout_s, "Per-call timeout in seconds")->check(CLI::PositiveNumber);
  gen->add_option("--api-key-env", pc.api_key_env, "Environment variable holding the API key");

  // audit
  auto* aud = app.add_subcommand("audit", "Audit generated reports against the view hierarchy");
  AuditConfig audit_cfg;
  std::string reports_dir;
  std::vector<std::string> annotate;
  aud->add_option("--reports", reports_dir, "Directory of generated reports")->required();
  aud->add_option("--hierarchy", audit_cfg.hierarchies, "XML dump, or screen_id=PATH (repeatable)");
  aud->add_option("--annotate", annotate, "ID pass|fail: record a functional-logic judgement")
      ->expected(2);
  aud->add_option("--by", audit_cfg.annotator, "Annotator name");

  // personas / kb
  auto* personas = app.add_subcommand("personas", "Persona registry");
  personas->require_subcommand(1);
  auto* personas_list = personas->add_subcommand("list", "List personas and coverage");
  std::string personas_data = (data_dir / "personas.json").string();
  personas_list->add_option("--data", personas_data, "Persona registry JSON");

  auto* kb = app.add_subcommand("kb", "Legal knowledge base");
  kb->require_subcommand(1);
  auto* kb_list = kb->add_subcommand("list", "List clauses and coverage");
  std::string kb_data = (data_dir / "legal_kb.json").string();
  kb_list->add_option("--data", kb_data, "Legal KB JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  logger()->set_level(quiet ? spdlog::level::off : spdlog::level::info);

  if (gen->parsed()) {
    RunConfig cfg;
    try {
      if (!manifest.empty()) {
        cfg.screens = load_manifest(manifest);
      } else {
        if (scan.empty() || hierarchy.empty() || screenshot.empty()) {
          logger()->error("--scan, --hierarchy and --screenshot are required without --manifest");
          return kExitInput;
        }
        cfg.screens.push_back({scan, hierarchy, screenshot, screen_id});
      }
      cfg.persona_policy = parse_selection_policy(policy);
    } catch (const Error& e) {
      logger()->error("{}", e.what());
      return kExitInput;
    }
    cfg.out_dir = out_dir;
    if (!jurisdiction.empty()) cfg.jurisdiction = jurisdiction;
    cfg.provider = provider == "live" ? ProviderKind::Live : ProviderKind::Mock;
    pc.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_s * 1000));
    cfg.provider_config = pc;
    cfg.density = density;
    cfg.jobs = jobs;
    cfg.personas_path = personas_path;
    cfg.kb_path = kb_path;
    cfg.keep_prompts = keep_prompts;
    return run_generate(cfg).exit_code;
  }
  if (aud->parsed()) {
    audit_cfg.reports_dir = reports_dir;
    if (!annotate.empty()) {
      audit_cfg.annotate_id = annotate.at(0);
      audit_cfg.annotate_decision = annotate.at(1);
      if (audit_cfg.annotator.empty()) {
        logger()->error("--annotate requires --by NAME");
        return kExitInput;
      }
    }
    return run_audit(audit_cfg, std::cout);
  }
  if (personas_list->parsed()) return run_personas_list(personas_data, std::cout);
  if (kb_list->parsed()) return run_kb_list(kb_data, std::cout);
  return kExitInput;
}

}  // namespace hear::cli
