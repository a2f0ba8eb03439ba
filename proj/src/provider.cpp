#include "hear/provider.hpp"

#include "hear/digest.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <thread>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

std::string str(const json& fields, const char* key, const std::string& fallback = "") {
  if (fields.contains(key) && fields[key].is_string()) return fields[key].get<std::string>();
  if (fields.contains(key) && fields[key].is_number()) return fields[key].dump();
  return fallback;
}

std::string sentence(std::string text) {
  while (!text.empty() && (text.back() == '.' || std::isspace(static_cast<unsigned char>(text.back())))) {
    text.pop_back();
  }
  return text + ".";
}

std::string with_article(const std::string& noun) {
  const bool vowel = !noun.empty() && std::string_view("aeiou").find(noun.front()) != std::string_view::npos;
  return (vowel ? "an " : "a ") + noun;
}

std::string described_target(const json& f, const char* label_verb) {
  std::string out = with_article(str(f, "role", "element"));
  if (f.contains("label")) out += fmt::format(" {} \"{}\"", label_verb, str(f, "label"));
  return out;
}

std::string mock_layer1(const json& f) {
  const json& p = f.at("persona");
  const std::string name = p.at("name");
  const std::string category = str(f, "category");

  std::string text = fmt::format("{} ({}, {}) is living with {}. {} ", name,
                                 p.at("age").get<int>(), p.at("location").get<std::string>(),
                                 p.at("condition").get<std::string>(),
                                 sentence(p.at("constraints").at(0).get<std::string>()));
  if (category == "TouchTargetSize") {
    text += fmt::format(
        "The target element, {}, has a touch target of {}dp, which is smaller than the "
        "recommended {}dp. ",
        described_target(f, "labelled"), str(f, "measured_dp"), str(f, "required_dp"));
  } else if (category == "ContrastRatio") {
    std::string colours;
    if (f.contains("foreground")) {
      colours = fmt::format(" (foreground {} on background {})", str(f, "foreground"),
                            str(f, "background"));
    }
    text += fmt::format(
        "The target element, {}, is rendered at a contrast ratio of {}:1{}, below the required "
        "{}:1. ",
        described_target(f, "showing"), str(f, "contrast_ratio"), colours,
        str(f, "required_contrast", "4.5"));
  } else {
    text += fmt::format(
        "The target element, {} at {}, exposes no accessible name, so a screen reader announces "
        "it only generically or skips it. ",
        with_article(str(f, "role", "element")), str(f, "bounds"));
  }
  text += fmt::format("{} On this screen {} cannot count on perceiving or operating it.",
                      sentence(p.at("logic").get<std::string>()), name);
  return text;
}

std::string mock_layer2(const json& f) {
  std::string text = fmt::format(
      "Because of this barrier, attempts to use the {}",
      str(f, "role", "element"));
  if (f.contains("label")) text += fmt::format(" \"{}\"", str(f, "label"));
  text += " keep failing. ";

  const auto& neighbors = f.value("neighbor_texts", json::array());
  if (neighbors.empty()) {
    text += "No neighboring text labels are available, so nothing nearby explains what the "
            "element is for. ";
  } else {
    std::vector<std::string> quoted;
    for (std::size_t i = 0; i < neighbors.size() && i < 2; ++i) {
      quoted.push_back(fmt::format("\"{}\"", neighbors[i].get<std::string>()));
    }
    text += fmt::format("It is placed beside {}, inside a task the user is in the middle of. ",
                        fmt::join(quoted, " and "));
  }
  if (f.contains("resource_id")) {
    text += fmt::format("Its resource id is {}. ",
                        str(f, "resource_id"));
  }
  text += "Every miss costs effort. After a few, the user is likely to give up on the task, so a "
          "small layout defect ends up blocking the whole flow.";
  return text;
}

std::string mock_layer3(const json& f) {
  const std::string name = f.at("persona").at("name");
  std::string text;
  for (const auto& c : f.at("clauses")) {
    const std::string title = c.value("criterion_title", std::string{});
    text += fmt::format("- {}, {}\n", c.at("instrument").get<std::string>(),
                        c.at("clause_id").get<std::string>());
    text += fmt::format("  - WCAG criterion: {}{}\n", c.at("criterion").get<std::string>(),
                        title.empty() ? "" : " " + title);
    text += fmt::format("  - Requirement: {}\n", c.at("requirement").get<std::string>());
    text += fmt::format("  - Exposure for users like {}: {}\n", name, c.at("risk").get<std::string>());
  }
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) {
    throw Error(ErrorCode::ProviderError, fmt::format("invalid endpoint URL \"{}\"", url));
  }
  return Endpoint{m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

std::string MockProvider::complete(const Prompt& prompt) {
  switch (prompt.layer) {
    case 1: return mock_layer1(prompt.fields);
    case 2: return mock_layer2(prompt.fields);
    case 3: return mock_layer3(prompt.fields);
    default: throw Error(ErrorCode::PreconditionViolation, "prompt layer must be 1, 2 or 3");
  }
}

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::ProviderAuthError,
                fmt::format("credential variable {} is not set", config_.api_key_env));
  }
  api_key_ = key;
}

std::string HttpProvider::request_body(const Prompt& prompt) const {
  json user_content;
  if (prompt.image_png) {
    user_content = json::array(
        {json{{"type", "text"}, {"text", prompt.user_text}},
         json{{"type", "image_url"},
              {"image_url",
               {{"url", "data:image/png;base64," + base64_encode(*prompt.image_png)}}}}});
  } else {
    user_content = prompt.user_text;
  }
  json body{{"model", config_.model_name},
            {"temperature", config_.temperature},
            {"messages",
             json::array({json{{"role", "system"}, {"content", prompt.system_text}},
                          json{{"role", "user"}, {"content", user_content}}})}};
  return body.dump();
}

std::string HttpProvider::complete(const Prompt& prompt) {
  const Endpoint ep = split_endpoint(config_.endpoint);
  httplib::Client client(ep.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
  auto res = client.Post(ep.path, headers, request_body(prompt), "application/json");
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
        err == httplib::Error::Write) {
      throw TransientProviderError(ErrorCode::ProviderTimeout, httplib::to_string(err));
    }
    throw TransientProviderError(ErrorCode::ProviderError, httplib::to_string(err));
  }
  if (res->status == 401 || res->status == 403) {
    throw Error(ErrorCode::ProviderAuthError, fmt::format("HTTP {}", res->status));
  }
  if (res->status == 408) {
    throw TransientProviderError(ErrorCode::ProviderTimeout, "HTTP 408");
  }
  if (res->status == 429 || res->status >= 500) {
    throw TransientProviderError(ErrorCode::ProviderError, fmt::format("HTTP {}", res->status));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::ProviderError, fmt::format("HTTP {}: {}", res->status, res->body));
  }
  try {
    const json reply = json::parse(res->body);
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    return content.is_string() ? content.get<std::string>() : std::string{};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProviderError, fmt::format("unexpected response: {}", e.what()));
  }
}

std::string invoke_model(const Prompt& prompt, ModelProvider& provider, const ProviderConfig& cfg,
                         const Sleeper& sleep) {
  ErrorCode last_code = ErrorCode::EmptyCompletion;
  std::string last_message = "provider returned an empty completion";
  auto delay = cfg.backoff_initial;

  for (int attempt = 0; attempt <= std::max(0, cfg.max_retries); ++attempt) {
    if (attempt > 0) {
      if (sleep) sleep(delay);
      else std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    try {
      std::string text = provider.complete(prompt);
      if (std::any_of(text.begin(), text.end(),
                      [](unsigned char c) { return !std::isspace(c); })) {
        return text;
      }
      last_code = ErrorCode::EmptyCompletion;
      last_message = "provider returned an empty completion";
    } catch (const TransientProviderError& e) {
      last_code = e.code();
      last_message = e.what();
    }
  }
  throw Error(last_code, fmt::format("{} (after {} retries)", last_message, cfg.max_retries));
}

std::unique_ptr<ModelProvider> make_provider(ProviderKind kind, const ProviderConfig& cfg) {
  if (kind == ProviderKind::Mock) return std::make_unique<MockProvider>();
  return std::make_unique<HttpProvider>(cfg);
}

}  // namespace hear
