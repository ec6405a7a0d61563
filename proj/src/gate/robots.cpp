#include "curator/gate/robots.hpp"

#include <algorithm>

#include "curator/core/error.hpp"
#include "curator/core/jsonl.hpp"

namespace curator {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

RobotsRule compile_rule(bool allow, std::string_view pattern) {
  RobotsRule rule;
  rule.allow = allow;
  rule.pattern.assign(pattern);
  std::string_view body = pattern;
  if (!body.empty() && body.back() == '$') {
    rule.anchored = true;
    body.remove_suffix(1);
  }
  std::size_t start = 0;
  while (true) {
    std::size_t star = body.find('*', start);
    if (star == std::string_view::npos) {
      rule.segments.emplace_back(body.substr(start));
      break;
    }
    rule.segments.emplace_back(body.substr(start, star - start));
    start = star + 1;
  }
  return rule;
}

// Leftmost-greedy placement of the compiled segments.  Greedy is exact
// here: pushing any segment further right only shrinks what the rest may
// use, and the anchored tail is checked against the fixed end position.
bool rule_matches(const RobotsRule& rule, std::string_view path) {
  const auto& segs = rule.segments;
  if (!path.starts_with(segs.front())) return false;
  std::size_t pos = segs.front().size();

  if (segs.size() == 1) {
    return rule.anchored ? pos == path.size() : true;
  }
  for (std::size_t i = 1; i + 1 < segs.size(); ++i) {
    std::size_t found = path.find(segs[i], pos);
    if (found == std::string_view::npos) return false;
    pos = found + segs[i].size();
  }
  const std::string& last = segs.back();
  if (rule.anchored) {
    if (path.size() < pos + last.size()) return false;
    return path.compare(path.size() - last.size(), last.size(), last) == 0;
  }
  return path.find(last, pos) != std::string_view::npos;
}

}  // namespace

RobotsPolicy parse_robots(std::string_view text, std::string_view origin,
                          std::string_view fetched_at) {
  RobotsPolicy policy;
  policy.origin.assign(origin);
  policy.fetched_at.assign(fetched_at);

  bool last_was_agent = false;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t eol = text.find('\n', line_start);
    if (eol == std::string_view::npos) {
      if (line_start == text.size()) break;
      eol = text.size();
    }
    std::string_view line = text.substr(line_start, eol - line_start);
    line_start = eol + 1;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      ++policy.skipped_lines;
      last_was_agent = false;
      continue;
    }
    std::string key = to_lower(trim(line.substr(0, colon)));
    std::string_view value = trim(line.substr(colon + 1));

    if (key == "user-agent") {
      if (!last_was_agent || policy.groups.empty()) policy.groups.emplace_back();
      policy.groups.back().user_agents.emplace_back(value);
      last_was_agent = true;
      continue;
    }
    last_was_agent = false;
    if (key == "allow" || key == "disallow") {
      if (policy.groups.empty()) {
        ++policy.skipped_lines;  // rule before any user-agent line
        continue;
      }
      if (value.empty()) continue;  // "Disallow:" restricts nothing
      policy.groups.back().rules.push_back(compile_rule(key == "allow", value));
      continue;
    }
    if (key.empty()) {
      ++policy.skipped_lines;
      continue;
    }
    policy.other_directives.emplace_back(std::string(trim(line.substr(0, colon))),
                                         std::string(value));
  }
  return policy;
}

RobotsDecision evaluate(const RobotsPolicy& policy, std::string_view agent,
                        std::string_view path) {
  std::string token = to_lower(agent);
  std::vector<const RobotsGroup*> chosen;
  for (const auto& g : policy.groups) {
    if (std::any_of(g.user_agents.begin(), g.user_agents.end(),
                    [&](const std::string& ua) { return to_lower(ua) == token; })) {
      chosen.push_back(&g);
    }
  }
  if (chosen.empty()) {
    for (const auto& g : policy.groups) {
      if (std::any_of(g.user_agents.begin(), g.user_agents.end(),
                      [](const std::string& ua) { return ua == "*"; })) {
        chosen.push_back(&g);
      }
    }
  }

  RobotsDecision best;
  std::size_t best_len = 0;
  for (const auto* g : chosen) {
    for (const auto& r : g->rules) {
      if (!rule_matches(r, path)) continue;
      std::size_t len = r.pattern.size();
      bool better = !best.matched || len > best_len ||
                    (len == best_len && r.allow && !best.rule.allow);
      if (better) {
        best.matched = true;
        best.rule = r;
        best_len = len;
      }
    }
  }
  best.decision = (best.matched && !best.rule.allow) ? SignalDecision::Exclude
                                                     : SignalDecision::Include;
  return best;
}

std::map<std::string, RobotsPolicy> load_robots_snapshots(const std::string& path) {
  std::map<std::string, RobotsPolicy> policies;
  std::size_t lineno = 0;
  for (const auto& j : read_jsonl_raw(path)) {
    ++lineno;
    std::string where = path + ": record " + std::to_string(lineno);
    if (!j.is_object() || !j.contains("origin") || !j.contains("body")) {
      throw schema_error(where + ": expected {origin, fetched_at, body}");
    }
    try {
      std::string origin = j.at("origin").get<std::string>();
      std::string body = j.at("body").get<std::string>();
      std::string fetched_at = j.value("fetched_at", std::string());
      policies[origin] = parse_robots(body, origin, fetched_at);
    } catch (const nlohmann::json::exception& e) {
      throw schema_error(where + ": " + e.what());
    }
  }
  return policies;
}

void to_json(nlohmann::json& j, const RobotsRule& v) {
  j = {{"allow", v.allow}, {"pattern", v.pattern}};
}

void to_json(nlohmann::json& j, const RobotsDecision& v) {
  j = {{"decision", to_string(v.decision)}, {"matched", v.matched}};
  if (v.matched) j["rule"] = v.rule;
}

}  // namespace curator
