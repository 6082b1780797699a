#include "cstkit/decode.hpp"

#include <json.hpp>

#include "cstkit/errors.hpp"
#include "cstkit/render.hpp"

namespace cstkit {

std::string_view repair_action_name(RepairAction action) {
  switch (action) {
    case RepairAction::drop_stray_close: return "drop_stray_close";
    case RepairAction::insert_missing_close: return "insert_missing_close";
    case RepairAction::retag_kind: return "retag_kind";
    case RepairAction::demote_to_terminal: return "demote_to_terminal";
    case RepairAction::drop_stray_terminal: return "drop_stray_terminal";
  }
  return "?";
}

std::pair<std::vector<StructToken>, RepairReport> repair(
    const std::vector<StructToken>& tokens) {
  RepairReport report;
  bool any_open = false;
  bool any_terminal = false;
  for (const auto& t : tokens) {
    if (t.kind == StructToken::Kind::open) any_open = true;
    if (t.kind == StructToken::Kind::terminal) any_terminal = true;
  }
  if (!any_open) {
    if (!any_terminal) throw Unrepairable();
    report.fallback_only = true;
    return {tokens, report};
  }

  std::vector<StructToken> out;
  std::vector<std::string> stack;  // open kinds, innermost last
  auto note = [&](std::size_t pos, RepairAction action, std::string detail = {}) {
    report.actions.push_back({pos, action, std::move(detail)});
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const StructToken& tok = tokens[i];
    switch (tok.kind) {
      case StructToken::Kind::open:
        stack.push_back(tok.text);
        out.push_back(tok);
        break;
      case StructToken::Kind::close:
        if (stack.empty()) {
          note(i, RepairAction::drop_stray_close);
          break;
        }
        if (stack.size() == 1 && i + 1 < tokens.size()) {
          // closing the root with tokens left would orphan them; keep the
          // marker spelling as an ordinary payload instead
          std::string raw = token_spelling(tok);
          note(i, RepairAction::demote_to_terminal, raw);
          out.push_back(StructToken::terminal(std::move(raw)));
          break;
        }
        if (tok.text != stack.back()) {
          note(i, RepairAction::retag_kind, stack.back());
          out.push_back(StructToken::close(stack.back()));
        } else {
          out.push_back(tok);
        }
        stack.pop_back();
        break;
      case StructToken::Kind::terminal:
      case StructToken::Kind::ws:
        if (stack.empty()) {
          note(i, RepairAction::drop_stray_terminal);
          break;
        }
        out.push_back(tok);
        break;
    }
  }
  while (!stack.empty()) {
    note(tokens.size(), RepairAction::insert_missing_close, stack.back());
    out.push_back(StructToken::close(stack.back()));
    stack.pop_back();
  }

  report.repaired = !report.actions.empty();
  return {std::move(out), report};
}

std::vector<StructToken> replay_repairs(const std::vector<StructToken>& tokens,
                                        const RepairReport& report) {
  if (report.fallback_only) return tokens;
  std::vector<StructToken> out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (next < report.actions.size() && report.actions[next].position == i) {
      const RepairStep& step = report.actions[next++];
      switch (step.action) {
        case RepairAction::drop_stray_close:
        case RepairAction::drop_stray_terminal:
          break;
        case RepairAction::retag_kind:
          out.push_back(StructToken::close(step.detail));
          break;
        case RepairAction::demote_to_terminal:
          out.push_back(StructToken::terminal(step.detail));
          break;
        case RepairAction::insert_missing_close:
          // positioned past the end, handled below
          break;
      }
      continue;
    }
    out.push_back(tokens[i]);
  }
  for (; next < report.actions.size(); ++next)
    if (report.actions[next].action == RepairAction::insert_missing_close)
      out.push_back(StructToken::close(report.actions[next].detail));
  return out;
}

DecodeResult to_code(std::string_view text, Language lang, DecodeMode mode) {
  std::vector<StructToken> tokens = lex_stream(text);
  DecodeResult result;
  if (mode == DecodeMode::strict) {
    CstTree tree = deserialize({tokens, lang});
    result.code = render(tree);
    return result;
  }
  auto [fixed, report] = repair(tokens);
  result.report = std::move(report);
  if (result.report.fallback_only) {
    for (const auto& t : fixed) {
      if (t.kind != StructToken::Kind::terminal) continue;
      if (!result.code.empty()) result.code += ' ';
      result.code += t.text;
    }
    result.used_fallback = true;
    return result;
  }
  CstTree tree = deserialize({std::move(fixed), lang});
  result.code = render(tree);
  return result;
}

std::string repair_report_to_json(const RepairReport& report) {
  nlohmann::ordered_json j;
  j["repaired"] = report.repaired;
  j["fallback_only"] = report.fallback_only;
  nlohmann::ordered_json actions = nlohmann::ordered_json::array();
  for (const auto& step : report.actions) {
    nlohmann::ordered_json s;
    s["position"] = step.position;
    s["action"] = std::string(repair_action_name(step.action));
    if (!step.detail.empty()) s["detail"] = step.detail;
    actions.push_back(std::move(s));
  }
  j["actions"] = std::move(actions);
  return j.dump(2) + "\n";
}

}  // namespace cstkit
