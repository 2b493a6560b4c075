#include "aeff/reduce_par.hpp"

#include <algorithm>

#include "aeff/surface.hpp"

namespace aeff {

const char* rule_name(ProcRule rule) {
  switch (rule) {
    case ProcRule::R14: return "r14";
    case ProcRule::R15: return "r15";
    case ProcRule::R16: return "r16";
    case ProcRule::R17: return "r17";
    case ProcRule::R18: return "r18";
    case ProcRule::R19: return "r19";
    case ProcRule::R20: return "r20";
  }
  return "?";
}

const char* frame_name(ProcFrame frame) {
  switch (frame) {
    case ProcFrame::ParLeft: return "left";
    case ProcFrame::ParRight: return "right";
    case ProcFrame::Signal: return "signal";
    case ProcFrame::Interrupt: return "interrupt";
  }
  return "?";
}

std::string ProcRuleLabel::str() const {
  std::string inner_text = inner ? "[" + inner->str() + "]" : "";
  switch (kind) {
    case Kind::FlatRun:
      return "flat-run(" + std::to_string(index) + ")" + inner_text;
    case Kind::FlatBroadcast:
      return "flat-broadcast(" + op.text + "," + (payload ? pretty(*payload) : "") + "," +
             std::to_string(index) + ")";
    case Kind::Tree:
      break;
  }
  std::string out;
  if (!path.empty()) {
    out = "r21@";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i > 0) out += ".";
      out += frame_name(path[i]);
    }
    out += ":";
  }
  return out + rule_name(rule) + inner_text;
}

namespace {

ProcStep root(ProcRule rule, Process result) {
  ProcRuleLabel label;
  label.rule = rule;
  return ProcStep{std::move(label), std::move(result)};
}

void root_steps(const Process& p, std::vector<ProcStep>& out) {
  if (auto run = p.as<proc::Run>()) {
    for (auto& s : step_seq(run->computation)) {
      ProcRuleLabel label;
      label.rule = ProcRule::R14;
      label.inner = s.label;
      out.push_back(ProcStep{std::move(label), Process::run(s.result)});
    }
    if (auto sig = run->computation.as<comp::Signal>()) {
      out.push_back(root(ProcRule::R15, Process::signal(sig->op, sig->payload, Process::run(sig->body))));
    }
    return;
  }
  if (auto par = p.as<proc::Par>()) {
    if (auto sig = par->left.as<proc::Signal>()) {
      out.push_back(root(ProcRule::R16,
                         Process::signal(sig->op, sig->payload,
                                         Process::par(sig->body, Process::interrupt(sig->op, sig->payload,
                                                                                    par->right)))));
    }
    if (auto sig = par->right.as<proc::Signal>()) {
      out.push_back(root(ProcRule::R17,
                         Process::signal(sig->op, sig->payload,
                                         Process::par(Process::interrupt(sig->op, sig->payload, par->left),
                                                      sig->body))));
    }
    return;
  }
  auto in = p.as<proc::Interrupt>();
  if (in == nullptr) return;
  if (auto run = in->body.as<proc::Run>()) {
    out.push_back(root(ProcRule::R18,
                       Process::run(Computation::interrupt(in->op, in->payload, run->computation))));
  } else if (auto par = in->body.as<proc::Par>()) {
    out.push_back(root(ProcRule::R19, Process::par(Process::interrupt(in->op, in->payload, par->left),
                                                   Process::interrupt(in->op, in->payload, par->right))));
  } else if (auto sig = in->body.as<proc::Signal>()) {
    out.push_back(root(ProcRule::R20,
                       Process::signal(sig->op, sig->payload,
                                       Process::interrupt(in->op, in->payload, sig->body))));
  }
}

void collect(const Process& p, std::vector<ProcStep>& out) {
  root_steps(p, out);
  auto descend = [&](const Process& sub, ProcFrame frame, auto rebuild) {
    std::vector<ProcStep> inner;
    collect(sub, inner);
    for (auto& s : inner) {
      s.label.path.push_back(frame);
      out.push_back(ProcStep{std::move(s.label), rebuild(s.result)});
    }
  };
  if (auto par = p.as<proc::Par>()) {
    descend(par->left, ProcFrame::ParLeft, [&](const Process& r) { return Process::par(r, par->right); });
    descend(par->right, ProcFrame::ParRight, [&](const Process& r) { return Process::par(par->left, r); });
  } else if (auto sig = p.as<proc::Signal>()) {
    descend(sig->body, ProcFrame::Signal,
            [&](const Process& r) { return Process::signal(sig->op, sig->payload, r); });
  } else if (auto in = p.as<proc::Interrupt>()) {
    descend(in->body, ProcFrame::Interrupt,
            [&](const Process& r) { return Process::interrupt(in->op, in->payload, r); });
  }
}

bool flatten(const Process& p, std::vector<Computation>& out) {
  if (auto run = p.as<proc::Run>()) {
    out.push_back(run->computation);
    return true;
  }
  if (auto par = p.as<proc::Par>()) return flatten(par->left, out) && flatten(par->right, out);
  return false;
}

}  // namespace

std::vector<ProcStep> step_proc(const Process& p) {
  std::vector<ProcStep> out;
  collect(p, out);
  for (auto& s : out) std::reverse(s.label.path.begin(), s.label.path.end());
  return out;
}

bool alpha_eq(const FlatProcess& a, const FlatProcess& b) {
  if (a.threads.size() != b.threads.size()) return false;
  for (std::size_t i = 0; i < a.threads.size(); ++i) {
    if (!alpha_eq(a.threads[i], b.threads[i])) return false;
  }
  return true;
}

std::size_t flat_hash(const FlatProcess& p) {
  std::size_t seed = p.threads.size();
  for (const auto& t : p.threads) seed ^= t.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

std::optional<FlatProcess> to_flat(const Process& p) {
  FlatProcess out;
  if (!flatten(p, out.threads)) return std::nullopt;
  return out;
}

std::string pretty(const FlatProcess& p) {
  std::string out;
  for (std::size_t i = 0; i < p.threads.size(); ++i) {
    if (i > 0) out += " || ";
    out += "run (" + pretty(p.threads[i]) + ")";
  }
  return out;
}

std::vector<FlatStep> step_flat(const FlatProcess& p) {
  std::vector<FlatStep> out;
  const std::size_t n = p.threads.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& s : step_seq(p.threads[i])) {
      ProcRuleLabel label;
      label.kind = ProcRuleLabel::Kind::FlatRun;
      label.index = i;
      label.inner = s.label;
      FlatProcess next = p;
      next.threads[i] = s.result;
      out.push_back(FlatStep{std::move(label), std::move(next)});
    }
    if (auto sig = p.threads[i].as<comp::Signal>()) {
      ProcRuleLabel label;
      label.kind = ProcRuleLabel::Kind::FlatBroadcast;
      label.index = i;
      label.op = sig->op;
      label.payload = sig->payload;
      FlatProcess next;
      next.threads.reserve(n);
      for (std::size_t j = 0; j < n; ++j) {
        next.threads.push_back(j == i ? sig->body
                                      : Computation::interrupt(sig->op, sig->payload, p.threads[j]));
      }
      out.push_back(FlatStep{std::move(label), std::move(next)});
    }
  }
  return out;
}

}  // namespace aeff
