#include "aeff/effects.hpp"

#include <algorithm>
#include <functional>

namespace aeff {

namespace {

auto lower_bound_op(const std::vector<EffectEntry>& entries, const OpName& op) {
  return std::lower_bound(entries.begin(), entries.end(), op,
                          [](const EffectEntry& e, const OpName& key) { return e.op < key; });
}

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

const EffectAnnotation* EffectMap::find(const OpName& op) const {
  auto it = lower_bound_op(entries_, op);
  if (it == entries_.end() || it->op != op) return nullptr;
  return &it->effect;
}

void EffectMap::set(const OpName& op, EffectAnnotation effect) {
  auto it = lower_bound_op(entries_, op);
  if (it != entries_.end() && it->op == op) {
    auto index = static_cast<std::size_t>(it - entries_.begin());
    entries_[index].effect = std::move(effect);
    return;
  }
  entries_.insert(it, EffectEntry{op, std::move(effect)});
}

void EffectMap::erase(const OpName& op) {
  auto it = lower_bound_op(entries_, op);
  if (it != entries_.end() && it->op == op) entries_.erase(it);
}

bool operator==(const EffectMap& a, const EffectMap& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].op != b.entries_[i].op) return false;
    if (!(a.entries_[i].effect == b.entries_[i].effect)) return false;
  }
  return true;
}

bool operator==(const EffectAnnotation& a, const EffectAnnotation& b) {
  return a.signals == b.signals && a.handlers == b.handlers;
}

bool leq(const EffectMap& a, const EffectMap& b) {
  for (const auto& entry : a) {
    const EffectAnnotation* other = b.find(entry.op);
    if (other == nullptr || !leq(entry.effect, *other)) return false;
  }
  return true;
}

bool leq(const EffectAnnotation& a, const EffectAnnotation& b) {
  if (!std::includes(b.signals.begin(), b.signals.end(), a.signals.begin(), a.signals.end())) {
    return false;
  }
  return leq(a.handlers, b.handlers);
}

EffectMap join(const EffectMap& a, const EffectMap& b) {
  EffectMap out = a;
  for (const auto& entry : b) {
    if (const EffectAnnotation* mine = a.find(entry.op)) {
      out.set(entry.op, join(*mine, entry.effect));
    } else {
      out.set(entry.op, entry.effect);
    }
  }
  return out;
}

EffectAnnotation join(const EffectAnnotation& a, const EffectAnnotation& b) {
  EffectAnnotation out;
  out.signals = a.signals;
  out.signals.insert(b.signals.begin(), b.signals.end());
  out.handlers = join(a.handlers, b.handlers);
  return out;
}

EffectAnnotation op_act(const OpName& op, const EffectAnnotation& e) {
  const EffectAnnotation* triggered = e.handlers.find(op);
  if (triggered == nullptr) return e;
  EffectAnnotation handler_effect = *triggered;
  EffectAnnotation remaining = e;
  remaining.handlers.erase(op);
  return join(remaining, handler_effect);
}

std::size_t handler_size(const EffectMap& handlers) {
  std::size_t total = 0;
  for (const auto& entry : handlers) total += 1 + handler_size(entry.effect.handlers);
  return total;
}

namespace {

void collect_paths(const EffectMap& handlers, Path& prefix, std::set<Path>& out) {
  for (const auto& entry : handlers) {
    prefix.push_back(entry.op);
    out.insert(prefix);
    collect_paths(entry.effect.handlers, prefix, out);
    prefix.pop_back();
  }
}

void collect_ops(const EffectAnnotation& e, OpSet& out) {
  out.insert(e.signals.begin(), e.signals.end());
  for (const auto& entry : e.handlers) {
    out.insert(entry.op);
    collect_ops(entry.effect, out);
  }
}

}  // namespace

std::set<Path> paths(const EffectMap& handlers) {
  std::set<Path> out;
  if (handlers.empty()) return out;
  out.insert(Path{});
  Path prefix;
  collect_paths(handlers, prefix, out);
  return out;
}

std::size_t depth(const EffectMap& handlers) {
  std::size_t deepest = 0;
  for (const auto& entry : handlers) {
    deepest = std::max(deepest, 1 + depth(entry.effect.handlers));
  }
  return deepest;
}

OpSet mentioned_ops(const EffectAnnotation& e) {
  OpSet out;
  collect_ops(e, out);
  return out;
}

std::size_t hash_value(const EffectAnnotation& e) {
  std::size_t seed = 0x51ed27;
  std::hash<std::string> h;
  for (const auto& op : e.signals) hash_combine(seed, h(op.text));
  hash_combine(seed, 0xabcdef);
  for (const auto& entry : e.handlers) {
    hash_combine(seed, h(entry.op.text));
    hash_combine(seed, hash_value(entry.effect));
  }
  return seed;
}

std::string format_op_set(const OpSet& ops) {
  std::string out = "{";
  bool first = true;
  for (const auto& op : ops) {
    if (!first) out += ", ";
    first = false;
    out += op.text;
  }
  return out + "}";
}

namespace {

std::string format_map(const EffectMap& handlers) {
  std::string out = "{";
  bool first = true;
  for (const auto& entry : handlers) {
    if (!first) out += ", ";
    first = false;
    out += entry.op.text + " -> " + format_effect(entry.effect);
  }
  return out + "}";
}

}  // namespace

std::string format_effect(const EffectAnnotation& e) {
  return "(" + format_op_set(e.signals) + ", " + format_map(e.handlers) + ")";
}

std::string format_path(const Path& path) {
  std::string out = "(";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += ",";
    out += path[i].text;
  }
  return out + ")";
}

}  // namespace aeff
