#include "aeff/types.hpp"

#include <functional>

namespace aeff {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t compute_hash(const TypeNode& node) {
  std::size_t seed = node.data.index() * 0x1000193;
  std::visit(
      [&](const auto& alt) {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, type::Base>) {
          hash_combine(seed, std::hash<std::string>{}(alt.name));
        } else if constexpr (std::is_same_v<T, type::Arrow>) {
          hash_combine(seed, alt.domain.hash());
          hash_combine(seed, alt.codomain.hash());
          hash_combine(seed, alt.effect ? hash_value(*alt.effect) : 7);
        } else if constexpr (std::is_same_v<T, type::Promise>) {
          hash_combine(seed, alt.payload.hash());
        } else if constexpr (std::is_same_v<T, type::Sum>) {
          hash_combine(seed, alt.left.hash());
          hash_combine(seed, alt.right.hash());
        } else if constexpr (std::is_same_v<T, type::Hole>) {
          hash_combine(seed, alt.id);
        }
      },
      node.data);
  return seed;
}

template <class Alt>
std::shared_ptr<const TypeNode> make_node(Alt alt) {
  auto node = std::make_shared<TypeNode>();
  node->data = std::move(alt);
  node->hash = compute_hash(*node);
  return node;
}

}  // namespace

TypeExpr TypeExpr::base(std::string name) { return TypeExpr(make_node(type::Base{std::move(name)})); }

TypeExpr TypeExpr::arrow(TypeExpr domain, TypeExpr codomain, std::optional<EffectAnnotation> effect) {
  return TypeExpr(make_node(type::Arrow{std::move(domain), std::move(codomain), std::move(effect)}));
}

TypeExpr TypeExpr::promise(TypeExpr payload) { return TypeExpr(make_node(type::Promise{std::move(payload)})); }

TypeExpr TypeExpr::unit() {
  static const TypeExpr shared(make_node(type::Unit{}));
  return shared;
}

TypeExpr TypeExpr::sum(TypeExpr left, TypeExpr right) {
  return TypeExpr(make_node(type::Sum{std::move(left), std::move(right)}));
}

TypeExpr TypeExpr::hole(std::size_t id) { return TypeExpr(make_node(type::Hole{id})); }

std::size_t TypeExpr::hash() const { return node_->hash; }

bool operator==(const TypeExpr& a, const TypeExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  if (a.node_->data.index() != b.node_->data.index()) return false;
  if (auto x = a.as<type::Base>()) return x->name == b.as<type::Base>()->name;
  if (auto x = a.as<type::Arrow>()) {
    auto y = b.as<type::Arrow>();
    return x->domain == y->domain && x->codomain == y->codomain && x->effect == y->effect;
  }
  if (auto x = a.as<type::Promise>()) return x->payload == b.as<type::Promise>()->payload;
  if (auto x = a.as<type::Sum>()) {
    auto y = b.as<type::Sum>();
    return x->left == y->left && x->right == y->right;
  }
  if (auto x = a.as<type::Hole>()) return x->id == b.as<type::Hole>()->id;
  return true;  // unit
}

namespace {

template <class F>
TypeExpr map_arrows(const TypeExpr& t, const F& on_effect) {
  if (auto a = t.as<type::Arrow>()) {
    return TypeExpr::arrow(map_arrows(a->domain, on_effect), map_arrows(a->codomain, on_effect),
                           on_effect(a->effect));
  }
  if (auto p = t.as<type::Promise>()) return TypeExpr::promise(map_arrows(p->payload, on_effect));
  if (auto s = t.as<type::Sum>()) {
    return TypeExpr::sum(map_arrows(s->left, on_effect), map_arrows(s->right, on_effect));
  }
  return t;
}

}  // namespace

TypeExpr erase(const TypeExpr& t) {
  return map_arrows(t, [](const std::optional<EffectAnnotation>&) {
    return std::optional<EffectAnnotation>{};
  });
}

TypeExpr with_bottom_effects(const TypeExpr& t) {
  return map_arrows(t, [](const std::optional<EffectAnnotation>& e) {
    return std::optional<EffectAnnotation>{e ? *e : EffectAnnotation{}};
  });
}

bool contains_hole(const TypeExpr& t) {
  if (t.is<type::Hole>()) return true;
  if (auto a = t.as<type::Arrow>()) return contains_hole(a->domain) || contains_hole(a->codomain);
  if (auto p = t.as<type::Promise>()) return contains_hole(p->payload);
  if (auto s = t.as<type::Sum>()) return contains_hole(s->left) || contains_hole(s->right);
  return false;
}

bool is_skeletal(const TypeExpr& t) {
  if (auto a = t.as<type::Arrow>()) {
    return !a->effect && is_skeletal(a->domain) && is_skeletal(a->codomain);
  }
  if (auto p = t.as<type::Promise>()) return is_skeletal(p->payload);
  if (auto s = t.as<type::Sum>()) return is_skeletal(s->left) && is_skeletal(s->right);
  return true;
}

bool compatible(const TypeExpr& a, const TypeExpr& b) {
  if (a.is<type::Hole>() || b.is<type::Hole>()) return true;
  if (a.node().data.index() != b.node().data.index()) return false;
  if (auto x = a.as<type::Base>()) return x->name == b.as<type::Base>()->name;
  if (auto x = a.as<type::Arrow>()) {
    auto y = b.as<type::Arrow>();
    return compatible(x->domain, y->domain) && compatible(x->codomain, y->codomain) &&
           x->effect == y->effect;
  }
  if (auto x = a.as<type::Promise>()) return compatible(x->payload, b.as<type::Promise>()->payload);
  if (auto x = a.as<type::Sum>()) {
    auto y = b.as<type::Sum>();
    return compatible(x->left, y->left) && compatible(x->right, y->right);
  }
  return true;
}

bool is_ground(const TypeExpr& t) {
  if (t.is<type::Base>() || t.is<type::Unit>()) return true;
  if (auto s = t.as<type::Sum>()) return is_ground(s->left) && is_ground(s->right);
  return false;
}

namespace {

std::string format_atom(const TypeExpr& t) {
  if (t.is<type::Arrow>() || t.is<type::Sum>()) return "(" + format_type(t) + ")";
  return format_type(t);
}

}  // namespace

std::string format_type(const TypeExpr& t) {
  if (auto b = t.as<type::Base>()) return b->name;
  if (t.is<type::Unit>()) return "unit";
  if (t.is<type::Hole>()) return "_";
  if (auto p = t.as<type::Promise>()) return "promise " + format_atom(p->payload);
  if (auto s = t.as<type::Sum>()) return format_atom(s->left) + " + " + format_atom(s->right);
  auto a = t.as<type::Arrow>();
  std::string out = format_atom(a->domain) + " -> " + format_atom(a->codomain);
  if (a->effect) out += " ! " + format_effect(*a->effect);
  return out;
}

const TypeExpr* Signature::lookup(const OpName& op) const {
  auto it = operations.find(op);
  return it == operations.end() ? nullptr : &it->second;
}

void Signature::declare(const std::string& op, TypeExpr payload) {
  operations.insert_or_assign(OpName{op}, std::move(payload));
}

}  // namespace aeff
