#ifndef AEFF_TYPES_HPP
#define AEFF_TYPES_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "aeff/effects.hpp"

namespace aeff {

struct TypeNode;

/// Immutable value type. An arrow without an effect annotation is skeletal.
/// `Hole` stands for a type the checker could not pin down (for instance the
/// unused side of `inl V`); it is compatible with every type.
class TypeExpr {
 public:
  static TypeExpr base(std::string name);
  static TypeExpr arrow(TypeExpr domain, TypeExpr codomain,
                        std::optional<EffectAnnotation> effect = std::nullopt);
  static TypeExpr promise(TypeExpr payload);
  static TypeExpr unit();
  static TypeExpr sum(TypeExpr left, TypeExpr right);
  static TypeExpr hole(std::size_t id);

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const { return as<T>() != nullptr; }

  const TypeNode& node() const { return *node_; }
  std::size_t hash() const;

  friend bool operator==(const TypeExpr& a, const TypeExpr& b);

 private:
  explicit TypeExpr(std::shared_ptr<const TypeNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const TypeNode> node_;
};

namespace type {

struct Base {
  std::string name;
};
struct Arrow {
  TypeExpr domain;
  TypeExpr codomain;
  std::optional<EffectAnnotation> effect;
};
struct Promise {
  TypeExpr payload;
};
struct Unit {};
struct Sum {
  TypeExpr left;
  TypeExpr right;
};
struct Hole {
  std::size_t id;
};

}  // namespace type

struct TypeNode {
  std::variant<type::Base, type::Arrow, type::Promise, type::Unit, type::Sum, type::Hole> data;
  std::size_t hash = 0;
};

template <class T>
const T* TypeExpr::as() const {
  return std::get_if<T>(&node_->data);
}

/// Drops every effect annotation.
TypeExpr erase(const TypeExpr& t);

/// Fills missing arrow annotations with the bottom annotation.
TypeExpr with_bottom_effects(const TypeExpr& t);

bool contains_hole(const TypeExpr& t);
bool is_skeletal(const TypeExpr& t);

/// Structural equality where a hole on either side matches anything.
bool compatible(const TypeExpr& a, const TypeExpr& b);

/// Ground types may carry operation payloads: base, unit, and sums of those.
bool is_ground(const TypeExpr& t);

std::string format_type(const TypeExpr& t);

/// Operation signatures plus the declared base type names.
struct Signature {
  std::map<OpName, TypeExpr> operations;
  std::set<std::string> base_types;

  const TypeExpr* lookup(const OpName& op) const;
  bool declares(const OpName& op) const { return lookup(op) != nullptr; }
  void declare(const std::string& op, TypeExpr payload);
};

}  // namespace aeff

#endif  // AEFF_TYPES_HPP
