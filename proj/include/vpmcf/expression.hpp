#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace vpmcf {

/// Compiled closed-form expression in a single variable.
///
/// Grammar: numbers, the variable, the constant `pi`, binary `+ - * / ^`
/// (`^` is right associative and binds tighter than unary minus), parentheses
/// and the functions sin cos tan sinh cosh tanh exp log sqrt abs.
class Expression {
 public:
  struct Node;

  Expression() = default;
  /// Throws ConfigError with the column of the offending token.
  Expression(std::string_view source, std::string variable);

  double operator()(double x) const;

  const std::string& source() const { return source_; }
  bool empty() const { return root_ == nullptr; }

 private:
  std::string source_;
  std::string variable_;
  std::shared_ptr<const Node> root_;
};

}  // namespace vpmcf
