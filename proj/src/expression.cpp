#include <pfva/expression.hpp>

#include <cctype>
#include <functional>
#include <optional>

namespace pfva {

ParseError::ParseError(std::size_t column, const std::string& message)
    : std::runtime_error("column " + std::to_string(column) + ": " + message), column_(column) {}

namespace {

using Operator = std::function<State(const State&)>;

class Parser {
 public:
  Parser(std::string_view text, const VertexAlgebra& va, const WVectors& w) : text_(text), va_(va), w_(w) {}

  State parse() {
    State v = sum();
    skip();
    if (pos_ < text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  struct Item {
    std::optional<State> vector;  // unsubscripted vector
    Operator op;
    std::size_t column;
  };

  [[noreturn]] void error(const std::string& message) const { throw ParseError(pos_ + 1, message); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  bool at_digit() {
    skip();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Integer digits() {
    if (!at_digit()) error("expected a number");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  int integer() {
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    const std::size_t start = pos_;
    Integer n = digits();
    if (!n.fits_sint_p() || abs(n) > 100000) {
      pos_ = start;
      error("index out of range");
    }
    const int v = static_cast<int>(n.get_si());
    return negative ? -v : v;
  }

  State sum() {
    State out;
    Scalar sign = 1;
    if (accept('-'))
      sign = -1;
    else
      accept('+');
    out.add_scaled(term(), sign);
    while (true) {
      if (accept('+'))
        sign = 1;
      else if (accept('-'))
        sign = -1;
      else
        break;
      out.add_scaled(term(), sign);
    }
    return out;
  }

  State term() {
    Scalar c = 1;
    if (at_digit()) {
      Integer num = digits();
      Integer den = 1;
      if (accept('/')) {
        const std::size_t at = pos_;
        den = digits();
        if (den == 0) {
          pos_ = at;
          error("zero denominator");
        }
      }
      c = Scalar(num, den);
      c.canonicalize();
      accept('*');
    }
    return c * chain();
  }

  State chain() {
    std::vector<Item> items;
    while (auto item = next_item()) {
      if (!items.empty() && items.back().vector) {
        pos_ = item->column - 1;
        error("a state must end the operator chain (use X_n for the mode of X)");
      }
      items.push_back(std::move(*item));
    }
    if (items.empty()) error("expected an operator or a state");
    if (!items.back().vector) error("expected a state such as |0> at the end of the chain");
    State v = std::move(*items.back().vector);
    for (auto it = items.rbegin() + 1; it != items.rend(); ++it) v = it->op(v);
    return v;
  }

  std::optional<Item> next_item() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t column = pos_ + 1;
    const char c = text_[pos_];
    std::optional<State> vec;
    if (c == '|') {
      ++pos_;
      expect('0');
      expect('>');
      vec = State::vacuum();
    } else if (c == '(') {
      ++pos_;
      vec = sum();
      expect(')');
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "W3") {
        vec = w_.w3;
      } else if (name == "W4") {
        vec = w_.w4;
      } else if (name == "W5") {
        vec = w_.w5;
      } else if (name == "omega") {
        vec = va_.virasoro_vector(VirasoroKind::Coset);
      } else {
        Operator op = current(name, start);
        return Item{std::nullopt, std::move(op), column};
      }
    } else {
      return std::nullopt;
    }
    if (accept('_')) {
      const int n = integer();
      return Item{std::nullopt, [this, u = std::move(*vec), n](const State& v) { return va_.mode(u, n, v); }, column};
    }
    return Item{std::move(vec), {}, column};
  }

  Operator current(const std::string& name, std::size_t start) {
    std::optional<Generator> g;
    std::optional<VirasoroKind> kind;
    if (name == "h") g = Generator::H;
    else if (name == "e") g = Generator::E;
    else if (name == "f") g = Generator::F;
    else if (name == "L" || name == "Laff") kind = VirasoroKind::Aff;
    else if (name == "Lgam") kind = VirasoroKind::Gamma;
    else {
      pos_ = start;
      error("unknown symbol '" + name + "'");
    }
    expect('(');
    const int n = integer();
    expect(')');
    if (g) return [this, a = ModeSymbol{*g, n}](const State& v) { return va_.rewriter().apply_mode(a, v); };
    return [this, kind = *kind, n](const State& v) { return va_.virasoro_mode(kind, n, v); };
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const VertexAlgebra& va_;
  const WVectors& w_;
};

}  // namespace

State evaluate_expression(std::string_view text, const VertexAlgebra& va, const WVectors& w) {
  return Parser(text, va, w).parse();
}

}  // namespace pfva
