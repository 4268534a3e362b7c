#include "weilforge/parse.hpp"

#include <cctype>
#include <string>

#include "weilforge/error.hpp"

namespace weilforge {

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, RingPtr ring, std::size_t line)
      : text_(text), ring_(std::move(ring)), line_(line) {}

  Polynomial parse_all() {
    skip();
    if (pos_ >= text_.size()) fail("empty expression");
    Polynomial p = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError,
                "line " + std::to_string(line_) + ", col " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        pos_ = text_.size();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Polynomial acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip();
      const unsigned long e = integer();
      Polynomial r = Polynomial::constant(ring_, 1);
      for (unsigned long i = 0; i < e; ++i) r = r * base;
      return r;
    }
    return base;
  }

  unsigned long integer() {
    skip();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      fail(pos_ >= text_.size() ? "expected an integer at end of input" : "expected an integer");
    }
    unsigned long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(text_[pos_] - '0');
      if (v > 1000000000ul) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= text_.size()) fail("expected an operand at end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const unsigned long v = integer();
      return Polynomial::constant(ring_, ring_->field()->from_integer(static_cast<long long>(v)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      if (auto idx = ring_->index_of(name)) return Polynomial::variable(ring_, *idx);
      const Field& F = *ring_->field();
      if (!F.is_prime() && name == F.generator_symbol()) return Polynomial::constant(ring_, F.generator());
      pos_ = start;
      throw Error(ErrorKind::UnknownVariable,
                  "line " + std::to_string(line_) + ", col " + std::to_string(start + 1) + ": " + name);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void spec_fail(const std::string& what) { throw Error(ErrorKind::FieldSpecError, what); }

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line) {
  return ExprParser(text, ring, line).parse_all();
}

Elem parse_element(std::string_view text, const FieldPtr& field) {
  auto ring = Ring::make(field, {});
  const Polynomial p = parse_polynomial(text, ring);
  return p.is_zero() ? 0 : p.leading_coeff();
}

FieldPtr parse_field_spec(std::string_view text) {
  std::string_view s = strip(text);
  if (s.substr(0, 3) != "GF(") spec_fail("field spec must start with GF(");
  const auto close = s.find(')');
  if (close == std::string_view::npos) spec_fail("unterminated GF(");
  unsigned long p = 0;
  const auto digits = strip(s.substr(3, close - 3));
  if (digits.empty()) spec_fail("missing characteristic");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) spec_fail("characteristic must be an integer");
    p = p * 10 + static_cast<unsigned long>(c - '0');
    if (p > (1ul << 31)) spec_fail("characteristic too large");
  }
  FieldPtr prime;
  try {
    prime = Field::prime(static_cast<std::uint32_t>(p));
  } catch (const Error& e) {
    spec_fail(e.what());
  }
  s = strip(s.substr(close + 1));
  if (s.empty()) return prime;

  if (s.front() != '[') spec_fail("expected [generator] after GF(p)");
  const auto rb = s.find(']');
  if (rb == std::string_view::npos) spec_fail("unterminated [generator]");
  const std::string gen(strip(s.substr(1, rb - 1)));
  if (gen.empty()) spec_fail("empty generator name");
  s = strip(s.substr(rb + 1));
  if (s.substr(0, 2) != "/(") spec_fail("expected /(modulus)");
  int depth = 0;
  std::size_t end = std::string_view::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) {
      end = i;
      break;
    }
  }
  if (end == std::string_view::npos) spec_fail("unterminated modulus");
  const auto mod_text = s.substr(2, end - 2);
  s = strip(s.substr(end + 1));

  auto uni = Ring::make(prime, {gen});
  Polynomial mod = parse_polynomial(mod_text, uni);
  if (mod.is_zero() || mod.degree() < 1) spec_fail("modulus must have positive degree");
  std::vector<Elem> coeffs(mod.degree() + 1, 0);
  for (const auto& t : mod.terms()) coeffs[t.mono[0]] = t.coeff;
  if (coeffs.back() != 1) spec_fail("modulus must be monic");

  std::optional<std::vector<std::string>> basis_text;
  if (!s.empty()) {
    if (s.substr(0, 5) != "basis") spec_fail("unexpected trailing text in field spec");
    s = strip(s.substr(5));
    if (s.empty() || s.front() != '=') spec_fail("expected '=' after basis");
    s = strip(s.substr(1));
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') spec_fail("basis must be a bracketed list");
    s = s.substr(1, s.size() - 2);
    basis_text.emplace();
    while (!s.empty()) {
      const auto comma = s.find(',');
      basis_text->emplace_back(strip(s.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      s = s.substr(comma + 1);
    }
  }

  FieldPtr K = Field::extension(prime, coeffs, std::nullopt, gen);
  if (!basis_text) return K;
  std::vector<Elem> basis;
  for (const auto& b : *basis_text) basis.push_back(parse_element(b, K));
  return Field::extension(prime, coeffs, basis, gen);
}

}  // namespace weilforge
