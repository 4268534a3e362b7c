#include "weilforge/system_file.hpp"

#include <cctype>
#include <sstream>

#include "weilforge/error.hpp"
#include "weilforge/parse.hpp"
#include "weilforge/weil.hpp"

namespace weilforge {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return strip(hash == std::string_view::npos ? s : s.substr(0, hash));
}

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& what) {
  throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what);
}

bool starts_with_word(std::string_view s, std::string_view word) {
  return s.substr(0, word.size()) == word && (s.size() == word.size() || std::isspace(static_cast<unsigned char>(s[word.size()])));
}

// Column (1-based) of `part` inside `line`.
std::size_t col_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace

PolySystem SystemFile::system() const {
  PolySystem out = polynomials;
  if (field_equations) {
    for (auto& f : weilforge::field_equations(ring, ring->field()->size())) out.push_back(std::move(f));
  }
  return out;
}

bool operator==(const SystemFile& a, const SystemFile& b) {
  return a.ring->same_as(*b.ring) && a.polynomials == b.polynomials && a.field_equations == b.field_equations &&
         a.restrict == b.restrict;
}

SystemFile parse_system_file(std::string_view text) {
  enum class Stage { Header, Field, Vars, Body } stage = Stage::Header;
  SystemFile file;
  FieldPtr field;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const std::string_view line = strip_comment(raw);
    if (line.empty()) continue;

    switch (stage) {
      case Stage::Header:
        if (line != kSystemFileHeader) fail(lineno, col_of(raw, line), "expected header 'weilforge-v1'");
        stage = Stage::Field;
        break;
      case Stage::Field: {
        if (!starts_with_word(line, "field")) fail(lineno, col_of(raw, line), "expected 'field <spec>'");
        field = parse_field_spec(strip(line.substr(5)));
        stage = Stage::Vars;
        break;
      }
      case Stage::Vars: {
        if (!starts_with_word(line, "vars") && line != "vars") fail(lineno, col_of(raw, line), "expected 'vars'");
        std::vector<std::string> names;
        std::string_view rest = strip(line.substr(4));
        while (!rest.empty()) {
          const auto comma = rest.find(',');
          const std::string_view name = strip(rest.substr(0, comma));
          if (name.empty()) fail(lineno, col_of(raw, rest), "empty variable name");
          for (char c : name) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
              fail(lineno, col_of(raw, name), "invalid variable name '" + std::string(name) + "'");
            }
          }
          if (std::isdigit(static_cast<unsigned char>(name.front()))) {
            fail(lineno, col_of(raw, name), "variable names cannot start with a digit");
          }
          names.emplace_back(name);
          if (comma == std::string_view::npos) break;
          rest = strip(rest.substr(comma + 1));
          if (rest.empty()) fail(lineno, col_of(raw, line) + line.size(), "trailing comma");
        }
        try {
          file.ring = Ring::make(field, names);
        } catch (const Error& e) {
          fail(lineno, col_of(raw, line), e.what());
        }
        stage = Stage::Body;
        break;
      }
      case Stage::Body: {
        if (starts_with_word(line, "flags") && file.polynomials.empty()) {
          std::string_view rest = strip(line.substr(5));
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            const std::string_view flag = strip(rest.substr(0, comma));
            if (flag == "field-equations") {
              file.field_equations = true;
            } else if (flag == "restrict") {
              file.restrict = true;
            } else {
              fail(lineno, col_of(raw, flag), "unknown flag '" + std::string(flag) + "'");
            }
            if (comma == std::string_view::npos) break;
            rest = strip(rest.substr(comma + 1));
          }
          break;
        }
        const std::size_t offset = col_of(raw, line) - 1;
        try {
          file.polynomials.push_back(parse_polynomial(line, file.ring, lineno));
        } catch (const Error& e) {
          // Re-anchor the column to the raw line.
          std::string msg = e.what();
          const auto col = msg.find(", col ");
          if (offset == 0 || col == std::string::npos) throw;
          const auto colon = msg.find(':', col);
          const std::size_t c = std::stoul(msg.substr(col + 6, colon - col - 6)) + offset;
          const auto detail = msg.substr(colon + 2);
          if (e.kind() == ErrorKind::UnknownVariable) {
            throw Error(ErrorKind::UnknownVariable,
                        "line " + std::to_string(lineno) + ", col " + std::to_string(c) + ": " + detail);
          }
          fail(lineno, c, detail);
        }
        break;
      }
    }
  }
  if (stage != Stage::Body) fail(lineno == 0 ? 1 : lineno, 1, "unexpected end of file");
  return file;
}

std::string render_system_file(const SystemFile& file) {
  std::ostringstream os;
  os << kSystemFileHeader << '\n';
  os << "field " << file.ring->field()->spec_string() << '\n';
  os << "vars";
  for (std::size_t i = 0; i < file.ring->nvars(); ++i) os << (i ? ", " : " ") << file.ring->name(i);
  os << '\n';
  if (file.field_equations || file.restrict) {
    os << "flags ";
    if (file.field_equations) os << "field-equations";
    if (file.field_equations && file.restrict) os << ", ";
    if (file.restrict) os << "restrict";
    os << '\n';
  }
  for (const auto& f : file.polynomials) os << f.render() << '\n';
  return os.str();
}

}  // namespace weilforge
