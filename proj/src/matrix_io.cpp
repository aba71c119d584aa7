#include "qbic/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace qbic {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, std::size_t col, const std::string& what) {
  throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

template <Field F>
QBicForm<F> read_rows(const F& f, const std::vector<std::pair<std::size_t, std::string>>& lines, std::size_t n,
                      const std::string& source) {
  if (lines.size() != n) fail(source, lines.empty() ? 0 : lines.back().first, 1,
                              "expected " + std::to_string(n) + " matrix rows, found " + std::to_string(lines.size()));
  Matrix<F> m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [lineno, text] = lines[i];
    std::size_t pos = 0, j = 0;
    while (true) {
      pos = text.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) break;
      const std::size_t end = std::min(text.find_first_of(" \t\r", pos), text.size());
      const std::string token = text.substr(pos, end - pos);
      if (j >= n) fail(source, lineno, pos + 1, "too many entries in row");
      try {
        m(i, j) = f.parse(token);
      } catch (const InputError& e) {
        fail(source, lineno, pos + 1, "bad element '" + token + "': " + e.what());
      }
      ++j;
      pos = end;
    }
    if (j != n) fail(source, lineno, text.size() + 1, "expected " + std::to_string(n) + " entries in row");
  }
  return QBicForm<F>(std::move(m));
}

}  // namespace

AnyForm read_form(std::istream& in, const std::string& source) {
  std::optional<FieldSpec> spec;
  std::optional<std::size_t> n;
  std::vector<std::pair<std::size_t, std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!spec) {
      if (t.rfind("field:", 0) != 0) fail(source, lineno, 1, "expected 'field: <spec>' header");
      try {
        spec = parse_field_spec(trim(t.substr(6)));
      } catch (const InputError& e) {
        fail(source, lineno, 8, e.what());
      }
      continue;
    }
    if (!n) {
      if (t.rfind("n:", 0) != 0) fail(source, lineno, 1, "expected 'n: <int>' header");
      const std::string v = trim(t.substr(2));
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos || v.size() > 4)
        fail(source, lineno, 4, "bad dimension '" + v + "'");
      n = std::stoul(v);
      continue;
    }
    rows.emplace_back(lineno, line);
  }
  if (!spec) fail(source, lineno, 1, "missing 'field:' header");
  if (!n) fail(source, lineno, 1, "missing 'n:' header");
  if (spec->kind == FieldKind::finite) return read_rows(FiniteField::from_spec(*spec), rows, *n, source);
  return read_rows(FunctionField::from_spec(*spec), rows, *n, source);
}

AnyForm read_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_form(in, path);
}

}  // namespace qbic
