#pragma once

#include <istream>
#include <string>
#include <variant>
#include <vector>

#include "qbic/field.hpp"
#include "qbic/function_field.hpp"
#include "qbic/matrix.hpp"
#include "qbic/qbic_form.hpp"

namespace qbic {

template <Field F>
Matrix<F> matrix_from_rows(const F& f, const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.parse(rows[i][j]);
  }
  return m;
}

template <Field F>
std::vector<std::vector<std::string>> matrix_to_rows(const Matrix<F>& m) {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m.field().format(m(i, j)));
  return out;
}

using AnyForm = std::variant<QBicForm<FiniteField>, QBicForm<FunctionField>>;

// "field: <spec>", "n: <int>", then n rows of n element literals. Blank lines
// and lines starting with '#' are ignored.
AnyForm read_form(std::istream& in, const std::string& source = "<input>");
AnyForm read_form_file(const std::string& path);

template <Field F>
std::string write_form(const QBicForm<F>& form) {
  std::string out = "field: " + to_string(form.field().spec()) + "\nn: " + std::to_string(form.n()) + "\n";
  for (const auto& row : matrix_to_rows(form.gram())) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? " " : "") + row[j];
    out += "\n";
  }
  return out;
}

}  // namespace qbic
