#include "minkcurve/param_table.hpp"
#include "minkcurve/errors.hpp"

namespace mink {

const char* to_string(Column c) {
  switch (c) {
    case Column::param: return "param";
    case Column::s: return "s";
    case Column::s_a: return "s_a";
    case Column::s_e: return "s_e";
    case Column::u: return "u";
    case Column::theta: return "theta";
  }
  return "?";
}

ParamTable::ParamTable(std::vector<double> param) : param_(std::move(param)) {
  add(Column::param, param_, std::vector<double>(param_.size(), 1.0));
}

void ParamTable::add(Column c, std::vector<double> values, std::vector<double> derivative) {
  if (values.size() != param_.size() || derivative.size() != param_.size())
    throw Error(ErrorKind::InvalidInput, std::string("table column size mismatch: ") + to_string(c));
  Col col;
  col.invertible = true;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) col.invertible = false;
  for (double d : derivative)
    if (!(d > 0.0)) col.invertible = false;
  col.forward = MonotoneMap(param_, values, derivative, col.invertible);
  if (col.invertible) {
    std::vector<double> inv(derivative.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / derivative[i];
    col.inverse = MonotoneMap(values, param_, inv);
  }
  col.values = std::move(values);
  col.derivative = std::move(derivative);
  cols_[idx(c)] = std::move(col);
}

const ParamTable::Col& ParamTable::col(Column c) const {
  if (!cols_[idx(c)]) throw Error(ErrorKind::InvalidInput, std::string("table has no column ") + to_string(c));
  return *cols_[idx(c)];
}

bool ParamTable::invertible(Column c) const { return has(c) && col(c).invertible; }
const std::vector<double>& ParamTable::values(Column c) const { return col(c).values; }
const std::vector<double>& ParamTable::derivative(Column c) const { return col(c).derivative; }
double ParamTable::total(Column c) const { return col(c).values.back() - col(c).values.front(); }

double ParamTable::map(Column from, Column to, double x) const {
  double t = x;
  if (from != Column::param) {
    const Col& f = col(from);
    if (!f.invertible)
      throw Error(ErrorKind::InvalidInput, std::string("column not monotone: ") + to_string(from));
    t = f.inverse(x);
  }
  if (to == Column::param) return t;
  return col(to).forward(t);
}

}  // namespace mink
