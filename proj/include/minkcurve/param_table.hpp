#pragma once

#include "minkcurve/numeric.hpp"

#include <array>
#include <optional>
#include <vector>

namespace mink {

/// Parameters tracked along a curve: the source parameter, Minkowski arc length s,
/// anti-norm arc length s_a, Euclidean arc length s_e, twice the swept sector area u,
/// and the Euclidean tangent angle theta.
enum class Column { param = 0, s, s_a, s_e, u, theta };
inline constexpr std::size_t kColumnCount = 6;

const char* to_string(Column c);

/// Correspondence table between curve parameters. Each column is sampled at the same
/// breakpoints together with its derivative with respect to the source parameter, which
/// feeds monotone cubic Hermite maps in both directions.
class ParamTable {
 public:
  ParamTable() = default;
  explicit ParamTable(std::vector<double> param);

  /// Adds a column with its derivative d(column)/d(param) at every breakpoint.
  void add(Column c, std::vector<double> values, std::vector<double> derivative);

  bool has(Column c) const { return cols_[idx(c)].has_value(); }
  /// True when the column is strictly increasing and can be inverted.
  bool invertible(Column c) const;
  const std::vector<double>& values(Column c) const;
  const std::vector<double>& derivative(Column c) const;
  double total(Column c) const;
  std::size_t size() const { return param_.size(); }

  /// Maps a value of column `from` to column `to`.
  double map(Column from, Column to, double x) const;

 private:
  struct Col {
    std::vector<double> values, derivative;
    MonotoneMap forward, inverse;
    bool invertible = false;
  };
  std::vector<double> param_;
  std::array<std::optional<Col>, kColumnCount> cols_;
  static std::size_t idx(Column c) { return static_cast<std::size_t>(c); }
  const Col& col(Column c) const;
};

}  // namespace mink
