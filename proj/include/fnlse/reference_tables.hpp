#pragma once

// Reference recursive-prediction results on the six benchmark sets, used for
// deviation reports: relative error RE (percent) and the Braun statistic RBS.

#include <optional>
#include <span>
#include <string_view>

#include "fnlse/datasets.hpp"

namespace fnlse {

enum class TableRow { MLE, LSE, LogLSE, PowLseOpt, PowLseBest };

enum class Criterion { RE, RBS };

struct ReferenceValue {
  double value;
  std::optional<double> alpha;  // PowLseOpt / PowLseBest rows only
};

ReferenceValue reference_value(Criterion c, DatasetId id, TableRow row);

std::span<const TableRow> all_rows();
std::string_view row_label(TableRow row);

}  // namespace fnlse
