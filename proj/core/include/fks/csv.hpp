// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fks {

// Shortest round-trip decimal form, '.' as separator, independent of locale.
std::string format_double(double v);

void write_csv_row(std::ostream& os, std::initializer_list<std::string_view> cells);

}  // namespace fks
