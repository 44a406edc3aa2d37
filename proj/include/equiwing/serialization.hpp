#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "equiwing/equiwing_comp.hpp"
#include "equiwing/equiwing_index.hpp"

namespace equiwing {

void serialize(const EquiWingIndex& index, std::ostream& out);
void serialize(const EquiWingCompIndex& index, std::ostream& out);

EquiWingIndex deserialize_equiwing(std::istream& in);
EquiWingCompIndex deserialize_comp(std::istream& in);

using AnyIndex = std::variant<EquiWingIndex, EquiWingCompIndex>;
// Dispatches on the header line.
AnyIndex deserialize_any(std::istream& in);

AnyIndex load_index_file(const std::string& path);
// Writes to a sibling temporary file and renames it into place.
void save_index_file(const AnyIndex& index, const std::string& path);

}  // namespace equiwing
