#pragma once

#include <string>
#include <vector>

#include "qecc/stabilizer.hpp"

namespace qecc {

// Built-in codes: bell, 422, 513, steane, shor, rm15, golay23.
// golay23 ships with generator-level validation only; its 2^22-element group
// is enumerated only if the caller raises max_enum.
std::vector<std::string> catalog_names();
CodeSpec catalog_code(const std::string& name, std::size_t max_enum = kGroupEnumBound);

}  // namespace qecc
