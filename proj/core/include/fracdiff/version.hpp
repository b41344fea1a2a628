#pragma once

namespace fracdiff {

/// Library version, "major.minor.patch".
const char* version();

}  // namespace fracdiff
