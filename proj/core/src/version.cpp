#include "fracdiff/version.hpp"

namespace fracdiff {

const char* version() { return FRACDIFF_VERSION; }

}  // namespace fracdiff
