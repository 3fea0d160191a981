#include "ucwfp/error.hpp"

#include <utility>

namespace ucwfp {

MonitorFailure::MonitorFailure(const std::string& what, nlohmann::json bundle)
    : Error(what), bundle_(std::move(bundle)) {}

} // namespace ucwfp
