#pragma once

#include <stdexcept>
#include <string>

namespace disparity {

/// Raised for every domain-level failure (bad input, undefined statistic, I/O).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace disparity
