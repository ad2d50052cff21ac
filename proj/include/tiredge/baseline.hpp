#pragma once

#include <string>

#include "tiredge/image.hpp"

namespace tiredge {

enum class BaselineKind { prewitt, roberts, sobel, log };

BaselineKind parse_baseline_kind(const std::string& name);
std::string to_string(BaselineKind kind);

/// Classical single-threshold detectors. prewitt/sobel threshold the 3x3
/// gradient magnitude at threshold*max; roberts uses the 2x2 diagonal pair;
/// log marks zero crossings of a 9x9 Laplacian-of-Gaussian (sigma 1.4) whose
/// local contrast reaches threshold*max contrast.
BinaryMap baseline_detect(const FloatFrame& frame, BaselineKind kind, double threshold);

}  // namespace tiredge
