#pragma once

#include <string>

#include "wvol/adapted.hpp"
#include "wvol/engine.hpp"

namespace wvol::io {

std::string to_json(const engine::WVolumeReport& report, int indent = 2);
engine::WVolumeReport report_from_json(const std::string& text);

// {genus_sum, curves: [{id, length, compressible}], intersections: [[i, j], ...]}.
// Schema violations throw ValidationError; the system itself is validated too.
adapted::CurveSystem curve_system_from_json(const std::string& text);
std::string to_json(const adapted::CurveSystem& system, int indent = 2);

std::string to_json(const adapted::CorrectionResult& result, int indent = 2);
adapted::CorrectionResult correction_from_json(const std::string& text);

}  // namespace wvol::io
