// units.hpp — dB/dBm <-> linear conversions.
//
// All internal computation is in linear units (milliwatts for power,
// plain ratios for SINR). Decibel values appear only at config/IO
// boundaries and are converted exactly once.

#pragma once

#include <cmath>

namespace crn {

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

}  // namespace crn
