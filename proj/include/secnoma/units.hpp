#pragma once

#include <cmath>

namespace secnoma {

// Powers are kept in mW everywhere inside the library; dBm is referenced to 1 mW.
inline double db_to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }
inline double dbm_to_mw(double value_dbm) { return db_to_linear(value_dbm); }
inline double linear_to_db(double value) { return 10.0 * std::log10(value); }
inline double mw_to_dbm(double value_mw) { return linear_to_db(value_mw); }

} // namespace secnoma
