#ifndef HETNET_CS_UNITS_HPP
#define HETNET_CS_UNITS_HPP

// All dB <-> linear and dBm <-> mW/W conversions live here. Power ratios only
// (10*log10); nothing in this library works with amplitude ratios.

#include <cmath>
#include <stdexcept>
#include <string>

namespace hetnet_cs {

/// Raised when an argument is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised for malformed configuration (unknown mode, bad JSON key, ...).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace units {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double ratio) {
  if (!(ratio > 0.0)) {
    throw DomainError("linear_to_db: ratio must be positive, got " +
                      std::to_string(ratio));
  }
  return 10.0 * std::log10(ratio);
}

inline double mw_to_dbm(double mw) { return linear_to_db(mw); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }

inline double w_to_dbm(double w) { return mw_to_dbm(w * 1e3); }
inline double dbm_to_w(double dbm) { return dbm_to_mw(dbm) * 1e-3; }

}  // namespace units
}  // namespace hetnet_cs

#endif  // HETNET_CS_UNITS_HPP
