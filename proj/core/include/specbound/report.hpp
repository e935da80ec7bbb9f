#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specbound/spectrum.hpp"

namespace specbound {

/// Result of evaluating a named spectral bound.  Hypothesis violations do not
/// suppress the value: callers scanning parameter grids need totality, so the
/// report carries a flag instead.
struct BoundReport {
    std::string bound_name;
    double value = 0.0;
    bool hypotheses_ok = true;
    std::vector<std::string> flags;
    std::map<std::string, double> details;
    /// Independently computed spectrum the bound was checked against, when a
    /// caller attached one.
    std::optional<EigenvalueSpectrum> comparison;

    BoundReport& flag(std::string msg) {
        hypotheses_ok = false;
        flags.push_back(std::move(msg));
        return *this;
    }
};

/// Thrown when a requested grid spacing cannot resolve the requested spectral
/// window (fewer than the required nodes per wavelength).
class ResolutionError : public std::runtime_error {
  public:
    ResolutionError(const std::string& what, double suggested_h)
        : std::runtime_error(what), suggested_h_(suggested_h) {}
    double suggested_h() const { return suggested_h_; }

  private:
    double suggested_h_;
};

}  // namespace specbound
