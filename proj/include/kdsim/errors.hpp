#pragma once

#include <stdexcept>
#include <string>

namespace kdsim {

// Base type for everything the simulator throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define KDSIM_ERROR_TYPE(NAME)                                                 \
    class NAME : public Error {                                                \
    public:                                                                    \
        using Error::Error;                                                    \
    };

KDSIM_ERROR_TYPE(InvalidParameter)
KDSIM_ERROR_TYPE(UnknownAgent)
KDSIM_ERROR_TYPE(UnknownLayer)
KDSIM_ERROR_TYPE(UnknownLabel)
KDSIM_ERROR_TYPE(UnknownMetric)
KDSIM_ERROR_TYPE(UnknownPreset)
KDSIM_ERROR_TYPE(CycleDetected)
KDSIM_ERROR_TYPE(DimensionMismatch)
KDSIM_ERROR_TYPE(EmptyPopulation)
KDSIM_ERROR_TYPE(OutOfRange)
KDSIM_ERROR_TYPE(ConfigError)
KDSIM_ERROR_TYPE(IoError)

#undef KDSIM_ERROR_TYPE

} // namespace kdsim
