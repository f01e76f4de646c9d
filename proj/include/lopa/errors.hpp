// Copyright 2026 The lopa-sim Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace lopa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// construction / validation
struct InvalidParams : Error { using Error::Error; };
struct InvalidDimensions : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DisconnectedAfterRetries : Error { using Error::Error; };
struct NotDoublyStochastic : Error { using Error::Error; };
struct NonpositiveConstant : Error { using Error::Error; };

// step sizes
struct StepSizeOutOfRange : Error { using Error::Error; };
struct GammaOutOfRange : Error { using Error::Error; };
struct InfeasibleSchedule : Error { using Error::Error; };

// linear algebra / solvers
struct NotPositiveDefinite : Error { using Error::Error; };
struct NotAnalytic : Error { using Error::Error; };
struct InnerSolverFailed : Error { using Error::Error; };

// runtime
struct DivergenceDetected : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };

// data / parsing / io
struct ParseError : Error { using Error::Error; };
struct UnknownKey : Error { using Error::Error; };
struct MissingKey : Error { using Error::Error; };
struct UnknownValue : Error { using Error::Error; };
struct UnsupportedLabelSet : Error { using Error::Error; };
struct EmptyPartition : Error { using Error::Error; };
struct InsufficientSamples : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ColumnMissing : Error { using Error::Error; };

}  // namespace lopa
