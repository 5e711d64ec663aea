/*
 * Copyright 2026 The cosplit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosplit {

enum class ErrorCode {
  malformed_document,
  consistency_violation,
  structure_violation,
  non_real_pivot,
  degenerate_fit,
  invalid_argument,
  shape_mismatch,
  well_posedness,
  unknown_scheme,
  config_error,
  io_error,
  reference_cross_check,
  reference_blowup,
};

std::string_view to_string(ErrorCode code);

/// Error raised for invalid input or failed validation. Numerical blow-up
/// during a run is not an error; it is reported through run status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cosplit
